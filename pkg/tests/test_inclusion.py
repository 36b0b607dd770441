"""Binomial-basis polynomials, inclusion matrices, the rank bound, and the
entrywise representing matrices."""

import random
from math import comb, prod

import pytest

from minrank_lab import (
    BinomialPoly,
    IntMatrix,
    ParameterError,
    binom_int,
    binomial_basis_of_roots,
    binomial_basis_shifted,
    inclusion_matrix,
    kneser,
    kneser_mod,
    lucas_divisibility,
    m_matrix,
    matmul_int,
    matrix_represents,
    mod_reduce,
    rank_bound_combination,
    rank_fp,
    rank_rational,
    rep_matrix_kneser,
    rep_matrix_kneser_mod,
    triple_product_identity,
)

from util_oracles import fraction_rank


# ----------------------------------------------------------------- binomials


def test_binom_int_matches_comb_on_nonnegatives():
    for z in range(8):
        for k in range(8):
            assert binom_int(z, k) == comb(z, k)


def test_binom_int_negative_arguments():
    # falling-factorial extension: C(-1,k) = (-1)^k, C(-2,3) = -4
    assert binom_int(-1, 0) == 1
    assert binom_int(-1, 1) == -1
    assert binom_int(-1, 2) == 1
    assert binom_int(-2, 3) == -4
    assert binom_int(-3, 2) == 6


def test_binomial_poly_rejects_trailing_zeros():
    with pytest.raises(ParameterError):
        BinomialPoly((1, 2, 0, 0))
    with pytest.raises(ParameterError):
        BinomialPoly(())
    assert BinomialPoly((0,)).degree == 0
    assert BinomialPoly((1, 2)).degree == 1


def test_binomial_poly_evaluate():
    # 3*C(x,0) + 2*C(x,2) at x = 4 gives 3 + 12
    p = BinomialPoly((3, 0, 2))
    assert p.evaluate(4) == 15
    assert p.evaluate(0) == 3


def test_basis_of_roots_trivial_cases():
    assert binomial_basis_of_roots([]).coeffs == (1,)
    assert binomial_basis_of_roots([0]).coeffs == (0, 1)
    assert binomial_basis_of_roots([0, 1]).coeffs == (0, 0, 2)


def test_basis_of_roots_reevaluates_to_the_product():
    rng = random.Random(4)
    for _ in range(25):
        roots = [rng.randint(-3, 6) for _ in range(rng.randint(0, 5))]
        poly = binomial_basis_of_roots(roots)
        assert poly.degree == len(roots)
        for x in range(-2, 9):
            assert poly.evaluate(x) == prod(x - r for r in roots)


def test_basis_shifted_trivial_cases():
    assert binomial_basis_shifted(0, 1).coeffs == (1,)
    assert binomial_basis_shifted(1, 2).coeffs == (-2, 1)


def test_basis_shifted_reevaluates_to_shifted_binomial():
    for t, q in ((0, 1), (1, 2), (2, 4), (1, 3), (3, 8)):
        poly = binomial_basis_shifted(t, q)
        assert poly.degree == q - 1
        for x in range(0, 2 * q + 1):
            assert poly.evaluate(x) == binom_int(x - t - 1, q - 1)


def test_basis_shifted_value_at_t_is_sign():
    for t, q in ((1, 2), (2, 3), (3, 4), (1, 4)):
        poly = binomial_basis_shifted(t, q)
        assert poly.evaluate(t) == (-1) ** (q - 1)


# ---------------------------------------------------------- inclusion matrix


def test_inclusion_matrix_singletons_identity():
    m = inclusion_matrix(2, 1, 1)
    assert [list(r) for r in m.matrix.data] == [[1, 0], [0, 1]]


def test_inclusion_matrix_empty_set_column():
    m = inclusion_matrix(5, 3, 0)
    assert all(row == (1,) for row in m.matrix.data)


def test_inclusion_matrix_4_2_1_sums():
    m = inclusion_matrix(4, 2, 1).matrix
    assert all(sum(row) == 2 for row in m.data)
    cols = list(zip(*m.data))
    assert all(sum(c) == 3 for c in cols)


def test_inclusion_matrix_sum_laws():
    for d, s, k in ((5, 3, 2), (6, 4, 1), (7, 3, 3)):
        m = inclusion_matrix(d, s, k).matrix
        assert all(sum(row) == comb(s, k) for row in m.data)
        assert all(sum(c) == comb(d - k, s - k) for c in zip(*m.data))


def test_inclusion_matrix_guards():
    with pytest.raises(ParameterError):
        inclusion_matrix(4, 5, 1)
    with pytest.raises(ParameterError):
        inclusion_matrix(4, 2, 3)
    with pytest.raises(ParameterError):
        inclusion_matrix(4, 2, -1)


def test_m_matrix_diagonal_and_known_entries():
    m = m_matrix(4, 2, 1)
    for i in range(6):
        assert m.data[i][i] == comb(2, 1)
    # rows follow the 2-subsets of {1..4} in ascending mask order:
    # {1,2}, {1,3}, {2,3}, {1,4}, {2,4}, {3,4}
    a = 0  # {1,2}
    b = 2  # {2,3}
    assert m.data[a][b] == 1


def test_m_matrix_all_ones_at_k_zero():
    m = m_matrix(4, 2, 0)
    assert all(x == 1 for row in m.data for x in row)


def test_m_matrix_entry_law_matches_product():
    # product definition vs direct intersection counting
    for d in range(1, 7):
        for s in range(0, d + 1):
            for k in range(0, s + 1):
                m = m_matrix(d, s, k)
                n = inclusion_matrix(d, s, k).matrix
                prod_m = matmul_int(n, n.transpose())
                assert m.data == prod_m.data
                subs = kneser(d, s, set(range(s))).labels if s else None
                if subs is None:
                    continue
                for i, a in enumerate(subs):
                    for j, b in enumerate(subs):
                        inter = (a.mask & b.mask).bit_count()
                        assert m.data[i][j] == comb(inter, k)


def test_triple_product_known_cases():
    assert triple_product_identity(4, 3, 2, 1)
    assert triple_product_identity(5, 3, 2, 0)
    assert triple_product_identity(6, 4, 2, 2)  # l = k collapses to N itself


def test_triple_product_guards():
    with pytest.raises(ParameterError):
        triple_product_identity(4, 2, 3, 1)


# ----------------------------------------------------------- rank bound


def test_rank_bound_constant_poly_gives_all_ones():
    m, bound = rank_bound_combination(5, 2, BinomialPoly((1,)))
    assert bound == 1
    assert all(x == 1 for row in m.data for x in row)
    assert rank_rational(m) == 1


def test_rank_bound_6_3_quadratic():
    poly = binomial_basis_of_roots([0, 1])  # x(x-1)
    m, bound = rank_bound_combination(6, 3, poly)
    assert bound == comb(6, 2) == 15
    assert rank_rational(m) <= 15


def test_rank_bound_5_2_linear_term():
    m, bound = rank_bound_combination(5, 2, BinomialPoly((0, 1)))
    assert bound == 5
    assert m.data == m_matrix(5, 2, 1).data
    assert rank_rational(m) <= 5


def test_rank_bound_random_combinations():
    rng = random.Random(21)
    for d, s in ((6, 3), (7, 3)):
        for _ in range(10):
            deg = rng.randint(0, s)
            coeffs = [rng.randint(-9, 9) for _ in range(deg + 1)]
            poly = BinomialPoly(tuple(coeffs))
            m, bound = rank_bound_combination(d, s, poly)
            r = rank_rational(m)
            assert r <= bound
            assert r == fraction_rank(m.data)


def test_rank_bound_rejects_degree_above_s():
    with pytest.raises(ParameterError):
        rank_bound_combination(6, 2, BinomialPoly((0, 0, 0, 1)))


# ------------------------------------------------------- representing matrices


def test_rep_matrix_kneser_8_4_props():
    g = kneser(8, 4, {0, 1})
    m = rep_matrix_kneser(8, 4, {0, 1}, 11)
    assert m.rows == 70
    # diagonal entries are m(4) = (4-2)(4-3) = 2
    assert all(int(m.entries[i, i]) == 2 for i in range(70))
    assert matrix_represents(m, g)
    assert rank_fp(m) <= comb(8, 3)


def test_rep_matrix_kneser_zero_exactly_off_allowed_classes():
    g = kneser(6, 3, {1})
    m = rep_matrix_kneser(6, 3, {1}, 7)
    labels = g.labels
    for i in range(g.n):
        for j in range(g.n):
            inter = (labels[i].mask & labels[j].mask).bit_count()
            entry = int(m.entries[i, j])
            if i == j:
                assert entry != 0
            elif inter in (0, 2):  # roots of the vanishing polynomial
                assert entry == 0


def test_rep_matrix_kneser_small_prime_allowed_when_diagonal_survives():
    # p = 3 <= s = 4 but m(4) = 2 is not a multiple of 3
    g = kneser(8, 4, {0, 1})
    m = rep_matrix_kneser(8, 4, {0, 1}, 3)
    assert matrix_represents(m, g)


def test_rep_matrix_kneser_rejects_vanishing_diagonal():
    # m(4) = 2, so p = 2 kills the diagonal
    with pytest.raises(ParameterError):
        rep_matrix_kneser(8, 4, {0, 1}, 2)


def test_rep_matrix_kneser_agrees_with_matrix_combination():
    d, s, T, p = 6, 3, {1}, 7
    roots = sorted(set(range(s)) - T)
    poly = binomial_basis_of_roots(roots)
    combo, _ = rank_bound_combination(d, s, poly)
    assert mod_reduce(combo, p) == rep_matrix_kneser(d, s, T, p)


def test_rep_matrix_kneser_mod_8_3_props():
    g = kneser_mod(8, 3, 1, 2)
    m = rep_matrix_kneser_mod(8, 3, 1, 2, 2)
    assert m.rows == 56
    assert matrix_represents(m, g)
    assert rank_fp(m) <= comb(8, 1)


def test_rep_matrix_kneser_mod_zero_pattern():
    m = rep_matrix_kneser_mod(6, 3, 1, 2, 2)
    labels = kneser(6, 3, set(range(3))).labels
    for i in range(len(labels)):
        for j in range(len(labels)):
            inter = (labels[i].mask & labels[j].mask).bit_count()
            entry = int(m.entries[i, j])
            assert (entry == 0) == (inter % 2 != 1)


def test_rep_matrix_kneser_mod_guards():
    with pytest.raises(ParameterError):
        rep_matrix_kneser_mod(8, 3, 1, 2, 3)  # q is not a power of p
    with pytest.raises(ParameterError):
        rep_matrix_kneser_mod(8, 3, 1, 8, 2)  # q > s + 1
    with pytest.raises(ParameterError):
        rep_matrix_kneser_mod(8, 4, 1, 2, 2)  # s and t differ mod q


# -------------------------------------------------------------------- lucas


def test_lucas_known_cases():
    assert lucas_divisibility(4, 4, 2) is False  # C(3,3) = 1
    assert lucas_divisibility(3, 4, 2) is True  # C(2,3) = 0
    assert lucas_divisibility(6, 2, 2) is False  # C(5,1) = 5, odd


def test_lucas_matches_direct_binomials():
    for q, p in ((2, 2), (4, 2), (3, 3)):
        for r in range(1, 101):
            direct = binom_int(r - 1, q - 1) % p == 0
            assert lucas_divisibility(r, q, p) == direct
            # the fact itself: divisible exactly when q does not divide r
            assert lucas_divisibility(r, q, p) == (r % q != 0)


def test_lucas_rejects_mismatched_power():
    with pytest.raises(ParameterError):
        lucas_divisibility(5, 6, 2)
    with pytest.raises(ParameterError):
        lucas_divisibility(5, 9, 2)

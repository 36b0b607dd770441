"""Inclusion matrices between subset levels and the rank bounds they give.

The central objects are N(s, k), the 0/1 matrix of k-subsets contained in
s-subsets of [d], the Gram-like products M(s, k) = N(s, k) N(s, k)^T whose
(A, B) entry is C(|A meet B|, k), and integer combinations sum a_k M(s, k)
whose entries depend on |A meet B| through an integer-valued polynomial
written in the binomial basis.  Such a combination has rational rank at most
C(d, deg), and reduced mod p it becomes a representing matrix for a
Kneser-type graph whenever the polynomial vanishes mod p exactly on the
adjacent intersection sizes and not at s.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from ._subsets import pairwise_intersection_lookup, subset_masks
from .errors import ParameterError
from .ff_linalg import FpMatrix, IntMatrix, as_modulus, matmul_int


def binom_int(z: int, k: int) -> int:
    """Binomial coefficient C(z, k) for any integer z (falling factorial),
    so negative upper arguments are fine: C(-1, 2) = 1, C(-2, 3) = -4."""
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    num = 1
    for i in range(k):
        num *= z - i
    q, rem = divmod(num, factorial(k))
    assert rem == 0
    return q


@dataclass(frozen=True)
class BinomialPoly:
    """Integer polynomial in the binomial basis: m(x) = sum a_k C(x, k).

    Coefficients are stored low degree first with the trailing zeros
    stripped, so coeffs[-1] != 0 unless the polynomial is zero.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ParameterError("coeffs must be nonempty; use (0,) for zero")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ParameterError("trailing zero coefficients must be stripped")
        for a in self.coeffs:
            if isinstance(a, bool) or not isinstance(a, int):
                raise ParameterError(f"integer coefficient expected: {a!r}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        return sum(a * binom_int(x, k) for k, a in enumerate(self.coeffs))


def _poly_from_values(values: list[int]) -> BinomialPoly:
    # forward differences at 0 give the binomial-basis coefficients
    coeffs = []
    work = list(values)
    while work:
        coeffs.append(work[0])
        work = [work[i + 1] - work[i] for i in range(len(work) - 1)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return BinomialPoly(tuple(coeffs))


def binomial_basis_of_roots(roots) -> BinomialPoly:
    """The monic product prod (x - r) over the given integer roots, expanded
    in the binomial basis."""
    rs = [int(r) for r in roots]
    deg = len(rs)

    def value(x: int) -> int:
        out = 1
        for r in rs:
            out *= x - r
        return out

    poly = _poly_from_values([value(x) for x in range(deg + 1)])
    assert poly.degree == deg
    return poly


def binomial_basis_shifted(t: int, q: int) -> BinomialPoly:
    """m(x) = C(x - t - 1, q - 1) in the binomial basis (degree q - 1).

    Integer-valued with m(i) divisible by p exactly when i is not congruent
    to t mod q, for q a power of the prime p; that makes it the right entry
    law for the residue-class graphs.
    """
    if q < 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    poly = _poly_from_values([binom_int(x - t - 1, q - 1) for x in range(q)])
    assert poly.degree == q - 1
    return poly


@dataclass(frozen=True)
class InclusionMatrix:
    """Containment matrix N(s, k) over [d]: rows are s-subsets, columns are
    k-subsets, both ascending by bitmask; entry 1 iff the column subset is
    contained in the row subset."""

    d: int
    s: int
    k: int
    matrix: IntMatrix


def inclusion_matrix(d: int, s: int, k: int) -> InclusionMatrix:
    if not 0 <= k <= s <= d:
        raise ParameterError(f"need 0 <= k <= s <= d, got k={k} s={s} d={d}")
    rows_s = subset_masks(d, s)
    cols_k = subset_masks(d, k)
    data = [[1 if (a & b) == b else 0 for b in cols_k] for a in rows_s]
    return InclusionMatrix(d, s, k, IntMatrix(data))


def m_matrix(d: int, s: int, k: int) -> IntMatrix:
    """M(s, k) = N(s, k) N(s, k)^T; entry (A, B) equals C(|A meet B|, k)."""
    n = inclusion_matrix(d, s, k).matrix
    return matmul_int(n, n.transpose())


def triple_product_identity(d: int, s: int, l: int, k: int) -> bool:
    """Checks N(s, l) N(l, k) == C(s - k, l - k) N(s, k) entrywise."""
    if not 0 <= k <= l <= s <= d:
        raise ParameterError(f"need 0 <= k <= l <= s <= d, got {k} {l} {s} {d}")
    lhs = matmul_int(inclusion_matrix(d, s, l).matrix, inclusion_matrix(d, l, k).matrix)
    scale = comb(s - k, l - k)
    base = inclusion_matrix(d, s, k).matrix
    scaled = IntMatrix([[scale * x for x in row] for row in base.data])
    return lhs == scaled


def rank_bound_combination(d: int, s: int, poly: BinomialPoly) -> tuple[IntMatrix, int]:
    """The integer matrix sum a_k M(s, k) together with its rank bound
    C(d, deg poly); entry (A, B) is poly(|A meet B|)."""
    if poly.degree > s:
        raise ParameterError(f"degree {poly.degree} exceeds s = {s}")
    if not 0 < s <= d:
        raise ParameterError(f"need 0 < s <= d, got s={s} d={d}")
    masks = subset_masks(d, s)
    table = np.array([poly.evaluate(i) for i in range(s + 1)], dtype=object)
    if max(abs(int(x)) for x in table) < 2**62:
        table = table.astype(np.int64)
        entries = pairwise_intersection_lookup(masks, table)
        mat = IntMatrix(entries)
    else:
        n = len(masks)
        vals = [int(x) for x in table]
        mat = IntMatrix([[vals[(masks[i] & masks[j]).bit_count()] for j in range(n)]
                         for i in range(n)])
    return mat, comb(d, poly.degree)


def _rep_from_table(d: int, s: int, table_mod_p, p: int) -> FpMatrix:
    masks = subset_masks(d, s)
    table = np.array(table_mod_p, dtype=np.int64)
    entries = pairwise_intersection_lookup(masks, table)
    return FpMatrix(entries, p)


def rep_matrix_kneser(d: int, s: int, T, p) -> FpMatrix:
    """Representing matrix for kneser(d, s, T) over F_p from the monic
    polynomial with roots at the non-adjacent sizes below s.

    Entry (A, B) is m(|A meet B|) mod p with m(x) = prod over
    j in {0..s-1} minus T of (x - j).  Off-diagonal zeros at non-adjacent
    pairs hold for any p since those sizes are integer roots of m; the
    diagonal stays nonzero exactly when p does not divide m(s), which is
    automatic for p > s and is checked explicitly otherwise.
    """
    mod = as_modulus(p)
    if not 0 < s <= d:
        raise ParameterError(f"need 0 < s <= d, got s={s} d={d}")
    tset = {int(x) for x in T}
    if any(not 0 <= x < s for x in tset):
        raise ParameterError(f"T must lie inside [0, s-1]: {sorted(tset)}")
    poly = binomial_basis_of_roots(sorted(set(range(s)) - tset))
    diag = poly.evaluate(s) % mod.p
    if diag == 0:
        raise ParameterError(
            f"p = {mod.p} divides the diagonal value m({s}); "
            "this modulus cannot represent the graph with this polynomial")
    table = [poly.evaluate(i) % mod.p for i in range(s + 1)]
    return _rep_from_table(d, s, table, mod.p)


def rep_matrix_kneser_mod(d: int, s: int, t: int, q: int, p) -> FpMatrix:
    """Representing matrix for kneser_mod(d, s, t, q) over F_p, q = p^l,
    from the entry law C(|A meet B| - t - 1, q - 1) mod p.

    Its rational rank is at most C(d, q - 1) regardless of d, which is what
    makes the modular family efficient at large scale.
    """
    mod = as_modulus(p)
    if not 0 <= t < s <= d:
        raise ParameterError(f"need 0 <= t < s <= d, got t={t} s={s} d={d}")
    if not _is_power_of(q, mod.p):
        raise ParameterError(f"q = {q} is not a power of p = {mod.p}")
    if q > s + 1:
        raise ParameterError(f"need q <= s + 1, got q={q} s={s}")
    if (s - t) % q != 0:
        raise ParameterError(f"need s congruent to t mod q, got s={s} t={t} q={q}")
    table = [binom_int(i - t - 1, q - 1) % mod.p for i in range(s + 1)]
    assert table[s] != 0, "diagonal must survive mod p when q divides s - t"
    return _rep_from_table(d, s, table, mod.p)


def _is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def lucas_divisibility(r: int, q: int, p) -> bool:
    """True iff p divides C(r - 1, q - 1), for q a power of the prime p.

    By the digit criterion this happens exactly when q does not divide r:
    base-p digits of q - 1 are all p - 1 in the low positions, so they fit
    under r - 1 iff r ends in enough full digits, i.e. q | r.
    """
    mod = as_modulus(p)
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r}")
    if not _is_power_of(q, mod.p):
        raise ParameterError(f"q = {q} is not a power of p = {mod.p}")
    a, b = r - 1, q - 1
    while b:
        if a % mod.p < b % mod.p:
            return True
        a //= mod.p
        b //= mod.p
    return False

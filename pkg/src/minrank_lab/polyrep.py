"""Bi-representations: explicit factorizations M = A B over F_p whose product
is a representing matrix for a target graph.

A pair of maps u -> a(u), v -> b(v) into F_p^R realizes f(u, v) = <a(u), b(v)>.
If f is nonzero on the diagonal and zero on every non-adjacent ordered pair,
the product matrix witnesses minrank <= R.  The builders here expand the
product polynomials into monomials (subset-indexed for 0/1 vectors, exponent
vectors in general), so R is a count of monomials, never a rank computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from ._subsets import subset_masks, subset_masks_upto
from .errors import ParameterError
from .ff_linalg import FpMatrix, as_modulus, matmul_fp, rank_fp
from .graphs import _unpack_rows, g2
from .inclusion import binomial_basis_of_roots

__all__ = [
    "BiRepresentation", "verify_birep", "matrix_represents", "birep_kneser",
    "birep_gp", "birep_g2_complement", "birep_directed_ternary",
    "minrank_upper_from_birep",
]


@dataclass(frozen=True)
class BiRepresentation:
    """Left factor a (n x R), right factor b (R x n), both over the same F_p."""

    a: FpMatrix
    b: FpMatrix

    def __post_init__(self):
        if self.a.modulus != self.b.modulus:
            raise ParameterError("factors use different moduli")
        if self.a.cols != self.b.rows:
            raise ParameterError(
                f"inner dimensions differ: {self.a.cols} vs {self.b.rows}")
        if self.a.rows != self.b.cols:
            raise ParameterError(
                f"vertex counts differ: {self.a.rows} vs {self.b.cols}")

    @property
    def dimension(self) -> int:
        return self.a.cols

    @property
    def n(self) -> int:
        return self.a.rows

    @property
    def modulus(self):
        return self.a.modulus


def matrix_represents(m: FpMatrix, g) -> bool:
    """Representing-matrix check: every diagonal entry nonzero, and entry
    (u, v) zero for every ordered non-adjacent pair u != v."""
    if m.rows != m.cols:
        raise ParameterError("matrix must be square")
    if m.rows != g.n:
        raise ParameterError(f"matrix is {m.rows}x{m.cols} but graph has n={g.n}")
    ent = m.entries
    if g.n == 0:
        return True
    if (np.diagonal(ent) == 0).any():
        return False
    adj = _unpack_rows(g.adj, g.n)
    allowed = adj.copy()
    np.fill_diagonal(allowed, True)
    return not (ent[~allowed] != 0).any()


def verify_birep(g, rep: BiRepresentation) -> bool:
    """Multiplies the factors and checks the product against the graph."""
    if rep.n != g.n:
        raise ParameterError(f"representation has n={rep.n}, graph has n={g.n}")
    return matrix_represents(matmul_fp(rep.a, rep.b), g)


def minrank_upper_from_birep(g, rep: BiRepresentation) -> int:
    """Exact rank of the verified product; raises if the product fails the
    representation check, since then it bounds nothing."""
    from .errors import IntegrityError

    product = matmul_fp(rep.a, rep.b)
    if not matrix_represents(product, g):
        raise IntegrityError("product matrix does not represent the graph")
    return rank_fp(product)


# ------------------------------------------------------------ builders


def _subset_birep(d: int, s: int, poly, p: int) -> BiRepresentation:
    """Shared monomial expansion for 0/1 characteristic vectors.

    For s-subsets, <x_A, x_B> = |A meet B|, so m(<x, y>) expands through the
    binomial basis as sum over subsets S of size k <= deg of a_k x^S y^S.
    Left factor: column S carries x^S = [S subset of A]; right factor: row S
    carries a_|S| y^S.
    """
    masks = subset_masks(d, s)
    cols = subset_masks_upto(d, poly.degree)
    n, r = len(masks), len(cols)
    marr = np.asarray(masks, dtype=np.int64)
    carr = np.asarray(cols, dtype=np.int64)
    a = ((marr[:, None] & carr[None, :]) == carr[None, :]).astype(np.int64)
    coeff = np.array([poly.coeffs[int(c)] % p for c in np.bitwise_count(carr)],
                     dtype=np.int64)
    b = a.T * coeff[:, None] % p
    return BiRepresentation(FpMatrix(a, p), FpMatrix(b, p))


def birep_kneser(d: int, s: int, T, p) -> BiRepresentation:
    """Bi-representation of kneser(d, s, T) over F_p with dimension
    sum over i <= s - |T| of C(d, i).

    The polynomial is the monic product with roots at the non-adjacent
    intersection sizes; its value at s must be a unit mod p (always true
    for p > s, checked in general).
    """
    mod = as_modulus(p)
    if not 0 < s <= d:
        raise ParameterError(f"need 0 < s <= d, got s={s} d={d}")
    tset = {int(x) for x in T}
    if any(not 0 <= x < s for x in tset):
        raise ParameterError(f"T must lie inside [0, s-1]: {sorted(tset)}")
    poly = binomial_basis_of_roots(sorted(set(range(s)) - tset))
    if poly.evaluate(s) % mod.p == 0:
        raise ParameterError(
            f"p = {mod.p} divides the diagonal value m({s}); no representation "
            "from this polynomial")
    return _subset_birep(d, s, poly, mod.p)


def birep_gp(d: int, p) -> BiRepresentation:
    """Bi-representation of kneser(d, 2p - 1, {p - 1}) over F_p with
    dimension sum over i <= p - 1 of C(d, i).

    Uses m(x) = prod over j in 0..p-2 of (x - j): intersection sizes of two
    (2p-1)-subsets that are not congruent to p - 1 mod p land either in
    {0..p-2}, where m vanishes as an integer, or in {p..2p-2}, where m is a
    product of p consecutive integers and vanishes mod p; the diagonal value
    m(2p - 1) avoids every multiple of p.
    """
    mod = as_modulus(p)
    s = 2 * mod.p - 1
    if d < s:
        raise ParameterError(f"need d >= 2p - 1 = {s}, got d={d}")
    poly = binomial_basis_of_roots(range(mod.p - 1))
    return _subset_birep(d, s, poly, mod.p)


def birep_g2_complement(d: int, p) -> BiRepresentation:
    """Bi-representation of the complement of g2(d, p) with dimension
    1 + C(d + p - 2, p - 1).

    Realizes f(x, y) = 1 - <x, y>^(p - 1): by Fermat it is 1 exactly on
    orthogonal pairs, which are the diagonal (self-orthogonal vertices) and
    the complement's non-edges' complements; expanding the power gives one
    monomial column per exponent vector of total degree p - 1 plus the
    constant.
    """
    mod = as_modulus(p)
    verts = g2(d, p).labels
    v = np.array(verts, dtype=np.int64)
    n = v.shape[0]
    exponents = [e for e in itertools.product(range(mod.p), repeat=d)
                 if sum(e) == mod.p - 1]
    r = 1 + len(exponents)
    assert len(exponents) == comb(d + mod.p - 2, mod.p - 1)
    a = np.ones((n, r), dtype=np.int64)
    b = np.ones((r, n), dtype=np.int64)
    for idx, e in enumerate(exponents, start=1):
        mono = np.ones(n, dtype=np.int64)
        for c, exp in enumerate(e):
            for _ in range(exp):
                mono = mono * v[:, c] % mod.p
        multi = factorial(mod.p - 1)
        for exp in e:
            multi //= factorial(exp)
        a[:, idx] = mono
        b[idx, :] = (-multi) % mod.p * mono % mod.p
    return BiRepresentation(FpMatrix(a, p), FpMatrix(b, p))


def birep_directed_ternary(d: int) -> BiRepresentation:
    """Bi-representation over F_3 of directed_ternary(d) with dimension 2^d.

    f(x, y) = prod over coordinates of (x_i - y_i - 1) is nonzero exactly
    when no coordinate difference is 1 mod 3; expanding the product over the
    subset of coordinates contributing x_i gives columns indexed by subsets
    of [d], with the complementary coordinates contributing (-y_i - 1).
    """
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    verts = list(itertools.product(range(3), repeat=d))
    v = np.array(verts, dtype=np.int64)
    n = v.shape[0]
    cols = subset_masks_upto(d, d)
    r = len(cols)
    a = np.ones((n, r), dtype=np.int64)
    b = np.ones((r, n), dtype=np.int64)
    for idx, smask in enumerate(cols):
        amono = np.ones(n, dtype=np.int64)
        bmono = np.ones(n, dtype=np.int64)
        for c in range(d):
            if smask >> c & 1:
                amono = amono * v[:, c] % 3
            else:
                bmono = bmono * ((-v[:, c] - 1) % 3) % 3
        a[:, idx] = amono
        b[idx, :] = bmono
    return BiRepresentation(FpMatrix(a, 3), FpMatrix(b, 3))

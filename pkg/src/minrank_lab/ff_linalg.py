"""Exact linear algebra over prime fields and over the rationals.

Matrices are dense and immutable.  Work over F_p happens on machine-word
numpy arrays; p is capped below 2^31 so products of two reduced entries fit
in int64.  The p = 2 rank path packs rows into uint64 words and eliminates
with whole-row XOR.  Rational rank is fraction-free Bareiss elimination over
Python big integers.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import ParameterError

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for n < 2^31."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A prime p with 2 <= p < 2^31, validated at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ParameterError(f"modulus must be an int, got {self.p!r}")
        if not 2 <= self.p < MAX_PRIME:
            raise ParameterError(f"modulus out of range [2, 2^31): {self.p}")
        if not is_prime(self.p):
            raise ParameterError(f"modulus must be prime: {self.p}")


def as_modulus(p) -> PrimeModulus:
    if isinstance(p, PrimeModulus):
        return p
    return PrimeModulus(int(p))


def _dtype_for(p: int):
    if p <= 1 << 8:
        return np.uint8
    if p <= 1 << 16:
        return np.uint16
    return np.uint32


class FpMatrix:
    """Dense matrix over F_p.  Entries are stored reduced into [0, p)."""

    __slots__ = ("entries", "modulus")

    def __init__(self, entries, modulus):
        mod = as_modulus(modulus)
        arr = np.asarray(entries)
        if arr.ndim != 2:
            raise ParameterError(f"expected a 2-d array, got ndim={arr.ndim}")
        if arr.size:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ParameterError(f"entries must be integers, got dtype {arr.dtype}")
            if arr.min() < 0 or arr.max() >= mod.p:
                raise ParameterError("entries must already lie in [0, p)")
        arr = np.ascontiguousarray(arr, dtype=_dtype_for(mod.p))
        arr.flags.writeable = False
        self.entries = arr
        self.modulus = mod

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.entries.shape == other.entries.shape
            and bool((self.entries == other.entries).all())
        )

    __hash__ = None

    def __repr__(self):
        return f"FpMatrix({self.rows}x{self.cols} mod {self.modulus.p})"


def _check_rectangular(rows) -> tuple[int, int]:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    for r in rows:
        if len(r) != ncols:
            raise ParameterError("ragged rows")
    return nrows, ncols


class IntMatrix:
    """Dense matrix of arbitrary-precision Python integers."""

    __slots__ = ("data",)

    def __init__(self, rows):
        converted = []
        for row in rows:
            out = []
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                    raise ParameterError(f"integer entry expected, got {x!r}")
                out.append(int(x))
            converted.append(tuple(out))
        self.data = tuple(converted)
        _check_rectangular(self.data)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.data))) if self.data else IntMatrix(())

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.data == other.data

    __hash__ = None

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


class RationalMatrix:
    """Dense matrix of Fractions (always in lowest terms, positive denominator)."""

    __slots__ = ("data",)

    def __init__(self, rows):
        converted = []
        for row in rows:
            out = []
            for x in row:
                if isinstance(x, float):
                    raise ParameterError("floats are not accepted; pass Fraction or int")
                out.append(Fraction(x))
            converted.append(tuple(out))
        self.data = tuple(converted)
        _check_rectangular(self.data)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.data == other.data

    __hash__ = None

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------- products


def matmul_fp(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    """Exact product over F_p, accumulated in int64 chunks so nothing wraps."""
    if a.modulus != b.modulus:
        raise ParameterError("moduli differ")
    if a.cols != b.rows:
        raise ParameterError(f"shape mismatch: {a.cols} vs {b.rows}")
    p = a.modulus.p
    prod = mat_product_mod(a.entries, b.entries, p)
    return FpMatrix(prod, a.modulus)


def mat_product_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p on raw arrays; chunked so int64 accumulators never overflow."""
    a64 = a.astype(np.int64, copy=False)
    b64 = b.astype(np.int64, copy=False)
    inner = a64.shape[1]
    # each partial product is < p^2; chunk of c terms stays < c * p^2
    chunk = max(1, (2**62) // (p * p))
    if inner <= chunk:
        return (a64 @ b64) % p
    acc = np.zeros((a64.shape[0], b64.shape[1]), dtype=np.int64)
    for lo in range(0, inner, chunk):
        hi = min(lo + chunk, inner)
        acc = (acc + a64[:, lo:hi] @ b64[lo:hi, :]) % p
    return acc


def matmul_int(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ParameterError(f"shape mismatch: {a.cols} vs {b.rows}")
    bt = b.transpose().data
    out = []
    for arow in a.data:
        out.append(tuple(sum(x * y for x, y in zip(arow, bcol)) for bcol in bt))
    return IntMatrix(out)


def mod_reduce(m: IntMatrix, p) -> FpMatrix:
    mod = as_modulus(p)
    rows = [[x % mod.p for x in row] for row in m.data]
    arr = np.array(rows, dtype=np.int64) if rows else np.zeros((0, 0), dtype=np.int64)
    return FpMatrix(arr.reshape(m.rows, m.cols), mod)


# ---------------------------------------------------------------- rank


def rank_fp(m: FpMatrix) -> int:
    """Rank over F_p.  Bit-packed XOR elimination for p = 2, else plain
    Gaussian elimination on int64 with Fermat inverses."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.modulus.p == 2:
        return _rank_gf2(m.entries)
    return _rank_fp_generic(m.entries, m.modulus.p)


def _rank_gf2(entries: np.ndarray) -> int:
    nrows, ncols = entries.shape
    packed = np.packbits(entries.astype(np.uint8), axis=1, bitorder="little")
    pad = (-packed.shape[1]) % 8
    if pad:
        packed = np.pad(packed, ((0, 0), (0, pad)))
    words = np.ascontiguousarray(packed).view(np.uint64)
    r = 0
    for col in range(ncols):
        wi, bi = divmod(col, 64)
        mask = np.uint64(1 << bi)
        nz = np.nonzero(words[r:, wi] & mask)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            words[[r, piv]] = words[[piv, r]]
        hit = nz[1:] + r
        if hit.size:
            words[hit] ^= words[r]
        r += 1
        if r == nrows:
            break
    return r


def _rank_fp_generic(entries: np.ndarray, p: int) -> int:
    a = entries.astype(np.int64)
    nrows, ncols = a.shape
    r = 0
    for col in range(ncols):
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = a[r] * inv % p
        hit = nz[1:] + r
        if hit.size:
            a[hit] = (a[hit] - a[hit, col:col + 1] * a[r]) % p
        r += 1
        if r == nrows:
            break
    return r


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free elimination; every division is exact by construction."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv_row = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv_row is None:
            continue
        if piv_row != r:
            m[r], m[piv_row] = m[piv_row], m[r]
        pv = m[r][c]
        for i in range(r + 1, nr):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, nc):
                num = pv * row_i[j] - mic * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss exactness violated"
                row_i[j] = q
            row_i[c] = 0
        prev = pv
        r += 1
    return r


def rank_rational(m) -> int:
    """Exact rank over Q of an IntMatrix or RationalMatrix."""
    if isinstance(m, IntMatrix):
        return _bareiss_rank([list(row) for row in m.data])
    if isinstance(m, RationalMatrix):
        cleared = []
        for row in m.data:
            den = lcm(*(f.denominator for f in row)) if row else 1
            cleared.append([int(f * den) for f in row])
        return _bareiss_rank(cleared)
    raise ParameterError(f"expected IntMatrix or RationalMatrix, got {type(m).__name__}")


# ---------------------------------------------------------------- text format
#
# Line 1: "rows cols modulus" (modulus 0 means integer or rational entries).
# Then one line per row, whitespace-separated entries; rational entries are
# written num/den (always with the slash, so the parser can tell the two
# modulus-0 types apart).


def dump_matrix_text(m) -> str:
    lines = []
    if isinstance(m, FpMatrix):
        lines.append(f"{m.rows} {m.cols} {m.modulus.p}")
        for row in m.entries:
            lines.append(" ".join(str(int(x)) for x in row))
    elif isinstance(m, IntMatrix):
        lines.append(f"{m.rows} {m.cols} 0")
        for row in m.data:
            lines.append(" ".join(str(x) for x in row))
    elif isinstance(m, RationalMatrix):
        lines.append(f"{m.rows} {m.cols} 0")
        for row in m.data:
            lines.append(" ".join(f"{f.numerator}/{f.denominator}" for f in row))
    else:
        raise ParameterError(f"cannot serialize {type(m).__name__}")
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParameterError("empty matrix text")
    header = lines[0].split()
    if len(header) != 3:
        raise ParameterError(f"bad header: {lines[0]!r}")
    nrows, ncols, modulus = (int(tok) for tok in header)
    if nrows < 0 or ncols < 0 or modulus < 0:
        raise ParameterError("negative value in header")
    body = lines[1:]
    if len(body) != nrows:
        raise ParameterError(f"expected {nrows} rows, got {len(body)}")
    tokens = [ln.split() for ln in body]
    for i, row in enumerate(tokens):
        if len(row) != ncols:
            raise ParameterError(f"row {i} has {len(row)} entries, expected {ncols}")
    rational = any("/" in tok for row in tokens for tok in row)
    if modulus == 0 and rational:
        return RationalMatrix([[Fraction(tok) for tok in row] for row in tokens])
    if modulus == 0:
        return IntMatrix([[int(tok) for tok in row] for row in tokens])
    vals = [[int(tok) for tok in row] for row in tokens]
    arr = np.array(vals, dtype=np.int64) if vals else np.zeros((0, ncols), np.int64)
    return FpMatrix(arr.reshape(nrows, ncols), modulus)

"""Rigorous rational enclosures of log2 and the binary entropy function.

log2 of a positive rational is computed by binary digit extraction on an
integer-scaled mantissa interval: square the mantissa, emit a 1 and halve
when it reaches 2, emit a 0 otherwise.  The interval endpoints are rounded
outward at every step, and a digit is emitted only while both endpoints
agree on it, so the digits are provably those of the true value and the
final bracket is a genuine enclosure.  Endpoints are exact Fractions; no
floating point enters any bound.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParameterError

_WORK_BITS = 192
_OUT_BITS = 64


def _floor_log2(num: int, den: int) -> int:
    """Largest e with 2^e <= num/den."""
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        if num < den << e:
            e -= 1
    else:
        if num << -e < den:
            e -= 1
    return e


def _ceil_shift(x: int, bits: int) -> int:
    return -((-x) >> bits)


def log2_interval(x, out_bits: int = _OUT_BITS) -> tuple[Fraction, Fraction]:
    """Exact rational enclosure [lo, hi] with lo <= log2(x) <= hi and width
    2^-out_bits (wider only if a digit decision becomes ambiguous, which
    needs log2(x) within ~2^-(work-out) of a dyadic rational)."""
    x = Fraction(x)
    if x <= 0:
        raise ParameterError(f"log2 needs a positive argument, got {x}")
    if out_bits < 1 or 2 * out_bits > _WORK_BITS:
        raise ParameterError(f"out_bits out of range: {out_bits}")
    num, den = x.numerator, x.denominator
    e = _floor_log2(num, den)
    # scaled mantissa interval: true m * 2^W is inside [mlo, mhi], m in [1, 2)
    shift = _WORK_BITS - e
    if shift >= 0:
        mlo, rem = divmod(num << shift, den)
    else:
        mlo, rem = divmod(num, den << -shift)
    mhi = mlo + (1 if rem else 0)
    one = 1 << _WORK_BITS
    frac = 0
    emitted = 0
    for _ in range(out_bits):
        mlo = (mlo * mlo) >> _WORK_BITS
        mhi = _ceil_shift(mhi * mhi, _WORK_BITS)
        if mlo >= 2 * one:
            frac = frac * 2 + 1
            mlo >>= 1
            mhi = _ceil_shift(mhi, 1)
        elif mhi < 2 * one:
            frac = frac * 2
        else:
            break
        emitted += 1
    return (e + Fraction(frac, 1 << emitted),
            e + Fraction(frac + 1, 1 << emitted))


def binary_entropy_interval(x, out_bits: int = _OUT_BITS
                            ) -> tuple[Fraction, Fraction]:
    """Enclosure of H(x) = x log2(1/x) + (1-x) log2(1/(1-x)) on [0, 1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ParameterError(f"entropy argument outside [0, 1]: {x}")
    if x == 0 or x == 1:
        return Fraction(0), Fraction(0)
    lo1, hi1 = log2_interval(1 / x, out_bits)
    lo2, hi2 = log2_interval(1 / (1 - x), out_bits)
    # both log terms are nonnegative, so endpoint sums stay ordered
    lo = x * lo1 + (1 - x) * lo2
    hi = x * hi1 + (1 - x) * hi2
    return lo, hi


def interval_one_minus_ratio(numer: tuple[Fraction, Fraction],
                             denom: tuple[Fraction, Fraction]
                             ) -> tuple[Fraction, Fraction]:
    """Enclosure of 1 - a/b from enclosures of a >= 0 and b > 0."""
    alo, ahi = numer
    blo, bhi = denom
    if blo <= 0:
        raise ParameterError("denominator interval must be positive")
    if alo < 0:
        raise ParameterError("numerator interval must be nonnegative")
    return 1 - ahi / blo, 1 - alo / bhi

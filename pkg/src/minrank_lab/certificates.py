"""Exact vector chromatic certificates for the Kneser-type graphs.

Each s-subset A of [d] gets the vector u_A with entry z = d/s - 1 on the
coordinates of A and -1 elsewhere.  For |A meet B| = i the inner product is
a quadratic in z that depends only on i:

    <u_A, u_B> = i z^2 - 2 (s - i) z + (d - 2 s + i),
    <u_A, u_A> = s z^2 + (d - s).

A strict vector coloring with value kappa requires, for every adjacent pair,
<u_A, u_B> / <u_A, u_A> <= -1 / (kappa - 1); the equality variant pins the
ratio exactly and certifies the theta function of the complement.  With
kappa = d (s - t) / (s^2 - d t) the bound is tight at i = t.  All arithmetic
is Fraction-exact; verification walks intersection classes, never vertex
pairs, with a literal dot product audit per class on one representative pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegrityError, ParameterError

MODE_INEQUALITY = "inequality"
MODE_EQUALITY = "equality"
_MODES = (MODE_INEQUALITY, MODE_EQUALITY)


@dataclass(frozen=True)
class KneserVectorCertificate:
    d: int
    s: int
    t: int
    z: Fraction
    kappa: Fraction
    mode: str

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ParameterError(f"mode must be one of {_MODES}, got {self.mode!r}")


def make_certificate(d: int, s: int, t: int, mode: str = MODE_INEQUALITY
                     ) -> KneserVectorCertificate:
    """Certificate with z = d/s - 1 and kappa = d(s - t) / (s^2 - d t).

    Requires 0 <= t < s < d and s^2 > d t; outside that window kappa is not
    a positive vector-coloring value and the construction says nothing.
    """
    for name, val in (("d", d), ("s", s), ("t", t)):
        if isinstance(val, bool) or not isinstance(val, int):
            raise ParameterError(f"{name} must be an int, got {val!r}")
    if not 0 <= t < s < d:
        raise ParameterError(f"need 0 <= t < s < d, got t={t} s={s} d={d}")
    if s * s <= d * t:
        raise ParameterError(f"need s^2 > d t, got s^2={s*s} <= dt={d*t}")
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}, got {mode!r}")
    z = Fraction(d, s) - 1
    kappa = Fraction(d * (s - t), s * s - d * t)
    assert kappa > 1
    return KneserVectorCertificate(d=d, s=s, t=t, z=z, kappa=kappa, mode=mode)


def achievable_intersection_classes(d: int, s: int) -> list[int]:
    """Sizes |A meet B| realized by distinct s-subsets of [d]."""
    return list(range(max(0, 2 * s - d), s))


def adjacent_intersection_classes(cert: KneserVectorCertificate) -> list[int]:
    """The classes the certificate constrains: i <= t for the inequality
    form (the residue graphs embed there), exactly i = t for equality."""
    achievable = achievable_intersection_classes(cert.d, cert.s)
    if cert.mode == MODE_EQUALITY:
        return [i for i in achievable if i == cert.t]
    return [i for i in achievable if i <= cert.t]


def class_inner_product(d: int, s: int, i: int, z: Fraction) -> Fraction:
    return i * z * z - 2 * (s - i) * z + (d - 2 * s + i)


def class_norm_squared(d: int, s: int, z: Fraction) -> Fraction:
    return s * z * z + (d - s)


def _audit_class(d: int, s: int, i: int, z: Fraction):
    """Literal dot product on one representative pair with |A meet B| = i;
    guards the closed form against an off-by-one in the class algebra."""
    a = set(range(s))
    b = set(range(s - i, 2 * s - i))
    assert len(b) == s and max(b) < d and len(a & b) == i
    ua = [z if c in a else Fraction(-1) for c in range(d)]
    ub = [z if c in b else Fraction(-1) for c in range(d)]
    literal = sum(x * y for x, y in zip(ua, ub))
    if literal != class_inner_product(d, s, i, z):
        raise IntegrityError(
            f"inner product formula disagrees with a literal pair at i={i}")
    norm = sum(x * x for x in ua)
    if norm != class_norm_squared(d, s, z):
        raise IntegrityError("norm formula disagrees with a literal vector")


def verify_certificate(cert: KneserVectorCertificate, exhaustive: bool = True) -> bool:
    """Checks the vector-coloring constraint class by class.

    Exhaustive mode audits every achievable intersection class against a
    literal representative pair and enforces the constraint on each adjacent
    class; the sampled mode audits and checks only the extreme class and the
    tight class i = t.  Returns False if some adjacent class violates the
    constraint; integrity failures in the audit raise instead.
    """
    threshold = -1 / (cert.kappa - 1)
    norm = class_norm_squared(cert.d, cert.s, cert.z)
    if norm <= 0:
        raise IntegrityError("vector norms must be positive")
    adjacent = adjacent_intersection_classes(cert)
    if exhaustive:
        audit = achievable_intersection_classes(cert.d, cert.s)
        to_check = adjacent
    else:
        audit = sorted(set(adjacent[:1] + adjacent[-1:]))
        to_check = audit
    for i in audit:
        _audit_class(cert.d, cert.s, i, cert.z)
    for i in to_check:
        ratio = class_inner_product(cert.d, cert.s, i, cert.z) / norm
        if cert.mode == MODE_EQUALITY:
            if ratio != threshold:
                return False
        elif ratio > threshold:
            return False
    return True


def theta_upper_bound(d: int, s: int, t: int) -> Fraction:
    """kappa for the equality certificate, verified exhaustively first.

    For the graph whose adjacency is exactly intersection t, the equality
    form pins the Lovasz theta function of the complement to kappa, so this
    value is a genuine chromatic-side upper bound; a failed verification
    raises rather than returning an unsound number.
    """
    cert = make_certificate(d, s, t, MODE_EQUALITY)
    if not verify_certificate(cert, exhaustive=True):
        raise IntegrityError(
            f"equality certificate failed for d={d} s={s} t={t}")
    return cert.kappa


def worst_normalized_inner_product(d: int, s: int, t: int, z: Fraction) -> Fraction:
    """max over adjacent classes i <= t of <u_A, u_B> / |u|^2 for entry
    value z; minimized (best possible coloring) at z = d/s - 1."""
    classes = [i for i in achievable_intersection_classes(d, s) if i <= t]
    if not classes:
        raise ParameterError("no adjacent intersection classes exist")
    norm = s * z * z + (d - s)
    if norm <= 0:
        raise ParameterError("degenerate entry value z")
    return max(class_inner_product(d, s, i, z) / norm for i in classes)

"""The genus-zero modular curve of 7-isogenies: rational parametrization of
j-invariant pairs, fiber solving, and exact enumeration of integral points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .arith import poly_eval, poly_mul, poly_pow
from .curve import WeierstrassCurve, compute_invariants
from .errors import DomainError

# j1(t) = (t^2+13t+49)(t^2+245t+2401)^3 / t^7
# j2(t) = (t^2+13t+49)(t^2+5t+1)^3 / t
# The involution t -> 49/t swaps the two coordinates.
_QUAD = [49, 13, 1]
_J1_NUM = poly_mul(_QUAD, poly_pow([2401, 245, 1], 3))  # degree 8
_J2_NUM = poly_mul(_QUAD, poly_pow([1, 5, 1], 3))  # degree 8


@dataclass(frozen=True)
class IsogenyPoint:
    t: Fraction
    j1: Fraction
    j2: Fraction


@dataclass(frozen=True)
class IntegralPoint:
    t: int
    j1: int
    j2: int
    cm: bool


def j_pair_from_t(t) -> IsogenyPoint:
    """Exact j-pair parametrized by t != 0 (t = 0 is a cusp)."""
    t = Fraction(t)
    if t == 0:
        raise DomainError("t = 0 is a cusp, not an isogeny point")
    j1 = Fraction(poly_eval(_J1_NUM, t), t**7)
    j2 = Fraction(poly_eval(_J2_NUM, t), t)
    return IsogenyPoint(t, j1, j2)


def t_values_for_j(j) -> list[Fraction]:
    """All rational t != 0 with j1(t) = j, via the rational root solver on
    den(j) * num_j1(t) - num(j) * t^7."""
    j = Fraction(j)
    coeffs = [j.denominator * c for c in _J1_NUM]
    coeffs[7] -= j.numerator
    roots = [t for t in arith.rational_roots(coeffs) if t != 0]
    for t in roots:
        assert j_pair_from_t(t).j1 == j
    return roots


def has_rational_7_isogeny(E: WeierstrassCurve) -> bool:
    """A rational 7-isogeny exists iff j(E) lies on a rational fiber.

    Twisting preserves the property, so the j-level test decides it."""
    return bool(t_values_for_j(compute_invariants(E).j))


def isogenous_j_values(E: WeierstrassCurve) -> list[Fraction]:
    """j-invariants of the 7-isogeny partner(s) of E."""
    ts = t_values_for_j(compute_invariants(E).j)
    if not ts:
        raise DomainError("curve has no rational 7-isogeny")
    out: list[Fraction] = []
    for t in ts:
        j2 = j_pair_from_t(t).j2
        if j2 not in out:
            out.append(j2)
    return out


def integral_points_x07() -> list[IntegralPoint]:
    """All integer t making both coordinates integral.

    Divisibility forces t | 7^14 for the first coordinate and t | 7^2 for the
    second; the scan checks both integralities exactly.  The points fixed by
    t -> 49/t (t = +-7) are the CM points.
    """
    points = []
    for t in (s * 7**k for k in range(15) for s in (1, -1)):
        pt = j_pair_from_t(t)
        if pt.j1.denominator == 1 and pt.j2.denominator == 1:
            points.append(IntegralPoint(t, int(pt.j1), int(pt.j2), cm=(t * t == 49)))
    points.sort(key=lambda P: (abs(P.t), -P.t))
    assert len(points) == 6
    return points

"""Rational 7-torsion detection and the point-count obstruction at 2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import arith
from .arith import poly_add, poly_mul, poly_pow, poly_scale
from .curve import (
    WeierstrassCurve,
    compute_invariants,
    minimal_model,
    point_count_mod,
)
from .errors import DomainError, InconsistencyError
from .localdata import reduction_type

_FILTER_PRIME_BOUND = 100

Point = tuple[Fraction, Fraction] | None  # None is the point at infinity


@dataclass(frozen=True)
class TorsionCertificate:
    has_7_torsion: bool
    witness: tuple[Fraction, Fraction] | None
    filter_evidence: tuple[tuple[int, int], ...]


def division_poly_7(E: WeierstrassCurve) -> list[int]:
    """The 7-division polynomial in x (degree 24, leading coefficient 7).

    Built from the standard recursion with psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x
    + b6 eliminated, so odd-index polynomials live in Z[x].
    """
    inv = compute_invariants(E)
    b2, b4, b6, b8 = inv.b2, inv.b4, inv.b6, inv.b8
    psi2_sq = [b6, 2 * b4, b2, 4]
    psi3 = [b8, 3 * b6, 3 * b4, b2, 3]
    # psi_4 = psi_2 * g4
    g4 = [
        b4 * b8 - b6 * b6,
        b2 * b8 - b4 * b6,
        10 * b8,
        10 * b6,
        5 * b4,
        b2,
        2,
    ]
    psi5 = poly_add(poly_mul(poly_pow(psi2_sq, 2), g4), poly_scale(poly_pow(psi3, 3), -1))
    psi7 = poly_add(poly_mul(psi5, poly_pow(psi3, 3)), poly_scale(poly_mul(poly_pow(psi2_sq, 2), poly_pow(g4, 3)), -1))
    assert len(psi7) == 25 and psi7[-1] == 7
    return psi7


def negate(E: WeierstrassCurve, P: Point) -> Point:
    if P is None:
        return None
    x, y = P
    return (x, -y - E.a1 * x - E.a3)


def add_points(E: WeierstrassCurve, P: Point, Q: Point) -> Point:
    """Exact group law on the long Weierstrass model."""
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = (Fraction(a) for a in E.ainvs())
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def scalar_mul(E: WeierstrassCurve, k: int, P: Point) -> Point:
    if k < 0:
        return scalar_mul(E, -k, negate(E, P))
    R: Point = None
    Q = P
    while k:
        if k & 1:
            R = add_points(E, R, Q)
        Q = add_points(E, Q, Q)
        k >>= 1
    return R


def is_on_curve(E: WeierstrassCurve, P: Point) -> bool:
    if P is None:
        return True
    x, y = P
    return y * y + E.a1 * x * y + E.a3 * y == x**3 + E.a2 * x * x + E.a4 * x + E.a6


def divisible_by_7_filter(E: WeierstrassCurve, with_evidence: bool = False):
    """Necessary condition for rational 7-torsion: it injects into the
    reduction at every good prime, so 7 must divide every good point count
    below the filter bound.  A False certifies absence."""
    mm = minimal_model(E)
    evidence = []
    ok = True
    for q in _small_good_primes(mm.disc_min):
        n = point_count_mod(mm.curve, q)
        evidence.append((q, n))
        if n % 7 != 0:
            ok = False
            break
    if with_evidence:
        return ok, tuple(evidence)
    return ok


_PRIMES_BELOW_100 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def _small_good_primes(disc_min: int):
    return [q for q in _PRIMES_BELOW_100 if disc_min % q != 0]


@lru_cache(maxsize=None)
def max_points_over_f2() -> int:
    """Exhaust all 32 coefficient tuples over F_2; the nonsingular ones have
    at most 5 points, which is what rules out good reduction at 2 for a curve
    with a rational point of order 7."""
    best = 0
    for bits in range(32):
        a1, a2, a3, a4, a6 = ((bits >> i) & 1 for i in range(5))
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc % 2 == 0:
            continue
        count = 1
        for x in (0, 1):
            for y in (0, 1):
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    count += 1
        best = max(best, count)
    return best


def rational_7_torsion(E: WeierstrassCurve) -> TorsionCertificate:
    """Decide rational 7-torsion exactly.

    After the point-count filter, rational roots of the 7-division polynomial
    give candidate x-coordinates; a rational y and the order of the point are
    then verified with the explicit group law.
    """
    ok, evidence = divisible_by_7_filter(E, with_evidence=True)
    if not ok:
        return TorsionCertificate(False, None, evidence)
    mm = minimal_model(E)
    Emin = mm.curve
    for x in arith.rational_roots(division_poly_7(Emin)):
        b = Fraction(Emin.a1) * x + Emin.a3
        rhs = x**3 + Emin.a2 * x * x + Emin.a4 * x + Emin.a6
        disc = b * b + 4 * rhs
        if disc < 0:
            continue
        root = _fraction_sqrt(disc)
        if root is None:
            continue
        y = (-b + root) / 2
        P: Point = (x, y)
        assert is_on_curve(Emin, P)
        multiples = [scalar_mul(Emin, k, P) for k in range(1, 8)]
        if multiples[6] is None and all(m is not None for m in multiples[:6]):
            return TorsionCertificate(True, P, evidence)
    return TorsionCertificate(False, None, evidence)


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    from math import isqrt

    rn, rd = isqrt(f.numerator), isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


def hasse_forces_bad_at_2(E: WeierstrassCurve, certificate: TorsionCertificate) -> bool:
    """A curve with a rational point of order 7 cannot have good reduction at
    2 (only 5 points fit over F_2), so reduction at 2 must be multiplicative.
    Verified against the computed reduction type."""
    if not certificate.has_7_torsion:
        raise DomainError("certificate does not assert 7-torsion")
    assert max_points_over_f2() == 5
    ld = reduction_type(minimal_model(E), 2)
    if ld.reduction.value == "good":
        raise InconsistencyError("rational 7-torsion with good reduction at 2: bug or false certificate")
    if not ld.reduction.is_multiplicative():
        raise InconsistencyError(f"expected multiplicative reduction at 2, found {ld.reduction.value}")
    return True

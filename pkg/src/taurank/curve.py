"""Weierstrass models over Q: invariants, global minimal models,
quadratic twists, and point counts over small prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import arith
from .errors import DomainError, SingularCurveError


@dataclass(frozen=True)
class WeierstrassCurve:
    """Integral model y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = getattr(self, name)
            if not isinstance(v, int):
                raise DomainError(f"{name} must be an integer, got {v!r}")
        if _discriminant(self) == 0:
            raise SingularCurveError(f"curve {self.ainvs()} is singular")

    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @classmethod
    def from_rational_ainvs(cls, ainvs) -> "WeierstrassCurve":
        """Clear denominators: (x,y) -> (u^2 x, u^3 y) scales a_i by u^i."""
        fr = [Fraction(a) for a in ainvs]
        if len(fr) != 5:
            raise DomainError("expected 5 coefficients a1,a2,a3,a4,a6")
        u = lcm(*(f.denominator for f in fr)) if any(f.denominator != 1 for f in fr) else 1
        weights = (1, 2, 3, 4, 6)
        scaled = [f * u**w for f, w in zip(fr, weights)]
        assert all(s.denominator == 1 for s in scaled)
        return cls(*(int(s) for s in scaled))


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j: Fraction


def _b_invariants(E: WeierstrassCurve) -> tuple[int, int, int, int]:
    a1, a2, a3, a4, a6 = E.a1, E.a2, E.a3, E.a4, E.a6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _discriminant(E: WeierstrassCurve) -> int:
    b2, b4, b6, b8 = _b_invariants(E)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def compute_invariants(E: WeierstrassCurve) -> CurveInvariants:
    b2, b4, b6, b8 = _b_invariants(E)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularCurveError("discriminant is zero")
    assert 4 * b8 == b2 * b6 - b4 * b4
    assert 1728 * disc == c4**3 - c6 * c6
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, Fraction(c4**3, disc))


@dataclass(frozen=True)
class MinimalModel:
    """Globally minimal model plus the scaling that reached it."""

    curve: WeierstrassCurve
    invariants: CurveInvariants
    u: int
    u_exponents: tuple[tuple[int, int], ...]

    @property
    def disc_min(self) -> int:
        return self.invariants.disc


def _kraus_ok_2(c4: int, c6: int) -> bool:
    # existence of an integral model, 2-adic condition
    if c6 % 4 == 3:
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def _kraus_ok_3(c6: int) -> bool:
    return c6 == 0 or arith.valuation(c6, 3) != 2


def _curve_from_c4_c6(c4: int, c6: int) -> WeierstrassCurve:
    """Standard reduced integral model with the given invariants.

    Requires the Kraus conditions; b2 is pinned by b2 = -c6 (mod 12) on the
    residues an integral model can realize.
    """
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    num_b4 = b2 * b2 - c4
    if num_b4 % 24 != 0:
        raise DomainError(f"invariant pair ({c4}, {c6}) admits no integral model")
    b4 = num_b4 // 24
    num_b6 = -(b2**3) + 36 * b2 * b4 - c6
    if num_b6 % 216 != 0:
        raise DomainError(f"invariant pair ({c4}, {c6}) admits no integral model")
    b6 = num_b6 // 216
    a1 = b2 % 2
    a3 = b6 % 2
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    E = WeierstrassCurve(a1, a2, a3, a4, a6)
    inv = compute_invariants(E)
    if (inv.c4, inv.c6) != (c4, c6):
        raise DomainError(f"invariant pair ({c4}, {c6}) admits no integral model")
    return E


def minimal_model(E: WeierstrassCurve) -> MinimalModel:
    """Global minimal model over Q (Laska-Kraus-Connell).

    The scaling exponent at each prime is bounded by valuations of
    gcd(c6^2, disc); at 2 and 3 it is lowered until the Kraus integrality
    conditions hold again.
    """
    inv = compute_invariants(E)
    c4, c6, disc = inv.c4, inv.c6, inv.disc
    g = gcd(c6 * c6, disc)
    exps: list[tuple[int, int]] = []
    u = 1
    for p, e in arith.factor(g).factors:
        d = e // 12
        if d == 0:
            continue
        if p == 2:
            while d > 0 and not _kraus_ok_2(c4 // 2 ** (4 * d), c6 // 2 ** (6 * d)):
                d -= 1
        elif p == 3:
            while d > 0 and not _kraus_ok_3(c6 // 3 ** (6 * d)):
                d -= 1
        if d > 0:
            exps.append((p, d))
            u *= p**d
    c4m, c6m = c4 // u**4, c6 // u**6
    Emin = _curve_from_c4_c6(c4m, c6m)
    minv = compute_invariants(Emin)
    assert minv.disc * u**12 == disc
    return MinimalModel(Emin, minv, u, tuple(exps))


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """Twist by a squarefree d: same j, isomorphic over Q(sqrt(d)).

    Any long model is first pushed to y^2 = x^3 - 27*c4*x - 54*c6 (completing
    the square), twisted by scaling (c4, c6) -> (d^2 c4, d^3 c6), then
    re-minimalized so downstream valuations are well defined.
    """
    if d == 0 or not arith.is_squarefree(d):
        raise DomainError(f"twist parameter must be a nonzero squarefree integer, got {d}")
    inv = compute_invariants(E)
    twisted = WeierstrassCurve(0, 0, 0, -27 * inv.c4 * d * d, -54 * inv.c6 * d**3)
    return minimal_model(twisted).curve


def point_count_mod(E: WeierstrassCurve, q: int) -> int:
    """#E(F_q) including infinity, on the reduced global minimal model.

    Exhaustive in x with a quadratic-residue count in y; plain enumeration
    at q = 2.  Requires good reduction at q.
    """
    if not arith.is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    mm = minimal_model(E)
    if mm.disc_min % q == 0:
        raise DomainError(f"bad reduction at {q}")
    a1, a2, a3, a4, a6 = mm.curve.ainvs()
    if q == 2:
        count = 1
        for x in (0, 1):
            for y in (0, 1):
                lhs = (y * y + a1 * x * y + a3 * y) % 2
                rhs = (x**3 + a2 * x * x + a4 * x + a6) % 2
                if lhs == rhs:
                    count += 1
        return count
    count = 1
    for x in range(q):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % q
        b = (a1 * x + a3) % q
        disc = (b * b + 4 * rhs) % q
        if disc == 0:
            count += 1
        else:
            count += 1 + arith.legendre_symbol(disc, q)
    return count


def trace_of_frobenius(E: WeierstrassCurve, p: int) -> int:
    """a_p = p + 1 - #E(F_p); requires good reduction at p."""
    return p + 1 - point_count_mod(E, p)


def is_ordinary(E: WeierstrassCurve, p: int) -> bool:
    """Good ordinary reduction at p: a_p not divisible by p."""
    return trace_of_frobenius(E, p) % p != 0

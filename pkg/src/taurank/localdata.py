"""Per-prime reduction classification and inertia orders on the minimal model."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from . import arith
from .curve import MinimalModel, minimal_model, WeierstrassCurve
from .errors import DomainError


class ReductionType(str, Enum):
    GOOD = "good"
    SPLIT_MULTIPLICATIVE = "split-multiplicative"
    NONSPLIT_MULTIPLICATIVE = "nonsplit-multiplicative"
    ADDITIVE_POTENTIALLY_GOOD = "additive-potentially-good"
    ADDITIVE_POTENTIALLY_MULTIPLICATIVE = "additive-potentially-multiplicative"

    def is_multiplicative(self) -> bool:
        return self in (self.SPLIT_MULTIPLICATIVE, self.NONSPLIT_MULTIPLICATIVE)

    def is_additive(self) -> bool:
        return self in (self.ADDITIVE_POTENTIALLY_GOOD, self.ADDITIVE_POTENTIALLY_MULTIPLICATIVE)


@dataclass(frozen=True)
class LocalData:
    """Reduction data of a minimal model at one prime.

    ``inertia_order`` is the ramification degree of q in the p-division field;
    None encodes "unknown" (additive reduction at 2 or 3 with 4 | v_disc,
    where the valuation criterion cannot decide).
    """

    q: int
    v_disc: int
    v_c4: int | None
    v_c6: int | None
    v_j: int | None
    reduction: ReductionType
    inertia_order: int | None


def _minus_c6_is_square_in_Qq(c6: int, q: int) -> bool:
    """Is -c6 a square in Q_q?  Strip the even part of the valuation and test
    the unit: quadratic residue for odd q, 1 mod 8 for q = 2."""
    a = -c6
    if a == 0:
        return True
    v = arith.valuation(a, q)
    if v % 2 == 1:
        return False
    unit = a // q**v
    if q == 2:
        return unit % 8 == 1
    return arith.legendre_symbol(unit, q) == 1


def reduction_type(mm: MinimalModel, q: int) -> LocalData:
    """Classify reduction at q via (v(c4), v(disc)) on the global minimal model.

    Multiplicative reduction is split iff -c6 is a square in Q_q; this is
    validated against nonsingular point counts by the test-suite oracle.
    """
    if not arith.is_probable_prime(q):
        raise DomainError(f"{q} is not prime")
    inv = mm.invariants
    v_disc = arith.valuation(inv.disc, q)
    v_c4 = arith.valuation(inv.c4, q) if inv.c4 != 0 else None
    v_c6 = arith.valuation(inv.c6, q) if inv.c6 != 0 else None
    v_j = 3 * v_c4 - v_disc if v_c4 is not None else None  # v(j) = v(c4^3) - v(disc)
    if v_disc == 0:
        red = ReductionType.GOOD
    elif v_c4 == 0:
        if _minus_c6_is_square_in_Qq(inv.c6, q):
            red = ReductionType.SPLIT_MULTIPLICATIVE
        else:
            red = ReductionType.NONSPLIT_MULTIPLICATIVE
    elif v_j is not None and v_j < 0:
        red = ReductionType.ADDITIVE_POTENTIALLY_MULTIPLICATIVE
    else:
        red = ReductionType.ADDITIVE_POTENTIALLY_GOOD

    if red is ReductionType.GOOD or red.is_multiplicative():
        order = 1
    elif red is ReductionType.ADDITIVE_POTENTIALLY_MULTIPLICATIVE:
        order = 2
    elif q >= 5:
        order = 12 // gcd(12, v_disc)
    else:
        order = None  # additive at 2 or 3: not computed here
    return LocalData(q, v_disc, v_c4, v_c6, v_j, red, order)


def inertia_order(ld: LocalData, p: int) -> int | None:
    """|I_q| in the p-division field for q != p; None when undetermined.

    1 for semistable q; 2 for additive potentially multiplicative;
    12/gcd(12, v(disc)) for additive potentially good at q >= 5.
    """
    if ld.q == p:
        raise DomainError("inertia order at q = p is outside this analysis")
    return ld.inertia_order


def inertia_parity(ld: LocalData) -> str:
    """'odd', 'even' or 'unknown' for |I_q|.

    At q in {2, 3} with additive potentially good reduction the order itself
    is not computed, but |I_q| * v(disc) = 0 (mod 12) still forces |I_q| even
    whenever 4 does not divide v(disc).
    """
    if ld.inertia_order is not None:
        return "odd" if ld.inertia_order % 2 == 1 else "even"
    return "unknown" if ld.v_disc % 4 == 0 else "even"


def local_data_all(mm: MinimalModel) -> list[LocalData]:
    """Local data at every bad prime of the minimal model, ascending."""
    primes = [p for p, _ in arith.factor(mm.disc_min).factors]
    return [reduction_type(mm, q) for q in primes]


def odd_inertia_everywhere(E: WeierstrassCurve | MinimalModel, p: int):
    """Is |I_q| odd for every rational prime q != p?

    Returns (verdict, details) with verdict one of 'yes', 'no', 'unknown';
    good primes contribute order 1 and are omitted from details.
    """
    mm = E if isinstance(E, MinimalModel) else minimal_model(E)
    details = [ld for ld in local_data_all(mm) if ld.q != p]
    parities = [inertia_parity(ld) for ld in details]
    if any(par == "even" for par in parities):
        return "no", details
    if any(par == "unknown" for par in parities):
        return "unknown", details
    return "yes", details

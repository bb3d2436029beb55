"""Decision engine: parity of [K:Q]/2 and of the dual Selmer rank tau,
certified lower bounds for tau, exception candidacy, and twist scans."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from . import arith, rootnum, torsion, x07
from .curve import (
    MinimalModel,
    WeierstrassCurve,
    is_ordinary,
    minimal_model,
    point_count_mod,
    quadratic_twist,
    trace_of_frobenius,
)
from .errors import CMCurveError, DomainError
from .localdata import LocalData, ReductionType, inertia_parity, local_data_all

# The thirteen j-invariants of rational CM curves; the analysis assumes no
# complex multiplication and screens these out up front.
CM_J_INVARIANTS = frozenset(
    {
        0,
        1728,
        -3375,
        8000,
        54000,
        287496,
        -12288000,
        16581375,
        -32768,
        -884736,
        -884736000,
        -147197952000,
        -262537412640768000,
    }
)

# Primes that can be the degree of a rational isogeny of a non-CM curve.
ISOGENY_PRIMES = frozenset({2, 3, 5, 7, 11, 13, 17, 37})

# The four integral j-invariants on the rational 7-isogeny curve, grouped by
# quadratic-twist class of the final classification.
EXCEPTIONAL_J_37_CLASS = frozenset({999, -371323264041})
EXCEPTIONAL_J_63_CLASS = frozenset({21609, 1168429123449})

# (j, minimal discriminant) pairs of the eight surviving isomorphism classes.
FINAL_TABLE_PAIRS = frozenset(
    {(j, d) for j in EXCEPTIONAL_J_37_CLASS for d in (-(37**8), -(7**6) * 37**8)}
    | {(j, d) for j in EXCEPTIONAL_J_63_CLASS for d in (3**4 * 7**8, 3**4 * 7**2)}
)


@dataclass(frozen=True)
class ParityReason:
    rule: str
    q: int | None
    v: int | None
    detail: str


@dataclass(frozen=True)
class ParityVerdict:
    parity: str  # "even" | "odd" | "unknown"
    reasons: tuple[ParityReason, ...]


@dataclass(frozen=True)
class AssumptionStatus:
    status: str  # "verified" | "hypothesis" | "failed"
    detail: str


@dataclass(frozen=True)
class AssumptionChecklist:
    i: AssumptionStatus
    ii: AssumptionStatus
    iii: AssumptionStatus
    iv: AssumptionStatus

    def as_dict(self) -> dict[str, AssumptionStatus]:
        return {"I": self.i, "II": self.ii, "III": self.iii, "IV": self.iv}

    def any_failed(self) -> bool:
        return any(s.status == "failed" for s in self.as_dict().values())


def is_cm_j(j: Fraction) -> bool:
    return j.denominator == 1 and int(j) in CM_J_INVARIANTS


@lru_cache(maxsize=None)
def supersingular_j_residues(p: int) -> frozenset[int]:
    """Supersingular j-invariants in F_p, found by counting points on one
    curve per j (the trace mod p only depends on j up to twist)."""
    if p < 5 or not arith.is_probable_prime(p):
        raise DomainError(f"need a prime p >= 5, got {p}")
    if p > 20011:
        raise DomainError("supersingular scan capped at p <= 20011")
    out = set()
    for jbar in range(p):
        if jbar == 0:
            E = WeierstrassCurve(0, 0, 0, 0, 1)
        elif jbar == 1728 % p:
            E = WeierstrassCurve(0, 0, 0, 1, 0)
        else:
            k = jbar * pow(1728 - jbar, -1, p) % p
            E = WeierstrassCurve(0, 0, 0, 3 * k, 2 * k)
        if trace_of_frobenius(E, p) % p == 0:
            out.add(jbar)
    return frozenset(out)


def check_assumptions(E: WeierstrassCurve, p: int) -> AssumptionChecklist:
    """Checklist for the four standing assumptions at (E, p).

    (II) concerns places above p of the admissible field: decided by a_p for
    good reduction at p over Q; for additive potentially good reduction the
    reduction only appears over an extension, so ordinarity is read off the
    reduced j-invariant and the good reduction itself stays a hypothesis.
    CM curves are rejected outright.
    """
    mm = minimal_model(E)
    if is_cm_j(mm.invariants.j):
        raise CMCurveError(f"curve has complex multiplication (j = {mm.invariants.j}); analysis assumes non-CM")

    a1 = AssumptionStatus("verified" if p >= 5 else "failed", f"p = {p}" + ("" if p >= 5 else " < 5"))

    if p < 5:
        a2 = AssumptionStatus("failed", "not evaluated: p < 5")
    elif mm.disc_min % p != 0:
        ap = trace_of_frobenius(mm.curve, p)
        if ap % p != 0:
            a2 = AssumptionStatus("verified", f"good ordinary at {p} (a_p = {ap})")
        else:
            a2 = AssumptionStatus("failed", f"good supersingular at {p} (a_p = {ap})")
    else:
        j = mm.invariants.j
        if j.denominator % p == 0 or (j.denominator == 1 and arith.valuation(j.numerator, p) < 0):
            a2 = AssumptionStatus("failed", f"potentially multiplicative at {p}: never good above p")
        elif j.numerator % (p * j.denominator) == 0 or True:
            jbar = j.numerator * pow(j.denominator, -1, p) % p
            if jbar in supersingular_j_residues(p):
                a2 = AssumptionStatus("failed", f"potentially good at {p} but supersingular (j = {jbar} mod {p})")
            else:
                a2 = AssumptionStatus(
                    "hypothesis",
                    f"additive potentially good at {p}; reduction over the division field is ordinary (j = {jbar} mod {p})",
                )

    a3 = AssumptionStatus("verified", "structural: take K minimal with pro-p division tower")
    a4 = AssumptionStatus("hypothesis", "dual Selmer module finitely generated over the subalgebra: standing conjecture")
    return AssumptionChecklist(a1, a2, a3, a4)


def degree_parity(
    E: WeierstrassCurve | MinimalModel,
    p: int,
    known_inertia: dict[int, int] | None = None,
) -> ParityVerdict:
    """Parity of [K:Q]/2 for the minimal admissible K.

    Odd forces p = 3 (mod 4), a rational p-isogeny (only p = 7 survives the
    isogeny-degree restrictions), and odd inertia at every q != p; additive
    potentially good reduction needs 4 | v_q(disc).  Additive reduction at 2
    or 3 passing that valuation test leaves the verdict unknown unless the
    caller supplies the inertia order (e.g. from the twist lemma).
    """
    if p < 5 or not arith.is_probable_prime(p):
        raise DomainError(f"need a prime p >= 5, got {p}")
    mm = E if isinstance(E, MinimalModel) else minimal_model(E)
    known_inertia = known_inertia or {}

    if p % 4 == 1:
        return ParityVerdict(
            "even",
            (ParityReason("cyclotomic-degree", None, None, f"p = {p} = 1 (mod 4): 4 | p-1 | [K:Q]"),),
        )
    if p not in ISOGENY_PRIMES:
        return ParityVerdict(
            "even",
            (
                ParityReason(
                    "no-isogeny-possible",
                    None,
                    None,
                    f"no non-CM curve over Q has a rational {p}-isogeny; the mod-p image is not Borel, so 4 | [K:Q]",
                ),
            ),
        )
    if p == 11:
        return ParityVerdict(
            "even",
            (
                ParityReason(
                    "p11-excluded",
                    None,
                    None,
                    "odd inertia orders at q != 11 would all be 1 (3 does not divide 10^2), "
                    "forcing rational 11-torsion, which does not exist",
                ),
            ),
        )
    assert p == 7
    if not x07.has_rational_7_isogeny(mm.curve):
        return ParityVerdict(
            "even",
            (ParityReason("no-7-isogeny", None, None, "mod-7 image is not Borel (no rational fiber), so 4 | [K:Q]"),),
        )

    reasons = [ParityReason("7-isogeny", None, None, "rational 7-isogeny exists; p = 3 (mod 4)")]
    even_reasons: list[ParityReason] = []
    unknown_reasons: list[ParityReason] = []
    for ld in local_data_all(mm):
        q, v = ld.q, ld.v_disc
        if q == p:
            continue
        if ld.reduction.is_multiplicative():
            reasons.append(ParityReason("semistable", q, v, f"multiplicative at {q}: inertia order 1"))
            continue
        if q in known_inertia:
            order = known_inertia[q]
            if order % 2 == 0:
                even_reasons.append(ParityReason("known-inertia-even", q, v, f"inertia order {order} at {q} supplied"))
            else:
                reasons.append(ParityReason("known-inertia-odd", q, v, f"inertia order {order} at {q} supplied"))
            continue
        if ld.reduction is ReductionType.ADDITIVE_POTENTIALLY_MULTIPLICATIVE:
            even_reasons.append(
                ParityReason("additive-potentially-multiplicative", q, v, f"inertia order 2 at {q}")
            )
            continue
        # additive, potentially good
        if v % 4 != 0:
            even_reasons.append(
                ParityReason(
                    "disc-valuation",
                    q,
                    v,
                    f"v_{q}(disc) = {v}, 4 does not divide {v}: inertia order at {q} is even",
                )
            )
        elif q in (2, 3):
            unknown_reasons.append(
                ParityReason(
                    "inertia-2-3-unresolved",
                    q,
                    v,
                    f"additive at {q} with 4 | v_{q}(disc) = {v}: parity of the inertia order undetermined",
                )
            )
        else:
            reasons.append(
                ParityReason("disc-valuation", q, v, f"v_{q}(disc) = {v}, 4 | {v}: inertia order 12/gcd(12,{v}) is odd")
            )
    if even_reasons:
        return ParityVerdict("even", tuple(even_reasons + reasons[1:2]))
    if unknown_reasons:
        return ParityVerdict("unknown", tuple(unknown_reasons))
    reasons.append(ParityReason("all-inertia-odd", None, None, "every inertia order away from 7 is odd"))
    return ParityVerdict("odd", tuple(reasons))


def tau_parity(
    E: WeierstrassCurve | MinimalModel,
    p: int,
    known_inertia: dict[int, int] | None = None,
) -> ParityVerdict:
    """tau = [K:Q]/2 (mod 2); identical verdict, re-tagged."""
    verdict = degree_parity(E, p, known_inertia)
    tag = ParityReason("tau-parity-transfer", None, None, "tau and [K:Q]/2 share parity")
    return ParityVerdict(verdict.parity, (tag,) + verdict.reasons)


@dataclass(frozen=True)
class BoundStep:
    rule: str
    value: int
    detail: str


def tau_lower_bound(
    E: WeierstrassCurve | MinimalModel,
    p: int,
    selmer_rank: int | None = None,
    lam: int | None = None,
) -> tuple[int, tuple[BoundStep, ...]]:
    """Certified lower bound for tau under the standing assumptions.

    Sources, of which the maximum is taken:
      * tau > 0 always;
      * places of Q(mu_p) over primes dividing the denominator of j, which
        stay bad hence split multiplicative over every admissible K;
      * the three-primes decomposition argument when some q != p has odd
        inertia order > 1 alongside a multiplicative prime (7-isogeny case);
      * user-supplied Selmer rank or lambda, added to the splitting count.
    Finally the bound is rounded up to match the parity of tau when known.
    """
    mm = E if isinstance(E, MinimalModel) else minimal_model(E)
    steps = [BoundStep("nonvanishing", 1, "tau > 0 under the standing assumptions")]

    mult_detail = rootnum.s_over_Qmu_p_detail(mm, p)
    s_mult = sum(c for _, c in mult_detail)
    potmult = [
        (ld.q, rootnum.primes_above_in_cyclotomic(ld.q, p).count_in_Qmu_p)
        for ld in local_data_all(mm)
        if ld.reduction is ReductionType.ADDITIVE_POTENTIALLY_MULTIPLICATIVE and ld.q != p
    ]
    s_pm = sum(c for _, c in potmult)
    s_lower = s_mult + s_pm
    if s_lower > 0:
        detail = ", ".join(f"{c} places over {q}" for q, c in mult_detail + potmult)
        steps.append(BoundStep("split-places", s_lower, f"j is non-integral: {detail} in the p-th cyclotomic field"))

    if p == 7 and s_mult >= 1 and x07.has_rational_7_isogeny(mm.curve):
        odd_big_inertia = [
            ld
            for ld in local_data_all(mm)
            if ld.q != p and ld.inertia_order is not None and ld.inertia_order > 1 and ld.inertia_order % 2 == 1
        ]
        if odd_big_inertia:
            q = odd_big_inertia[0].q
            steps.append(
                BoundStep(
                    "three-primes-above",
                    3,
                    f"odd inertia order {odd_big_inertia[0].inertia_order} at {q} forces every multiplicative prime "
                    "to decompose into at least 3 primes of K",
                )
            )

    extra = None
    if lam is not None:
        extra = BoundStep("lambda-plus-splitting", lam + s_lower, f"tau = lambda + s with lambda = {lam} and s >= {s_lower}")
    elif selmer_rank is not None:
        extra = BoundStep(
            "selmer-plus-splitting", selmer_rank + s_lower, f"tau >= Selmer rank {selmer_rank} + split places {s_lower}"
        )
    if extra is not None:
        steps.append(extra)

    bound = max(s.value for s in steps)
    verdict = tau_parity(mm, p)
    if verdict.parity in ("even", "odd"):
        want_odd = verdict.parity == "odd"
        if bound % 2 != (1 if want_odd else 0):
            bound += 1
            steps.append(BoundStep("parity-adjust", bound, f"tau is {verdict.parity}, so the bound rises to {bound}"))
    return bound, tuple(steps)


def is_exception_candidate(E: WeierstrassCurve | MinimalModel, p: int):
    """Could tau = 1 hold?  Requires p = 7, odd parity and one of the four
    integral j-invariants on the 7-isogeny curve.

    Returns (flag, class id, listed) where class id groups the twist family
    and listed says whether (j, disc_min) is one of the eight known pairs.
    """
    mm = E if isinstance(E, MinimalModel) else minimal_model(E)
    j = mm.invariants.j
    if p != 7 or j.denominator != 1:
        return False, None, None
    jz = int(j)
    if jz in EXCEPTIONAL_J_37_CLASS:
        cls = "37-class"
    elif jz in EXCEPTIONAL_J_63_CLASS:
        cls = "63-class"
    else:
        return False, None, None
    if degree_parity(mm, p).parity != "odd":
        return False, None, None
    return True, cls, (jz, mm.disc_min) in FINAL_TABLE_PAIRS


@dataclass(frozen=True)
class TwistResult:
    d: int
    curve: WeierstrassCurve
    j: Fraction
    disc_min: int
    verdict: ParityVerdict
    exception_candidate: bool
    exception_class: str | None


def twist_scan(E: WeierstrassCurve, p: int = 7) -> list[TwistResult]:
    """Analyze every quadratic twist by a signed squarefree divisor of
    7 * disc_min.

    Twists by anything else acquire even inertia at a prime of good
    reduction, so they are even and excluded by construction.  When the base
    curve is good at 2 or 3 and the twisting character ramifies there, the
    twist lemma pins the new inertia order to 2 and the verdict is resolved
    rather than unknown.
    """
    mm = minimal_model(E)
    results = []
    for d in arith.squarefree_divisors(7 * mm.disc_min, signed=True):
        Ed = quadratic_twist(mm.curve, d)
        mmd = minimal_model(Ed)
        known: dict[int, int] = {}
        disc_char = d if d % 4 == 1 else 4 * d  # discriminant of Q(sqrt(d))
        for q in (2, 3):
            if q != p and disc_char % q == 0 and mm.disc_min % q != 0:
                known[q] = 2
        verdict = degree_parity(mmd, p, known_inertia=known)
        flag, cls, _ = is_exception_candidate(mmd, p)
        if verdict.parity != "odd":
            flag, cls = False, None
        results.append(TwistResult(d, mmd.curve, mmd.invariants.j, mmd.disc_min, verdict, flag, cls))
    results.sort(key=lambda r: (abs(r.d), -r.d))
    return results


def tau_scale(tau: int, cyc_degree: int) -> int:
    """Rank after enlarging the base field: multiply by the relative degree
    of the cyclotomic lines."""
    if cyc_degree < 1:
        raise DomainError("relative cyclotomic degree must be >= 1")
    if tau < 0:
        raise DomainError("tau cannot be negative")
    return tau * cyc_degree


def lambda_growth_main_term(tau_m: int, p: int, m: int, n: int) -> int:
    """Main term tau_m * p^(3(n-m)) of the lambda growth along division
    fields; the remainder is O(p^(2n)) and reported separately."""
    if not (n >= m >= 1):
        raise DomainError(f"need n >= m >= 1, got m = {m}, n = {n}")
    if tau_m < 0 or p < 2:
        raise DomainError("tau_m must be >= 0 and p >= 2")
    return tau_m * p ** (3 * (n - m))


def tau_from_lambda_s(lam: int, s_cyc: int) -> int:
    """tau = lambda + (split multiplicative places of the cyclotomic line)."""
    if lam < 0 or s_cyc < 0:
        raise DomainError("lambda and s must be non-negative")
    return lam + s_cyc

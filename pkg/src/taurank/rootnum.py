"""Local/global root numbers over a totally imaginary K, and prime splitting
counts in the cyclotomic tower above p."""

from __future__ import annotations

from dataclasses import dataclass

from . import arith
from .curve import MinimalModel
from .errors import DomainError, InconsistencyError
from .localdata import LocalData, local_data_all

_STABILIZATION_CAP = 30


def local_root_number(ld: LocalData | None = None, archimedean: bool = False) -> int:
    """-1 at archimedean and split multiplicative places, +1 otherwise.

    Over the fields used here every bad place is split multiplicative, so no
    other finite case needs a value.
    """
    if archimedean:
        return -1
    if ld is None:
        raise DomainError("need local data for a finite place")
    if ld.reduction.value == "split-multiplicative":
        return -1
    return 1


def global_root_number_over_K(K_degree: int, s_K: int) -> int:
    """(-1)^([K:Q]/2) * (-1)^s for totally imaginary K of even degree."""
    if K_degree <= 0 or K_degree % 2 != 0:
        raise DomainError(f"[K:Q] must be a positive even integer, got {K_degree}")
    if s_K < 0:
        raise DomainError("split place count cannot be negative")
    return (-1) ** (K_degree // 2) * (-1) ** s_K


@dataclass(frozen=True)
class SplittingCount:
    """How a rational prime q splits above p in cyclotomic fields.

    count_in_Qmu_p: primes of Q(mu_p) over q, = (p-1)/ord_p(q).
    stable_count_in_cyc: eventual prime count in Q(mu_{p^n}) for large n;
    their ratio is a power of p (hence odd).
    """

    q: int
    p: int
    count_in_Qmu_p: int
    stable_count_in_cyc: int
    stable_level: int


def primes_above_in_cyclotomic(q: int, p: int) -> SplittingCount:
    """Splitting of q in Q(mu_p) and its stabilized count up the p-tower.

    Levels are climbed until the multiplicative order grows by a factor p per
    level, after which the prime count is constant.
    """
    if q == p:
        raise DomainError(f"{q} ramifies in the p-cyclotomic tower, p = {p}")
    if not (arith.is_probable_prime(q) and arith.is_probable_prime(p)):
        raise DomainError("both arguments must be prime")
    ord1 = arith.multiplicative_order(q, p)
    count1 = (p - 1) // ord1
    level = 1
    while level < _STABILIZATION_CAP:
        # order mod p^level is still ord1 here; does it survive one level up?
        if pow(q, ord1, p ** (level + 1)) == 1:
            level += 1
            continue
        # from this level on the order gains a factor p per level, so the
        # prime count (p-1)p^(n-1)/ord_n is constant: count1 * p^(level-1)
        return SplittingCount(q, p, count1, count1 * p ** (level - 1), level)
    raise InconsistencyError(f"splitting of {q} above {p} did not stabilize below level {_STABILIZATION_CAP}")


def s_over_Qmu_p_detail(mm: MinimalModel, p: int) -> list[tuple[int, int]]:
    """(q, prime count over Q(mu_p)) for each multiplicative prime q != p."""
    out = []
    for ld in local_data_all(mm):
        if ld.reduction.is_multiplicative() and ld.q != p:
            out.append((ld.q, primes_above_in_cyclotomic(ld.q, p).count_in_Qmu_p))
    return out


def s_over_Qmu_p(mm: MinimalModel, p: int) -> int:
    """Lower bound for the number of split multiplicative places of any
    admissible K containing Q(mu_p): every place over a multiplicative prime
    is bad, and every bad place of E/K is split multiplicative."""
    return sum(c for _, c in s_over_Qmu_p_detail(mm, p))


def s_parity_transport(s_K: int) -> str:
    """Parity of the split place count is preserved up the cyclotomic tower."""
    if s_K < 0:
        raise DomainError("split place count cannot be negative")
    return "even" if s_K % 2 == 0 else "odd"

"""Exact integer and rational arithmetic: factorization, modular utilities
and a rational root solver.

All functions are pure and operate on Python's arbitrary precision ``int``
and ``fractions.Fraction``; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError

# Deterministic Miller-Rabin witness set, valid for n < 3.317e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981

_TRIAL_DIVISION_BOUND = 1_000_000


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    """Primes below the trial division bound, via a byte sieve."""
    n = _TRIAL_DIVISION_BOUND
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return tuple(i for i in range(n) if sieve[i])


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n.

    Starting parameters are fixed so the output is deterministic.
    """
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        power = lam = 1
        while d == 1:
            if power == lam:
                y = x
                power *= 2
                lam = 0
            x = (x * x + c) % n
            lam += 1
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1  # cycle degenerated; restart with the next polynomial


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization: ``sign * prod(p**e)``."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    def radical(self) -> int:
        r = 1
        for p, _ in self.factors:
            r *= p
        return r

    def exponent_of(self, q: int) -> int:
        for p, e in self.factors:
            if p == q:
                return e
        return 0

    def __str__(self) -> str:
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors)
        return f"-{body}" if self.sign < 0 else body


def factor(n: int) -> Factorization:
    """Factor a nonzero integer into primes.

    Trial division below 10^6, then Miller-Rabin plus Pollard rho on what
    remains.  Deterministic: equal inputs give identical output.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(sign, tuple(sorted(found.items())))


def valuation(n: int, q: int) -> int:
    """Largest v with q^v | n, for n != 0."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    if q < 2:
        raise DomainError(f"valuation base must be >= 2, got {q}")
    n = abs(n)
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def legendre_symbol(a: int, q: int) -> int:
    """Legendre symbol (a/q) for an odd prime q."""
    if q == 2 or not is_probable_prime(q):
        raise DomainError(f"{q} is not an odd prime")
    a %= q
    if a == 0:
        return 0
    r = pow(a, (q - 1) // 2, q)
    return 1 if r == 1 else -1


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("euler_phi needs n >= 1")
    phi = 1
    for p, e in factor(n).factors if n > 1 else ():
        phi *= p ** (e - 1) * (p - 1)
    return phi


def multiplicative_order(a: int, m: int) -> int:
    """Smallest k >= 1 with a^k = 1 (mod m)."""
    if m < 2:
        raise DomainError("modulus must be >= 2")
    if gcd(a, m) != 1:
        raise DomainError(f"{a} is not invertible mod {m}")
    order = euler_phi(m)
    for p, _ in factor(order).factors:
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def divisors(n: int) -> list[int]:
    """Positive divisors of n, ascending."""
    ds = [1]
    for p, e in factor(n).factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factor(n).factors)


def squarefree_divisors(n: int, signed: bool = False) -> list[int]:
    """Squarefree divisors of n (of its radical), sorted ascending.

    With ``signed=True`` both d and -d are returned for every divisor; the
    twist scan wants negative twists too.
    """
    if n == 0:
        raise DomainError("divisors of 0 are undefined")
    ds = [1]
    for p, _ in factor(n).factors:
        ds = ds + [d * p for d in ds]
    if signed:
        ds = ds + [-d for d in ds]
    return sorted(ds)


# -- dense univariate polynomials over Z / Q ---------------------------------
#
# Coefficient lists are ascending: coeffs[i] multiplies x^i.


def poly_trim(coeffs: list[int]) -> list[int]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a: list[int], k) -> list[int]:
    return poly_trim([k * c for c in a])


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_pow(a: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_eval(coeffs: list[int], x):
    """Exact Horner evaluation; x may be int or Fraction."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


_SIEVE_PRIMES = (10007, 10009, 10037, 10039, 10061, 10067)


def _no_roots_mod_sieve(coeffs: list[int], lead: int) -> bool:
    """True when some prime l coprime to the leading coefficient has no root
    of the polynomial mod l; then no rational root exists at all."""
    checked = 0
    for ell in _SIEVE_PRIMES:
        if lead % ell == 0:
            continue
        residues = [c % ell for c in coeffs]
        if not any(poly_eval(residues, x) % ell == 0 for x in range(ell)):
            return True
        checked += 1
        if checked >= 3:
            return False
    return False


def rational_roots(coeffs: list[int]) -> list[Fraction]:
    """All rational roots of a nonzero integer polynomial (no multiplicity).

    coeffs[i] is the coefficient of x^i.  Candidates come from the rational
    root theorem (numerator divides the constant term, denominator divides
    the leading coefficient); every returned root re-evaluates to exactly 0.
    """
    c = poly_trim(list(coeffs))
    if not c:
        raise DomainError("zero polynomial")
    roots: list[Fraction] = []
    # roots at 0 correspond to vanishing low-order coefficients
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1
    if k > 0:
        roots.append(Fraction(0))
        c = c[k:]
    if len(c) <= 1:
        return sorted(roots)
    if _no_roots_mod_sieve(c, c[-1]):
        return sorted(roots)
    nums = divisors(abs(c[0]))
    dens = divisors(abs(c[-1]))
    seen = set(roots)
    for den in dens:
        for num in nums:
            if gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in seen and poly_eval(c, cand) == 0:
                    seen.add(cand)
                    roots.append(cand)
    return sorted(roots)

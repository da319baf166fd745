"""Exact integer utilities: gcd, primality, factorization, square tests.

Everything here works on Python ints, so there is no overflow and no
floating point anywhere on a verdict path.
"""
from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

__all__ = [
    "IncompleteFactorization",
    "Factorization",
    "gcd",
    "is_prime",
    "factorize",
    "is_square",
    "is_squarefree",
    "integer_root",
    "DEFAULT_TRIAL_BOUND",
    "DEFAULT_RHO_ITERATIONS",
]

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_ITERATIONS = 2 * 10**6
PROBABILISTIC_ROUNDS = 40

# Deterministic Miller-Rabin: the first 13 primes as bases are correct for
# every n < 3317044064679887385961981 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class IncompleteFactorization(ArithmeticError):
    """Raised when a factorization budget ran out before reaching 1."""

    def __init__(self, factorization: "Factorization"):
        self.factorization = factorization
        super().__init__(
            f"could not finish factoring {factorization.n}: "
            f"unfactored cofactor {factorization.cofactor}"
        )


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: Tuple[Tuple[int, int], ...]
    cofactor: int = 1
    sign: int = field(default=1)

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def primes(self) -> List[int]:
        self.require_complete()
        return [p for p, _ in self.factors]

    def require_complete(self) -> "Factorization":
        if not self.complete:
            raise IncompleteFactorization(self)
        return self

    def value(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out


def gcd(a: int, b: int) -> int:
    """Non-negative gcd; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    """One strong-probable-prime round; False means ``a`` proves n composite."""
    a %= n
    if a in (0, 1, n - 1):
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = PROBABILISTIC_ROUNDS, rng: Optional[random.Random] = None) -> bool:
    """True iff ``|n|`` is prime.

    Deterministic below ``MR_DETERMINISTIC_LIMIT`` (about 3.3e24). Above it
    Miller-Rabin runs with ``rounds`` random bases, so a composite slips
    through with probability at most ``4**-rounds``.
    """
    n = abs(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _SMALL_PRIMES[-1] ** 2:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES
    else:
        rng = rng or random.Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(rounds))
    return all(_mr_round(n, a, d, s) for a in bases)


def _budget_from_env() -> int:
    raw = os.environ.get("LRN_FACTOR_BUDGET")
    if raw is None:
        return DEFAULT_RHO_ITERATIONS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LRN_FACTOR_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("LRN_FACTOR_BUDGET must be non-negative")
    return value


def _pollard_brent(n: int, budget: int, rng: random.Random) -> Tuple[Optional[int], int]:
    """Try to split composite odd ``n``. Returns (factor or None, iterations used)."""
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return None, used


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_iterations: Optional[int] = None,
    strict: bool = False,
) -> Factorization:
    """Factor ``n`` by trial division up to ``trial_bound`` then Pollard-Brent rho.

    ``rho_iterations`` caps the total rho work (default from the
    ``LRN_FACTOR_BUDGET`` environment variable, else 2e6). When the budget
    runs out the unsplit part is left in ``cofactor``; with ``strict=True``
    that raises IncompleteFactorization instead. A composite is never
    reported as a prime factor.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    budget = _budget_from_env() if rho_iterations is None else rho_iterations
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict = {}

    def add(p: int, e: int = 1) -> None:
        found[p] = found.get(p, 0) + e

    for p in (2, 3):
        while m % p == 0:
            add(p)
            m //= p
    d, step = 5, 2
    while d <= trial_bound and d * d <= m:
        while m % d == 0:
            add(d)
            m //= d
        d += step
        step = 6 - step

    cofactor = 1
    if m > 1 and (d * d > m or is_prime(m)):
        add(m)
    elif m > 1:
        rng = random.Random(m)
        stack = [m]
        while stack:
            k = stack.pop()
            if k == 1:
                continue
            if is_prime(k):
                add(k)
                continue
            r = math.isqrt(k)
            if r * r == k:
                stack.extend((r, r))
                continue
            if budget <= 0:
                cofactor *= k
                continue
            g, used = _pollard_brent(k, budget, rng)
            budget -= used
            if g is None:
                cofactor *= k
            else:
                stack.extend((g, k // g))

    fact = Factorization(n, tuple(sorted(found.items())), cofactor, sign)
    if strict:
        fact.require_complete()
    return fact


def is_square(n: int) -> Optional[int]:
    """Return r >= 0 with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def integer_root(n: int, k: int) -> Optional[int]:
    """Return r >= 0 with r**k == n, or None. Newton iteration on integers."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        return None
    if n < 2 or k == 1:
        return n
    r = 1 << -(-n.bit_length() // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r**k == n else None


def is_squarefree(n: int, **factor_kwargs) -> bool:
    if n < 1:
        raise ValueError("is_squarefree expects n >= 1")
    fact = factorize(n, **factor_kwargs).require_complete()
    return all(e == 1 for _, e in fact.factors)

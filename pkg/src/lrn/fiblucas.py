"""Fibonacci and Lucas numbers and the square classifications built on them."""
from __future__ import annotations

from typing import Iterator, Set, Tuple

from .arith import is_square

__all__ = [
    "fibonacci",
    "lucas",
    "fib_pair",
    "iter_terms",
    "square_terms",
    "five_square_terms",
    "identity_check",
]


def fib_pair(k: int) -> Tuple[int, int]:
    """(F_k, F_{k+1}) by fast doubling."""
    if k < 0:
        raise ValueError("index must be non-negative")
    a, b = 0, 1
    for bit in bin(k)[2:]:
        # F_2n = F_n (2F_{n+1} - F_n), F_2n+1 = F_n^2 + F_{n+1}^2
        a, b = a * (2 * b - a), a * a + b * b
        if bit == "1":
            a, b = b, a + b
    return a, b


def fibonacci(k: int) -> int:
    return fib_pair(k)[0]


def lucas(k: int) -> int:
    f, g = fib_pair(k)
    return 2 * g - f


def iter_terms(kind: str, K: int) -> Iterator[Tuple[int, int]]:
    """Yield (k, term) for k = 0..K using the additive recurrence."""
    if kind == "fib":
        a, b = 0, 1
    elif kind == "lucas":
        a, b = 2, 1
    else:
        raise ValueError(f"kind must be 'fib' or 'lucas', got {kind!r}")
    for k in range(K + 1):
        yield k, a
        a, b = b, a + b


def square_terms(kind: str, K: int) -> Set[int]:
    """Indices k <= K whose Fibonacci (or Lucas) number is a perfect square."""
    return {k for k, term in iter_terms(kind, K) if is_square(term) is not None}


def five_square_terms(K: int) -> Set[int]:
    """Indices k <= K with F_k = 5 x^2 for some x >= 1.

    F_0 = 0 = 5 * 0^2 is left out on purpose: x has to be positive.
    """
    out = set()
    for k, term in iter_terms("fib", K):
        if term > 0 and term % 5 == 0 and is_square(term // 5) is not None:
            out.add(k)
    return out


def identity_check(k: int, epsilon: int) -> dict:
    """Check 4F_k - F_(k-2e) = L_(k+e) and 4L_k - L_(k-2e) = 5F_(k+e)."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if k - 2 * epsilon < 0:
        raise ValueError(f"k - 2*epsilon must be >= 0, got k={k}, epsilon={epsilon}")
    fib_lhs = 4 * fibonacci(k) - fibonacci(k - 2 * epsilon)
    fib_rhs = lucas(k + epsilon)
    luc_lhs = 4 * lucas(k) - lucas(k - 2 * epsilon)
    luc_rhs = 5 * fibonacci(k + epsilon)
    return {
        "k": k,
        "epsilon": epsilon,
        "fib_identity": (fib_lhs, fib_rhs),
        "lucas_identity": (luc_lhs, luc_rhs),
        "holds": fib_lhs == fib_rhs and luc_lhs == luc_rhs,
    }

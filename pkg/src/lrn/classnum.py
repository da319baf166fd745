"""Class numbers of imaginary quadratic fields by counting reduced forms."""
from __future__ import annotations

import math
from typing import List, NamedTuple

from .arith import is_squarefree

__all__ = [
    "NotSquarefree",
    "ReducedForm",
    "fundamental_discriminant",
    "reduced_forms",
    "class_number",
    "gcd_condition",
]


class NotSquarefree(ValueError):
    pass


class ReducedForm(NamedTuple):
    """The form a*X^2 + b*X*Y + k*Y^2."""

    a: int
    b: int
    k: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.k

    def is_reduced(self) -> bool:
        a, b, k = self
        if not (-a < b <= a <= k):
            return False
        if (a == k or a == abs(b)) and b < 0:
            return False
        return True


def _check_c(c: int) -> None:
    if c < 1 or not is_squarefree(c):
        raise NotSquarefree(f"c = {c} is not a positive square-free integer")


def fundamental_discriminant(c: int) -> int:
    """Discriminant of Q(sqrt(-c)): -c when c = 3 mod 4, else -4c."""
    _check_c(c)
    return -c if c % 4 == 3 else -4 * c


def forms_of_discriminant(D: int) -> List[ReducedForm]:
    """All reduced primitive positive definite forms of discriminant D < 0.

    Reduced forms have a <= sqrt(|D|/3), which bounds the outer loop.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    out = []
    a_max = math.isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            k = num // (4 * a)
            if k < a or (k == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), k) != 1:
                continue
            out.append(ReducedForm(a, b, k))
    return out


def reduced_forms(c: int) -> List[ReducedForm]:
    return forms_of_discriminant(fundamental_discriminant(c))


def class_number(c: int) -> int:
    """h(-c), the class number of Q(sqrt(-c)) for square-free c >= 1."""
    return len(reduced_forms(c))


def gcd_condition(n: int, c: int) -> bool:
    """True iff gcd(n, 2*h(-c)) == 1."""
    return math.gcd(n, 2 * class_number(c)) == 1

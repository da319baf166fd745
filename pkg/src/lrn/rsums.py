"""The binomial sums R(c,u,v,t), I(c,u,v,t) and an exact ring cross-check.

For odd t the sums are the two coordinates of a power in Z[sqrt(c), i]:

    (u*sqrt(c) + v*i)**t == u*R*sqrt(c) + v*I*i

``power_in_ring`` computes the left side by repeated squaring of a
``GaussPair`` and reads R and I back off, independently of the sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple

from .arith import is_prime

__all__ = [
    "MalformedPower",
    "GaussPair",
    "SumPair",
    "binomial_row",
    "r_sum",
    "i_sum",
    "power_in_ring",
    "congruence_check",
]


class MalformedPower(ArithmeticError):
    """An odd power came out with a nonzero coordinate that must vanish."""


def _check_t(t: int) -> None:
    if t < 1 or t % 2 == 0:
        raise ValueError(f"t must be a positive odd integer, got {t}")


def binomial_row(t: int) -> List[int]:
    """Row t of Pascal's triangle, built by the additive recurrence."""
    row = [1]
    for _ in range(t):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def r_sum(c: int, u: int, v: int, t: int) -> int:
    """sum_j C(t,2j) u^(t-2j-1) c^((t-1)/2-j) (-v^2)^j for j = 0..(t-1)/2."""
    _check_t(t)
    row = binomial_row(t)
    h = (t - 1) // 2
    w = -v * v
    return sum(row[2 * j] * u ** (t - 2 * j - 1) * c ** (h - j) * w**j for j in range(h + 1))


def i_sum(c: int, u: int, v: int, t: int) -> int:
    """sum_j C(t,2j+1) u^(t-2j-1) c^((t-1)/2-j) (-v^2)^j for j = 0..(t-1)/2."""
    _check_t(t)
    row = binomial_row(t)
    h = (t - 1) // 2
    w = -v * v
    return sum(row[2 * j + 1] * u ** (t - 2 * j - 1) * c ** (h - j) * w**j for j in range(h + 1))


@dataclass(frozen=True)
class GaussPair:
    """(g0re + g0im*i) + (g1re + g1im*i)*sqrt(c), with sqrt(c)**2 == c."""

    c: int
    g0re: int = 0
    g0im: int = 0
    g1re: int = 0
    g1im: int = 0

    @classmethod
    def one(cls, c: int) -> "GaussPair":
        return cls(c, 1, 0, 0, 0)

    def __mul__(self, other: "GaussPair") -> "GaussPair":
        if other.c != self.c:
            raise ValueError("GaussPair operands live in different rings")
        c = self.c
        # Gaussian products of the four components
        a0r, a0i, a1r, a1i = self.g0re, self.g0im, self.g1re, self.g1im
        b0r, b0i, b1r, b1i = other.g0re, other.g0im, other.g1re, other.g1im
        p00 = (a0r * b0r - a0i * b0i, a0r * b0i + a0i * b0r)
        p11 = (a1r * b1r - a1i * b1i, a1r * b1i + a1i * b1r)
        p01 = (a0r * b1r - a0i * b1i, a0r * b1i + a0i * b1r)
        p10 = (a1r * b0r - a1i * b0i, a1r * b0i + a1i * b0r)
        return GaussPair(
            c,
            p00[0] + c * p11[0],
            p00[1] + c * p11[1],
            p01[0] + p10[0],
            p01[1] + p10[1],
        )

    def __pow__(self, t: int) -> "GaussPair":
        if t < 0:
            raise ValueError("negative powers are not supported")
        result = GaussPair.one(self.c)
        base = self
        while t:
            if t & 1:
                result = result * base
            base = base * base
            t >>= 1
        return result


class SumPair(NamedTuple):
    R: int
    I: int


def power_in_ring(c: int, u: int, v: int, t: int) -> SumPair:
    _check_t(t)
    if u == 0 or v == 0:
        raise ValueError("u and v must be nonzero to read R and I off the power")
    z = GaussPair(c, 0, v, u, 0) ** t
    if z.g0re != 0 or z.g1im != 0:
        raise MalformedPower(f"odd power has shape {z}")
    if z.g1re % u or z.g0im % v:
        raise MalformedPower(f"power {z} is not divisible by (u, v) = ({u}, {v})")
    return SumPair(z.g1re // u, z.g0im // v)


def congruence_check(c: int, u: int, v: int, t: int) -> dict:
    """Residues of R and I modulo t and modulo c next to their predicted values.

    For prime t only the j = 0 term of R survives mod t, and only the
    j = (t-1)/2 term survives mod c (for I, mod both). The predicted
    residues are u^(t-1) c^((t-1)/2) and t(-v^2)^((t-1)/2) for R, and
    (-v^2)^((t-1)/2) for I. The ``alt`` entries use (-v)^((t-1)/2) in place
    of (-v^2)^((t-1)/2); they coincide with the derived form when v = +-1.
    """
    _check_t(t)
    if t != 1 and not is_prime(t):
        raise ValueError(f"t must be 1 or an odd prime, got {t}")
    if c < 1:
        raise ValueError("c must be positive")
    h = (t - 1) // 2
    R, I = r_sum(c, u, v, t), i_sum(c, u, v, t)
    w = (-v * v) ** h
    w_alt = (-v) ** h

    def entry(value: int, predicted: int, modulus: int, alt: int) -> dict:
        got, want = value % modulus, predicted % modulus
        return {
            "modulus": modulus,
            "residue": got,
            "predicted": want,
            "holds": got == want,
            "alt_predicted": alt % modulus,
            "alt_holds": got == alt % modulus,
        }

    checks = {
        "R_mod_t": entry(R, u ** (t - 1) * c**h, t, u ** (t - 1) * c**h),
        "R_mod_c": entry(R, t * w, c, t * w_alt),
        "I_mod_t": entry(I, w, t, w_alt),
        "I_mod_c": entry(I, w, c, w_alt),
    }
    return {
        "c": c,
        "u": u,
        "v": v,
        "t": t,
        "R": R,
        "I": I,
        "checks": checks,
        "all_hold": all(e["holds"] for e in checks.values()),
    }

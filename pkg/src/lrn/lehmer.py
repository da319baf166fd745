"""Lehmer pairs, Lehmer numbers and primitive divisors.

A Lehmer pair is described by its parameters a = (alpha+beta)^2 and
b = (alpha-beta)^2, so alpha = (sqrt(a) + sqrt(b))/2 and
beta = (sqrt(a) - sqrt(b))/2. Two routes compute the Lehmer numbers:

* ``lehmer_number`` runs the integer recurrence
  L_(n+2) = a L_(n+1) - Q L_n  (n+2 odd),  L_(n+2) = L_(n+1) - Q L_n  (n+2 even),
  with Q = alpha*beta = (a-b)/4;
* ``lehmer_number_exact`` expands alpha^l - beta^l in the formal algebra
  Q[X, Y]/(X^2 - a, Y^2 - b) and divides by alpha - beta (or alpha^2 - beta^2).

The two never share code, so the tests can play them against each other.
"""
from __future__ import annotations

import logging
import math
from typing import List, NamedTuple, Optional, Tuple

from .arith import factorize, is_prime, is_square
from .fiblucas import fibonacci, lucas

log = logging.getLogger(__name__)

__all__ = [
    "InvalidParams",
    "LehmerParams",
    "DefectEntry",
    "PrimitiveDivisor",
    "lehmer_number",
    "lehmer_number_exact",
    "lehmer_sequence",
    "primitive_divisor_exists",
    "defective_pairs",
    "is_equivalent",
    "VOUTIER_TABLE",
    "square_shape_defect_possible",
]

# phi(d) <= 4: the possible orders of a root of unity of degree <= 4
_ROOT_OF_UNITY_ORDERS = (1, 2, 3, 4, 5, 6, 8, 10, 12)

# Voutier's table of defective Lehmer pairs for prime 7 <= l <= 29; primes
# missing from this dict have no defective pairs.
VOUTIER_TABLE = {
    7: ((1, -7), (1, -19), (3, -5), (5, -7), (13, -3), (14, -22)),
    13: ((1, -7),),
}


class InvalidParams(ValueError):
    pass


# Formal algebra Q[X, Y]/(X^2 - a, Y^2 - b); an element is a 4-tuple of
# integer coordinates on the basis (1, X, Y, XY).
def _alg_mul(p, q, a: int, b: int):
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    return (
        p0 * q0 + a * p1 * q1 + b * p2 * q2 + a * b * p3 * q3,
        p0 * q1 + p1 * q0 + b * (p2 * q3 + p3 * q2),
        p0 * q2 + p2 * q0 + a * (p1 * q3 + p3 * q1),
        p0 * q3 + p3 * q0 + p1 * q2 + p2 * q1,
    )


def _alg_pow(p, n: int, a: int, b: int):
    result = (1, 0, 0, 0)
    while n:
        if n & 1:
            result = _alg_mul(result, p, a, b)
        p = _alg_mul(p, p, a, b)
        n >>= 1
    return result


def _power_difference(a: int, b: int, ell: int):
    """2^ell * (alpha^ell - beta^ell) as formal coordinates."""
    x = _alg_pow((0, 1, 1, 0), ell, a, b)
    y = _alg_pow((0, 1, -1, 0), ell, a, b)
    return tuple(s - t for s, t in zip(x, y))


class LehmerParams(NamedTuple):
    a: int
    b: int

    @property
    def Q(self) -> int:
        """alpha * beta = (a - b)/4."""
        return (self.a - self.b) // 4

    def problems(self) -> List[str]:
        """Reasons these parameters fail to define a Lehmer pair (empty if valid)."""
        a, b = self
        if a == 0 or b == 0:
            return ["a and b must be nonzero"]
        if a == b:
            return ["a == b makes alpha*beta vanish"]
        if (a - b) % 4:
            return ["a - b must be divisible by 4 so alpha*beta is an integer"]
        out = []
        if math.gcd(a, (a - b) // 4) != 1:
            out.append("(alpha+beta)^2 and alpha*beta are not coprime")
        for d in _ROOT_OF_UNITY_ORDERS:
            if not any(_power_difference(a, b, d)):
                out.append(f"alpha/beta is a root of unity (alpha^{d} == beta^{d})")
                break
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def validate(self) -> "LehmerParams":
        problems = self.problems()
        if problems:
            raise InvalidParams(f"{tuple(self)}: " + "; ".join(problems))
        return self


def lehmer_sequence(params: LehmerParams, ell: int, check: bool = True) -> List[int]:
    """[L_0, L_1, ..., L_ell] via the integer recurrence (L_0 = 0, L_1 = 1)."""
    if check:
        params = LehmerParams(*params).validate()
    a, Q = params.a, params.Q
    seq = [0, 1]
    for n in range(2, ell + 1):
        if n % 2:
            seq.append(a * seq[n - 1] - Q * seq[n - 2])
        else:
            seq.append(seq[n - 1] - Q * seq[n - 2])
    return seq[: ell + 1]


def lehmer_number(params: LehmerParams, ell: int) -> int:
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return lehmer_sequence(params, ell)[ell]


def lehmer_number_exact(params: LehmerParams, ell: int) -> int:
    """The ell-th Lehmer number from the formal-algebra expansion.

    Raises ArithmeticError if the quotient is not a rational integer,
    which would mean the arithmetic is broken.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    params = LehmerParams(*params).validate()
    diff = _power_difference(params.a, params.b, ell)
    # alpha - beta = Y, alpha^2 - beta^2 = XY
    slot = 2 if ell % 2 else 3
    if any(v for i, v in enumerate(diff) if i != slot):
        raise ArithmeticError(f"alpha^{ell} - beta^{ell} has unexpected shape {diff}")
    num, den = diff[slot], 2**ell
    if num % den:
        raise ArithmeticError(f"Lehmer number {num}/{den} is not an integer")
    return num // den


class PrimitiveDivisor(NamedTuple):
    exists: bool
    witness: Optional[int] = None


def primitive_divisor_exists(
    params: LehmerParams, ell: int, witness_budget: int = 20000
) -> PrimitiveDivisor:
    """Does L_ell have a prime factor dividing none of a*b, L_1, ..., L_(ell-1)?

    Strips from |L_ell| every prime it shares with that product by repeated
    gcds, so no factorization is needed for the yes/no answer. A witness
    prime is attached when a small factoring effort finds one.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    params = LehmerParams(*params).validate()
    seq = lehmer_sequence(params, ell, check=False)
    forbidden = abs(params.a * params.b)
    for term in seq[1:ell]:
        forbidden *= abs(term)
    rest = abs(seq[ell])
    g = math.gcd(rest, forbidden)
    while g > 1:
        rest //= g
        g = math.gcd(rest, g)
    if rest == 1:
        return PrimitiveDivisor(False)
    witness = None
    fact = factorize(rest, trial_bound=10**5, rho_iterations=witness_budget)
    if fact.factors:
        witness = fact.factors[0][0]
    elif is_prime(rest):
        witness = rest
    return PrimitiveDivisor(True, witness)


def is_equivalent(p1: LehmerParams, p2: LehmerParams) -> bool:
    """Equivalent pairs differ by a factor in {+-1, +-i}, i.e. (a, b) ~ (-a, -b)."""
    a1, b1 = p1
    a2, b2 = p2
    return (a2, b2) in ((a1, b1), (-a1, -b1))


class DefectEntry(NamedTuple):
    ell: int
    params: LehmerParams
    family_tag: str
    family_indices: Optional[Tuple[int, ...]] = None


def _entry(ell, a, b, tag, indices=None) -> Optional[DefectEntry]:
    params = LehmerParams(a, b)
    problems = params.problems()
    if problems:
        log.debug("skipping %s member %s at l=%d: %s", tag, (a, b), ell, "; ".join(problems))
        return None
    if primitive_divisor_exists(params, ell).exists:
        raise ArithmeticError(
            f"{tag} member {(a, b)} at l={ell} has a primitive divisor; table is wrong"
        )
    return DefectEntry(ell, params, tag, indices)


def defective_pairs(ell: int, bound: int = 10) -> List[DefectEntry]:
    """Parameters (up to equivalence) whose ell-th Lehmer number has no primitive divisor.

    ``bound`` caps |t|, k and the Fibonacci/Lucas index in the parametric
    families for ell = 3 and 5. Family members that are not valid Lehmer
    parameters are dropped. For prime 7 <= ell <= 29 the fixed table is
    returned, empty except at 7 and 13.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out: List[Optional[DefectEntry]] = []
    if ell == 3:
        for t in sorted(range(-bound, bound + 1), key=lambda t: (abs(t), t)):
            if t in (0, 1):
                continue
            out.append(_entry(3, 1 + t, 1 - 3 * t, "t-family", (t,)))
        for k in range(bound + 1):
            for t in sorted(range(-bound, bound + 1), key=lambda t: (abs(t), t)):
                if t == 0 or t % 3 == 0 or (k, t) == (1, 1):
                    continue
                out.append(_entry(3, 3**k + t, 3**k - 3 * t, "3^k-family", (k, t)))
    elif ell == 5:
        for k in range(3, bound + 1):
            for eps in (1, -1):
                f = fibonacci(k - 2 * eps)
                out.append(_entry(5, f, f - 4 * fibonacci(k), "fibonacci-family", (k, eps)))
        for k in range(bound + 1):
            if k == 1:
                continue
            for eps in (1, -1):
                if k - 2 * eps < 0:
                    continue
                g = lucas(k - 2 * eps)
                out.append(_entry(5, g, g - 4 * lucas(k), "lucas-family", (k, eps)))
    elif 7 <= ell <= 29 and is_prime(ell):
        for a, b in VOUTIER_TABLE.get(ell, ()):
            out.append(_entry(ell, a, b, "fixed"))
    else:
        raise ValueError(f"no defect table for ell = {ell}; use 3, 5 or a prime in [7, 29]")
    return [e for e in out if e is not None]


def square_shape_defect_possible(ell: int) -> bool:
    """Could a defective pair at prime ``ell`` have parameters (a, -v^2) with a > 0?

    That shape is what (u*sqrt(c) + v*i)/2 produces. For ell > 30 there are
    no defective pairs at all; for prime 7 <= ell <= 29 the fixed table is
    checked entry by entry, together with each entry's equivalent (-a, -b).
    ell = 3 and 5 have infinite families that do contain the shape.
    """
    if ell < 3 or not is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    if ell in (3, 5):
        return True
    if ell > 30:
        return False
    for a, b in VOUTIER_TABLE.get(ell, ()):
        for a2, b2 in ((a, b), (-a, -b)):
            if a2 > 0 and b2 < 0 and is_square(-b2) is not None:
                return True
    return False

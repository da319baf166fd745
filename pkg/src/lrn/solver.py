"""Decide c*x^2 + p^(2m) = 4*y^n with gcd(x, y) = 1, x >= 1, y > 1.

Under the standing hypotheses (c > 3 square-free, p an odd prime not
dividing c, n >= 3 with gcd(n, 2h(-c)) = 1) a solution gives, for every
prime q | n, odd coprime u, v with v |I(c,u,v,q)| = 2^(q-1) p^m and

    x = u |R(c,u,v,q)| / 2^(q-1),   y^(n/q) = (u^2 c + v^2)/4.

The witnesses with v = 1 are the obvious ones, but v = p^r with r >= 1
also occurs (7*17^2 + 5^2 = 4*8^3 = 4*2^9). ``solve`` finds all of them,
and every verdict can be replayed against ``brute_force_solutions``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .arith import factorize, integer_root, is_prime, is_square, is_squarefree
from .classnum import class_number
from .lehmer import square_shape_defect_possible
from .rsums import i_sum, r_sum

__all__ = [
    "ProblemInstance",
    "HypothesisReport",
    "SolutionRecord",
    "SolveOutcome",
    "check_hypotheses",
    "u_search_limit",
    "find_u_candidates",
    "find_witnesses",
    "naive_u_scan",
    "remark_screen",
    "solve",
    "verify_solution",
    "brute_force_solutions",
    "descent_counterexamples",
    "FRAKTUR_S",
    "COROLLARY4_P",
    "COROLLARY4_Q",
    "corollary_fixtures",
    "corollary_report",
]

SOLUTIONS = "Solutions"
NO_SOLUTIONS = "NoSolutions"
HYPOTHESIS_VIOLATION = "HypothesisViolation"

NO_U_WITNESS = "no-u-witness-at-prime-q"
COMPOSITE_DESCENT = "composite-exponent-descent"
C_NOT_3_MOD_4 = "c-not-3-mod-4"
M0_LJUNGGREN = "m0-ljunggren"
P_DIVIDES_C = "p-divides-c"

# Values of c with h(-c) a power of two, as listed (29 included verbatim).
FRAKTUR_S = (
    7, 11, 15, 19, 35, 39, 43, 51, 55, 67, 91, 95, 111, 115, 123, 155, 163, 183,
    187, 195, 203, 219, 235, 259, 267, 29, 295, 299, 323, 355, 371, 395, 399, 403,
    407, 427, 435, 471, 483, 555, 559, 579, 583, 595, 627, 651, 663, 667, 715, 723,
    763, 791, 795, 799, 895, 903, 915, 939, 943, 955, 979, 987, 995, 1003, 1015,
    1023, 1027, 1043, 1047, 1119, 1131, 1139, 1155, 1159, 1195, 1227, 1239, 1243,
    1299, 1339, 1379, 1387, 1411, 1435, 1443, 1463, 1507, 1551, 1555, 1595, 1635,
    1651, 1659, 1731, 1767, 1771, 1795, 1803, 1939, 1943, 1947, 1983, 1995,
)
POWER_OF_TWO_CLASS_NUMBERS = frozenset({1, 2, 4, 8, 16, 32})
COROLLARY4_P = (3, 7, 11, 19, 43, 67, 163)
COROLLARY4_Q = (19, 43, 67, 163)


@dataclass(frozen=True)
class ProblemInstance:
    c: int
    p: int
    m: int
    n: int


@dataclass(frozen=True)
class HypothesisReport:
    c_gt_3: bool
    c_squarefree: bool
    p_odd_prime: bool
    p_ndiv_c: bool
    n_ge_3: bool
    m_ge_0: bool
    gcd_2h: bool
    c_mod4_is_3: bool
    class_number: Optional[int] = None
    notes: Tuple[str, ...] = ()

    HYPOTHESES = ("c_gt_3", "c_squarefree", "p_odd_prime", "p_ndiv_c", "n_ge_3", "m_ge_0", "gcd_2h")

    @property
    def failed(self) -> List[str]:
        return [name for name in self.HYPOTHESES if not getattr(self, name)]

    @property
    def ok(self) -> bool:
        """All hypotheses hold; c_mod4_is_3 is a necessary condition, not a hypothesis."""
        return not self.failed

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        return d


@dataclass(frozen=True)
class SolutionRecord:
    x: int
    y: int
    u: int
    q: int
    v: int = 1


@dataclass(frozen=True)
class SolveOutcome:
    verdict: str
    report: HypothesisReport
    reason: Optional[str] = None
    solutions: Tuple[SolutionRecord, ...] = ()
    # per prime q | n, the witnesses (u, v) found
    witnesses: Dict[int, Tuple[Tuple[int, int], ...]] = field(default_factory=dict)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(s.x, s.y) for s in self.solutions]

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.reason is not None:
            out["reason"] = self.reason
        out["solutions"] = [asdict(s) for s in self.solutions]
        out["hypothesis_report"] = self.report.to_dict()
        return out


def check_hypotheses(inst: ProblemInstance) -> HypothesisReport:
    c, p, m, n = inst.c, inst.p, inst.m, inst.n
    notes = []
    c_sqf = c >= 1 and is_squarefree(c)
    h = class_number(c) if c_sqf else None
    p_ok = p % 2 == 1 and p > 2 and is_prime(p)
    if p == 2:
        notes.append("p = 2 is a different equation and is not handled")
    if c in (1, 2):
        notes.append("c in {1, 2}: no solutions, since the equation fails modulo 4")
    elif c >= 1 and c % 4 != 3:
        notes.append("c is not 3 mod 4: solutions need x odd and c = 3 mod 4")
    return HypothesisReport(
        c_gt_3=c > 3,
        c_squarefree=c_sqf,
        p_odd_prime=p_ok,
        p_ndiv_c=c != 0 and p != 0 and c % p != 0,
        n_ge_3=n >= 3,
        m_ge_0=m >= 0,
        gcd_2h=h is not None and n >= 1 and math.gcd(n, 2 * h) == 1,
        c_mod4_is_3=c % 4 == 3,
        class_number=h,
        notes=tuple(notes),
    )


def u_search_limit(c: int, q: int, target: int, v: int = 1) -> int:
    """Smallest odd u with u^2 c >= q^2 v^2 and q (u^2 c)^((q-1)/2) > 2 * target.

    Once u^2 c >= q^2 v^2, consecutive terms of I(c,u,v,q) shrink by a
    factor <= q^2 v^2 / (6 u^2 c) <= 1/6, so |I| >= q (u^2 c)^((q-1)/2) / 2
    and |I| is increasing in u. No odd u at or past this limit can reach
    ``target``.
    """
    if c < 1 or q < 3 or q % 2 == 0 or v < 1:
        raise ValueError("need c >= 1, v >= 1 and an odd q >= 3")
    h = (q - 1) // 2
    floor = q * q * v * v

    def past(i: int) -> bool:
        u = 2 * i + 1
        w = u * u * c
        return w >= floor and q * w**h > 2 * target

    # smallest index i (u = 2i + 1) with past(i); past is monotone in i
    hi = 1
    while not past(hi):
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if past(mid):
            hi = mid
        else:
            lo = mid + 1
    return 2 * lo + 1


def _u_search(c: int, v: int, q: int, target: int) -> List[int]:
    """Odd u >= 1 with |I(c,u,v,q)| == target: scan, then bisect the monotone tail."""
    limit = u_search_limit(c, q, target, v)
    floor = q * q * v * v
    found = []
    u = 1
    while u < limit and u * u * c < floor:
        if abs(i_sum(c, u, v, q)) == target:
            found.append(u)
        u += 2
    lo, hi = (u - 1) // 2, (limit - 1) // 2  # u = 2i + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if abs(i_sum(c, 2 * mid + 1, v, q)) < target:
            lo = mid + 1
        else:
            hi = mid
    cand = 2 * lo + 1
    if cand < limit and abs(i_sum(c, cand, v, q)) == target:
        found.append(cand)
    return found


def find_u_candidates(c: int, p: int, m: int, q: int) -> List[int]:
    """All odd u >= 1 with |I(c,u,1,q)| == 2^(q-1) p^m, ascending."""
    if q < 3 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if m < 0:
        raise ValueError("m must be non-negative")
    return _u_search(c, 1, q, 2 ** (q - 1) * p**m)


def naive_u_scan(c: int, p: int, m: int, q: int, u_max: int) -> List[int]:
    """Every odd u <= u_max with |I(c,u,1,q)| == 2^(q-1) p^m, by brute force."""
    target = 2 ** (q - 1) * p**m
    return [u for u in range(1, u_max + 1, 2) if abs(i_sum(c, u, 1, q)) == target]


def _odd_u_from_w(c: int, w: int) -> Optional[int]:
    if w <= 0 or w % c:
        return None
    u = is_square(w // c)
    return u if u and u % 2 else None


def _closed_form_u(c: int, v: int, q: int, target: int) -> List[int]:
    """Odd u with |I(c,u,v,q)| == target for q in (3, 5), solved exactly in w = u^2 c."""
    ws = set()
    for sign in (1, -1):
        t = sign * target
        if q == 3:
            # I = 3w - v^2
            if (v * v + t) % 3 == 0:
                ws.add((v * v + t) // 3)
        elif q == 5:
            # I = 5w^2 - 10 v^2 w + v^4, so w = v^2 +- sqrt(80 v^4 + 20 t) / 10
            s = is_square(80 * v**4 + 20 * t)
            if s is not None:
                for root in (10 * v * v + s, 10 * v * v - s):
                    if root % 10 == 0:
                        ws.add(root // 10)
        else:
            raise ValueError("closed forms exist only for q = 3 and q = 5")
    us = {_odd_u_from_w(c, w) for w in ws}
    return sorted(u for u in us if u is not None)


def find_witnesses(c: int, p: int, m: int, q: int) -> List[Tuple[int, int]]:
    """Every (u, v) that can produce a solution at the prime exponent q.

    A solution of c x^2 + p^(2m) = 4 Y^q has (x sqrt(c) + p^m i)/2 equal to
    +-((u sqrt(c) +- v i)/2)^q with u, v odd and coprime to each other and
    c. Matching imaginary parts gives v |I(c,u,v,q)| = 2^(q-1) p^m, so
    v = p^r for some 0 <= r <= m. For r = 0 this is ``find_u_candidates``.
    For r >= 1 the Lehmer number of ((u sqrt(c) + v i)/2, its conjugate)
    has no primitive divisor, and for q >= 7 no defective pair has the
    right shape, so only q = 3 and q = 5 contribute; those are solved in
    closed form.
    """
    out = [(u, 1) for u in find_u_candidates(c, p, m, q)]
    if m >= 1 and square_shape_defect_possible(q):
        for r in range(1, m + 1):
            v = p**r
            for u in _closed_form_u(c, v, q, 2 ** (q - 1) * p ** (m - r)):
                if math.gcd(u * c, v) == 1:
                    out.append((u, v))
    return sorted(out, key=lambda uv: (uv[1], uv[0]))


def remark_screen(c: int, p: int, m: int, q: int) -> bool:
    """Cheap necessary test for a v = 1 witness u at the prime q.

    With v = 1, I(c,u,1,q) = (-1)^((q-1)/2) modulo q and modulo c, so a
    witness needs 2^(q-1) p^m = +-1 both mod q and mod c. Returns False when
    the screen rules every u out.
    """
    target = 2 ** (q - 1) * p**m
    for modulus in (q, c):
        if modulus <= 2:
            continue
        if target % modulus not in (1, modulus - 1):
            return False
    return True


def verify_solution(inst: ProblemInstance, x: int, y: int) -> bool:
    if not (isinstance(x, int) and isinstance(y, int)):
        return False
    if x < 1 or y <= 1:
        return False
    return inst.c * x * x + inst.p ** (2 * inst.m) == 4 * y**inst.n and math.gcd(x, y) == 1


def _records_at(inst: ProblemInstance, q: int, witnesses) -> List[SolutionRecord]:
    """Turn witnesses at the prime q into solutions of the full equation."""
    c, n = inst.c, inst.n
    out = []
    for u, v in witnesses:
        num = u * abs(r_sum(c, u, v, q))
        den = 2 ** (q - 1)
        big_y4 = u * u * c + v * v
        if num % den or big_y4 % 4:
            continue
        x, big_y = num // den, big_y4 // 4
        y = integer_root(big_y, n // q)
        if y is None:
            continue
        if verify_solution(inst, x, y):
            out.append(SolutionRecord(x, y, u, q, v))
    return out


def solve(inst: ProblemInstance, mode: str = "complete", use_screen: bool = False) -> SolveOutcome:
    """Verdict for one instance.

    ``mode="complete"`` (default) returns every solution: all witnesses
    (u, v) with v = p^r at each prime q | n, lifted through y^n = (y^(n/q))^q
    and checked by substitution; the solution sets obtained from different
    primes q must coincide.

    ``mode="theorem"`` is the shortcut that uses only v = 1 witnesses and
    treats composite n as always unsolvable. It misses real
    solutions (7*17^2 + 5^2 = 4*8^3, for one) and exists for comparison.

    ``use_screen`` applies the congruence screen before each v = 1 search in
    theorem mode; it never changes a verdict.
    """
    if mode not in ("complete", "theorem"):
        raise ValueError(f"unknown mode {mode!r}")
    report = check_hypotheses(inst)
    failed = report.failed
    c, p, m, n = inst.c, inst.p, inst.m, inst.n
    if failed == ["p_ndiv_c"]:
        if m >= 1:
            # c square-free and p | c: p does not divide x (else p | y), so
            # v_p(c x^2 + p^(2m)) = 1 while v_p(4 y^n) is 0 or >= n.
            return SolveOutcome(NO_SOLUTIONS, report, P_DIVIDES_C)
        # m = 0: p no longer appears in the equation
    elif failed:
        return SolveOutcome(HYPOTHESIS_VIOLATION, report)

    def no(reason: str, witnesses=None) -> SolveOutcome:
        if m == 0 and reason in (NO_U_WITNESS, COMPOSITE_DESCENT):
            reason = M0_LJUNGGREN
        return SolveOutcome(NO_SOLUTIONS, report, reason, witnesses=witnesses or {})

    if c % 4 != 3:
        return no(C_NOT_3_MOD_4)

    primes = factorize(n, strict=True).primes()
    witnesses: Dict[int, Tuple[Tuple[int, int], ...]] = {}
    for q in primes:
        if mode == "theorem":
            if use_screen and not remark_screen(c, p, m, q):
                found = []
            else:
                found = [(u, 1) for u in find_u_candidates(c, p, m, q)]
        else:
            found = find_witnesses(c, p, m, q)
        witnesses[q] = tuple(found)
        if not found:
            return no(NO_U_WITNESS, witnesses)

    if mode == "theorem":
        if n != primes[0]:
            return no(COMPOSITE_DESCENT, witnesses)
        records = _records_at(inst, n, witnesses[n])
        if not records:
            return no(NO_U_WITNESS, witnesses)
        return SolveOutcome(SOLUTIONS, report, None, tuple(records), witnesses)

    per_prime = {q: _records_at(inst, q, witnesses[q]) for q in primes}
    pair_sets = {q: sorted((r.x, r.y) for r in recs) for q, recs in per_prime.items()}
    reference = pair_sets[primes[0]]
    for q, pairs in pair_sets.items():
        if pairs != reference:
            raise ArithmeticError(
                f"{inst}: prime {primes[0]} gives {reference} but prime {q} gives {pairs}"
            )
    records = sorted(per_prime[primes[0]], key=lambda r: (r.y, r.x))
    if not records:
        return no(COMPOSITE_DESCENT if n != primes[0] else NO_U_WITNESS, witnesses)
    return SolveOutcome(SOLUTIONS, report, None, tuple(records), witnesses)


def brute_force_solutions(
    c: int, p: int, n: int, m_max: int, y_max: int, progress: Optional[Callable[[int], None]] = None
) -> List[Tuple[int, int, int]]:
    """All (x, y, m) with 1 < y <= y_max, 0 <= m <= m_max solving the equation.

    Scans y then m and recovers x from an exact square root; results come
    out ordered by (y, m). ``progress`` is called with y every 10^4 steps
    and has no effect on the result.
    """
    if m_max < 0 or y_max < 1:
        raise ValueError("bounds must be m_max >= 0 and y_max >= 1")
    if c < 1:
        raise ValueError("c must be positive")
    out = []
    powers = [p ** (2 * m) for m in range(m_max + 1)]
    for y in range(2, y_max + 1):
        if progress is not None and y % 10000 == 0:
            progress(y)
        rhs = 4 * y**n
        for m, pm in enumerate(powers):
            if pm >= rhs:
                break
            d = rhs - pm
            if d % c:
                continue
            x = is_square(d // c)
            if x and math.gcd(x, y) == 1:
                out.append((x, y, m))
    return out


def descent_counterexamples(c: int, r: int, u_max: int) -> List[Tuple[int, int]]:
    """(u, y) with 1 <= u <= u_max, y > 1, gcd(u, y) = 1 and c u^2 + 1 = 4 y^r."""
    out = []
    for u in range(1, u_max + 1):
        lhs = c * u * u + 1
        if lhs % 4:
            continue
        y = integer_root(lhs // 4, r)
        if y is not None and y > 1 and math.gcd(u, y) == 1:
            out.append((u, y))
    return out


def corollary_fixtures(which: int) -> List[ProblemInstance]:
    """The instance families each corollary says are unsolvable."""
    if which == 1:
        # p | n
        return [ProblemInstance(7, p, m, 3 * p) for p in (3, 5) for m in (0, 1, 2)] + [
            ProblemInstance(c, p, m, p)
            for c in (11, 19, 43)
            for p in (3, 5, 7)
            for m in (0, 1, 2)
        ]
    if which == 2:
        # c = q prime, m = q, n = q, p != +-1 mod q
        out = []
        for q in (7, 11, 19, 23, 31, 43):
            for p in (3, 5, 7, 11, 13, 17):
                if p != q and p % q not in (1, q - 1):
                    out.append(ProblemInstance(q, p, q, q))
        return out
    if which == 3:
        return [ProblemInstance(c, p, m, p) for c in FRAKTUR_S for p in (3, 5, 7) for m in (0, 1, 2)]
    if which == 4:
        return [
            ProblemInstance(q, p, m, q) for p in COROLLARY4_P for q in COROLLARY4_Q for m in (0, 1)
        ]
    raise ValueError(f"corollaries are numbered 1-4, got {which}")


def corollary_report(which: int, instances: Optional[List[ProblemInstance]] = None) -> dict:
    """Run ``solve`` over a corollary's fixtures and tabulate pass/fail.

    An instance passes when the verdict is NoSolutions. For corollary 3 the
    class number of each c is checked against {1, 2, 4, 8, 16, 32} first;
    values of c failing that check are flagged and their instances skipped,
    as are instances where the theorem's hypotheses do not apply.
    """
    instances = corollary_fixtures(which) if instances is None else instances
    rows = []
    flagged = {}
    for inst in instances:
        row = {"instance": inst, "verdict": None, "reason": None, "status": None}
        if which == 3:
            if inst.c not in flagged:
                ok = is_squarefree(inst.c) and inst.c % 4 == 3
                h = class_number(inst.c) if is_squarefree(inst.c) else None
                flagged[inst.c] = (not ok or h not in POWER_OF_TWO_CLASS_NUMBERS, h)
            if flagged[inst.c][0]:
                row["status"] = "flagged"
                row["reason"] = f"h(-{inst.c}) = {flagged[inst.c][1]} outside the stated range"
                rows.append(row)
                continue
        outcome = solve(inst)
        row["verdict"] = outcome.verdict
        row["reason"] = outcome.reason
        row["outcome"] = outcome
        if outcome.verdict == NO_SOLUTIONS:
            row["status"] = "pass"
        elif outcome.verdict == HYPOTHESIS_VIOLATION:
            row["status"] = "skipped"
            row["reason"] = "hypotheses fail: " + ",".join(outcome.report.failed)
        else:
            row["status"] = "fail"
        rows.append(row)
    counts = {s: sum(r["status"] == s for r in rows) for s in ("pass", "fail", "skipped", "flagged")}
    return {"corollary": which, "rows": rows, "counts": counts, "passed": counts["fail"] == 0}

import math
import random

import pytest

from lrn.arith import factorize, is_prime, is_squarefree
from lrn.classnum import class_number
from lrn.rsums import i_sum, r_sum
from lrn.solver import (
    COMPOSITE_DESCENT,
    HYPOTHESIS_VIOLATION,
    M0_LJUNGGREN,
    NO_SOLUTIONS,
    NO_U_WITNESS,
    P_DIVIDES_C,
    SOLUTIONS,
    C_NOT_3_MOD_4,
    ProblemInstance,
    _closed_form_u,
    _u_search,
    brute_force_solutions,
    check_hypotheses,
    corollary_fixtures,
    corollary_report,
    descent_counterexamples,
    find_u_candidates,
    find_witnesses,
    naive_u_scan,
    remark_screen,
    solve,
    u_search_limit,
    verify_solution,
)

I = ProblemInstance


def oracle_pairs(inst, y_max):
    return sorted(
        (x, y) for x, y, m in brute_force_solutions(inst.c, inst.p, inst.n, inst.m, y_max) if m == inst.m
    )


def admissible(c, p, n):
    if not is_squarefree(c) or c <= 3 or c % p == 0:
        return False
    return math.gcd(n, 2 * class_number(c)) == 1


# -- hypotheses ---------------------------------------------------------------


def test_hypotheses_all_pass():
    rep = check_hypotheses(I(7, 5, 1, 3))
    assert rep.ok and rep.c_mod4_is_3 and rep.class_number == 1


def test_hypotheses_c_mod_4():
    rep = check_hypotheses(I(5, 3, 1, 3))
    assert rep.ok and not rep.c_mod4_is_3
    assert solve(I(5, 3, 1, 3)).reason == C_NOT_3_MOD_4


def test_hypotheses_p_divides_c():
    assert check_hypotheses(I(7, 7, 1, 3)).failed == ["p_ndiv_c"]


@pytest.mark.parametrize(
    "inst, name",
    [
        (I(3, 5, 1, 3), "c_gt_3"),
        (I(12, 5, 1, 3), "c_squarefree"),
        (I(7, 9, 1, 3), "p_odd_prime"),
        (I(7, 2, 1, 3), "p_odd_prime"),
        (I(7, 5, 1, 1), "n_ge_3"),
        (I(7, 5, -1, 3), "m_ge_0"),
        (I(7, 5, 1, 4), "gcd_2h"),
        (I(15, 7, 1, 3), None),  # h(-15) = 2, n = 3 is fine
        (I(23, 5, 1, 3), "gcd_2h"),  # h(-23) = 3
    ],
)
def test_hypothesis_failures(inst, name):
    rep = check_hypotheses(inst)
    if name is None:
        assert rep.ok
    else:
        assert name in rep.failed
        assert solve(inst).verdict == HYPOTHESIS_VIOLATION


def test_small_c_note():
    assert any("modulo 4" in note for note in check_hypotheses(I(1, 3, 1, 3)).notes)


# -- u search -----------------------------------------------------------------


@pytest.mark.parametrize(
    "args, expected", [((7, 5, 1, 3), [1]), ((7, 47, 1, 3), [3]), ((7, 3, 1, 3), []), ((7, 11, 1, 5), [1])]
)
def test_find_u_candidates_examples(args, expected):
    assert find_u_candidates(*args) == expected


def test_find_u_rejects_bad_q():
    with pytest.raises(ValueError):
        find_u_candidates(7, 5, 1, 9)
    with pytest.raises(ValueError):
        find_u_candidates(7, 5, -1, 3)


def test_search_limit_is_past_every_solution():
    rng = random.Random(3)
    for _ in range(200):
        c = rng.randrange(3, 400, 4)
        q = rng.choice([3, 5, 7, 11])
        v = rng.choice([1, 1, 3, 5])
        target = rng.randrange(1, 10**6)
        limit = u_search_limit(c, q, target, v)
        for u in range(limit, limit + 40, 2):
            assert abs(i_sum(c, u, v, q)) > target


def test_search_matches_naive_scan():
    rng = random.Random(8)
    for _ in range(150):
        c = rng.randrange(3, 300, 4)
        q = rng.choice([3, 5, 7])
        p = rng.choice([3, 5, 7, 11, 13])
        m = rng.randrange(0, 4)
        if rng.random() < 0.3:
            # plant a witness: p^m taken from I(c, u, 1, q) / 2^(q-1) where possible
            u = rng.randrange(1, 9, 2)
            val = abs(i_sum(c, u, 1, q))
            if val % 2 ** (q - 1) == 0 and is_prime(val // 2 ** (q - 1)):
                p, m = val // 2 ** (q - 1), 1
        limit = u_search_limit(c, q, 2 ** (q - 1) * p**m)
        assert find_u_candidates(c, p, m, q) == naive_u_scan(c, p, m, q, 2 * limit)


def test_closed_forms_match_generic_search():
    for c in range(3, 200, 4):
        for q in (3, 5):
            for v in (1, 3, 5, 7):
                for target in (2 ** (q - 1), 2 ** (q - 1) * 3, 2 ** (q - 1) * 5, 2 ** (q - 1) * 25):
                    assert _closed_form_u(c, v, q, target) == _u_search(c, v, q, target), (c, v, q, target)


def test_no_prime_power_v_witness_for_q_at_least_7():
    # backs the pruning: for q >= 7 the only witnesses have v = 1
    for c in range(3, 120, 4):
        if not is_squarefree(c):
            continue
        for q in (7, 11, 13):
            for p in (3, 5, 7, 11):
                if c % p == 0:
                    continue
                for m in (1, 2):
                    for r in range(1, m + 1):
                        assert _u_search(c, p**r, q, 2 ** (q - 1) * p ** (m - r)) == [], (c, p, q, m, r)


def test_witnesses_include_prime_power_v():
    assert find_witnesses(7, 5, 1, 3) == [(1, 1), (1, 5)]
    assert find_witnesses(7, 3, 2, 3) == [(1, 3)]
    assert find_witnesses(7, 47, 1, 3) == [(3, 1)]


# -- solve --------------------------------------------------------------------


def test_solve_examples():
    out = solve(I(7, 11, 1, 5))
    assert out.verdict == SOLUTIONS and out.pairs() == [(1, 2)]
    assert (out.solutions[0].u, out.solutions[0].q) == (1, 5)
    out = solve(I(7, 47, 1, 3))
    assert out.pairs() == [(45, 16)] and out.solutions[0].u == 3


def test_solve_finds_solutions_the_shortcut_misses():
    # 7*17^2 + 5^2 = 4*8^3 and 7*5^2 + 3^4 = 4*4^3 and 7*17^2 + 5^2 = 4*2^9
    out = solve(I(7, 5, 1, 3))
    assert out.pairs() == [(1, 2), (17, 8)]
    assert solve(I(7, 5, 1, 3), mode="theorem").pairs() == [(1, 2)]
    assert solve(I(7, 3, 2, 3)).pairs() == [(5, 4)]
    assert solve(I(7, 3, 2, 3), mode="theorem").reason == NO_U_WITNESS
    assert solve(I(7, 5, 1, 9)).pairs() == [(17, 2)]
    assert solve(I(7, 5, 1, 9), mode="theorem").reason == COMPOSITE_DESCENT
    for inst in (I(15, 7, 1, 3), I(7, 23, 1, 3), I(39, 11, 1, 3), I(55, 13, 1, 3)):
        out = solve(inst)
        assert out.verdict == SOLUTIONS
        assert out.pairs() == oracle_pairs(inst, max(y for _, y in out.pairs()))
        assert solve(inst, mode="theorem").verdict == NO_SOLUTIONS


def test_solve_records_are_sound():
    for inst in (I(7, 5, 1, 3), I(7, 47, 1, 3), I(7, 11, 1, 5), I(15, 7, 1, 3), I(7, 5, 1, 9)):
        for s in solve(inst).solutions:
            assert verify_solution(inst, s.x, s.y)
            assert s.u % 2 == 1 and s.x % 2 == 1
            assert (s.u * abs(r_sum(inst.c, s.u, s.v, s.q))) % 2 ** (s.q - 1) == 0


def test_m_zero_reason():
    out = solve(I(7, 3, 0, 3))
    assert out.verdict == NO_SOLUTIONS and out.reason == M0_LJUNGGREN
    assert oracle_pairs(I(7, 3, 0, 3), 2000) == []


def test_p_divides_c():
    for inst in (I(15, 3, 1, 3), I(15, 5, 2, 3), I(35, 7, 1, 3), I(19, 19, 1, 19)):
        out = solve(inst)
        assert out.verdict == NO_SOLUTIONS and out.reason == P_DIVIDES_C
        assert oracle_pairs(inst, 300) == []
    # with m = 0 p plays no role and the usual search runs
    assert solve(I(15, 3, 0, 3)).reason == M0_LJUNGGREN


def test_incomplete_factorization_of_n(monkeypatch):
    from lrn.arith import IncompleteFactorization

    monkeypatch.setenv("LRN_FACTOR_BUDGET", "0")
    n = 1000003 * 1000033  # both beyond trial division
    with pytest.raises(IncompleteFactorization):
        solve(I(7, 5, 1, n))


def test_bad_mode():
    with pytest.raises(ValueError):
        solve(I(7, 5, 1, 3), mode="fast")


def test_oracle_agreement_sweep():
    y_max = 300
    count = 0
    for c in range(7, 120, 4):
        if not is_squarefree(c):
            continue
        for p in (3, 5, 7, 11, 13):
            for n in (3, 5, 7, 9, 15):
                if not admissible(c, p, n):
                    continue
                for m in range(0, 3):
                    inst = I(c, p, m, n)
                    got = [(x, y) for x, y in solve(inst).pairs() if y <= y_max]
                    assert got == oracle_pairs(inst, y_max), inst
                    count += 1
    assert count > 300


def test_theorem_mode_only_misses_solutions():
    # the shortcut never invents a solution; it only drops some
    for c in (7, 11, 15, 19, 39, 43):
        for p in (3, 5, 7, 11, 23):
            for m in (0, 1, 2):
                inst = I(c, p, m, 3)
                if not admissible(c, p, 3):
                    continue
                full = set(solve(inst).pairs())
                short = set(solve(inst, mode="theorem").pairs())
                assert short <= full


def test_screen_never_changes_verdict():
    for c in (7, 11, 15, 19, 43):
        for p in (3, 5, 7, 11, 47):
            for n in (3, 5, 7):
                for m in (0, 1, 2):
                    inst = I(c, p, m, n)
                    a = solve(inst, mode="theorem")
                    b = solve(inst, mode="theorem", use_screen=True)
                    assert (a.verdict, a.pairs()) == (b.verdict, b.pairs()), inst
                    if not remark_screen(c, p, m, n):
                        assert find_u_candidates(c, p, m, n) == []


def test_descent_auxiliary_equation():
    for c in (7, 11, 15, 19, 43, 67, 163):
        for r in (3, 5, 7):
            if math.gcd(r, 2 * class_number(c)) != 1:
                continue
            assert descent_counterexamples(c, r, 10**4) == [], (c, r)


@pytest.mark.parametrize(
    "inst, x, y, expected",
    [
        (I(7, 5, 1, 3), 1, 2, True),
        (I(7, 47, 1, 3), 45, 16, True),
        (I(7, 5, 1, 3), 2, 2, False),
        (I(7, 5, 1, 3), 0, 2, False),
        (I(7, 5, 1, 3), 1.0, 2, False),
    ],
)
def test_verify_solution(inst, x, y, expected):
    assert verify_solution(inst, x, y) is expected


# -- oracle -------------------------------------------------------------------


def test_brute_force_examples():
    assert brute_force_solutions(7, 47, 3, 2, 100) == [(45, 16, 1)]
    assert brute_force_solutions(7, 5, 3, 3, 100) == [(1, 2, 1), (17, 8, 1)]
    assert brute_force_solutions(7, 3, 3, 3, 100) == [(5, 4, 2)]
    with pytest.raises(ValueError):
        brute_force_solutions(7, 3, 3, -1, 100)


def test_brute_force_progress_does_not_change_result():
    seen = []
    a = brute_force_solutions(7, 5, 3, 2, 20000, progress=seen.append)
    assert seen == [10000, 20000]
    assert a == brute_force_solutions(7, 5, 3, 2, 20000)


# -- corollaries --------------------------------------------------------------


def test_corollary_examples():
    assert solve(I(7, 3, 1, 9)).verdict == NO_SOLUTIONS
    assert solve(I(19, 5, 19, 19)).verdict == NO_SOLUTIONS
    assert solve(I(19, 7, 1, 19)).verdict == NO_SOLUTIONS


@pytest.mark.parametrize("which", [2, 4])
def test_corollaries_hold(which):
    rep = corollary_report(which)
    assert rep["passed"] and rep["counts"]["fail"] == 0


def test_corollary_1_fixture_holds():
    rep = corollary_report(1)
    assert rep["passed"], [r["instance"] for r in rep["rows"] if r["status"] == "fail"]


def test_corollary_3_has_one_counterexample_and_flags_29():
    rep = corollary_report(3)
    fails = [r["instance"] for r in rep["rows"] if r["status"] == "fail"]
    assert fails == [I(7, 3, 2, 3)]
    flagged = {r["instance"].c for r in rep["rows"] if r["status"] == "flagged"}
    assert flagged == {29}


def test_corollary_bad_number():
    with pytest.raises(ValueError):
        corollary_fixtures(5)

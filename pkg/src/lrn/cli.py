"""Command-line front end.

Single queries print a JSON record (integers as decimal strings); ``table``
prints CSV. Exit codes: 0 verdict produced, 2 hypothesis violation,
3 incomplete factorization, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import List, Optional

from . import arith, classnum, fiblucas, lehmer, rsums, solver

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_FACTORIZATION = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def to_jsonable(obj):
    """Recursively convert to JSON types, writing every int as a decimal string."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "_asdict"):
        return to_jsonable(obj._asdict())
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def output_record(command: str, inputs: dict, result, timing_ms: float) -> dict:
    return {
        "command": command,
        "inputs": to_jsonable(inputs),
        "result": to_jsonable(result),
        "timing_ms": round(timing_ms, 3),
    }


def _instance_row(inst: solver.ProblemInstance) -> dict:
    return {"c": inst.c, "p": inst.p, "m": inst.m, "n": inst.n}


def _outcome_payload(outcome: solver.SolveOutcome) -> dict:
    payload = outcome.to_dict()
    payload["witnesses"] = {
        q: [{"u": u, "v": v} for u, v in ws] for q, ws in sorted(outcome.witnesses.items())
    }
    return payload


def _cmd_solve(args, out) -> int:
    inst = solver.ProblemInstance(args.c, args.p, args.m, args.n)
    outcome = solver.solve(inst, mode=args.mode, use_screen=args.screen)
    if args.json:
        return _emit(out, args, _instance_row(inst) | {"mode": args.mode}, _outcome_payload(outcome), _code(outcome))
    out.write(f"{args.c}*x^2 + {args.p}^(2*{args.m}) = 4*y^{args.n}  [{args.mode}]\n")
    out.write(f"verdict: {outcome.verdict}")
    out.write(f" ({outcome.reason})\n" if outcome.reason else "\n")
    if outcome.verdict == solver.HYPOTHESIS_VIOLATION:
        out.write("failed hypotheses: " + ", ".join(outcome.report.failed) + "\n")
    for s in outcome.solutions:
        out.write(f"  x = {s.x}, y = {s.y}   (u = {s.u}, v = {s.v}, q = {s.q})\n")
    for note in outcome.report.notes:
        out.write(f"note: {note}\n")
    return _code(outcome)


def _code(outcome: solver.SolveOutcome) -> int:
    return EXIT_HYPOTHESIS if outcome.verdict == solver.HYPOTHESIS_VIOLATION else EXIT_OK


def _cmd_search(args, out) -> int:
    progress = None
    if args.seed_check:
        def progress(y):
            print(f"search: y = {y}", file=sys.stderr)
    sols = solver.brute_force_solutions(args.c, args.p, args.n, args.m_max, args.y_max, progress=progress)
    result = {"solutions": [{"x": x, "y": y, "m": m} for x, y, m in sols]}
    inputs = {"c": args.c, "p": args.p, "n": args.n, "m_max": args.m_max, "y_max": args.y_max}
    return _emit(out, args, inputs, result)


def _cmd_classnum(args, out) -> int:
    D = classnum.fundamental_discriminant(args.c)
    forms = classnum.reduced_forms(args.c)
    result = {"discriminant": D, "class_number": len(forms)}
    if args.forms:
        result["forms"] = [f._asdict() for f in forms]
    return _emit(out, args, {"c": args.c}, result)


def _cmd_rsums(args, out) -> int:
    c, u, v, t = args.c, args.u, args.v, args.t
    result = {"R": rsums.r_sum(c, u, v, t), "I": rsums.i_sum(c, u, v, t)}
    if u and v:
        result["ring_check"] = tuple(rsums.power_in_ring(c, u, v, t)) == (result["R"], result["I"])
    if c >= 1 and (t == 1 or arith.is_prime(t)):
        result["congruences"] = rsums.congruence_check(c, u, v, t)["checks"]
    return _emit(out, args, {"c": c, "u": u, "v": v, "t": t}, result)


def _cmd_lehmer(args, out) -> int:
    if args.action == "defects":
        entries = lehmer.defective_pairs(args.ell, bound=args.bound)
        result = {
            "count": len(entries),
            "entries": [
                {"a": e.params.a, "b": e.params.b, "family": e.family_tag, "indices": e.family_indices}
                for e in entries
            ],
        }
        return _emit(out, args, {"ell": args.ell, "bound": args.bound}, result)
    params = lehmer.LehmerParams(args.a, args.b)
    inputs = {"a": args.a, "b": args.b, "ell": args.ell}
    if args.action == "number":
        result = {"value": lehmer.lehmer_number(params, args.ell)}
    else:
        pd = lehmer.primitive_divisor_exists(params, args.ell)
        result = {"primitive_divisor": pd.exists, "witness": pd.witness}
    return _emit(out, args, inputs, result)


def _cmd_seq(args, out) -> int:
    kind = "fib" if args.command == "fib" else "lucas"
    if args.what == "squares":
        if args.max is None:
            raise UsageError(f"{args.command} squares needs --max K")
        result = {"indices": fiblucas.square_terms(kind, args.max)}
        if kind == "fib":
            result["five_square_indices"] = fiblucas.five_square_terms(args.max)
        return _emit(out, args, {"kind": kind, "max": args.max}, result)
    try:
        k = int(args.what)
    except ValueError:
        raise UsageError(f"expected an index or 'squares', got {args.what!r}") from None
    if k < 0:
        raise UsageError("index must be non-negative")
    value = fiblucas.fibonacci(k) if kind == "fib" else fiblucas.lucas(k)
    return _emit(out, args, {"k": k}, {"value": value})


def _corollary_instances(args) -> Optional[List[solver.ProblemInstance]]:
    if not any((args.c, args.p, args.m, args.n)):
        return None
    base = solver.corollary_fixtures(args.which)
    cs = args.c or sorted({i.c for i in base})
    ps = args.p or sorted({i.p for i in base})
    ms = args.m or sorted({i.m for i in base})
    ns = args.n or sorted({i.n for i in base})
    return [solver.ProblemInstance(c, p, m, n) for c in cs for p in ps for m in ms for n in ns]


def _cmd_corollary(args, out) -> int:
    report = solver.corollary_report(args.which, _corollary_instances(args))
    rows = [
        {
            **_instance_row(r["instance"]),
            "verdict": r["verdict"],
            "reason": r["reason"],
            "status": r["status"],
            "solutions": [s.__dict__ for s in r["outcome"].solutions] if r.get("outcome") else [],
        }
        for r in report["rows"]
    ]
    result = {"passed": report["passed"], "counts": report["counts"], "rows": rows}
    return _emit(out, args, {"corollary": args.which}, result)


def table_rows():
    """One CSV row per solution (or per unsolved instance) over every corollary fixture."""
    seen = set()
    for which in (1, 2, 3, 4):
        for inst in solver.corollary_fixtures(which):
            if inst in seen:
                continue
            seen.add(inst)
            outcome = solver.solve(inst)
            base = [inst.c, inst.p, inst.m, inst.n, outcome.verdict, outcome.reason or ""]
            if outcome.solutions:
                for s in outcome.solutions:
                    yield base + [s.x, s.y]
            else:
                yield base + ["", ""]


def _cmd_table(args, out) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["c", "p", "m", "n", "verdict", "reason", "x", "y"])
    for row in table_rows():
        writer.writerow(row)
    out.write(buf.getvalue())
    return EXIT_OK


def _emit(out, args, inputs, result, code: int = EXIT_OK) -> int:
    record = output_record(args.command, inputs, result, (time.perf_counter() - args._t0) * 1000)
    out.write(json.dumps(record, indent=2) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lrn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("solve", help="decide one instance c x^2 + p^(2m) = 4 y^n")
    for name in ("c", "p", "m", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--mode", choices=("complete", "theorem"), default="complete")
    p.add_argument("--screen", action="store_true", help="congruence pre-screen (theorem mode)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("search", help="brute-force oracle scan")
    for name in ("c", "p", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--y-max", type=int, required=True)
    p.add_argument("--seed-check", action="store_true", help="report progress on stderr")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("classnum", help="class number h(-c)")
    p.add_argument("c", type=int)
    p.add_argument("--forms", action="store_true", help="list the reduced forms")
    p.set_defaults(func=_cmd_classnum)

    p = sub.add_parser("rsums", help="R(c,u,v,t), I(c,u,v,t) and congruences")
    for name in ("c", "u", "v", "t"):
        p.add_argument(name, type=int)
    p.set_defaults(func=_cmd_rsums)

    p = sub.add_parser("lehmer", help="Lehmer numbers and primitive divisors")
    lsub = p.add_subparsers(dest="action", parser_class=_Parser)
    lsub.required = True
    for action in ("number", "primdiv"):
        q = lsub.add_parser(action)
        q.add_argument("a", type=int)
        q.add_argument("b", type=int)
        q.add_argument("ell", type=int)
    q = lsub.add_parser("defects")
    q.add_argument("ell", type=int)
    q.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=_cmd_lehmer)

    for name in ("fib", "lucas"):
        p = sub.add_parser(name, help=f"{name} numbers: '{name} K' or '{name} squares --max K'")
        p.add_argument("what")
        p.add_argument("--max", type=int)
        p.set_defaults(func=_cmd_seq)

    p = sub.add_parser("verify-corollary", help="replay a corollary's fixtures")
    p.add_argument("which", type=int, choices=(1, 2, 3, 4))
    for name in ("c", "p", "m", "n"):
        p.add_argument(f"--{name}", type=int, nargs="+")
    p.set_defaults(func=_cmd_corollary)

    p = sub.add_parser("table", help="CSV over all corollary fixtures")
    p.set_defaults(func=_cmd_table)
    return parser


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args._t0 = time.perf_counter()
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except arith.IncompleteFactorization as exc:
        print(f"lrn: {exc}", file=sys.stderr)
        return EXIT_FACTORIZATION
    except (ValueError, lehmer.InvalidParams) as exc:
        print(f"lrn: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

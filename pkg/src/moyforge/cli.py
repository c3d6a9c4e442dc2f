"""Command line front end.

    moyforge eval   --graph FILE [--n N] [--trace] [--jobs K]
    moyforge chi    --graph FILE [--n N] [--cross-check]
    moyforge knot   (--pd TEXT | --pd-file FILE) --n N [--normalize] [--convention A|B]
    moyforge verify SUITE [--seed S] [--size K]

Every run prints one JSON report on stdout.  Exit status: 0 success,
1 input error, 2 no rewrite rule applies, 3 property violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources
from pathlib import Path

from .graph import ColoredGraph, GraphValidationError, check
from .knot import CONVENTIONS, STANDARD_DIAGRAMS, PDError, link_invariant, normalized, parse_pd
from .laurent import LaurentPoly
from .rewrite import Evaluator, IrreducibleGraph
from .states import count_colorings, kernel_backend
from .suites import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_IRREDUCIBLE, EXIT_VIOLATION = 0, 1, 2, 3

_SAFE_INT = 2**53


class InputError(Exception):
    pass


def json_int(n: int):
    """Exact integers; strings once they no longer fit a double."""
    return n if -_SAFE_INT <= n <= _SAFE_INT else str(n)


def poly_json(p: LaurentPoly) -> dict:
    return {k: json_int(v) for k, v in p.to_json_obj().items()}


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def _read_graph(path: str) -> tuple[str, dict]:
    """Text and parsed JSON of a graph file; packaged fixtures are a fallback."""
    p = Path(path)
    if p.exists():
        text = p.read_text()
    else:
        fixture = resources.files("moyforge") / "fixtures" / p.name
        if not fixture.is_file():
            raise InputError(f"graph file {path!r} not found")
        text = fixture.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path!r}: {exc}") from None
    return text, obj


def _load_graph(args) -> tuple[ColoredGraph, int, str]:
    if not args.graph:
        raise InputError("--graph is required")
    text, obj = _read_graph(args.graph)
    N = args.n if args.n is not None else obj.get("N") if isinstance(obj, dict) else None
    if N is None:
        raise InputError("N missing: pass --n or put \"N\" in the graph file")
    if not isinstance(N, int) or N < 1:
        raise InputError(f"N must be a positive integer, got {N!r}")
    try:
        g = ColoredGraph.from_json_obj(obj)
        check(g, N)
    except GraphValidationError as exc:
        raise InputError(str(exc)) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph: {exc}") from None
    if not g.is_closed:
        raise InputError("graph has open legs; only closed graphs can be evaluated")
    return g, N, text


def _stats(ev: Evaluator | None) -> dict:
    if ev is None:
        return {"counting_kernel": kernel_backend()}
    return {
        "memo_hits": ev.stats.memo_hits,
        "memo_misses": ev.stats.memo_misses,
        "moves": dict(sorted(ev.stats.moves.items())),
        "counting_kernel": kernel_backend(),
    }


def _trace(ev: Evaluator) -> list[dict]:
    return [
        {"rule": s.rule, "canonical": s.canonical.hex(), "vertices": s.vertices, "terms": s.terms}
        for s in ev.trace or ()
    ]


# ----------------------------------------------------------------------
# commands; each returns (exit code, report fields)


def cmd_eval(args) -> tuple[int, dict]:
    g, N, text = _load_graph(args)
    ev = Evaluator(N, trace=args.trace, jobs=args.jobs)
    report = {"N": N, "input_digest": _digest(text)}
    try:
        value = ev.evaluate(g)
    except IrreducibleGraph as exc:
        report["error"] = {"type": "IrreducibleGraph", "message": str(exc),
                           "canonical": exc.canonical.hex()}
        report["stats"] = _stats(ev)
        return EXIT_IRREDUCIBLE, report
    finally:
        ev.close()
    report["result"] = {"polynomial": poly_json(value), "at_q_1": json_int(value.eval_at_one())}
    report["stats"] = _stats(ev)
    if args.trace:
        report["trace"] = _trace(ev)
    return EXIT_OK, report


def cmd_chi(args) -> tuple[int, dict]:
    g, N, text = _load_graph(args)
    count = count_colorings(g, N)
    report = {"N": N, "input_digest": _digest(text)}
    ev = None
    if args.cross_check:
        ev = Evaluator(N, jobs=args.jobs)
        try:
            value = ev.evaluate(g)
        except IrreducibleGraph as exc:
            report["error"] = {"type": "IrreducibleGraph", "message": str(exc),
                               "canonical": exc.canonical.hex()}
            report["stats"] = _stats(ev)
            return EXIT_IRREDUCIBLE, report
        finally:
            ev.close()
        if value.eval_at_one() != count:
            report["error"] = {
                "type": "TheoremViolation",
                "message": "polynomial at q=1 differs from the coloring count",
                "count": json_int(count),
                "eval_at_one": json_int(value.eval_at_one()),
                "graph": g.to_json_obj(N),
            }
            report["stats"] = _stats(ev)
            return EXIT_VIOLATION, report
    report["result"] = {"euler_characteristic": json_int(count)}
    if ev is not None:
        report["result"]["cross_check"] = "agree"
    report["stats"] = _stats(ev)
    return EXIT_OK, report


def _pd_text(args) -> str:
    if args.pd and args.pd_file:
        raise InputError("give either --pd or --pd-file, not both")
    if args.pd_file:
        try:
            return Path(args.pd_file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.pd_file!r}: {exc.strerror}") from None
    if args.pd:
        return STANDARD_DIAGRAMS.get(args.pd, args.pd)
    raise InputError("--pd or --pd-file is required")


def cmd_knot(args) -> tuple[int, dict]:
    if args.n is None or args.n < 1:
        raise InputError("--n must be a positive integer")
    N = args.n
    text = _pd_text(args)
    try:
        d = parse_pd(text)
    except PDError as exc:
        raise InputError(f"PD: {exc}") from None
    report = {"N": N, "input_digest": _digest(text)}
    ev = Evaluator(N, trace=args.trace, jobs=args.jobs)
    try:
        value = link_invariant(d, N, convention=args.convention, evaluator=ev)
    except IrreducibleGraph as exc:
        report["error"] = {"type": "IrreducibleGraph", "message": str(exc),
                           "canonical": exc.canonical.hex(),
                           "state_graph": exc.state_graph.to_json_obj(N)}
        report["stats"] = _stats(ev)
        return EXIT_IRREDUCIBLE, report
    finally:
        ev.close()
    result = {
        "crossings": len(d.crossings),
        "components": d.components,
        "writhe": d.writhe,
        "convention": args.convention,
        "normalized": bool(args.normalize),
        "polynomial": poly_json(normalized(value, N) if args.normalize else value),
    }
    report["result"] = result
    report["stats"] = _stats(ev)
    if args.trace:
        report["trace"] = _trace(ev)
    return EXIT_OK, report


def cmd_verify(args) -> tuple[int, dict]:
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.size is not None and args.size < 1:
        raise InputError("--size must be positive")
    ns = [args.n] if args.n is not None else None
    res = run_suite(args.suite, seed=args.seed, size=args.size, ns=ns)
    report = {"N": args.n, "input_digest": _digest(f"{args.suite}:{args.seed}:{res.size}:{args.n}")}
    table = res.to_json_obj()
    if res.failures:
        report["error"] = {"type": "PropertyViolation", "failures": res.failures,
                           "counterexample": res.counterexample, "table": table["table"]}
        return EXIT_VIOLATION, report
    if res.irreducible:
        report["error"] = {"type": "IrreducibleGraph", "canonical": res.irreducible}
        return EXIT_IRREDUCIBLE, report
    report["result"] = table
    return EXIT_OK, report


COMMANDS = {"eval": cmd_eval, "chi": cmd_chi, "knot": cmd_knot, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moyforge", description="MOY polynomials and friends.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph=False):
        p.add_argument("--n", type=int, help="rank N of sl(N)")
        p.add_argument("--jobs", type=int, default=1, help="worker threads (default 1)")
        if graph:
            p.add_argument("--graph", metavar="FILE", help="graph JSON (packaged fixture names work too)")

    p = sub.add_parser("eval", help="P_N of a closed graph")
    common(p, graph=True)
    p.add_argument("--trace", action="store_true", help="include the rewrite derivation")

    p = sub.add_parser("chi", help="number of subset colorings (value at q = 1)")
    common(p, graph=True)
    p.add_argument("--cross-check", action="store_true", help="also evaluate and compare at q = 1")

    p = sub.add_parser("knot", help="quantum sl(N) polynomial of a PD diagram")
    common(p)
    p.add_argument("--pd", metavar="TEXT", help="PD text, or one of: " + ", ".join(STANDARD_DIAGRAMS))
    p.add_argument("--pd-file", metavar="FILE")
    p.add_argument("--normalize", action="store_true", help="divide by the unknot value [N]")
    p.add_argument("--convention", choices=CONVENTIONS, default="A",
                   help="which resolution gets which crossing coefficient")
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int)
    p.add_argument("--n", type=int, help="restrict to a single N")
    return ap


def run(argv=None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    report = {"command": {"name": args.command, "argv": list(sys.argv[1:] if argv is None else argv)}}
    start = time.perf_counter()
    try:
        code, fields = COMMANDS[args.command](args)
    except InputError as exc:
        code, fields = EXIT_INPUT, {"error": {"type": "InputError", "message": str(exc)}}
    report.update(fields)
    report["exit_code"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report


def main(argv=None) -> int:
    code, report = run(argv)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

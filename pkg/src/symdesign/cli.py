"""Command-line entry point.

Every subcommand writes one JSON object per line to stdout, ending with a
``summary`` record, and a short human-readable summary to stderr.

Exit codes: 0 success, 1 violation found by a checking subcommand
(``verify``, ``fixed``), 2 usage error, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from .analyzer import analyze_prime, default_facts, full_report
from .errors import AxiomViolation, BudgetExceeded, NotAutomorphism, ParamViolation, ParseError
from .incidence import DesignParams, parse_design, serialize_design
from .lemmas import fixed_structure, is_prime, lemma_suite, primes_upto
from .permgroup import burnside_from_counts, format_cycles, parse_cycles, parse_group, perm_order
from .search import SearchLimits, automorphism_group, run_invariant_search, search_difference_sets


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="symdesign", description="Symmetric design automorphism toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def params(sp):
        sp.add_argument("--v", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--lambda", dest="lam", type=int, required=True)

    def budget(sp):
        sp.add_argument("--max-nodes", type=int, default=None,
                        help="node budget (default from $SYMDESIGN_MAX_NODES)")

    sp = sub.add_parser("verify", help="check the design axioms")
    sp.add_argument("design")
    sp.add_argument("--no-counting-identity", action="store_true")

    sp = sub.add_parser("aut", help="automorphism group order")
    sp.add_argument("design")
    budget(sp)

    sp = sub.add_parser("fixed", help="fixed structure and lemma checks for one automorphism")
    sp.add_argument("design")
    sp.add_argument("--perm", required=True)
    sp.add_argument("--prime", type=int, default=None)

    sp = sub.add_parser("analyze", help="fixed-point case analysis")
    params(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--prime", type=int)
    g.add_argument("--all", action="store_true")
    sp.add_argument("--no-external-facts", action="store_true")

    sp = sub.add_parser("burnside", help="orbit-count integrality for a hypothetical group")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--fix", type=int, required=True, help="fixed points of every nonidentity element")

    sp = sub.add_parser("search-ds", help="difference sets in Z_v")
    params(sp)
    budget(sp)

    sp = sub.add_parser("search", help="designs invariant under a group")
    params(sp)
    sp.add_argument("--group", required=True, help="file with one cycle-notation permutation per line")
    sp.add_argument("--out", default=None, help="directory for result design files")
    budget(sp)
    return p


def _limits(args) -> SearchLimits:
    return SearchLimits(max_nodes=args.max_nodes) if args.max_nodes else SearchLimits()


def _cmd_verify(args, emit):
    try:
        d = parse_design(Path(args.design).read_text(), check_counting=not args.no_counting_identity)
    except AxiomViolation as exc:
        emit({"record": "verify", "verdict": "violation", "axiom": exc.axiom, "axiom_name": exc.name,
              "witness": exc.witness})
        return "violation", [], f"axiom {exc.axiom} ({exc.name}) violated: {exc.witness}"
    emit({"record": "verify", "verdict": "ok", "params": list(d.params.as_tuple()), "blocks": len(d.blocks)})
    return "ok", [], f"valid symmetric {d.params} design"


def _cmd_aut(args, emit):
    d = parse_design(Path(args.design).read_text())
    try:
        res = automorphism_group(d, _limits(args))
    except BudgetExceeded as exc:
        emit({"record": "automorphism_group", "verdict": "budget-exceeded", "nodes": exc.nodes})
        return "budget-exceeded", [], f"budget exceeded after {exc.nodes} nodes"
    emit({"record": "automorphism_group", "order": res.order,
          "generators": [format_cycles(g) for g in res.generators],
          "orbit_sizes": res.orbit_sizes, "node_count": res.node_count})
    return "ok", [], f"|Aut| = {res.order}"


def _cmd_fixed(args, emit):
    d = parse_design(Path(args.design).read_text())
    perm = parse_cycles(args.perm, d.v)
    try:
        fx = fixed_structure(d, perm)
    except NotAutomorphism:
        emit({"record": "fixed", "verdict": "violation", "reason": "not an automorphism",
              "perm": format_cycles(perm)})
        return "violation", [], "permutation is not an automorphism"
    order = perm_order(perm)
    emit({"record": "fixed", "perm": format_cycles(perm), "order": order,
          "fixed_points": sorted(fx.fixed_points), "fixed_blocks": [list(b) for b in fx.block_sets(d)],
          "f": fx.f, "fb": len(fx.fixed_blocks)})
    prime = args.prime if args.prime is not None else order
    if not is_prime(prime) or prime != order:
        emit({"record": "lemma_report", "skipped": f"order {order} is not the prime {prime}"})
        return "ok", [], f"|F| = {fx.f}, |F_b| = {len(fx.fixed_blocks)} (lemma checks need prime order)"
    rep = lemma_suite(d, perm, prime)
    emit({"record": "lemma_report", **rep.as_dict()})
    verdict = "ok" if rep.all_hold else "violation"
    return verdict, [], f"|F| = {fx.f}, |F_b| = {len(fx.fixed_blocks)}, lemmas {verdict}"


def _cmd_analyze(args, emit):
    params = DesignParams(args.v, args.k, args.lam)
    if args.prime is not None:
        rep = analyze_prime(params, args.prime)
        emit(rep.as_dict())
        return rep.verdict, [], f"p = {args.prime}: {rep.verdict}, feasible |F| in {list(rep.feasible)}"
    for p in primes_upto(params.v):
        emit(analyze_prime(params, p).as_dict())
    facts = [] if args.no_external_facts else default_facts(params)
    rep = full_report(params, facts)
    emit(rep.as_dict())
    return "ok", [], (f"allowed primes {rep.allowed_primes}; caps {rep.exponent_caps}; "
                      f"forbidden element orders {rep.forbidden_element_orders}")


def _cmd_burnside(args, emit):
    if args.order < 1:
        raise _Usage("--order must be positive")
    res = burnside_from_counts([(1, args.v), (args.order - 1, args.fix)])
    verdict = "feasible" if res.is_integral else "contradiction"
    emit({"record": "burnside", "v": args.v, "verdict": verdict, **res.as_dict()})
    return verdict, [], f"r = {res.orbit_count} ({'integral' if res.is_integral else 'not integral'})"


def _cmd_search_ds(args, emit):
    try:
        found = search_difference_sets(args.v, args.k, args.lam, _limits(args))
    except BudgetExceeded as exc:
        return "budget-exceeded", [], str(exc)
    for s in found:
        emit({"record": "difference_set", "v": args.v, "residues": list(s)})
    return "ok", [], f"{len(found)} difference sets"


def _cmd_search(args, emit):
    params = DesignParams(args.v, args.k, args.lam)
    group = parse_group(Path(args.group).read_text(), params.v)
    run = run_invariant_search(params, group, _limits(args))
    artifacts = []
    out = Path(args.out) if args.out else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    for i, d in enumerate(run.designs, start=1):
        rec = {"record": "design", "index": i, "blocks": d.block_sets()}
        if out is not None:
            path = out / f"design_{i:04d}.design"
            path.write_text(serialize_design(d))
            artifacts.append(str(path))
            rec["path"] = str(path)
        emit(rec)
    summary = run.summary()
    summary.pop("elapsed")
    emit(summary)
    verdict = "ok" if run.complete else "budget-exceeded"
    return verdict, artifacts, f"{len(run.designs)} designs, {run.nodes} nodes, {run.status}"


_COMMANDS = {
    "verify": _cmd_verify, "aut": _cmd_aut, "fixed": _cmd_fixed, "analyze": _cmd_analyze,
    "burnside": _cmd_burnside, "search-ds": _cmd_search_ds, "search": _cmd_search,
}
_CHECKS = {"verify", "fixed"}


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    t0 = time.monotonic()

    def emit(record):
        out.write(json.dumps(record, sort_keys=True, default=_jsonable) + "\n")

    try:
        args = _parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    try:
        verdict, artifacts, human = _COMMANDS[args.command](args, emit)
    except _Usage as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except ParseError as exc:
        emit({"record": "error", "kind": type(exc).__name__, "message": str(exc)})
        err.write(f"parse error: {exc}\n")
        return 3
    except AxiomViolation as exc:
        emit({"record": "error", "kind": "AxiomViolation", "axiom": exc.axiom, "witness": exc.witness})
        err.write(f"invalid design: {exc}\n")
        return 1
    except (ParamViolation, ValueError, OSError) as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    inputs = {k: v for k, v in sorted(vars(args).items()) if k != "command"}
    emit({"record": "summary", "command": args.command, "inputs": inputs, "verdict": verdict,
          "artifacts": artifacts, "elapsed_ms": round((time.monotonic() - t0) * 1000, 3)})
    err.write(f"{args.command}: {verdict} - {human}\n")
    return 1 if (args.command in _CHECKS and verdict == "violation") else 0


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line interface.

Exit codes: 0 the property holds / an orientation was found, 1 it fails /
none exists, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .fairness import Notion, check, check_fpo, check_non_malicious, prop_share, sprop1_threshold
from .model import InstanceError, InfeasibleOrientation, format_rational
from .oracle import DEFAULT_BUDGET, SpaceTooLarge, check_po_exhaustive, find_orientation, mms_share
from .report import render_report

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

CHECK_NOTIONS = [n.value.lower() for n in Notion] + ["fpo", "po", "non-malicious"]
SOLVE_NOTIONS = ["prop", "prop1-fpo", "sprop1", "ef1"] + [n.value.lower() for n in Notion]
DEFAULT_METHOD = {"prop": "matching", "prop1-fpo": "pipeline", "sprop1": "greedy", "ef1": "pseudoforest"}


class UsageError(ValueError):
    pass


def _out(args, text: str) -> None:
    target = getattr(args, "output", None)
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(args, payload: dict, text: str) -> None:
    _out(args, json.dumps(payload, sort_keys=True, indent=2) + "\n" if args.json else text)


# ---------------------------------------------------------------- commands


def cmd_check(args) -> int:
    inst = io.load_instance(args.instance)
    pi = io.load_orientation(args.orientation, inst)
    notion = args.notion.lower()
    if notion == "fpo":
        rep = check_fpo(inst, pi)
    elif notion == "po":
        rep = check_po_exhaustive(inst, pi, budget=args.budget)
    elif notion == "non-malicious":
        rep = check_non_malicious(inst, pi)
    else:
        rep = check(inst, pi, Notion.parse(notion))
    _out(args, render_report(rep, "json" if args.json else "text"))
    return EXIT_OK if rep.holds else EXIT_FAIL


def _solve(inst, notion: str, method: str, args):
    """Returns (orientation or None, extra payload, trace or None)."""
    from . import solvers

    if method == "exhaustive":
        target = "PROP1" if notion == "prop1-fpo" else notion.upper()
        return find_orientation(inst, Notion.parse(target), budget=args.budget), {}, None
    if notion == "prop" and method == "matching":
        return solvers.solve_prop_binary(inst), {}, None
    if notion == "prop1-fpo" and method == "pipeline":
        pi, trace = solvers.solve_prop1_fpo(inst)
        return pi, {}, trace
    if notion == "sprop1" and method == "greedy":
        return solvers.greedy_sprop1(inst, start=args.start), {}, None
    if notion == "ef1" and method == "pseudoforest":
        return solvers.solve_ef1_chores_simple(inst), {}, None
    raise UsageError(f"method {method!r} is not available for notion {notion!r}")


def cmd_solve(args) -> int:
    inst = io.load_instance(args.instance)
    notion = args.notion.lower()
    method = args.method or DEFAULT_METHOD.get(notion, "exhaustive")
    pi, _, trace = _solve(inst, notion, method, args)
    if args.json:
        payload = {"found": pi is not None, "orientation": dict(pi) if pi is not None else None,
                   "notion": notion, "method": method}
        if trace is not None and args.trace:
            payload["trace"] = trace.to_dict()
        _out(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        text = io.orientation_to_json(pi, inst) if pi is not None else f"no orientation satisfies {notion.upper()}\n"
        if trace is not None and args.trace:
            text = render_report(trace) + text
        _out(args, text)
    return EXIT_OK if pi is not None else EXIT_FAIL


def cmd_exists(args) -> int:
    inst = io.load_instance(args.instance)
    notion = Notion.parse(args.notion)
    if args.exhaustive or notion.value.lower() not in DEFAULT_METHOD:
        pi = find_orientation(inst, notion, budget=args.budget)
        how = "exhaustive"
    else:
        pi, _, _ = _solve(inst, notion.value.lower(), DEFAULT_METHOD[notion.value.lower()], args)
        how = DEFAULT_METHOD[notion.value.lower()]
    count = inst.orientation_count()
    if pi is None:
        text = f"no orientation satisfies {notion.value}" + (f" (searched {count})" if how == "exhaustive" else "") + "\n"
    else:
        text = f"found {notion.value} orientation: {json.dumps(dict(pi), sort_keys=True)}\n"
    _emit(args, {"exists": pi is not None, "notion": notion.value, "method": how, "searched": count,
                 "orientation": dict(pi) if pi is not None else None}, text)
    return EXIT_OK if pi is not None else EXIT_FAIL


def cmd_share(args) -> int:
    inst = io.load_instance(args.instance)
    agents = [args.agent] if args.agent else list(inst.agents)
    for a in agents:
        if not 1 <= a <= inst.n:
            raise UsageError(f"agent {a} outside 1..{inst.n}")
    kind = args.kind.lower()
    if kind == "prop":
        shares = prop_share(inst)
    elif kind == "sprop1":
        shares = sprop1_threshold(inst)
    else:
        shares = {a: mms_share(inst, a, budget=args.budget) for a in agents}
    result = {str(a): format_rational(shares[a]) for a in agents}
    _emit(args, {"kind": kind, "shares": result}, "".join(f"agent {a}: {v}\n" for a, v in result.items()))
    return EXIT_OK


def cmd_gadget(args) -> int:
    from . import reductions as R

    kind = args.kind.lower()
    text = Path(args.input).read_text()
    if kind in ("prop-3sat", "propx-3sat"):
        formula = R.parse_2p2n3sat(text)
        inst = R.gadget_3sat_skeleton(formula, "PROP" if kind == "prop-3sat" else "PROPX", args.polarity)
    else:
        inst = R.gadget_partition(R.parse_partition(text), R.GadgetKind.parse(kind), args.polarity)
    _out(args, io.instance_to_json(inst))
    return EXIT_OK


def cmd_gen(args) -> int:
    from .generators import generate

    polarity = -1 if args.polarity == "chores" else 1
    inst = generate(args.family, seed=args.seed, xs=args.xs, polarity=polarity)
    _out(args, io.instance_to_json(inst))
    return EXIT_OK


def cmd_verify_reduction(args) -> int:
    from . import reductions as R

    kind = args.kind.lower()
    text = Path(args.input).read_text()
    if kind in ("prop-3sat", "propx-3sat"):
        notion = "PROP" if kind == "prop-3sat" else "PROPX"
        formula = R.parse_2p2n3sat(text)
        wiring = R.default_wiring(notion)
        forcing = R.verify_forcing_property(wiring, args.polarity)
        gadget = R.gadget_3sat_skeleton(formula, notion, args.polarity, wiring)
        witnesses = []
        for a in formula.satisfying_assignments():
            pi = R.witness_orientation_from_assignment(gadget, formula, a, notion, args.polarity, wiring)
            witnesses.append(check(gadget, pi, notion).holds)
        ok = forcing.holds and all(witnesses)
        payload = {"kind": kind, "polarity": args.polarity, "forcing": forcing.to_dict(),
                   "vertices": gadget.n, "edges": gadget.m,
                   "satisfying_assignments": len(witnesses), "witnesses_pass": sum(witnesses), "agree": ok}
        text_out = (f"forcing property: {'HOLDS' if forcing.holds else 'FAILS'}\n"
                    f"gadget: {gadget.n} vertices, {gadget.m} edges\n"
                    f"witnesses passing {notion}: {sum(witnesses)}/{len(witnesses)}\n")
        _emit(args, payload, text_out)
        return EXIT_OK if ok else EXIT_FAIL
    rep = R.verify_reduction_small(R.GadgetKind.parse(kind), R.parse_partition(text), args.polarity,
                                   budget=args.budget)
    text_out = (f"{rep.kind} ({rep.polarity}) xs={list(rep.xs)}: partition {'yes' if rep.partition_yes else 'no'}, "
                f"orientation {'found' if rep.orientation_found else 'none'} over {rep.orientations}: "
                f"{'AGREE' if rep.agree else 'DISAGREE'}\n")
    _emit(args, rep.to_dict(), text_out)
    return EXIT_OK if rep.agree else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fairorient", description="Fair orientations with exact rationals.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle search budget")
    common.add_argument("-o", "--output", help="write output to this file")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check an orientation against a notion")
    c.add_argument("--notion", required=True, type=str.lower, choices=CHECK_NOTIONS)
    c.add_argument("instance")
    c.add_argument("orientation")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", parents=[common], help="construct an orientation")
    s.add_argument("--notion", required=True, type=str.lower, choices=SOLVE_NOTIONS)
    s.add_argument("--method", choices=["matching", "pipeline", "greedy", "pseudoforest", "exhaustive"])
    s.add_argument("--start", type=int, help="start vertex for the greedy SPROP1 walk")
    s.add_argument("--trace", action="store_true", help="show the pipeline stages")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("exists", parents=[common], help="decide existence of an orientation")
    e.add_argument("--notion", required=True, type=str.lower, choices=[n.value.lower() for n in Notion])
    e.add_argument("--exhaustive", action="store_true", help="use the exhaustive oracle")
    e.add_argument("instance")
    e.set_defaults(func=cmd_exists, start=None)

    sh = sub.add_parser("share", parents=[common], help="compute PROP, SPROP1 or MMS shares")
    sh.add_argument("--kind", required=True, type=str.lower, choices=["prop", "sprop1", "mms"])
    sh.add_argument("--agent", type=int)
    sh.add_argument("instance")
    sh.set_defaults(func=cmd_share)

    g = sub.add_parser("gadget", parents=[common], help="build a reduction gadget")
    g.add_argument("--kind", required=True, type=str.lower,
                   choices=["eq", "eq1", "eqx", "ef1multi", "prop-3sat", "propx-3sat"])
    g.add_argument("--polarity", choices=["goods", "chores"], default="goods")
    g.add_argument("input", help="partition file or 2p2n3sat formula file")
    g.set_defaults(func=cmd_gadget)

    gen = sub.add_parser("gen", parents=[common], help="emit a built-in or random instance")
    gen.add_argument("--family", required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--xs", type=int, nargs="+", help="Partition integers for ef1-multigraph")
    gen.add_argument("--polarity", choices=["goods", "chores"], default="goods")
    gen.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify-reduction", parents=[common], help="check a reduction at desk scale")
    v.add_argument("--kind", required=True, type=str.lower,
                   choices=["eq", "eq1", "eqx", "ef1multi", "prop-3sat", "propx-3sat"])
    v.add_argument("--polarity", choices=["goods", "chores"])
    v.add_argument("input")
    v.set_defaults(func=cmd_verify_reduction)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    if args.command == "verify-reduction" and args.polarity is None:
        args.polarity = "chores" if args.kind == "ef1multi" else "goods"
    try:
        return args.func(args)
    except (InstanceError, InfeasibleOrientation, SpaceTooLarge, UsageError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run_cli(argv: list[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

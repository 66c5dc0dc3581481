"""Command line front end.

akbl check NET OBL   verify an obligation against a network
akbl lts NET         build and export the transition system
akbl trace NET       print one maximal run, chosen by seed

Exit codes: 0 the obligation holds (or the run finished), 1 the
obligation is violated, 2 the static certifier alone could not
decide, 3 the input was rejected or a limit was hit.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .certify import check_network, report_json
from .exhaustive import Verdict, sat_obl
from .model import AkblError, Net, canonicalize, validate
from .parser import (ParseError, parse_net, parse_obligation,
                     render_obligation, render_pred)
from .semantics import (build_lts, dot_export, json_export, net_text,
                        step_candidates)

OK, VIOLATED, UNDECIDED, BAD_INPUT = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_net(path: str) -> Net:
    net = parse_net(Path(path).read_text())
    errors = [d for d in validate(net) if d.severity == "error"]
    if errors:
        raise ParseError(errors)
    return net


def _witness_json(w) -> dict:
    return {
        "path": [l.text() for l in w.path],
        "label": w.label.text(),
        "theta": repr(w.theta),
        "pred": render_pred(w.pred),
    }


def _verdict_json(v: Verdict) -> dict:
    out = {
        "obligation": render_obligation(v.obligation),
        "holds": v.holds,
        "states_explored": v.states_explored,
        "transitions_checked": v.transitions_checked,
    }
    if v.witness is not None:
        out["witness"] = _witness_json(v.witness)
    return out


def _print_static(report, explain: bool):
    for r in report.actions:
        from .parser import render_action
        print(f"{r.outcome} {r.source}: {render_action(r.action)}")
        if r.theta0 is not None and r.theta0.pairs:
            print(f"  with {r.theta0!r}")
        if r.constraints:
            from .certify import constraint_text
            atoms = ", ".join(constraint_text(c) for c in r.constraints)
            print(f"  constraints: {atoms}")
        if explain and r.side_values:
            src, tgt = r.side_values
            print(f"  source may evaluate to {{{', '.join(sorted(v.text for v in src))}}}"
                  f", target to {{{', '.join(sorted(v.text for v in tgt))}}}")
    print(f"certified: {'yes' if report.certified else 'no'}")


def _print_verdict(v: Verdict):
    print(f"obligation: {render_obligation(v.obligation)}")
    if v.holds:
        print(f"holds: yes ({v.states_explored} states, "
              f"{v.transitions_checked} transitions checked)")
        return
    print("holds: no")
    w = v.witness
    print("counterexample:")
    for i, l in enumerate(w.path, 1):
        print(f"  {i}. {l.text()}")
    print(f"failing step: {w.label.text()}")
    print(f"with {w.theta!r}")
    print(f"unsatisfied: {render_pred(w.pred)}")


def cmd_check(args) -> int:
    net = _load_net(args.net)
    obl = parse_obligation(Path(args.obligation).read_text())
    static_report = None
    if args.mode in ("static", "auto"):
        static_report = check_network(net, obl)
        if args.mode == "static" or static_report.certified:
            if args.json:
                print(_dump(report_json(static_report, args.explain_denied)))
            else:
                _print_static(static_report, args.explain_denied)
            return OK if static_report.certified else UNDECIDED
    verdict = sat_obl(net, obl, max_states=args.max_states,
                      max_depth=args.max_depth)
    if args.json:
        out = _verdict_json(verdict)
        if static_report is not None:
            out = {"static": report_json(static_report, args.explain_denied),
                   "exhaustive": _verdict_json(verdict)}
        print(_dump(out))
    else:
        if static_report is not None:
            _print_static(static_report, args.explain_denied)
        _print_verdict(verdict)
    return OK if verdict.holds else VIOLATED


def cmd_lts(args) -> int:
    net = _load_net(args.net)
    lts = build_lts(net, max_states=args.max_states, max_depth=args.max_depth)
    if args.dot:
        Path(args.dot).write_text(dot_export(lts) + "\n")
    if args.json:
        print(_dump(json_export(lts)))
    else:
        print(f"states: {len(lts.states)}")
        print(f"transitions: {len(lts.transitions)}")
    return OK


def cmd_trace(args) -> int:
    net = canonicalize(_load_net(args.net))
    rng = random.Random(args.seed)
    for _ in range(args.max_depth):
        steps, denied = step_candidates(net)
        if args.explain_denied:
            for label, f in denied:
                print(f"blocked: {label.text()} ({f.text})")
        if not steps:
            break
        label, net = steps[rng.randrange(len(steps))]
        print(label.text())
    print(f"final: {net_text(net)}")
    return OK


def _add_limits(p):
    p.add_argument("--max-states", type=int, default=100000,
                   help="state budget for exploration (default 100000)")
    p.add_argument("--max-depth", type=int, default=10000,
                   help="depth budget for exploration (default 10000)")


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="akbl",
        description="check policy obligations of tuple-space networks")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify an obligation")
    c.add_argument("net", help="network file")
    c.add_argument("obligation", help="obligation file")
    c.add_argument("--mode", choices=("static", "exhaustive", "auto"),
                   default="auto",
                   help="static certifier, exhaustive search, or static "
                        "with exhaustive fallback (default)")
    c.add_argument("--json", action="store_true", help="machine readable output")
    c.add_argument("--explain-denied", action="store_true",
                   help="show the abstract policy values behind denials")
    _add_limits(c)
    c.set_defaults(fn=cmd_check)

    l = sub.add_parser("lts", help="build the transition system")
    l.add_argument("net", help="network file")
    l.add_argument("--json", action="store_true", help="machine readable output")
    l.add_argument("--dot", metavar="PATH", help="write a graphviz rendering")
    _add_limits(l)
    l.set_defaults(fn=cmd_lts)

    t = sub.add_parser("trace", help="print one maximal run")
    t.add_argument("net", help="network file")
    t.add_argument("--seed", type=int, default=0, help="choice seed")
    t.add_argument("--explain-denied", action="store_true",
                   help="list blocked actions with the value that blocked them")
    _add_limits(t)
    t.set_defaults(fn=cmd_trace)
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        for d in e.diagnostics:
            print(d.format(), file=sys.stderr)
        return BAD_INPUT
    except FileNotFoundError as e:
        print(f"error: {e.filename}: no such file", file=sys.stderr)
        return BAD_INPUT
    except AkblError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend.

Exit codes: 0 success or no violations, 1 violations found, 2 usage or
configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .axioms import AXIOMS, ConfigurationError, FuzzConfig, campaign_status, check, fuzz
from .ballots import ProfileError, format_profile, mcgarvey_profile, random_profile, read_profile
from .margins import MarginError, margin_graph, read_margin_graph
from .methods import METHODS, Diagram, MethodError, result_to_dict, run_method
from .render import render_dot
from .tiebreak import TiebreakError, parse_edge_order, parse_tiebreaker

EXIT_OK, EXIT_VIOLATIONS, EXIT_CONFIG = 0, 1, 2


def _count_range(text: str):
    lo, sep, hi = text.partition("-")
    try:
        return (int(lo), int(hi)) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO-HI, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rivervote", description="River and related margin-based voting methods.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p, margins=True):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--profile", metavar="FILE", help="ballot profile file")
        if margins:
            g.add_argument("--margins", metavar="FILE", help="margin graph file")

    def add_tiebreak(p):
        p.add_argument("--tiebreaker", default="lex", metavar="SPEC",
                       help="lex[:ORDER] | first-voter | quasi-pareto[:BASE] | random:SEED (default lex)")

    for name in ("winners", "diagram"):
        p = sub.add_parser(name, help="print winners" if name == "winners" else "print the diagram as DOT")
        add_input(p)
        p.add_argument("--method", required=True, choices=METHODS)
        add_tiebreak(p)
        p.add_argument("--tiebreaker-file", metavar="FILE", help="explicit edge order, one 'SRC DST' per line")
        if name == "winners":
            p.add_argument("--json", action="store_true", help="print the structured result instead")

    p = sub.add_parser("check", help="check one axiom on one profile")
    add_input(p)
    p.add_argument("--axiom", required=True, choices=sorted(AXIOMS))
    p.add_argument("--method", required=True, choices=METHODS)
    add_tiebreak(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fuzz", help="search random profiles for axiom violations")
    p.add_argument("--axiom", required=True, choices=sorted(AXIOMS))
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--alternatives", type=_count_range, default=4, metavar="K|LO-HI")
    p.add_argument("--voters", type=_count_range, default=11, metavar="N|LO-HI")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unique-weights", action="store_true", help="keep only uniquely weighted profiles")
    p.add_argument("--inject-clone", action="store_true", help="add a Pareto-dominated copy of a random alternative")
    p.add_argument("--clone-placement", choices=("auto", "adjacent", "random"), default="auto")
    p.add_argument("--any-parity", action="store_true", help="allow even voter counts")
    add_tiebreak(p)
    p.add_argument("--json", action="store_true", help="print one JSON document per violation")

    p = sub.add_parser("gen", help="print a random profile")
    p.add_argument("--alternatives", type=int, required=True)
    p.add_argument("--voters", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("realize", help="print a profile realizing an even-margin graph")
    p.add_argument("--margins", required=True, metavar="FILE")
    return ap


def _load(args):
    if getattr(args, "profile", None):
        p = read_profile(args.profile)
        return p, margin_graph(p)
    return None, read_margin_graph(args.margins)


def _kind(args, g=None):
    kind = parse_tiebreaker(args.tiebreaker)
    path = getattr(args, "tiebreaker_file", None)
    if path:
        with open(path, encoding="utf-8") as fh:
            kind = parse_edge_order(fh.read(), g)
    return kind


def _compute(args):
    p, g = _load(args)
    kind = _kind(args, g)
    if p is None:
        if args.method == "stable-voting":
            raise ConfigurationError("stable-voting needs ballots; realize the margin graph first")
        if kind.needs_profile and args.method in ("ranked-pairs", "river"):
            raise ConfigurationError(f"the {kind.describe()} tiebreaker needs ballots")
    return run_method(args.method, graph=g, profile=p, kind=kind)


def _cmd_winners(args, out):
    r = _compute(args)
    if args.json:
        out.write(json.dumps(result_to_dict(r), indent=2, sort_keys=True) + "\n")
    else:
        out.write("".join(w + "\n" for w in r.sorted_winners()))
    return EXIT_OK


def _cmd_diagram(args, out):
    r = _compute(args)
    if not isinstance(r.certificate, Diagram):
        raise ConfigurationError(f"{args.method} produces no diagram")
    out.write(render_dot(r.certificate))
    return EXIT_OK


def _cmd_check(args, out):
    if not args.profile:
        raise ConfigurationError("axiom checks need ballots; realize the margin graph first")
    p = read_profile(args.profile)
    r = check(args.axiom, args.method, p, parse_tiebreaker(args.tiebreaker))
    if args.json:
        out.write(json.dumps(r.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"{r.axiom} {r.method}: {r.verdict}\n")
        if r.detail:
            out.write(f"  {r.detail}\n")
        if r.violated:
            out.write(f"  before {sorted(r.before)} after {sorted(r.after) if r.after is not None else '-'}\n")
    return EXIT_VIOLATIONS if r.violated else EXIT_OK


def _cmd_fuzz(args, out):
    cfg = FuzzConfig(
        alternatives=args.alternatives,
        voters=args.voters,
        trials=args.trials,
        seed=args.seed,
        unique_weights_only=args.unique_weights,
        tiebreaker=parse_tiebreaker(args.tiebreaker),
        inject_clone=args.inject_clone,
        clone_placement=args.clone_placement,
        odd_voters=not args.any_parity,
    )
    found = fuzz(args.method, args.axiom, cfg)
    status = campaign_status(args.method, args.axiom, found)
    if args.json:
        for r in found:
            out.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    else:
        for r in found:
            out.write(f"trial {r.trial}: {r.detail}; before {sorted(r.before)} after {sorted(r.after or ())}\n")
    sys.stderr.write(f"{args.axiom} {args.method}: {len(found)} violation(s) in {cfg.trials} trials ({status})\n")
    return EXIT_VIOLATIONS if found else EXIT_OK


def _cmd_gen(args, out):
    out.write(format_profile(random_profile(args.alternatives, args.voters, args.seed)))
    return EXIT_OK


def _cmd_realize(args, out):
    out.write(format_profile(mcgarvey_profile(read_margin_graph(args.margins))))
    return EXIT_OK


COMMANDS = {
    "winners": _cmd_winners,
    "diagram": _cmd_diagram,
    "check": _cmd_check,
    "fuzz": _cmd_fuzz,
    "gen": _cmd_gen,
    "realize": _cmd_realize,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (ConfigurationError, ProfileError, MarginError, TiebreakError, MethodError, OSError) as e:
        sys.stderr.write(f"rivervote: error: {e}\n")
        return EXIT_CONFIG


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

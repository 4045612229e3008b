"""Command-line front end: ``lieroots roots|dynkin|codim|classify|verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .report import VerificationReport, load_fixture, merge
from .rootsys import RootSystemError, build_root_system

SUITES = ("all", "tables", "weyl", "induction", "classify", "weights", "exceptional")
CLASSIFY_SYSTEMS = (("A", 3), ("B", 3), ("C", 3), ("BC", 3), ("D", 4), ("G2", 2), ("B", 4))


def _system(parser: argparse.ArgumentParser, args):
    try:
        return build_root_system(args.family, args.rank)
    except (RootSystemError, KeyError) as exc:
        parser.error(str(exc))


def _fmt(v) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


# --------------------------------------------------------------------------
# query commands


def cmd_roots(parser, args) -> int:
    rs = _system(parser, args)
    idx = rs.positive_indices() if args.positive else range(len(rs.roots))
    rows = [(rs.roots[i], rs.simple_coeffs[i]) for i in idx]
    if args.json:
        out = [{"coords": [str(c) for c in r.coords], "simple": list(c)} for r, c in rows]
        print(json.dumps(out, indent=2))
    else:
        for r, c in rows:
            print(f"{str(r):<40} {_fmt(c)}")
    return 0


def cmd_dynkin(parser, args) -> int:
    from .weyl import render_ascii, render_dot

    rs = _system(parser, args)
    print(render_dot(rs) if args.dot else render_ascii(rs))
    return 0


def cmd_codim(parser, args) -> int:
    from .parabolic import highest_root, n_of, resonant_codims, second_highest_root

    rs = _system(parser, args)
    r = resonant_codims(rs)
    sh = second_highest_root(rs)
    data = {
        "system": rs.name,
        "rbar": r,
        "v": min(r),
        "n": n_of(rs.family, rs.rank),
        "highest_root": list(highest_root(rs)),
        "second_highest_root": list(sh.coeffs) if sh.unique else None,
        "second_highest_maximal": [list(m) for m in sh.maximal],
    }
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(f"{rs.name}: v = {data['v']}, n = {data['n'] if data['n'] is not None else '-'}")
        print(f"highest root {_fmt(data['highest_root'])}")
        if sh.unique:
            print(f"second-highest root {_fmt(sh.coeffs)}")
        else:
            print("second-highest root not unique: " + ", ".join(_fmt(m) for m in sh.maximal))
        for j, x in enumerate(r, 1):
            print(f"r(q_{j}) = {x}")
    return 0


def cmd_classify(parser, args) -> int:
    from .parabolic import v_of
    from .subalg import BudgetExceeded, classify_bounded

    rs = _system(parser, args)
    bound = args.bound if args.bound is not None else v_of(rs.family, rs.rank) + 1
    try:
        outs = classify_bounded(rs, bound, args.budget)
    except BudgetExceeded as exc:
        print(f"{rs.name}: {exc}", file=sys.stderr)
        return 3
    if args.json:
        payload = [{"complement": list(o.complement), "verdict": o.verdict, "witness": o.witness} for o in outs]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for o in outs:
            print(f"|S|={len(o.complement):<3} {o.verdict:<26} {[str(rs.roots[i]) for i in o.complement]}")
    return 1 if any(o.verdict == "violation" for o in outs) else 0


# --------------------------------------------------------------------------
# verification


class FixtureSource:
    """Fixture loader honouring an optional override directory."""

    def __init__(self, directory: Optional[Path] = None):
        self.directory = Path(directory) if directory else None

    def __call__(self, name: str):
        if self.directory is not None and (self.directory / name).exists():
            return load_fixture(name, self.directory)
        return load_fixture(name)


def suite_tables(max_rank: int, fx: FixtureSource, budget: int) -> VerificationReport:
    from .parabolic import verify_numerology, verify_table1
    from .rootsys import check_diagram_fixture, verify_bd_tables

    diagrams = fx("diagrams.json")
    return merge("tables", [
        verify_table1(max_rank, fx("table1.json"), diagrams),
        verify_bd_tables(max_rank, fx("table2_bd.json")),
        check_diagram_fixture(max_rank, diagrams),
        verify_numerology(max_rank),
    ])


def suite_weyl(max_rank: int, fx: FixtureSource, budget: int) -> VerificationReport:
    from .weyl import verify_weyl_table

    return verify_weyl_table(max_rank, fx("weyl_table.json"))


def suite_induction(max_rank: int, fx: FixtureSource, budget: int) -> VerificationReport:
    from .induction import verify_firstind_identities, verify_induction_table

    return merge("induction", [verify_firstind_identities(fx("firstind.json")),
                               verify_induction_table(max_rank, fx("induction_table.json"))])


def suite_classify(max_rank: int, fx: FixtureSource, budget: int) -> VerificationReport:
    from .subalg import classification_report

    systems = [(f, r) for f, r in CLASSIFY_SYSTEMS if r <= max_rank]
    return classification_report(systems, budget, known=fx("classify_known.json")["violations"])


def suite_weights(max_rank: int, fx: FixtureSource, budget: int) -> VerificationReport:
    from .weights import verify_weights

    return verify_weights(max_rank)


def suite_exceptional(max_rank: int, fx: FixtureSource, budget: int) -> VerificationReport:
    from .subalg import exceptional_checks

    systems = [("G2", 2)] + [(f, r) for f in ("B", "C") for r in range(3, max_rank + 1)]
    systems += [(f, r) for f, r in (("F4", 4), ("D", 4), ("E6", 6)) if r <= max_rank]
    return merge("exceptional", [exceptional_checks(build_root_system(f, r)) for f, r in systems])


SUITE_RUNNERS: Dict[str, Callable[[int, FixtureSource, int], VerificationReport]] = {
    "tables": suite_tables,
    "weyl": suite_weyl,
    "induction": suite_induction,
    "classify": suite_classify,
    "weights": suite_weights,
    "exceptional": suite_exceptional,
}


def run_suite(suite: str, max_rank: int = 8, fixtures: Optional[Path] = None,
              budget: Optional[int] = None) -> VerificationReport:
    from .subalg import DEFAULT_BUDGET

    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    fx = FixtureSource(fixtures)
    budget = DEFAULT_BUDGET if budget is None else budget
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    return merge(suite, [SUITE_RUNNERS[n](max_rank, fx, budget) for n in names])


def cmd_verify(parser, args) -> int:
    if args.max_rank < 5:
        parser.error("--max-rank must be at least 5")
    start = time.perf_counter()
    try:
        report = run_suite(args.suite, args.max_rank, args.fixtures, args.budget)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"could not load fixtures: {exc}", file=sys.stderr)
        return 2
    if args.timings:
        report.wall_time = round(time.perf_counter() - start, 3)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
    print(text if args.json else report.text_summary(), end="" if args.json else "\n")
    return 0 if report.ok else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieroots", description="Exact root-system computations and table replays.")
    sub = p.add_subparsers(dest="command", required=True)

    def system_args(sp):
        sp.add_argument("family", help="A, B, C, BC, D, E (E6/E7/E8), F (F4) or G (G2)")
        sp.add_argument("rank", type=int)

    sp = sub.add_parser("roots", help="list roots")
    system_args(sp)
    sp.add_argument("--positive", action="store_true", help="positive roots only")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("dynkin", help="draw the Dynkin diagram")
    system_args(sp)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    sp.set_defaults(func=cmd_dynkin)

    sp = sub.add_parser("codim", help="resonant codimensions and highest roots")
    system_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_codim)

    sp = sub.add_parser("classify", help="closed root subsets with small complement")
    system_args(sp)
    sp.add_argument("--bound", type=int, default=None, help="complement bound (default v+1)")
    sp.add_argument("--budget", type=int, default=20_000_000)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--max-rank", type=int, default=8)
    sp.add_argument("--budget", type=int, default=None, help="candidate budget for classify")
    sp.add_argument("--out", help="write the JSON report here")
    sp.add_argument("--fixtures", type=Path, default=None, help="directory overriding bundled fixtures")
    sp.add_argument("--timings", action="store_true", help="record wall time in the report")
    sp.add_argument("--json", action="store_true", help="print JSON instead of the text summary")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

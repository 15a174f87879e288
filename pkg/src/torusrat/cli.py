"""Command line interface: ``torusrat <command> ...``.

Exit codes for ``analyze``: 0 stably rational, 10 retract but not stably
rational, 20 not retract rational, 30 retract with stable rationality
unknown, 40 indeterminate.  ``verify-*`` and ``reproduce`` exit 0 on
success and 1 on failure.  Usage errors exit 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify as cl
from . import reproduce as rp
from . import stably_perm as sp
from .flabby import format_resolution, flabby_resolution, parse_resolution
from .glattice import LatticeError, chevalley
from .groups import GroupError, h_candidates, named_group, subgroup_classes
from .groups.library import SPEC_HELP

EXIT_CODES = {cl.STABLY: 0, cl.RETRACT_NOT_STABLY: 10, cl.NOT_RETRACT: 20, cl.UNKNOWN: 30,
              cl.INDETERMINATE: 40}
EXIT_USAGE = 2

LABEL_ALIASES = {"V4": "C2 x C2", "TRIVIAL": "1"}


class UsageError(Exception):
    pass


def _norm(label: str) -> str:
    label = LABEL_ALIASES.get(label.strip().upper(), label)
    return label.replace(" ", "").lower()


def resolve_class(G, selector: str, index: int | None = None, derived: str | None = None) -> int:
    """Class index from a structure label (plus filters) or a canonical index.

    Labels win, so ``1`` is the trivial subgroup; ``#1`` is class index 1.
    """
    tab = subgroup_classes(G)
    matches = [c for c in tab if _norm(c.label) == _norm(selector)]
    idx = selector.lstrip("#")
    if not matches and idx.isdigit() or selector.startswith("#"):
        if not idx.isdigit() or int(idx) >= len(tab):
            raise UsageError(f"class index {idx!r} out of range (0..{len(tab) - 1})")
        return int(idx)
    if index is not None:
        matches = [c for c in matches if G.order // c.order == index]
    if derived is not None:
        matches = [c for c in matches if _norm(cl.derived_label(G, c.rep)) == _norm(derived)]
    if len(matches) == 1:
        return matches[0].index
    if not matches:
        raise UsageError(f"no subgroup class matches {selector!r}")
    listing = ", ".join(f"{c.index} ({c.label}, index {G.order // c.order}, "
                        f"D-meet {cl.derived_label(G, c.rep)})" for c in matches)
    raise UsageError(f"{selector!r} matches several classes: {listing}; "
                     "use #N or --index/--derived")


def _class_rows(G, classes) -> str:
    rows = [("class", "order", "size", "index", "core", "label")]
    for c in classes:
        core = "1" if c.core_mask == 1 else "-"
        rows.append((str(c.index), str(c.order), str(c.size), str(G.order // c.order), core, c.label))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows)


def cmd_subgroups(args) -> int:
    G = named_group(args.group)
    tab = subgroup_classes(G)
    print(_class_rows(G, tab))
    print(f"{len(tab)} classes")
    return 0


def cmd_candidates(args) -> int:
    G = named_group(args.group)
    cands = h_candidates(G)
    print(_class_rows(G, cands))
    print(f"{len(cands)} candidates")
    return 0


def cmd_analyze(args) -> int:
    G = named_group(args.group)
    cls = resolve_class(G, args.cls, args.index, args.derived)
    if subgroup_classes(G)[cls].core_mask != 1:
        raise UsageError(f"class {cls} has nontrivial core; not a candidate")
    budgets = cl.Budgets(seconds=args.budget, sylow_only=args.sylow_only, seed=args.seed,
                         trials=args.trials, want_certificate=args.emit_cert is not None)
    report = cl.full_classify(G, cls, budgets, group_ref=args.group,
                              use_fast_path=not args.no_fast_path)
    if args.json:
        print(json.dumps(report.record(args.timings), sort_keys=True))
    else:
        print(cl.format_table([report]))
        for k, v in sorted(report.stats.items()):
            print(f"  {k}: {v}")
        if args.timings:
            print("  timings: " + ", ".join(f"{k}={v:.2f}s" for k, v in report.timings.items()))
    if args.emit_cert:
        if report.certificate is not None:
            Path(args.emit_cert).write_text(sp.format_certificate(report.certificate))
            print(f"certificate written to {args.emit_cert}", file=sys.stderr)
        else:
            print("no certificate to write", file=sys.stderr)
    if args.emit_resolution:
        R = flabby_resolution(chevalley(G, subgroup_classes(G)[cls].rep))
        Path(args.emit_resolution).write_text(format_resolution(R, args.group))
    return EXIT_CODES[report.verdict.status]


def cmd_verify_cert(args) -> int:
    try:
        cert = sp.parse_certificate(Path(args.file).read_text())
        problems = sp.certificate_problems(cert)
    except (sp.CertificateError, LatticeError, GroupError) as exc:
        problems = [str(exc)]
    for p in problems:
        print(f"FAIL {p}")
    if not problems:
        print(f"OK certificate for relation {cert.relation} over {cert.group_ref}")
    return 0 if not problems else 1


def cmd_verify_resolution(args) -> int:
    text = Path(args.file).read_text()
    try:
        first = next(l for l in text.splitlines() if l.strip())
        words = first.split()
        if words[0] != "group":
            raise LatticeError("missing group line")
        G = named_group(" ".join(words[1:]))
        R = parse_resolution(text, G)
        problems = R.problems()
    except (StopIteration, LatticeError, GroupError, ValueError) as exc:
        problems = [str(exc) or "empty file"]
    for p in problems:
        print(f"FAIL {p}")
    if not problems:
        print(f"OK resolution 0 -> M({R.M.rank}) -> P({R.P.rank}) -> F({R.F.rank}) -> 0")
    return 0 if not problems else 1


def cmd_reproduce(args) -> int:
    checks = rp.run_suite(args.suite, groups=args.group, cases=args.case, stretch=args.stretch,
                          sylow_only=args.sylow_only)
    for c in checks:
        if args.json:
            print(json.dumps({"suite": c.suite, "case": c.case, "check": c.name,
                              "passed": c.passed, "detail": c.detail}, sort_keys=True))
        else:
            print(c.line())
    passed = sum(c.passed is True for c in checks)
    failed = sum(c.passed is False for c in checks)
    skipped = sum(c.passed is None for c in checks)
    if not args.json:
        print(f"{args.suite}: {passed} passed, {failed} failed, {skipped} skipped")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torusrat", description="Rationality of norm-one tori.",
                                epilog=f"GROUP: {SPEC_HELP}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("subgroups", help="conjugacy classes of subgroups")
    s.add_argument("group")
    s.set_defaults(fn=cmd_subgroups)

    s = sub.add_parser("candidates", help="trivial-core subgroup classes")
    s.add_argument("group")
    s.set_defaults(fn=cmd_candidates)

    s = sub.add_parser("analyze", help="classify one (G, H)")
    s.add_argument("group")
    s.add_argument("--class", dest="cls", required=True, help="structure label, or #N for class index N")
    s.add_argument("--index", type=int, help="keep classes with this [G:H]")
    s.add_argument("--derived", help="keep classes whose meet with D(G) has this label")
    s.add_argument("--sylow-only", action="store_true", help="stop after the Sylow tests")
    s.add_argument("--budget", type=float, help="wall-clock seconds")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=sp.DEFAULT_RANDOM_TRIALS)
    s.add_argument("--no-fast-path", action="store_true")
    s.add_argument("--emit-cert", metavar="PATH")
    s.add_argument("--emit-resolution", metavar="PATH")
    s.add_argument("--json", action="store_true")
    s.add_argument("--timings", action="store_true")
    s.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("verify-cert", help="check a certificate file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify_cert)

    s = sub.add_parser("verify-resolution", help="check a resolution file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify_resolution)

    s = sub.add_parser("reproduce", help="run a reference suite")
    s.add_argument("suite", choices=rp.SUITES)
    s.add_argument("--group", action="append", help="restrict to a group (repeatable)")
    s.add_argument("--case", action="append", help="thm1.3 case name (repeatable)")
    s.add_argument("--stretch", action="store_true", help="include the heavy cases")
    s.add_argument("--sylow-only", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, GroupError, ValueError) as exc:
        print(f"torusrat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

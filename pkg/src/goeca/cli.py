"""Command-line front end.

    goeca repro <id> [--field F] [--m-max N] [--seed S] [--out DIR]
    goeca check --spec FILE --mode {mdim,orphan,mep,starstar,star,linear} [...]
    goeca dim --ideal FILE [--field F]

Exit codes: 0 all expectations met, 1 mismatch, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import finite, registry, report, specfile
from .algca import (
    mdim_estimate,
    orphan_certify,
    star_check_candidate,
    starstar_check,
)
from .groups import FolnerSequence, folner_set
from .polyalg import EMPTY, Field, Ideal, krull_dimension

MODES = ("mdim", "orphan", "mep", "starstar", "star", "linear")


class UsageError(Exception):
    pass


def _field(text):
    if text is None:
        return None
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="goeca", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", type=_field, default=None, help='"fp:<prime>" or "q"')
        p.add_argument("--m-max", type=int, default=3)
        p.add_argument("--max-window", type=int, default=8)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", default=None, help="directory for report.json / mdim.csv")

    p = sub.add_parser("repro", help="run a registry example and compare with expectations")
    p.add_argument("id", help=", ".join(registry.REGISTRY))
    common(p)
    p = sub.add_parser("check", help="run one analysis on a spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--samples", type=int, default=8)
    common(p)
    p = sub.add_parser("dim", help="Krull dimension of an ideal file")
    p.add_argument("--ideal", required=True)
    common(p)
    return ap


def _finish(rep: dict, args, out=None) -> int:
    """Report JSON goes to stdout unless --out is given; the per-check
    summary goes to stderr."""
    out = out or sys.stdout
    if args.out:
        for path in report.emit_report(rep, args.out):
            print(f"wrote {path}", file=sys.stderr)
    else:
        out.write(report.dumps(rep))
    for c in rep["checks"]:
        print(f"{'ok  ' if c['ok'] else 'FAIL'} {c['name']}", file=sys.stderr)
    return 0 if rep["ok"] else 1


def cmd_repro(args, out=None) -> int:
    try:
        entry = registry.get(args.id)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    t0 = time.perf_counter()
    try:
        outcome = registry.run_registry(args.id, args.field, args.m_max, args.seed,
                                        args.max_window)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fld = args.field or entry.default_field
    rep = report.make_report({"registry": entry.id, "anchor": entry.anchor,
                              "field": None if fld is None else str(fld)},
                             outcome.sections, outcome.checks, args.seed,
                             {"total": time.perf_counter() - t0})
    return _finish(rep, args, out)


def _folner_windows(ca, m_max):
    seq = FolnerSequence(ca.group)
    return [folner_set(seq, m) for m in range(m_max + 1)]


def run_check(spec: specfile.CaSpec, mode: str, m_max: int = 3, max_window: int = 8,
              seed: int = 42, samples: int = 8) -> dict:
    ca = spec.ca
    if mode == "mdim":
        return {"mdim": mdim_estimate(ca, m_max)}
    if mode == "orphan":
        if ca.is_algebraic and spec.targets:
            return {"orphans": [orphan_certify(ca, t) for t in spec.targets]}
        if ca.alphabet.is_finite:
            return {"orphan_search": finite.orphan_search(ca, max_window)}
        raise UsageError("orphan mode needs \"targets\" or a finite alphabet")
    if mode == "mep":
        return {"mep_search": finite.mep_search(ca, max_window)}
    if mode == "starstar":
        return {"starstar": [starstar_check(ca, w, samples, seed)
                             for w in _folner_windows(ca, m_max)]}
    if mode == "star":
        cand = spec.extra.get("star_candidate")
        if cand is not None:
            omega = specfile.parse_subset(ca.group, cand.get("window"), "star_candidate.window")
            from .algca import window_ring

            ring = window_ring(ca, omega)
            H = Ideal(ring, [specfile._parse_poly(h, ring, f"star_candidate.H[{i}]")
                             for i, h in enumerate(cand.get("H", []))])
            return {"star": star_check_candidate(ca, omega, H, samples, seed)}
        if ca.rule.kind == "table":
            # for finite alphabets (*)-pre-injectivity is pre-injectivity
            return {"mep_search": finite.mep_search(ca, max_window)}
        raise UsageError("star mode needs \"star_candidate\" or a finite alphabet")
    if mode == "linear":
        if ca.rule.kind != "linear":
            raise UsageError("linear mode needs a linear rule")
        radii = list(range(m_max + 1))
        return {"preinjectivity": finite.linear_preinjectivity(ca, radii),
                "orphans": [finite.linear_orphan(ca, finite.radius_window(ca, r))
                            for r in radii]}
    raise UsageError(f"unknown mode {mode!r}")


def cmd_check(args, out=None) -> int:
    spec = specfile.load(args.spec, args.field)
    t0 = time.perf_counter()
    try:
        sections = run_check(spec, args.mode, args.m_max, args.max_window, args.seed,
                             args.samples)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    subject = {"spec": spec.ca.name or args.spec, "spec_digest": spec.digest, "mode": args.mode,
               "field": str(args.field) if args.field else None}
    rep = report.make_report(subject, sections, (), args.seed,
                             {args.mode: time.perf_counter() - t0})
    return _finish(rep, args, out)


def cmd_dim(args, out=None) -> int:
    with open(args.ideal, encoding="utf-8") as fh:
        ideal = specfile.load_ideal(fh.read(), args.field)
    d = krull_dimension(ideal)
    print("empty" if d is EMPTY else d, file=out or sys.stdout)
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return {"repro": cmd_repro, "check": cmd_check, "dim": cmd_dim}[args.command](args)
    except (UsageError, specfile.SpecError, OSError) as exc:
        print(f"goeca: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

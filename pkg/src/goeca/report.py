"""Report assembly and emission (report.json, mdim.csv)."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from . import __version__
from .algca import MdimReport
from .verdict import jsonable

FORMAT = 1


def make_report(subject: dict, sections: dict, checks=(), seed: int | None = None,
                timings: dict | None = None) -> dict:
    """Sections are keyed by analysis name; JSON output sorts keys, so the
    section order never depends on execution order."""
    report = {
        "format": FORMAT,
        "tool": {"name": "goeca", "version": __version__},
        "subject": subject,
        "seed": seed,
        "sections": jsonable(sections),
        "checks": [jsonable(c) for c in checks],
        "ok": all(c.ok for c in checks),
    }
    if timings is not None:
        report["timings"] = {k: f"{v:.3f}s" for k, v in sorted(timings.items())}
    return report


def analysis_content(report: dict) -> dict:
    """The deterministic part of a report (everything but timings)."""
    return {k: v for k, v in report.items() if k != "timings"}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def mdim_rows(mdim) -> list[list[int]]:
    if isinstance(mdim, MdimReport):
        return [[r.m, r.size, r.dim, r.ratio.numerator, r.ratio.denominator] for r in mdim.rows]
    return [[r["m"], r["size"], r["dim"], r["ratio"]["num"], r["ratio"]["den"]]
            for r in mdim["rows"]]


def write_mdim_csv(mdim, path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m", "size", "dim", "num", "den"])
        w.writerows(mdim_rows(mdim))
    return path


def emit_report(report: dict, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "report.json"]
    paths[0].write_text(dumps(report), encoding="utf-8")
    mdim = report.get("sections", {}).get("mdim")
    if mdim is not None:
        paths.append(write_mdim_csv(mdim, out / "mdim.csv"))
    return paths

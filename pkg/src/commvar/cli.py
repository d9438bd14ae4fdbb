"""Command-line entry point: ``commvar <command> [flags]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter

from . import __version__
from .checks import (
    COMMANDS,
    FAIL,
    MISSING,
    REPORT,
    CheckReport,
    Context,
    UsageError,
    run_all,
)
from .hilbert import BidegreePolynomial
from .permlab import parse_perm

TOOL = "commvar"


def _jsonable(value):
    if isinstance(value, BidegreePolynomial):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _text(value) -> str:
    if isinstance(value, BidegreePolynomial):
        return str(value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_text(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_text(v) for v in value) + "]"
    return str(value)


def check_dict(rep: CheckReport, timings: bool) -> dict:
    out = {
        "name": rep.name,
        "status": rep.status,
        "payload": _jsonable(rep.payload),
        "paperExpectation": _jsonable(rep.paper_expectation),
        "elapsedMs": round(rep.elapsed_ms, 3) if timings and rep.elapsed_ms is not None else None,
    }
    if rep.matches_paper_gl3 is not None:
        out["matchesPaperGl3"] = rep.matches_paper_gl3
    return out


def summarize(reports: list[CheckReport]) -> dict:
    counts = Counter(r.status for r in reports)
    findings = sum(1 for r in reports if r.status == REPORT and r.matches_paper_gl3 is False)
    return {"PASS": counts["PASS"], "FAIL": counts[FAIL], "REPORT": counts[REPORT],
            "MISSING": counts[MISSING], "findings": findings}


def render_json(config: dict, reports: list[CheckReport], timings: bool) -> str:
    doc = {
        "tool": TOOL,
        "version": __version__,
        "config": config,
        "checks": [check_dict(r, timings) for r in reports],
        "summary": summarize(reports),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def render_csv(reports: list[CheckReport], timings: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "matchesPaperGl3", "payload", "paperExpectation", "elapsedMs"])
    for r in reports:
        d = check_dict(r, timings)
        w.writerow([d["name"], d["status"], d.get("matchesPaperGl3", ""),
                    json.dumps(d["payload"], separators=(",", ":")),
                    json.dumps(d["paperExpectation"], separators=(",", ":")),
                    "" if d["elapsedMs"] is None else d["elapsedMs"]])
    return buf.getvalue()


def _degree_table(reports: list[CheckReport]) -> list[str]:
    rows = [("pi", "d", "d'", "dim", "status")]
    for r in reports:
        p = r.payload
        if r.status == MISSING:
            rows.append((p["pi"], "MISSING", "MISSING", "-", MISSING))
            continue
        mark = "" if r.matches_paper_gl3 is None else (" ok" if r.matches_paper_gl3 else " MISMATCH")
        rows.append((p["pi"], str(p["degree"]), str(p["bidegree"]), str(p["dimension"]), r.status + mark))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]


def render_table(reports: list[CheckReport], timings: bool) -> str:
    lines = []
    degree_rows = [r for r in reports if r.name.startswith("degrees:")]
    if degree_rows:
        lines += _degree_table(degree_rows)
        lines.append("")
    for r in reports:
        if r in degree_rows:
            continue
        extra = ""
        if r.matches_paper_gl3 is not None:
            extra = f"  matchesPaperGl3={str(r.matches_paper_gl3).lower()}"
        if timings and r.elapsed_ms is not None:
            extra += f"  ({r.elapsed_ms:.1f} ms)"
        payload = ", ".join(f"{k}={_text(v)}" for k, v in r.payload.items())
        lines.append(f"{r.status:<7} {r.name}  {payload}{extra}")
    s = summarize(reports)
    lines.append(f"summary: {s['PASS']} pass, {s['FAIL']} fail, {s['REPORT']} report, "
                 f"{s['MISSING']} missing, {s['findings']} findings")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=argparse.SUPPRESS, help="matrix size")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="64-bit seed")
    common.add_argument("--trials", type=int, default=argparse.SUPPRESS, help="samples per check")
    common.add_argument("--format", choices=["table", "json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--order", choices=["grevlex", "lex"], default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--cache-dir", default=argparse.SUPPRESS, help="Groebner basis cache")
    common.add_argument("--budget-seconds", type=float, default=argparse.SUPPRESS,
                        help="wall-clock budget per Groebner computation")
    common.add_argument("--pi", default=argparse.SUPPRESS, help="one-line permutation, e.g. 231")
    common.add_argument("--orientation", choices=["standard", "flipped"], default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="include wall-clock times (output is then not byte-stable)")

    parser = argparse.ArgumentParser(prog=TOOL, parents=[common],
                                     description="Exact checks on commuting-type matrix schemes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in [*COMMANDS, "all"]:
        sub.add_parser(name, parents=[common])
    return parser


DEFAULTS = {"n": 2, "seed": 0, "trials": None, "format": "table", "order": "grevlex", "threads": 1,
            "cache_dir": None, "budget_seconds": 600.0, "pi": None, "orientation": "standard",
            "timings": False}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    ns = vars(parser.parse_args(argv))
    opts = {**DEFAULTS, **{k: v for k, v in ns.items() if k in DEFAULTS}}
    command = ns["command"]
    if opts["trials"] is None:
        opts["trials"] = 100 if command == "tao" else 25
    if opts["threads"] < 1 or opts["trials"] < 0 or opts["n"] < 1:
        parser.error("--n and --threads must be positive, --trials nonnegative")
    try:
        pi = parse_perm(opts["pi"]) if opts["pi"] else None
    except ValueError as exc:
        parser.error(str(exc))
    budget = opts["budget_seconds"] if opts["budget_seconds"] and opts["budget_seconds"] > 0 else None
    ctx = Context(n=opts["n"], seed=opts["seed"], trials=opts["trials"], order=opts["order"],
                  threads=opts["threads"], cache_dir=opts["cache_dir"], budget_seconds=budget,
                  pi=pi, orientation=opts["orientation"])
    try:
        reports = run_all(ctx) if command == "all" else COMMANDS[command](ctx)
    except UsageError as exc:
        parser.error(str(exc))

    # thread count and cache location do not change results, so they stay out of the report
    config = {"command": command, "n": ctx.n, "seed": ctx.seed, "trials": ctx.trials,
              "order": ctx.order, "budgetSeconds": budget, "pi": opts["pi"],
              "orientation": ctx.orientation}
    fmt = opts["format"]
    if fmt == "json":
        text = render_json(config, reports, opts["timings"])
    elif fmt == "csv":
        text = render_csv(reports, opts["timings"])
    else:
        text = render_table(reports, opts["timings"])
    sys.stdout.write(text)
    return 1 if any(r.status == FAIL for r in reports) else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

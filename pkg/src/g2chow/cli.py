"""Command-line interface.

Exit codes: 0 all checks pass, 1 usage error, 2 a check failed,
3 internal error (a JSON dump with the replay seed goes to stderr).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import traceback
from collections import Counter
from typing import Callable

from . import __version__
from . import checks
from .catalog import catalog
from .chamber import enumerate_chambers
from .cortege import enumerate_decompositions, enumerate_stable_trees
from .matroid import enumerate_admissible, param_space, polytope_of
from .wonderful import generate_building_set, inclusion_dot, nest_candidates, schedule

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Report:
    """Result of one command: payload, pass flag and renderers for the other formats."""

    def __init__(self, result: dict, passed: bool = True, text: str = "",
                 rows: list[dict] | None = None, dot: str | None = None):
        self.result = result
        self.passed = passed
        self.text = text
        self.rows = rows
        self.dot = dot


# -- commands --------------------------------------------------------------------------

def cmd_admissible(cfg) -> Report:
    ms = enumerate_admissible(cfg.n)
    rows = []
    for m in ms:
        p = polytope_of(m)
        rows.append({"label": m.label, "k": m.k, "vertices": len(p.vertices), "volume": str(p.volume),
                     "params": param_space(m).kind, "param_dim": param_space(m).dim})
    counts = Counter(r["vertices"] for r in rows)
    summary = ", ".join(f"{v}x{k} vertices" for k, v in sorted(counts.items(), reverse=True))
    text = f"{len(ms)} full-dimensional admissible polytopes ({summary})\n" + "\n".join(
        f"{r['label']:<16} k={r['k']} vertices={r['vertices']} volume={r['volume']}" for r in rows)
    flagged = [m.label for m in enumerate_admissible(cfg.n, full_dim_only=False) if param_space(m).unverified]
    text += f"\n{len(flagged)} lower-dimensional strata with k = 2 (parameter space not asserted)"
    return Report({"count": len(ms), "polytopes": rows, "k2_flagged": flagged}, text=text, rows=rows)


def decomposition_phrase(decs) -> str:
    sizes = Counter(len(d.members) for d in decs if not d.is_trivial)
    names = {2: "pairs", 3: "triples", 4: "quadruples", 5: "quintuples"}
    parts = [f"{v} {names.get(k, f'{k}-tuples')}" for k, v in sorted(sizes.items())]
    parts.append(f"{sum(d.is_trivial for d in decs)} trivial")
    return ", ".join(parts)


def cmd_decompositions(cfg) -> Report:
    decs = enumerate_decompositions(cfg.n)
    rows = [{"index": i, "size": len(d.members), "members": " + ".join(m.label for m in d.members)}
            for i, d in enumerate(decs)]
    summary = decomposition_phrase(decs)
    text = f"{len(decs)} decompositions: {summary}\n" + "\n".join(f"{r['index']:4}  {r['members']}" for r in rows)
    return Report({"count": len(decs), "summary": summary, "decompositions": [d.to_json() for d in decs]},
                  text=text, rows=rows)


def cmd_trees(cfg) -> Report:
    trees = enumerate_stable_trees(cfg.n)
    rows = [{"index": i, "edges": " ".join(f"{a}-{b}" for a, b in t.edges())} for i, t in enumerate(trees)]
    dot = "\n".join(t.to_dot() for t in trees)
    text = f"{len(trees)} stable trees\n" + "\n".join(f"{r['index']:4}  {r['edges']}" for r in rows)
    return Report({"count": len(trees), "trees": [t.to_json() for t in trees]}, text=text, rows=rows, dot=dot)


def cmd_chambers(cfg) -> Report:
    chambers = enumerate_chambers(cfg.n)
    decs = enumerate_decompositions(cfg.n)
    ok = all(checks.check_union_chamber(cfg.n, c, decs) for c in chambers)
    rows = [{"index": i, "omega": " ".join(sorted(c.omega)), "witness": " ".join(map(str, c.witness))}
            for i, c in enumerate(chambers)]
    text = f"{len(chambers)} chambers, union theorem {'holds' if ok else 'FAILS'}\n" + "\n".join(
        f"{r['index']:4}  [{r['witness']}]  {r['omega']}" for r in rows)
    return Report({"count": len(chambers), "union_theorem": ok, "chambers": [c.to_json() for c in chambers]},
                  passed=ok, text=text, rows=rows)


def cmd_verify_transitions(cfg) -> Report:
    r = checks.verify_transitions(cfg.n, cfg.trials, cfg.seed)
    ok = r["direct_matches"] == cfg.trials and r["compose_matches"] == cfg.trials
    text = (f"{r['direct_matches']}/{cfg.trials} exact matches over {r['charts']} charts; "
            f"composition {r['compose_matches']}/{cfg.trials}")
    return Report(r, passed=ok, text=text)


def cmd_smoothness(cfg) -> Report:
    s = checks.smoothness(cfg.n, cfg.trials, max(1, cfg.trials // 2), cfg.seed)
    i, b = s["interior"], s["boundary"]
    ok = i["at_rank"] == i["count"] and b["at_rank"] == b["count"]
    text = (f"rank {s['expected_rank']} at {i['at_rank']}/{i['count']} interior and "
            f"{b['at_rank']}/{b['count']} boundary points")
    return Report(s, passed=ok, text=text)


def cmd_building_set(cfg) -> Report:
    g = generate_building_set(cfg.n)
    rows = [{"label": e.label, "o": e.o} for e in g]
    text = f"{len(g)} elements\n" + "\n".join(f"{r['label']:<20} o={r['o']}" for r in rows)
    return Report({"count": len(g), "elements": [e.to_json() for e in g],
                   "nest_candidates": len(nest_candidates(g))}, text=text, rows=rows, dot=inclusion_dot(g))


def cmd_schedule(cfg) -> Report:
    s = schedule(generate_building_set(cfg.n))
    rows = [{"step": i + 1, "label": e.label, "o": e.o} for i, e in enumerate(s.elements)]
    text = f"{len(s)} blow-ups, deepest first\n" + "\n".join(f"{r['step']:4}  {r['label']:<20} o={r['o']}" for r in rows)
    return Report({"length": len(s), "schedule": s.to_json()}, text=text, rows=rows)


def cmd_catalog(cfg) -> Report:
    comps = catalog(cfg.n)
    rows = [{"id": c.id, "dim": c.dim, "members": " + ".join(m.label for m in c.cortege.members)} for c in comps]
    dims = Counter(c.dim for c in comps)
    text = (f"{len(comps)} components ("
            + ", ".join(f"{v} of dim {k}" for k, v in sorted(dims.items(), reverse=True)) + ")\n"
            + "\n".join(f"{r['id']:<14} dim={r['dim']}  {r['members']}" for r in rows))
    return Report({"count": len(comps), "components": [c.to_json() for c in comps]}, text=text, rows=rows)


def cmd_golden(cfg) -> Report:
    r = checks.check_golden(cfg.n, seed=cfg.seed, trials=max(cfg.trials, 2))
    rows = [{"name": x["name"], "kind": x["kind"], "passed": x["passed"], "expected": x["expected"]}
            for x in r.detail["rows"]]
    text = "\n".join(f"{'ok  ' if x['passed'] else 'FAIL'}  {x['name']:<12} {x['kind']:<15} {x['expected']}"
                     for x in rows)
    return Report(r.detail, passed=r.status == checks.PASS, text=text, rows=rows)


def cmd_all(cfg) -> Report:
    results = checks.run_all(cfg.n, seed=cfg.seed, trials=cfg.trials)
    ok = all(r.status != checks.FAIL for r in results)
    rows = [{"id": r.id, "title": r.title, "status": r.status} for r in results]
    return Report({"checks": [r.to_json() for r in results]}, passed=ok,
                  text="\n".join(r.line() for r in results), rows=rows)


# name -> (handler, n range, formats beyond json/text)
COMMANDS: dict[str, tuple[Callable, tuple[int, int], set]] = {
    "admissible": (cmd_admissible, (3, 8), {"csv"}),
    "decompositions": (cmd_decompositions, (3, 7), {"csv"}),
    "trees": (cmd_trees, (3, 8), {"csv", "dot"}),
    "chambers": (cmd_chambers, (3, 6), {"csv"}),
    "verify-transitions": (cmd_verify_transitions, (4, 8), set()),
    "smoothness": (cmd_smoothness, (5, 8), set()),
    "building-set": (cmd_building_set, (3, 8), {"csv", "dot"}),
    "schedule": (cmd_schedule, (3, 8), {"csv"}),
    "catalog": (cmd_catalog, (3, 6), {"csv"}),
    "golden": (cmd_golden, (4, 5), {"csv"}),
    "all": (cmd_all, (3, 8), {"csv"}),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="g2chow", description="Exact combinatorics of the Chow quotient of G(n,2).")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("json", "csv", "dot", "text"), default="text")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--max-n", type=int, default=7, help="refuse larger n (guards long enumerations)")
    return p


def config_of(args) -> dict:
    return {"command": args.command, "n": args.n, "seed": args.seed, "trials": args.trials,
            "format": args.format, "max_n": args.max_n}


def validate(args) -> None:
    _, (lo, hi), extra = COMMANDS[args.command]
    if not lo <= args.n <= hi:
        raise UsageError(f"{args.command} needs {lo} <= n <= {hi}")
    if args.n > args.max_n:
        raise UsageError(f"n = {args.n} exceeds --max-n {args.max_n}")
    if not 0 <= args.seed < 2**64:
        raise UsageError("seed must be a 64-bit unsigned integer")
    if args.trials < 0:
        raise UsageError("trials must be nonnegative")
    if args.format not in {"json", "text"} | extra:
        raise UsageError(f"{args.command} has no {args.format} output")


def render(args, report: Report) -> str:
    if args.format == "json":
        doc = {"schema": SCHEMA, "tool": "g2chow", "version": __version__, "config": config_of(args),
               "passed": report.passed, "result": report.result}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.format == "dot":
        return report.dot + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        rows = report.rows or []
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    head = f"g2chow {__version__} {args.command} n={args.n} seed={args.seed} trials={args.trials}"
    return f"{head}\n{report.text}\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        validate(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"g2chow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = COMMANDS[args.command][0](args)
        out = render(args, report)
    except Exception as exc:  # internal invariant violation
        dump = {"schema": SCHEMA, "version": __version__, "config": config_of(args),
                "replay": f"g2chow {args.command} --n {args.n} --seed {args.seed} --trials {args.trials}",
                "error": repr(exc), "traceback": traceback.format_exc()}
        print(json.dumps(dump, indent=2), file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input parse or validation error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, PatternConfig, default_settings, load_config
from .evaluation import CandidateError, evaluate, write_metrics
from .export import export_csv, export_xlsx, report_to_json, write_canonical
from .parser import RdfSyntaxError, parse_graph
from .patterns import PATTERNS, UNIMPLEMENTED_NOTE
from .provenance import export_ground_truth
from .workbook import build_workbook

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3
FORMATS = ("canonical", "xlsx", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _formats(value: str) -> tuple[str, ...]:
    items = tuple(v.strip() for v in value.split(",") if v.strip())
    bad = [v for v in items if v not in FORMATS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown format(s) {', '.join(bad) or value!r}; choose from {', '.join(FORMATS)}")
    return items


def _seed(value: str) -> int:
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgsheets", description="Generate spreadsheets with ground truth from RDF graphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    gen = sub.add_parser("generate", help="generate a workbook, ground truth and report")
    gen.add_argument("--graph", required=True, help="input graph (.nt or .ttl)")
    gen.add_argument("--config", help="JSON pattern configuration")
    gen.add_argument("--seed", type=_seed, help="override the config seed")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--formats", type=_formats, default=FORMATS, help="comma list of canonical,xlsx,csv")
    gen.add_argument("--ground-truth", dest="ground_truth", action=argparse.BooleanOptionalAction, default=True)

    ev = sub.add_parser("evaluate", help="score a candidate extraction against ground truth")
    ev.add_argument("--candidate", required=True)
    ev.add_argument("--ground-truth", dest="ground_truth", required=True)
    ev.add_argument("--report", help="write metrics as JSON here")

    pat = sub.add_parser("patterns", help="list the implemented generation patterns")
    pat.add_argument("--json", action="store_true")
    return parser


def _syntax_for(path: Path) -> str:
    return {".nt": "ntriples", ".ttl": "turtle"}.get(path.suffix.lower(), "auto")


def cmd_generate(args) -> int:
    graph_path = Path(args.graph)
    try:
        graph = parse_graph(graph_path.read_bytes(), _syntax_for(graph_path))
        config = load_config(Path(args.config).read_bytes()) if args.config else PatternConfig()
    except (RdfSyntaxError, ConfigError, UnicodeDecodeError, ValueError) as exc:
        print(f"kgsheets: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"kgsheets: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.seed is not None:
        config = config.with_seed(args.seed)

    workbook = build_workbook(graph, config)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        if "canonical" in args.formats:
            write_canonical(workbook, out / "workbook.json")
        if "xlsx" in args.formats:
            export_xlsx(workbook, out / "workbook.xlsx")
        if "csv" in args.formats:
            export_csv(workbook, out / "csv")
        if args.ground_truth:
            export_ground_truth(workbook, out / "groundtruth.jsonl")
        report = {"meta": workbook.meta, **report_to_json(workbook.report)}
        (out / "report.json").write_text(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"kgsheets: write failed: {exc}", file=sys.stderr)
        return EXIT_IO

    cells = sum(1 for s in workbook.sheets for row in s.rows[1:] for c in row if not c.content.is_empty)
    applied = ",".join(workbook.report.pattern_cells) or "none"
    print(
        f"sheets={len(workbook.sheets)} cells={cells} statements={len(workbook.statements)} "
        f"patterns={applied}"
    )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        metrics = evaluate(Path(args.candidate), Path(args.ground_truth))
    except CandidateError as exc:
        print(f"kgsheets: malformed candidate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"kgsheets: invalid ground truth: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"kgsheets: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT

    print(f"precision {metrics.precision:.3f}")
    print(f"recall    {metrics.recall:.3f}")
    print(f"f1        {metrics.f1:.3f}")
    print(f"tp={metrics.true_positives} fp={metrics.false_positives} fn={metrics.false_negatives}")
    if metrics.per_pattern:
        width = max(len(p) for p in metrics.per_pattern)
        print()
        print(f"{'pattern'.ljust(width)}  recall")
        for pattern, recall in metrics.per_pattern.items():
            print(f"{pattern.ljust(width)}  {recall:.3f}")
    if args.report:
        try:
            write_metrics(metrics, args.report)
        except OSError as exc:
            print(f"kgsheets: write failed: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_patterns(args) -> int:
    entries = []
    for info in PATTERNS.values():
        settings = default_settings(info.id)
        entries.append({
            "id": info.id,
            "category": info.category,
            "scope": info.scope,
            "description": info.description,
            "defaults": {
                "enabled": settings.enabled,
                "probability": settings.probability,
                "probabilityMeaning": info.probability_meaning,
                "parameters": {k: v if isinstance(v, str) else list(v) for k, v in settings.parameters.items()},
            },
        })
    if args.json:
        print(json.dumps({"patterns": entries, "note": UNIMPLEMENTED_NOTE}, indent=2, ensure_ascii=False))
        return EXIT_OK
    for e in entries:
        d = e["defaults"]
        print(f"{e['id']}  [{e['category']}, {e['scope']}, p={d['probability']}: {d['probabilityMeaning']}]")
        print(f"    {e['description']}")
    print()
    print(UNIMPLEMENTED_NOTE)
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "evaluate": cmd_evaluate, "patterns": cmd_patterns}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line access to every engine capability, plus the service launcher.

Exit codes: 0 success, 1 domain findings (validation errors, or conformance
violations under --fail-on-violation), 2 usage or parse errors.  '-' stands
for standard input/output so commands compose in pipelines.  Identical
arguments and input bytes always produce identical output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import conformance as conf
from .core import general_stats, parse_timestamp, validate
from .discovery import (
    METRICS,
    ModelThresholds,
    annotate,
    apply_thresholds,
    discover_ocdfg,
    model_document,
    to_dot,
)
from .filtering import (
    ActivitySubset,
    Criterion,
    EndActivity,
    Path,
    RelatedActivity,
    StartActivity,
    Timeframe,
    TypeSubset,
    apply_criterion,
)
from .flattening import flatten
from .io import FormatKind, OcelParseError, detect_format, export_xes, parse_ocel, write_ocel
from .stats import compute_stats


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _write_output(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as handle:
            handle.write(data)


def parse_filter_expr(expr: str) -> Criterion:
    """Parse the filter mini-syntax, e.g. ``activity=a,b`` or ``path=a->b``."""
    key, sep, value = expr.partition("=")
    if not sep or not value:
        raise ValueError(f"filter {expr!r} is not of the form key=value")
    if key == "activity":
        return ActivitySubset(frozenset(value.split(",")))
    if key == "time":
        lb, sep, ub = value.partition("..")
        if not sep:
            raise ValueError(f"time filter needs ISO..ISO bounds, got {value!r}")
        return Timeframe(parse_timestamp(lb), parse_timestamp(ub))
    if key == "obj-activity":
        return RelatedActivity(frozenset(value.split(",")))
    if key == "start":
        return StartActivity(frozenset(value.split(",")))
    if key == "end":
        return EndActivity(frozenset(value.split(",")))
    if key == "path":
        source, sep, target = value.partition("->")
        if not sep:
            raise ValueError(f"path filter needs a1->a2, got {value!r}")
        return Path(source, target)
    if key == "types":
        return TypeSubset(frozenset(value.split(",")))
    raise ValueError(
        f"unknown filter key {key!r} (expected activity, time, obj-activity, "
        f"start, end, path, or types)"
    )


def _load_log(path: str, lenient: bool = False):
    return parse_ocel(_read_input(path), kind=None, strict=not lenient)


def _cmd_validate(args) -> int:
    log = _load_log(args.input, args.lenient)
    issues = validate(log)
    if args.json:
        doc = [
            {"severity": i.severity, "code": i.code, "message": i.message}
            for i in issues
        ]
        _write_output((json.dumps(doc, indent=2) + "\n").encode(), args.out)
    else:
        lines = [f"{i.severity} {i.code}: {i.message}" for i in issues]
        if not lines:
            lines = ["ok: no issues"]
        _write_output(("\n".join(lines) + "\n").encode(), args.out)
    return 1 if any(i.severity == "error" for i in issues) else 0


def _cmd_stats(args) -> int:
    log = _load_log(args.input, args.lenient)
    bundle = compute_stats(log)
    if args.json:
        doc = {"general": _general_doc(log), **bundle.to_doc()}
        _write_output((json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode(), args.out)
        return 0
    general = general_stats(log)
    lines = [
        f"events: {general.num_events}",
        f"unique objects: {general.num_unique_objects}",
        f"total objects: {general.num_total_objects}",
        "",
        "objects per type:",
    ]
    for otype in sorted(bundle.objects_per_type):
        lines.append(f"  {otype}: {bundle.objects_per_type[otype]}")
    lines.append("events per activity:")
    for activity in sorted(bundle.events_per_activity):
        lines.append(f"  {activity}: {bundle.events_per_activity[activity]}")
    lines.append("lifecycle length distribution:")
    for length in sorted(bundle.lifecycle_length_distribution):
        lines.append(f"  {length}: {bundle.lifecycle_length_distribution[length]}")
    _write_output(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def _general_doc(log) -> dict:
    stats = general_stats(log)
    return {
        "num_events": stats.num_events,
        "num_unique_objects": stats.num_unique_objects,
        "num_total_objects": stats.num_total_objects,
    }


def _cmd_flatten(args) -> int:
    log = _load_log(args.input, args.lenient)
    flat = flatten(log, args.type)
    if args.format != "xes":
        raise ValueError(f"unsupported flatten format {args.format!r}")
    _write_output(export_xes(flat), args.out)
    return 0


def _cmd_filter(args) -> int:
    data = _read_input(args.input)
    source_kind = detect_format(data)
    log = parse_ocel(data, kind=source_kind, strict=not args.lenient)
    for expr in args.filter or []:
        log = apply_criterion(log, parse_filter_expr(expr))
    kind = FormatKind(args.to) if args.to else source_kind
    _write_output(write_ocel(log, kind), args.out)
    return 0


def _cmd_discover(args) -> int:
    log = _load_log(args.input, args.lenient)
    model = annotate(log, discover_ocdfg(log))
    thresholds = ModelThresholds(
        min_node=args.min_node, min_edge=args.min_edge, metric=args.metric
    )
    base_doc = model_document(model, args.metric)
    filtered = apply_thresholds(model, thresholds)
    if args.format == "dot":
        _write_output(to_dot(filtered, args.metric).encode(), args.out)
    else:
        doc = model_document(
            filtered,
            args.metric,
            max_node_value=base_doc["max_node_value"],
            max_edge_value=base_doc["max_edge_value"],
        )
        _write_output((json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode(), args.out)
    return 0


def _render_report(report: conf.ConformanceReport) -> str:
    lines = [report.description]
    if any(r.activity is not None for r in report.rows):
        header = f"{'activity':<24} {'object type':<16} {'avg':>14} {'stdev':>14} {'deviations':>10}"
    else:
        header = f"{'object type':<16} {'avg':>14} {'stdev':>14} {'deviations':>10}"
    lines.append(header)
    for row in report.rows:
        cells = []
        if any(r.activity is not None for r in report.rows):
            cells.append(f"{row.activity or '-':<24}")
        cells.append(f"{row.object_type or '-':<16}")
        cells.append(f"{row.mean:>14.6f}")
        cells.append(f"{row.stdev:>14.6f}")
        cells.append(f"{row.num_deviations:>10}")
        lines.append(" ".join(cells))
    label = "violating events" if report.target == "events" else "violating objects"
    lines.append(f"{label}: {', '.join(report.violations) if report.violations else 'none'}")
    if report.skipped_objects:
        lines.append(
            "objects without events (skipped): " + ", ".join(report.skipped_objects)
        )
    return "\n".join(lines) + "\n"


def _cmd_conformance(args) -> int:
    log = _load_log(args.input, args.lenient)
    rule_mode = args.lb is not None or args.ub is not None
    if rule_mode:
        if args.lb is None or args.ub is None:
            raise ValueError("rule mode needs both --lb and --ub")
        if args.check == "count":
            if args.activity is None:
                raise ValueError("count rule needs --activity")
            report = conf.check_count_rule(
                log, conf.CountRule(args.activity, int(args.lb), int(args.ub))
            )
        else:
            report = conf.check_duration_rule(
                log, conf.DurationRule(float(args.lb), float(args.ub))
            )
    else:
        config = conf.AnomalyConfig(zeta=args.zeta)
        if args.check == "count":
            report = conf.detect_count_anomalies(log, config)
        else:
            report = conf.detect_duration_anomalies(log, config)
    if args.json:
        _write_output(
            (json.dumps(report.to_doc(), indent=2, ensure_ascii=False) + "\n").encode(),
            args.out,
        )
    else:
        _write_output(_render_report(report).encode(), args.out)
    if args.fail_on_violation and report.violations:
        return 1
    return 0


def _cmd_convert(args) -> int:
    log = _load_log(args.input, args.lenient)
    _write_output(write_ocel(log, FormatKind(args.to)), args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ocpm", description="object-centric process mining toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, with_out=True):
        p.add_argument("input", help="OCEL document path, or - for stdin")
        p.add_argument(
            "--lenient",
            action="store_true",
            help="auto-create undeclared objects instead of failing",
        )
        if with_out:
            p.add_argument("--out", help="output path, or - for stdout")

    p = sub.add_parser("validate", help="check log invariants")
    add_io(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("stats", help="general statistics and distributions")
    add_io(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("flatten", help="flatten to a traditional log (XES)")
    add_io(p)
    p.add_argument("--type", required=True, help="object type to flatten on")
    p.add_argument("--format", default="xes", choices=["xes"])
    p.set_defaults(func=_cmd_flatten)

    p = sub.add_parser("filter", help="apply filters and write the filtered log")
    add_io(p)
    p.add_argument(
        "--filter",
        action="append",
        metavar="EXPR",
        help=(
            "activity=a1,a2 | time=ISO..ISO | obj-activity=a1,a2 | start=a1,a2 "
            "| end=a1,a2 | path=a1->a2 | types=t1,t2 (repeatable, applied left to right)"
        ),
    )
    p.add_argument("--to", choices=[k.value for k in FormatKind], help="output format (default: input format)")
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("discover", help="discover the annotated multigraph")
    add_io(p)
    p.add_argument("--metric", default="UO", choices=list(METRICS))
    p.add_argument("--min-node", type=float, default=0.0)
    p.add_argument("--min-edge", type=float, default=0.0)
    p.add_argument("--format", default="dot", choices=["dot", "json"])
    p.set_defaults(func=_cmd_discover)

    p = sub.add_parser("conformance", help="bound rules and anomaly detection")
    add_io(p)
    p.add_argument("--check", required=True, choices=["count", "duration"])
    p.add_argument("--activity", help="activity for a count rule")
    p.add_argument("--lb", type=float, help="rule lower bound")
    p.add_argument("--ub", type=float, help="rule upper bound")
    p.add_argument("--zeta", type=float, default=1.0, help="anomaly band width")
    p.add_argument("--json", action="store_true")
    p.add_argument("--fail-on-violation", action="store_true")
    p.set_defaults(func=_cmd_conformance)

    p = sub.add_parser("convert", help="convert between the OCEL formats")
    add_io(p)
    p.add_argument("--to", required=True, choices=[k.value for k in FormatKind])
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("serve", help="run the HTTP API (and optionally the UI)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", help="directory of built UI assets to serve at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (OcelParseError, OSError, ValueError) as exc:
        print(f"ocpm: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

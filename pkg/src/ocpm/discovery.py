"""Directly-follows graph discovery, collation, annotations, thresholds.

A per-type flat DFG uses ``None`` in the source position for the start node
and in the target position for the end node.  The object-centric multigraph
collates one flat DFG per object type into typed edges ``(src, otype, dst)``;
``None`` endpoints then denote the per-type start/end nodes.

Discovery itself attaches no frequencies to the multigraph; ``annotate``
fills in the activity metrics (events, unique objects, total objects, with
per-type breakdowns) and the path metrics (event couples, unique objects,
total objects).  ``apply_thresholds`` drops infrequent activities and edges
under a chosen metric.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

from .core import OcelLog
from .filtering import restrict_to_objects
from .flattening import TraditionalLog, case_map, flatten

DfgEdge = tuple  # (str | None, str | None)
TypedEdge = tuple  # (str | None, str, str | None)

#: Annotation choices: E/EC uses event counts, UO unique objects, TO totals.
METRICS = ("E_EC", "UO", "TO")


@dataclass(frozen=True)
class Dfg:
    """A flat directly-follows graph with node and edge frequencies."""

    activities: frozenset[str]
    edges: frozenset[DfgEdge]
    node_freq: dict[str, int]
    edge_freq: dict[DfgEdge, int]


@dataclass(frozen=True)
class ActivityMetrics:
    events: int
    unique_objects: int
    total_objects: int


@dataclass(frozen=True)
class ActivityAnnotation:
    """Overall metrics plus a per-object-type breakdown.

    ``per_type`` lists only the types in whose filtered log the activity
    still occurs; absent types contribute (0, 0, 0).
    """

    overall: ActivityMetrics
    per_type: dict[str, ActivityMetrics]


@dataclass(frozen=True)
class PathMetrics:
    event_couples: int
    unique_objects: int
    total_objects: int


@dataclass(frozen=True)
class ModelThresholds:
    """Minimum node/edge frequencies plus the metric that defines them."""

    min_node: float = 0.0
    min_edge: float = 0.0
    metric: str = "UO"

    def __post_init__(self) -> None:
        if self.min_node < 0 or self.min_edge < 0:
            raise ValueError("thresholds must be non-negative")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}, expected one of {METRICS}")


@dataclass(frozen=True)
class OcDfg:
    """Object-centric directly-follows multigraph.

    Nodes are the activities plus one start and one end node per object
    type; an edge of some type exists iff the corresponding edge exists in
    that type's flattened DFG.  Annotations are ``None`` until filled by
    :func:`annotate`.
    """

    activities: frozenset[str]
    object_types: frozenset[str]
    edges: frozenset[TypedEdge]
    activity_annotations: dict[str, ActivityAnnotation] | None = None
    edge_annotations: dict[TypedEdge, PathMetrics] | None = None

    @property
    def annotated(self) -> bool:
        return self.activity_annotations is not None


def discover_dfg(flat: TraditionalLog) -> Dfg:
    """Discover a flat DFG: start/end edges count cases, inner edges count
    consecutive activity pairs over all case traces, nodes count events."""
    node_freq = Counter(e.activity for e in flat.events)
    edge_freq: Counter = Counter()
    for events in case_map(flat).values():
        edge_freq[(None, events[0].activity)] += 1
        edge_freq[(events[-1].activity, None)] += 1
        for first, second in zip(events, events[1:]):
            edge_freq[(first.activity, second.activity)] += 1
    return Dfg(
        activities=frozenset(node_freq),
        edges=frozenset(edge_freq),
        node_freq=dict(node_freq),
        edge_freq=dict(edge_freq),
    )


def discover_ocdfg(log: OcelLog) -> OcDfg:
    """Flatten per type, discover each flat DFG, and collate the edges.

    Mirrors the formal construction: the result carries no frequencies;
    use :func:`annotate` to fill them in.
    """
    edges = set()
    activities = set()
    for otype in sorted(log.object_types):
        dfg = discover_dfg(flatten(log, otype))
        activities.update(dfg.activities)
        edges.update((src, otype, dst) for src, dst in dfg.edges)
    # activities with events but no objects of any type still belong to A
    activities.update(e.activity for e in log.events)
    return OcDfg(
        activities=frozenset(activities),
        object_types=frozenset(log.object_types),
        edges=frozenset(edges),
    )


def restrict_to_type(model: OcDfg, otype: str) -> frozenset[DfgEdge]:
    """The type's slice of the multigraph, as flat DFG edges."""
    return frozenset(
        (src, dst) for src, ot, dst in model.edges if ot == otype
    )


def activity_metrics(log: OcelLog, activity: str) -> ActivityMetrics:
    """Event count, unique related objects, total event-object incidences."""
    events = [e for e in log.events if e.activity == activity]
    unique = set()
    total = 0
    for event in events:
        unique.update(event.omap)
        total += len(event.omap)
    return ActivityMetrics(len(events), len(unique), total)


def compute_path_metrics(log: OcelLog) -> dict[TypedEdge, PathMetrics]:
    """Path metrics for every typed directly-follows pair in the log.

    A couple (e1, e2) realizes a path when the two events are consecutive in
    some lifecycle of the edge's type.  Edges into/out of the per-type
    start/end nodes count the objects starting/ending with the activity (the
    three metrics coincide there).  Pairs absent from the result are (0,0,0).
    """
    couples: dict[TypedEdge, set] = {}
    objects: dict[TypedEdge, set] = {}
    totals: Counter = Counter()
    endpoint_counts: Counter = Counter()
    for oid, obj in log.objects.items():
        event_ids = log.events_of_object(oid)
        if not event_ids:
            continue
        otype = obj.otype
        first = log.event(event_ids[0]).activity
        last = log.event(event_ids[-1]).activity
        endpoint_counts[(None, otype, first)] += 1
        endpoint_counts[(last, otype, None)] += 1
        for eid1, eid2 in zip(event_ids, event_ids[1:]):
            edge = (log.event(eid1).activity, otype, log.event(eid2).activity)
            couples.setdefault(edge, set()).add((eid1, eid2))
            objects.setdefault(edge, set()).add(oid)
            totals[edge] += 1
    metrics = {
        edge: PathMetrics(len(couples[edge]), len(objects[edge]), totals[edge])
        for edge in couples
    }
    for edge, count in endpoint_counts.items():
        metrics[edge] = PathMetrics(count, count, count)
    return metrics


def annotate(log: OcelLog, model: OcDfg) -> OcDfg:
    """Fill in activity and path annotations for a discovered model."""
    per_type_logs = {
        otype: restrict_to_objects(log, log.objects_of_type(otype))
        for otype in sorted(model.object_types)
    }
    activity_annotations = {}
    for activity in sorted(model.activities):
        per_type = {}
        for otype, sub in per_type_logs.items():
            sub_metrics = activity_metrics(sub, activity)
            if sub_metrics.events:
                per_type[otype] = sub_metrics
        activity_annotations[activity] = ActivityAnnotation(
            overall=activity_metrics(log, activity), per_type=per_type
        )
    path_metrics = compute_path_metrics(log)
    edge_annotations = {
        edge: path_metrics.get(edge, PathMetrics(0, 0, 0)) for edge in model.edges
    }
    return replace(
        model,
        activity_annotations=activity_annotations,
        edge_annotations=edge_annotations,
    )


def node_value(annotation: ActivityAnnotation, metric: str) -> float:
    overall = annotation.overall
    return {
        "E_EC": overall.events,
        "UO": overall.unique_objects,
        "TO": overall.total_objects,
    }[metric]


def edge_value(metrics: PathMetrics, metric: str) -> float:
    return {
        "E_EC": metrics.event_couples,
        "UO": metrics.unique_objects,
        "TO": metrics.total_objects,
    }[metric]


def apply_thresholds(model: OcDfg, thresholds: ModelThresholds) -> OcDfg:
    """Drop activities/edges under the thresholds; start/end nodes survive.

    Edges incident to a dropped activity are removed regardless of their own
    frequency; nothing is re-routed or re-accumulated.
    """
    if not model.annotated:
        raise ValueError("thresholds require an annotated model")
    kept = frozenset(
        a
        for a in model.activities
        if node_value(model.activity_annotations[a], thresholds.metric)
        >= thresholds.min_node
    )

    def survives(edge: TypedEdge) -> bool:
        src, _, dst = edge
        if src is not None and src not in kept:
            return False
        if dst is not None and dst not in kept:
            return False
        return (
            edge_value(model.edge_annotations[edge], thresholds.metric)
            >= thresholds.min_edge
        )

    edges = frozenset(e for e in model.edges if survives(e))
    return OcDfg(
        activities=kept,
        object_types=model.object_types,
        edges=edges,
        activity_annotations={
            a: ann for a, ann in model.activity_annotations.items() if a in kept
        },
        edge_annotations={
            e: m for e, m in model.edge_annotations.items() if e in edges
        },
    )


# -- rendering -----------------------------------------------------------

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)


def type_colors(object_types: frozenset[str] | set[str]) -> dict[str, str]:
    """Fixed palette keyed by sorted type name."""
    return {
        otype: _PALETTE[i % len(_PALETTE)]
        for i, otype in enumerate(sorted(object_types))
    }


def _edge_sort_key(edge: TypedEdge) -> tuple:
    src, otype, dst = edge
    return (
        src if src is not None else "\x00",
        otype,
        dst if dst is not None else "\x7f",
    )


def _node_ref(node: str | None, role: str, otype: str) -> dict:
    if node is None:
        return {"kind": role, "type": otype}
    return {"kind": "activity", "name": node}


def model_document(
    model: OcDfg,
    metric: str = "UO",
    max_node_value: float | None = None,
    max_edge_value: float | None = None,
) -> dict:
    """Serialize an annotated model for rendering clients.

    Every element carries all three metric triples so clients can switch the
    displayed annotation without a discovery round-trip; ``value`` is the
    currently selected metric.  ``max_*`` default to this model's own maxima
    and exist so slider ranges can reflect the pre-threshold model.
    """
    if not model.annotated:
        raise ValueError("document requires an annotated model")
    activities = []
    for name in sorted(model.activities):
        annotation = model.activity_annotations[name]
        activities.append(
            {
                "name": name,
                "metrics": _activity_metrics_doc(annotation.overall),
                "per_type": {
                    otype: _activity_metrics_doc(m)
                    for otype, m in sorted(annotation.per_type.items())
                },
                "value": node_value(annotation, metric),
            }
        )
    edges = []
    for edge in sorted(model.edges, key=_edge_sort_key):
        src, otype, dst = edge
        metrics = model.edge_annotations[edge]
        edges.append(
            {
                "source": _node_ref(src, "start", otype),
                "target": _node_ref(dst, "end", otype),
                "type": otype,
                "metrics": {
                    "event_couples": metrics.event_couples,
                    "unique_objects": metrics.unique_objects,
                    "total_objects": metrics.total_objects,
                },
                "value": edge_value(metrics, metric),
            }
        )
    node_values = [a["value"] for a in activities]
    edge_values = [e["value"] for e in edges]
    return {
        "metric": metric,
        "object_types": sorted(model.object_types),
        "type_colors": type_colors(model.object_types),
        "activities": activities,
        "edges": edges,
        "max_node_value": (
            max_node_value if max_node_value is not None
            else max(node_values, default=0)
        ),
        "max_edge_value": (
            max_edge_value if max_edge_value is not None
            else max(edge_values, default=0)
        ),
    }


def _activity_metrics_doc(m: ActivityMetrics) -> dict:
    return {
        "events": m.events,
        "unique_objects": m.unique_objects,
        "total_objects": m.total_objects,
    }


def _dot_quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def to_dot(model: OcDfg, metric: str = "UO") -> str:
    """Render an annotated model as DOT, one color class per object type.

    Activity boxes carry the overall and per-type annotation triples; edge
    labels show the selected metric.
    """
    if not model.annotated:
        raise ValueError("DOT export requires an annotated model")
    colors = type_colors(model.object_types)
    lines = [
        "digraph ocdfg {",
        "  rankdir=LR;",
        '  node [shape=box, style="rounded,filled", fillcolor="#f5f5f5", fontname="Helvetica"];',
        '  edge [fontname="Helvetica"];',
    ]
    for activity in sorted(model.activities):
        annotation = model.activity_annotations[activity]
        o = annotation.overall
        label_lines = [
            activity,
            f"E={o.events} UO={o.unique_objects} TO={o.total_objects}",
        ]
        for otype, m in sorted(annotation.per_type.items()):
            label_lines.append(
                f"[{otype}] E={m.events} UO={m.unique_objects} TO={m.total_objects}"
            )
        lines.append(
            f"  {_dot_quote('activity:' + activity)} "
            f"[label={_dot_quote(chr(10).join(label_lines))}];"
        )
    for otype in sorted(model.object_types):
        color = colors[otype]
        lines.append(
            f"  {_dot_quote('start:' + otype)} "
            f'[shape=circle, label="", width=0.25, style=filled, fillcolor="{color}"];'
        )
        lines.append(
            f"  {_dot_quote('end:' + otype)} "
            f'[shape=doublecircle, label="", width=0.2, style=filled, fillcolor="{color}"];'
        )
    for edge in sorted(model.edges, key=_edge_sort_key):
        src, otype, dst = edge
        src_id = "start:" + otype if src is None else "activity:" + src
        dst_id = "end:" + otype if dst is None else "activity:" + dst
        value = edge_value(model.edge_annotations[edge], metric)
        label = str(int(value)) if float(value).is_integer() else str(value)
        lines.append(
            f"  {_dot_quote(src_id)} -> {_dot_quote(dst_id)} "
            f'[color="{colors[otype]}", fontcolor="{colors[otype]}", label={_dot_quote(label)}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"

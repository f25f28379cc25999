"""Event/object selection criteria, log restriction, and the filter chain.

Two restriction primitives exist: restricting to a set of events keeps the
whole object set, while restricting to a set of objects drops the other
objects and intersects the surviving events' object references with the kept
set (so the result is referentially sound).  The seven selection criteria
compute the event/object sets those primitives consume.

A :class:`FilterChain` records applied criteria; replaying the chain from the
base log reproduces the current log exactly, and any step can be removed.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

from .core import Event, OcelLog, format_timestamp, parse_timestamp
from .flattening import lifecycle


# -- criteria ------------------------------------------------------------


@dataclass(frozen=True)
class ActivitySubset:
    """Keep events whose activity is in the set (F1)."""

    activities: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "activities", frozenset(self.activities))


@dataclass(frozen=True)
class Timeframe:
    """Keep events with lb <= timestamp <= ub, bounds inclusive (F2)."""

    lb: dt.datetime
    ub: dt.datetime

    def __post_init__(self) -> None:
        if self.lb > self.ub:
            raise ValueError("timeframe lower bound exceeds upper bound")


@dataclass(frozen=True)
class RelatedActivity:
    """Keep objects whose trace contains any of the activities (F3)."""

    activities: frozenset[str]

    def __post_init__(self) -> None:
        if not self.activities:
            raise ValueError("empty activity set")
        object.__setattr__(self, "activities", frozenset(self.activities))


@dataclass(frozen=True)
class StartActivity:
    """Keep objects whose trace starts with one of the activities (F4)."""

    activities: frozenset[str]

    def __post_init__(self) -> None:
        if not self.activities:
            raise ValueError("empty activity set")
        object.__setattr__(self, "activities", frozenset(self.activities))


@dataclass(frozen=True)
class EndActivity:
    """Keep objects whose trace ends with one of the activities (F5)."""

    activities: frozenset[str]

    def __post_init__(self) -> None:
        if not self.activities:
            raise ValueError("empty activity set")
        object.__setattr__(self, "activities", frozenset(self.activities))


@dataclass(frozen=True)
class Path:
    """Keep objects whose trace contains the consecutive pair (F6)."""

    source: str
    target: str


@dataclass(frozen=True)
class TypeSubset:
    """Keep objects of the given types (F7)."""

    types: frozenset[str]

    def __post_init__(self) -> None:
        if not self.types:
            raise ValueError("empty type set")
        object.__setattr__(self, "types", frozenset(self.types))


@dataclass(frozen=True)
class KeepEvents:
    """Keep an explicit event id set (conformance violations, UI picks)."""

    ids: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", frozenset(self.ids))


@dataclass(frozen=True)
class KeepObjects:
    """Keep an explicit object id set."""

    ids: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", frozenset(self.ids))


EventCriterion = ActivitySubset | Timeframe | KeepEvents
ObjectCriterion = RelatedActivity | StartActivity | EndActivity | Path | TypeSubset | KeepObjects
Criterion = EventCriterion | ObjectCriterion


# -- selection -----------------------------------------------------------


def select_events(log: OcelLog, criterion: EventCriterion) -> frozenset[str]:
    """Event ids matched by an event criterion."""
    if isinstance(criterion, ActivitySubset):
        return frozenset(
            e.id for e in log.events if e.activity in criterion.activities
        )
    if isinstance(criterion, Timeframe):
        return frozenset(
            e.id for e in log.events if criterion.lb <= e.timestamp <= criterion.ub
        )
    if isinstance(criterion, KeepEvents):
        return criterion.ids & frozenset(log.event_ids())
    raise TypeError(f"not an event criterion: {criterion!r}")


def select_objects(log: OcelLog, criterion: ObjectCriterion) -> frozenset[str]:
    """Object ids matched by an object criterion.

    Objects with empty lifecycles never match the trace-based criteria.
    """
    if isinstance(criterion, TypeSubset):
        return frozenset(
            oid for oid, obj in log.objects.items() if obj.otype in criterion.types
        )
    if isinstance(criterion, KeepObjects):
        return criterion.ids & frozenset(log.objects)
    matched = set()
    for oid in log.objects:
        trace = lifecycle(log, oid).trace
        if not trace:
            continue
        if isinstance(criterion, RelatedActivity):
            if criterion.activities.intersection(trace):
                matched.add(oid)
        elif isinstance(criterion, StartActivity):
            if trace[0] in criterion.activities:
                matched.add(oid)
        elif isinstance(criterion, EndActivity):
            if trace[-1] in criterion.activities:
                matched.add(oid)
        elif isinstance(criterion, Path):
            pair = (criterion.source, criterion.target)
            if any(pair == (trace[i], trace[i + 1]) for i in range(len(trace) - 1)):
                matched.add(oid)
        else:
            raise TypeError(f"not an object criterion: {criterion!r}")
    return frozenset(matched)


# -- restriction ---------------------------------------------------------


def restrict_to_events(log: OcelLog, event_ids: frozenset[str] | set[str]) -> OcelLog:
    """Keep exactly these events (order preserved); all objects survive."""
    known = set(log.event_ids())
    unknown = set(event_ids) - known
    if unknown:
        raise ValueError(f"unknown event ids: {sorted(unknown)}")
    return OcelLog(
        events=tuple(e for e in log.events if e.id in event_ids),
        objects=dict(log.objects),
        attribute_names=log.attribute_names,
        attribute_types=dict(log.attribute_types),
        object_types=log.object_types,
    )


def restrict_to_objects(log: OcelLog, object_ids: frozenset[str] | set[str]) -> OcelLog:
    """Keep the objects and the events related to at least one of them.

    Surviving events have their object references intersected with the kept
    set, so no event points at a removed object.
    """
    unknown = set(object_ids) - set(log.objects)
    if unknown:
        raise ValueError(f"unknown object ids: {sorted(unknown)}")
    kept = frozenset(object_ids)
    events = []
    for event in log.events:
        omap = event.omap & kept
        if omap:
            events.append(
                Event(event.id, event.activity, event.timestamp, omap, dict(event.vmap))
            )
    return OcelLog(
        events=tuple(events),
        objects={oid: obj for oid, obj in log.objects.items() if oid in kept},
        attribute_names=log.attribute_names,
        attribute_types=dict(log.attribute_types),
        object_types=log.object_types,
    )


def apply_criterion(log: OcelLog, criterion: Criterion) -> OcelLog:
    """Select with the criterion and restrict the log accordingly."""
    if isinstance(criterion, (ActivitySubset, Timeframe, KeepEvents)):
        return restrict_to_events(log, select_events(log, criterion))
    return restrict_to_objects(log, select_objects(log, criterion))


# -- chain ---------------------------------------------------------------


def describe(criterion: Criterion) -> str:
    """Human-readable label for the chain widget and CLI output."""
    if isinstance(criterion, ActivitySubset):
        return "activities: " + ", ".join(sorted(criterion.activities))
    if isinstance(criterion, Timeframe):
        return f"timeframe: {format_timestamp(criterion.lb)} .. {format_timestamp(criterion.ub)}"
    if isinstance(criterion, RelatedActivity):
        return "objects related to: " + ", ".join(sorted(criterion.activities))
    if isinstance(criterion, StartActivity):
        return "objects starting with: " + ", ".join(sorted(criterion.activities))
    if isinstance(criterion, EndActivity):
        return "objects ending with: " + ", ".join(sorted(criterion.activities))
    if isinstance(criterion, Path):
        return f"objects with path: {criterion.source} -> {criterion.target}"
    if isinstance(criterion, TypeSubset):
        return "object types: " + ", ".join(sorted(criterion.types))
    if isinstance(criterion, KeepEvents):
        return f"keep {len(criterion.ids)} selected events"
    if isinstance(criterion, KeepObjects):
        return f"keep {len(criterion.ids)} selected objects"
    raise TypeError(f"unknown criterion {criterion!r}")


def criterion_to_doc(criterion: Criterion) -> dict:
    if isinstance(criterion, ActivitySubset):
        return {"kind": "activity-subset", "activities": sorted(criterion.activities)}
    if isinstance(criterion, Timeframe):
        return {
            "kind": "timeframe",
            "lb": format_timestamp(criterion.lb),
            "ub": format_timestamp(criterion.ub),
        }
    if isinstance(criterion, RelatedActivity):
        return {"kind": "related-activity", "activities": sorted(criterion.activities)}
    if isinstance(criterion, StartActivity):
        return {"kind": "start-activity", "activities": sorted(criterion.activities)}
    if isinstance(criterion, EndActivity):
        return {"kind": "end-activity", "activities": sorted(criterion.activities)}
    if isinstance(criterion, Path):
        return {"kind": "path", "source": criterion.source, "target": criterion.target}
    if isinstance(criterion, TypeSubset):
        return {"kind": "type-subset", "types": sorted(criterion.types)}
    if isinstance(criterion, KeepEvents):
        return {"kind": "keep-events", "ids": sorted(criterion.ids)}
    if isinstance(criterion, KeepObjects):
        return {"kind": "keep-objects", "ids": sorted(criterion.ids)}
    raise TypeError(f"unknown criterion {criterion!r}")


def criterion_from_doc(doc: dict) -> Criterion:
    """Inverse of :func:`criterion_to_doc`; raises ValueError on bad input."""
    try:
        kind = doc["kind"]
        if kind == "activity-subset":
            return ActivitySubset(frozenset(doc["activities"]))
        if kind == "timeframe":
            return Timeframe(parse_timestamp(doc["lb"]), parse_timestamp(doc["ub"]))
        if kind == "related-activity":
            return RelatedActivity(frozenset(doc["activities"]))
        if kind == "start-activity":
            return StartActivity(frozenset(doc["activities"]))
        if kind == "end-activity":
            return EndActivity(frozenset(doc["activities"]))
        if kind == "path":
            return Path(doc["source"], doc["target"])
        if kind == "type-subset":
            return TypeSubset(frozenset(doc["types"]))
        if kind == "keep-events":
            return KeepEvents(frozenset(doc["ids"]))
        if kind == "keep-objects":
            return KeepObjects(frozenset(doc["ids"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed criterion document: {exc}") from None
    raise ValueError(f"unknown criterion kind {kind!r}")


@dataclass
class FilterChain:
    """Ordered, removable record of applied criteria."""

    steps: list[Criterion] = field(default_factory=list)

    def push(self, criterion: Criterion) -> None:
        self.steps.append(criterion)

    def pop(self, index: int) -> Criterion:
        if not 0 <= index < len(self.steps):
            raise IndexError(f"no chain step {index}")
        return self.steps.pop(index)

    def replay(self, base: OcelLog) -> OcelLog:
        log = base
        for criterion in self.steps:
            log = apply_criterion(log, criterion)
        return log

    def labels(self) -> list[str]:
        return [describe(c) for c in self.steps]

    def to_doc(self) -> dict:
        return {
            "steps": [
                {"label": describe(c), **criterion_to_doc(c)} for c in self.steps
            ]
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "FilterChain":
        return cls(steps=[criterion_from_doc(s) for s in doc.get("steps", [])])

"""Flattening to traditional (case-based) logs and object lifecycles.

Flattening projects an object-centric log onto one object type: the events
related to at least one object of that type are kept, and each object of the
type becomes a case.  The flattened order is the log's total order restricted
to the retained events, which is total and contains the pairwise relation the
per-type projection induces.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .core import OcelLog, seconds_between


@dataclass(frozen=True)
class FlatEvent:
    """An event of a flattened log; ``cases`` is never empty."""

    id: str
    activity: str
    timestamp: dt.datetime
    cases: frozenset[str]


@dataclass(frozen=True)
class TraditionalLog:
    events: tuple[FlatEvent, ...]
    source_type: str

    def case_ids(self) -> frozenset[str]:
        return frozenset(c for e in self.events for c in e.cases)


@dataclass(frozen=True)
class Lifecycle:
    """The events related to one object, in log order, plus derived facts.

    ``duration_seconds`` is last minus first event timestamp (0.0 for a
    single event, ``None`` when the lifecycle is empty); inverted timestamps
    simply yield a negative duration.
    """

    object_id: str
    events: tuple[str, ...]
    trace: tuple[str, ...]
    start: str | None
    end: str | None
    duration_seconds: float | None


def flatten(log: OcelLog, otype: str) -> TraditionalLog:
    """Project the log onto one object type (cases = objects of the type)."""
    if otype not in log.object_types:
        raise ValueError(f"unknown object type {otype!r}")
    members = log.objects_of_type(otype)
    events = []
    for event in log.events:
        cases = event.omap & members
        if cases:
            events.append(
                FlatEvent(event.id, event.activity, event.timestamp, cases)
            )
    return TraditionalLog(events=tuple(events), source_type=otype)


def lifecycle(log: OcelLog, object_id: str) -> Lifecycle:
    """The lifecycle of one object (equals its case in the flattened log)."""
    if object_id not in log.objects:
        raise ValueError(f"unknown object id {object_id!r}")
    event_ids = log.events_of_object(object_id)
    trace = tuple(log.event(i).activity for i in event_ids)
    if not event_ids:
        return Lifecycle(object_id, (), (), None, None, None)
    duration = seconds_between(
        log.event(event_ids[-1]).timestamp, log.event(event_ids[0]).timestamp
    )
    return Lifecycle(
        object_id=object_id,
        events=event_ids,
        trace=trace,
        start=trace[0],
        end=trace[-1],
        duration_seconds=duration,
    )


def case_map(flat: TraditionalLog) -> dict[str, tuple[FlatEvent, ...]]:
    """Every case's events in log order, as one pass over the flattened log."""
    cases: dict[str, list[FlatEvent]] = {}
    for event in flat.events:
        for case in event.cases:
            cases.setdefault(case, []).append(event)
    return {c: tuple(evs) for c, evs in cases.items()}


def case_events(flat: TraditionalLog, case_id: str) -> tuple[str, ...]:
    """Ids of the events of one case, in log order (not timestamp order)."""
    events = tuple(e.id for e in flat.events if case_id in e.cases)
    if not events:
        raise ValueError(f"unknown case {case_id!r}")
    return events


def endpoint_sets(flat: TraditionalLog) -> tuple[frozenset[str], frozenset[str]]:
    """Start and end activity sets over all cases of the flattened log."""
    starts = set()
    ends = set()
    for events in case_map(flat).values():
        starts.add(events[0].activity)
        ends.add(events[-1].activity)
    return frozenset(starts), frozenset(ends)

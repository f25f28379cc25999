"""Aggregations behind the statistics page: distributions and dotted chart."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import OcelLog, format_timestamp

DEFAULT_TIME_BUCKETS = 50


@dataclass(frozen=True)
class TimeSeries:
    """Event counts over equal-width buckets spanning the log's time range.

    A degenerate range (all timestamps equal, or a single event) collapses
    to one bucket.
    """

    start: str | None
    end: str | None
    counts: tuple[int, ...]


@dataclass(frozen=True)
class DottedPoint:
    timestamp: str
    lane: str
    activity: str


@dataclass(frozen=True)
class StatsBundle:
    objects_per_type: dict[str, int]
    events_per_activity: dict[str, int]
    related_objects_per_event: dict[int, int]
    lifecycle_length_distribution: dict[int, int]
    events_over_time: TimeSeries
    dotted_chart_type: str | None
    dotted_chart_points: tuple[DottedPoint, ...]

    def to_doc(self) -> dict:
        return {
            "objects_per_type": {
                k: self.objects_per_type[k] for k in sorted(self.objects_per_type)
            },
            "events_per_activity": {
                k: self.events_per_activity[k] for k in sorted(self.events_per_activity)
            },
            "related_objects_per_event": [
                [k, self.related_objects_per_event[k]]
                for k in sorted(self.related_objects_per_event)
            ],
            "lifecycle_length_distribution": [
                [k, self.lifecycle_length_distribution[k]]
                for k in sorted(self.lifecycle_length_distribution)
            ],
            "events_over_time": {
                "start": self.events_over_time.start,
                "end": self.events_over_time.end,
                "counts": list(self.events_over_time.counts),
            },
            "dotted_chart": {
                "type": self.dotted_chart_type,
                "points": [
                    {"timestamp": p.timestamp, "lane": p.lane, "activity": p.activity}
                    for p in self.dotted_chart_points
                ],
            },
        }


def _events_over_time(log: OcelLog, buckets: int) -> TimeSeries:
    if not log.events:
        return TimeSeries(start=None, end=None, counts=())
    stamps = [e.timestamp for e in log.events]
    low, high = min(stamps), max(stamps)
    span = (high - low).total_seconds()
    if span <= 0 or buckets <= 1:
        return TimeSeries(
            start=format_timestamp(low),
            end=format_timestamp(high),
            counts=(len(stamps),),
        )
    counts = [0] * buckets
    for ts in stamps:
        index = int((ts - low).total_seconds() / span * buckets)
        counts[min(index, buckets - 1)] += 1
    return TimeSeries(
        start=format_timestamp(low), end=format_timestamp(high), counts=tuple(counts)
    )


def compute_stats(
    log: OcelLog,
    time_buckets: int = DEFAULT_TIME_BUCKETS,
    dotted_chart_type: str | None = None,
) -> StatsBundle:
    """Compute the full statistics bundle for a log.

    Object counts per type are unique objects.  Dotted chart lanes are the
    objects of ``dotted_chart_type`` (default: the type with most objects,
    ties broken by name); x is the event timestamp, color is the activity.
    """
    objects_per_type = Counter(obj.otype for obj in log.objects.values())
    events_per_activity = Counter(e.activity for e in log.events)
    related = Counter(len(e.omap) for e in log.events)
    lengths = Counter(len(log.events_of_object(oid)) for oid in log.objects)

    lane_type = dotted_chart_type
    if lane_type is None and objects_per_type:
        lane_type = max(sorted(objects_per_type), key=objects_per_type.__getitem__)
    elif lane_type is not None and lane_type not in log.object_types:
        raise ValueError(f"unknown object type {lane_type!r}")

    points = []
    if lane_type is not None:
        lanes = log.objects_of_type(lane_type)
        for event in log.events:
            for oid in sorted(event.omap & lanes):
                points.append(
                    DottedPoint(
                        timestamp=format_timestamp(event.timestamp),
                        lane=oid,
                        activity=event.activity,
                    )
                )
    return StatsBundle(
        objects_per_type=dict(objects_per_type),
        events_per_activity=dict(events_per_activity),
        related_objects_per_event=dict(related),
        lifecycle_length_distribution=dict(lengths),
        events_over_time=_events_over_time(log, time_buckets),
        dotted_chart_type=lane_type,
        dotted_chart_points=tuple(points),
    )

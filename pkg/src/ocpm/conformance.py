"""Model-independent conformance rules and mean/stdev anomaly detection.

Two bound rules exist: the number of related objects per event of an
activity, and the duration of an object's lifecycle.  Values inside the
closed interval [lb, ub] conform; only values strictly outside violate.

The anomaly detectors flag values outside mu +/- zeta*sigma per group
(activity and object type for counts, object type for durations), where
sigma is the population standard deviation, so singleton groups never flag.
Violations convert into filter-chain steps keeping only the anomalous
events/objects.
"""

from __future__ import annotations

import statistics as pystats
from dataclasses import dataclass

from .core import OcelLog
from .filtering import Criterion, KeepEvents, KeepObjects
from .flattening import lifecycle


@dataclass(frozen=True)
class CountRule:
    """Bounds on the number of objects related to events of an activity."""

    activity: str
    lb: int
    ub: int

    def __post_init__(self) -> None:
        if self.lb > self.ub:
            raise ValueError("count rule lower bound exceeds upper bound")
        if self.lb < 0:
            raise ValueError("count rule bounds must be natural numbers")


@dataclass(frozen=True)
class DurationRule:
    """Bounds (seconds) on the duration of an object's lifecycle."""

    lb: float
    ub: float

    def __post_init__(self) -> None:
        if self.lb > self.ub:
            raise ValueError("duration rule lower bound exceeds upper bound")
        if self.lb < 0:
            raise ValueError("duration rule bounds must be non-negative")


@dataclass(frozen=True)
class AnomalyConfig:
    zeta: float = 1.0

    def __post_init__(self) -> None:
        if self.zeta < 0:
            raise ValueError("zeta must be non-negative")


@dataclass(frozen=True)
class ReportRow:
    """One group's statistics: the avg/stdev/deviation-count table columns."""

    activity: str | None
    object_type: str | None
    mean: float
    stdev: float
    num_deviations: int


@dataclass(frozen=True)
class ConformanceReport:
    """Violating ids plus the per-group statistics that produced them.

    ``target`` says what the violations are: "events" or "objects".
    Objects without events cannot have a lifecycle duration; duration checks
    list them under ``skipped_objects`` instead of judging them.
    """

    description: str
    target: str
    violations: tuple[str, ...]
    rows: tuple[ReportRow, ...]
    skipped_objects: tuple[str, ...] = ()

    def to_doc(self) -> dict:
        return {
            "description": self.description,
            "target": self.target,
            "violations": list(self.violations),
            "rows": [
                {
                    "activity": r.activity,
                    "object_type": r.object_type,
                    "mean": r.mean,
                    "stdev": r.stdev,
                    "num_deviations": r.num_deviations,
                }
                for r in self.rows
            ],
            "skipped_objects": list(self.skipped_objects),
        }


def _group_stats(values: list[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 0.0
    return pystats.fmean(values), pystats.pstdev(values)


def check_count_rule(log: OcelLog, rule: CountRule) -> ConformanceReport:
    """Events of the activity whose related-object count leaves [lb, ub]."""
    events = [e for e in log.events if e.activity == rule.activity]
    violating = [
        e.id for e in events if len(e.omap) < rule.lb or len(e.omap) > rule.ub
    ]
    mean, stdev = _group_stats([float(len(e.omap)) for e in events])
    return ConformanceReport(
        description=(
            f"related objects of {rule.activity!r} within [{rule.lb}, {rule.ub}]"
        ),
        target="events",
        violations=tuple(sorted(violating)),
        rows=(
            ReportRow(
                activity=rule.activity,
                object_type=None,
                mean=mean,
                stdev=stdev,
                num_deviations=len(violating),
            ),
        ),
    )


def check_duration_rule(log: OcelLog, rule: DurationRule) -> ConformanceReport:
    """Objects whose lifecycle duration (seconds) leaves [lb, ub]."""
    violating = []
    durations = []
    skipped = []
    for oid in log.objects:
        duration = lifecycle(log, oid).duration_seconds
        if duration is None:
            skipped.append(oid)
            continue
        durations.append(duration)
        if duration < rule.lb or duration > rule.ub:
            violating.append(oid)
    mean, stdev = _group_stats(durations)
    return ConformanceReport(
        description=f"lifecycle duration within [{rule.lb}, {rule.ub}] seconds",
        target="objects",
        violations=tuple(sorted(violating)),
        rows=(
            ReportRow(
                activity=None,
                object_type=None,
                mean=mean,
                stdev=stdev,
                num_deviations=len(violating),
            ),
        ),
        skipped_objects=tuple(sorted(skipped)),
    )


def _outside_band(value: float, mean: float, stdev: float, zeta: float) -> bool:
    return value < mean - zeta * stdev or value > mean + zeta * stdev


def detect_count_anomalies(log: OcelLog, config: AnomalyConfig) -> ConformanceReport:
    """Per (activity, object type): flag events related to an extraordinary
    number of objects of that type (outside mu +/- zeta*sigma)."""
    groups: dict[tuple[str, str], list[tuple[str, int]]] = {}
    for otype in sorted(log.object_types):
        members = log.objects_of_type(otype)
        for event in log.events:
            count = len(event.omap & members)
            if count:
                groups.setdefault((event.activity, otype), []).append(
                    (event.id, count)
                )
    rows = []
    violating: set[str] = set()
    for (activity, otype), members in sorted(groups.items()):
        mean, stdev = _group_stats([float(c) for _, c in members])
        deviants = [
            eid for eid, count in members
            if _outside_band(count, mean, stdev, config.zeta)
        ]
        violating.update(deviants)
        rows.append(
            ReportRow(
                activity=activity,
                object_type=otype,
                mean=mean,
                stdev=stdev,
                num_deviations=len(deviants),
            )
        )
    return ConformanceReport(
        description=f"related-object count within mean +/- {config.zeta} stdev",
        target="events",
        violations=tuple(sorted(violating)),
        rows=tuple(rows),
    )


def detect_duration_anomalies(log: OcelLog, config: AnomalyConfig) -> ConformanceReport:
    """Per object type: flag objects with an exceptional lifecycle duration."""
    groups: dict[str, list[tuple[str, float]]] = {}
    skipped = []
    for oid, obj in log.objects.items():
        duration = lifecycle(log, oid).duration_seconds
        if duration is None:
            skipped.append(oid)
            continue
        groups.setdefault(obj.otype, []).append((oid, duration))
    rows = []
    violating: set[str] = set()
    for otype, members in sorted(groups.items()):
        mean, stdev = _group_stats([d for _, d in members])
        deviants = [
            oid for oid, duration in members
            if _outside_band(duration, mean, stdev, config.zeta)
        ]
        violating.update(deviants)
        rows.append(
            ReportRow(
                activity=None,
                object_type=otype,
                mean=mean,
                stdev=stdev,
                num_deviations=len(deviants),
            )
        )
    return ConformanceReport(
        description=f"lifecycle duration within mean +/- {config.zeta} stdev",
        target="objects",
        violations=tuple(sorted(violating)),
        rows=tuple(rows),
        skipped_objects=tuple(sorted(skipped)),
    )


def violations_to_filter(report: ConformanceReport) -> Criterion:
    """Wrap a report's violations as a filter-chain step.

    An empty violation set yields a legal filter to the empty log.
    """
    ids = frozenset(report.violations)
    if report.target == "events":
        return KeepEvents(ids)
    if report.target == "objects":
        return KeepObjects(ids)
    raise ValueError(f"report targets neither events nor objects: {report.target!r}")

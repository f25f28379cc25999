"""Object-centric event log domain model and general statistics.

An :class:`OcelLog` holds an ordered sequence of events, a map of typed
objects, and the global attribute/type declarations.  The position of an
event in the sequence *is* the total order of the log; timestamps play no
role in ordering (real logs contain ties and inversions).  All values are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

#: The attribute kinds a log may declare or carry.
KINDS = ("string", "integer", "float", "boolean", "timestamp")

_PAYLOAD_TYPES = {
    "string": str,
    "integer": int,
    "float": float,
    "boolean": bool,
    "timestamp": dt.datetime,
}


def normalize_timestamp(value: dt.datetime) -> dt.datetime:
    """Check timezone-awareness and truncate to millisecond precision."""
    if value.tzinfo is None or value.utcoffset() is None:
        raise ValueError(f"timestamp {value!r} lacks a timezone offset")
    return value.replace(microsecond=value.microsecond // 1000 * 1000)


def parse_timestamp(text: str) -> dt.datetime:
    """Parse an ISO-8601 timestamp with offset ('Z' accepted for UTC)."""
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        value = dt.datetime.fromisoformat(text)
    except ValueError as exc:
        raise ValueError(f"invalid timestamp {text!r}: {exc}") from None
    return normalize_timestamp(value)


def format_timestamp(value: dt.datetime) -> str:
    return value.isoformat(timespec="milliseconds")


def seconds_between(later: dt.datetime, earlier: dt.datetime) -> float:
    """Fractional seconds separating two instants (may be negative)."""
    return (later - earlier).total_seconds()


@dataclass(frozen=True)
class AttributeValue:
    """A typed attribute payload; ``kind`` is one of :data:`KINDS`."""

    kind: str
    value: object

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown attribute kind {self.kind!r}")
        expected = _PAYLOAD_TYPES[self.kind]
        # bool is an int subclass: reject it everywhere but under "boolean"
        if isinstance(self.value, bool) and self.kind != "boolean":
            raise ValueError(f"boolean payload under kind {self.kind!r}")
        if not isinstance(self.value, expected):
            raise ValueError(
                f"kind {self.kind!r} does not match payload {self.value!r}"
            )
        if self.kind == "timestamp":
            object.__setattr__(self, "value", normalize_timestamp(self.value))

    @classmethod
    def of(cls, raw: object) -> "AttributeValue":
        """Wrap a plain Python value, inferring its kind."""
        if isinstance(raw, bool):
            return cls("boolean", raw)
        if isinstance(raw, str):
            return cls("string", raw)
        if isinstance(raw, int):
            return cls("integer", raw)
        if isinstance(raw, float):
            return cls("float", raw)
        if isinstance(raw, dt.datetime):
            return cls("timestamp", raw)
        raise ValueError(f"unsupported attribute payload {raw!r}")


@dataclass(frozen=True)
class Event:
    """One event: identifier, activity, instant, attributes, related objects.

    ``omap`` may be empty; validation flags that as a warning, not an error.
    """

    id: str
    activity: str
    timestamp: dt.datetime
    omap: frozenset[str] = frozenset()
    vmap: dict[str, AttributeValue] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "timestamp", normalize_timestamp(self.timestamp))
        object.__setattr__(self, "omap", frozenset(self.omap))


@dataclass(frozen=True)
class ObjectInstance:
    """An object with exactly one type and a static attribute map."""

    id: str
    otype: str
    ovmap: dict[str, AttributeValue] = field(default_factory=dict)


@dataclass(frozen=True)
class LogStats:
    """The three general statistics of an object-centric log."""

    num_events: int
    num_unique_objects: int
    num_total_objects: int


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(eq=True)
class OcelLog:
    """An object-centric event log.

    ``events`` is ordered: index order is the log's total order.  ``objects``
    maps object id to :class:`ObjectInstance`.  ``attribute_names`` and
    ``object_types`` are the global declarations; ``attribute_types`` assigns
    a kind to every declared attribute name.

    Equality is structural and ignores map ordering (dict equality).
    """

    events: tuple[Event, ...]
    objects: dict[str, ObjectInstance]
    attribute_names: frozenset[str]
    attribute_types: dict[str, str]
    object_types: frozenset[str]

    def __post_init__(self) -> None:
        self.events = tuple(self.events)
        index: dict[str, int] = {}
        object_events: dict[str, list[str]] = {oid: [] for oid in self.objects}
        for pos, event in enumerate(self.events):
            index.setdefault(event.id, pos)
            for oid in event.omap:
                if oid in object_events:
                    object_events[oid].append(event.id)
        # caches are not dataclass fields: they never take part in equality
        self._position = index
        self._by_id = {e.id: e for e in reversed(self.events)}
        self._object_events = {oid: tuple(ids) for oid, ids in object_events.items()}

    # -- access helpers -------------------------------------------------

    def event(self, event_id: str) -> Event:
        try:
            return self._by_id[event_id]
        except KeyError:
            raise KeyError(f"unknown event id {event_id!r}") from None

    def position(self, event_id: str) -> int:
        try:
            return self._position[event_id]
        except KeyError:
            raise KeyError(f"unknown event id {event_id!r}") from None

    def events_of_object(self, object_id: str) -> tuple[str, ...]:
        """Ids of the events related to an object, in log order."""
        try:
            return self._object_events[object_id]
        except KeyError:
            raise KeyError(f"unknown object id {object_id!r}") from None

    def event_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.events)

    def activities(self) -> frozenset[str]:
        return frozenset(e.activity for e in self.events)

    def objects_of_type(self, otype: str) -> frozenset[str]:
        return frozenset(
            oid for oid, obj in self.objects.items() if obj.otype == otype
        )

    @classmethod
    def build(
        cls,
        events: list[Event] | tuple[Event, ...],
        objects: list[ObjectInstance] | tuple[ObjectInstance, ...],
        attribute_names: frozenset[str] = frozenset(),
        attribute_types: dict[str, str] | None = None,
        object_types: frozenset[str] = frozenset(),
    ) -> "OcelLog":
        """Assemble a log, unioning declarations with what the content uses.

        Observed attribute kinds never override an explicit declaration; a
        clash between the two is left for :func:`validate` to flag.
        """
        types = dict(attribute_types or {})
        names = set(attribute_names) | set(types)
        for event in events:
            for name, attr in event.vmap.items():
                names.add(name)
                types.setdefault(name, attr.kind)
        for obj in objects:
            for name, attr in obj.ovmap.items():
                names.add(name)
                types.setdefault(name, attr.kind)
        for name in names:
            types.setdefault(name, "string")
        otypes = set(object_types) | {o.otype for o in objects}
        return cls(
            events=tuple(events),
            objects={o.id: o for o in objects},
            attribute_names=frozenset(names),
            attribute_types=types,
            object_types=frozenset(otypes),
        )


def empty_log() -> OcelLog:
    return OcelLog.build(events=(), objects=())


def _check_attribute_map(
    log: OcelLog, owner: str, vmap: dict[str, AttributeValue]
) -> list[ValidationIssue]:
    issues = []
    for name, attr in vmap.items():
        if name not in log.attribute_names:
            issues.append(
                ValidationIssue(
                    "error",
                    "undeclared-attribute",
                    f"{owner} uses attribute {name!r} missing from the declared names",
                )
            )
        declared = log.attribute_types.get(name)
        if declared is not None and declared != attr.kind:
            issues.append(
                ValidationIssue(
                    "error",
                    "attribute-kind-mismatch",
                    f"{owner}: attribute {name!r} has kind {attr.kind}, declared {declared}",
                )
            )
    return issues


def validate(log: OcelLog) -> list[ValidationIssue]:
    """Check every log invariant; an empty result means the log is valid.

    Errors: duplicate ids, dangling object references, undeclared attribute
    names or object types, kind mismatches.  Warnings: events without
    objects, timestamps that run against the log order.
    """
    issues: list[ValidationIssue] = []

    seen: set[str] = set()
    for event in log.events:
        if event.id in seen:
            issues.append(
                ValidationIssue(
                    "error", "duplicate-event-id", f"event id {event.id!r} occurs twice"
                )
            )
        seen.add(event.id)

    for event in log.events:
        for oid in sorted(event.omap):
            if oid not in log.objects:
                issues.append(
                    ValidationIssue(
                        "error",
                        "dangling-object",
                        f"event {event.id!r} references unknown object {oid!r}",
                    )
                )
        if not event.omap:
            issues.append(
                ValidationIssue(
                    "warning", "empty-omap", f"event {event.id!r} relates to no object"
                )
            )
        issues.extend(_check_attribute_map(log, f"event {event.id!r}", event.vmap))

    for oid, obj in log.objects.items():
        if obj.id != oid:
            issues.append(
                ValidationIssue(
                    "error", "object-key-mismatch", f"object {oid!r} keyed under wrong id"
                )
            )
        if obj.otype not in log.object_types:
            issues.append(
                ValidationIssue(
                    "error",
                    "undeclared-object-type",
                    f"object {oid!r} has undeclared type {obj.otype!r}",
                )
            )
        issues.extend(_check_attribute_map(log, f"object {oid!r}", obj.ovmap))

    for name in sorted(log.attribute_names):
        if name not in log.attribute_types:
            issues.append(
                ValidationIssue(
                    "error", "untyped-attribute", f"attribute {name!r} has no declared kind"
                )
            )

    issues.extend(_timestamp_order_issues(log))
    return issues


def _timestamp_order_issues(log: OcelLog) -> list[ValidationIssue]:
    # One warning per event whose timestamp exceeds that of a later event,
    # naming the last such later event.
    events = log.events
    n = len(events)
    suffix_min: list[dt.datetime | None] = [None] * (n + 1)
    for i in range(n - 1, -1, -1):
        ts = events[i].timestamp
        nxt = suffix_min[i + 1]
        suffix_min[i] = ts if nxt is None or ts < nxt else nxt
    issues = []
    for i, event in enumerate(events):
        floor = suffix_min[i + 1]
        if floor is None or floor >= event.timestamp:
            continue
        partner = next(
            events[j] for j in range(n - 1, i, -1)
            if events[j].timestamp < event.timestamp
        )
        issues.append(
            ValidationIssue(
                "warning",
                "timestamp-order",
                f"timestamp order violates total order between {event.id} and {partner.id}",
            )
        )
    return issues


def general_stats(log: OcelLog) -> LogStats:
    """Event count, unique object count, and total event-object incidences."""
    return LogStats(
        num_events=len(log.events),
        num_unique_objects=len(log.objects),
        num_total_objects=sum(len(e.omap) for e in log.events),
    )


def events_of_activity(log: OcelLog, activity: str) -> frozenset[str]:
    """Ids of the events carrying exactly this activity name."""
    return frozenset(e.id for e in log.events if e.activity == activity)

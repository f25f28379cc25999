"""Parsing and serialization: JSON-OCEL, XML-OCEL, and XES export.

The emitted layout is pinned by the golden files and docs/FORMAT.md: a
global section declaring attribute names, attribute kinds, and object types,
an events map in log order, and an objects map ordered by first appearance
in any event.  Output is canonical (everything else sorted), so serializing
the same log twice yields identical bytes.

Both formats round-trip: ``parse_ocel(write_ocel(log, kind))`` is
structurally equal to ``log`` for either kind, and the two serializations of
one log parse to equal logs.
"""

from __future__ import annotations

import enum
import json
import logging
import math
import xml.etree.ElementTree as ET

from .core import (
    AttributeValue,
    Event,
    ObjectInstance,
    OcelLog,
    format_timestamp,
    parse_timestamp,
    KINDS,
)
from .flattening import TraditionalLog

log_ = logging.getLogger("ocpm.io")

OCEL_VERSION = "1.0"

#: Tag names used for typed values in XML-OCEL and XES documents.
_KIND_TO_TAG = {
    "string": "string",
    "integer": "int",
    "float": "float",
    "boolean": "boolean",
    "timestamp": "date",
}
_TAG_TO_KIND = {tag: kind for kind, tag in _KIND_TO_TAG.items()}


class FormatKind(enum.Enum):
    JSON = "jsonocel"
    XML = "xmlocel"


class OcelParseError(ValueError):
    """Malformed OCEL input; the message carries a document location."""


def detect_format(data: bytes) -> FormatKind:
    """JSON documents open with '{', XML documents with '<'."""
    for byte in data:
        if byte in b" \t\r\n":
            continue
        if byte == ord("{"):
            return FormatKind.JSON
        if byte == ord("<"):
            return FormatKind.XML
        break
    raise OcelParseError("cannot detect format: document starts with neither '{' nor '<'")


# -- shared decode helpers -------------------------------------------------


class _KindTable:
    """Reconciles declared attribute kinds with the kinds observed in values."""

    def __init__(self, declared: dict[str, str]):
        self.kinds = dict(declared)

    def resolve(self, name: str, observed_kind: str, where: str) -> str:
        known = self.kinds.get(name)
        if known is None:
            self.kinds[name] = observed_kind
            return observed_kind
        if known == observed_kind:
            return known
        # integers widen losslessly under a float declaration
        if known == "float" and observed_kind == "integer":
            return known
        # JSON carries timestamps as plain strings
        if known == "timestamp" and observed_kind == "string":
            return known
        raise OcelParseError(
            f"{where}: attribute {name!r} declared {known}, got a {observed_kind} value"
        )


def _decode_json_value(raw: object, name: str, table: _KindTable, where: str) -> AttributeValue:
    if isinstance(raw, bool):
        observed = "boolean"
    elif isinstance(raw, str):
        observed = "string"
    elif isinstance(raw, int):
        observed = "integer"
    elif isinstance(raw, float):
        observed = "float"
    else:
        raise OcelParseError(f"{where}: unsupported value {raw!r} for attribute {name!r}")
    kind = table.resolve(name, observed, where)
    if kind == "timestamp":
        try:
            return AttributeValue("timestamp", parse_timestamp(raw))
        except ValueError as exc:
            raise OcelParseError(f"{where}: {exc}") from None
    if kind == "float" and observed == "integer":
        return AttributeValue("float", float(raw))
    return AttributeValue(kind, raw)


def _encode_json_value(attr: AttributeValue) -> object:
    if attr.kind == "timestamp":
        return format_timestamp(attr.value)
    return attr.value


# -- JSON-OCEL -------------------------------------------------------------


def _expect(value, types, where: str):
    if not isinstance(value, types):
        names = types.__name__ if isinstance(types, type) else "/".join(
            t.__name__ for t in types
        )
        raise OcelParseError(f"{where}: expected {names}, got {type(value).__name__}")
    return value


def _parse_json(data: bytes, strict: bool) -> OcelLog:
    try:
        doc = json.loads(
            data.decode("utf-8"),
            parse_constant=lambda c: (_ for _ in ()).throw(
                OcelParseError(f"non-finite number {c!r} is not valid OCEL")
            ),
        )
    except UnicodeDecodeError as exc:
        raise OcelParseError(f"document is not UTF-8: {exc}") from None
    except json.JSONDecodeError as exc:
        raise OcelParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    _expect(doc, dict, "document root")

    glob = _expect(doc.get("ocel:global-log", {}), dict, "ocel:global-log")
    declared_names = [
        _expect(n, str, "ocel:attribute-names entry")
        for n in _expect(glob.get("ocel:attribute-names", []), list, "ocel:attribute-names")
    ]
    declared_otypes = [
        _expect(t, str, "ocel:object-types entry")
        for t in _expect(glob.get("ocel:object-types", []), list, "ocel:object-types")
    ]
    declared_kinds = _expect(
        glob.get("ocel:attribute-types", {}), dict, "ocel:attribute-types"
    )
    for name, kind in declared_kinds.items():
        if kind not in KINDS:
            raise OcelParseError(
                f"ocel:attribute-types: unknown kind {kind!r} for attribute {name!r}"
            )
    table = _KindTable(declared_kinds)

    objects = []
    for oid, body in _expect(doc.get("ocel:objects", {}), dict, "ocel:objects").items():
        where = f"ocel:objects/{oid}"
        body = _expect(body, dict, where)
        otype = _expect(body.get("ocel:type"), str, f"{where}/ocel:type")
        ovmap = {
            name: _decode_json_value(raw, name, table, f"{where}/ocel:ovmap")
            for name, raw in _expect(
                body.get("ocel:ovmap", {}), dict, f"{where}/ocel:ovmap"
            ).items()
        }
        objects.append(ObjectInstance(id=str(oid), otype=otype, ovmap=ovmap))

    events = []
    pending: list[tuple[str, str]] = []
    known_objects = {o.id for o in objects}
    for eid, body in _expect(doc.get("ocel:events", {}), dict, "ocel:events").items():
        where = f"ocel:events/{eid}"
        body = _expect(body, dict, where)
        activity = _expect(body.get("ocel:activity"), str, f"{where}/ocel:activity")
        raw_ts = _expect(body.get("ocel:timestamp"), str, f"{where}/ocel:timestamp")
        try:
            timestamp = parse_timestamp(raw_ts)
        except ValueError as exc:
            raise OcelParseError(f"{where}/ocel:timestamp: {exc}") from None
        omap = [
            _expect(o, str, f"{where}/ocel:omap entry")
            for o in _expect(body.get("ocel:omap", []), list, f"{where}/ocel:omap")
        ]
        for oid in omap:
            if oid not in known_objects:
                pending.append((str(eid), oid))
        vmap = {
            name: _decode_json_value(raw, name, table, f"{where}/ocel:vmap")
            for name, raw in _expect(
                body.get("ocel:vmap", {}), dict, f"{where}/ocel:vmap"
            ).items()
        }
        events.append(
            Event(
                id=str(eid),
                activity=activity,
                timestamp=timestamp,
                omap=frozenset(omap),
                vmap=vmap,
            )
        )

    objects.extend(_resolve_undeclared(pending, known_objects, strict))
    return OcelLog.build(
        events=events,
        objects=objects,
        attribute_names=frozenset(declared_names),
        attribute_types=dict(declared_kinds),
        object_types=frozenset(declared_otypes),
    )


def _resolve_undeclared(
    pending: list[tuple[str, str]], known: set[str], strict: bool
) -> list[ObjectInstance]:
    created = []
    created_ids: set[str] = set()
    for eid, oid in pending:
        if strict:
            raise OcelParseError(
                f"event {eid!r} references undeclared object {oid!r}"
            )
        if oid not in created_ids:
            log_.warning(
                "event %r references undeclared object %r; creating it with type 'unknown'",
                eid,
                oid,
            )
            created.append(ObjectInstance(id=oid, otype="unknown"))
            created_ids.add(oid)
    return created


def _object_write_order(log: OcelLog) -> list[str]:
    # objects by first appearance in any event (omap scanned sorted), then
    # the remaining objects by id
    order = []
    seen = set()
    for event in log.events:
        for oid in sorted(event.omap):
            if oid not in seen and oid in log.objects:
                order.append(oid)
                seen.add(oid)
    order.extend(sorted(set(log.objects) - seen))
    return order


def _write_json(log: OcelLog) -> bytes:
    doc = {
        "ocel:global-event": {"ocel:activity": "__INVALID__"},
        "ocel:global-object": {"ocel:type": "__INVALID__"},
        "ocel:global-log": {
            "ocel:version": OCEL_VERSION,
            "ocel:ordering": "document",
            "ocel:attribute-names": sorted(log.attribute_names),
            "ocel:attribute-types": {
                name: log.attribute_types[name] for name in sorted(log.attribute_types)
            },
            "ocel:object-types": sorted(log.object_types),
        },
        "ocel:events": {
            event.id: {
                "ocel:activity": event.activity,
                "ocel:timestamp": format_timestamp(event.timestamp),
                "ocel:omap": sorted(event.omap),
                "ocel:vmap": {
                    name: _encode_json_value(event.vmap[name])
                    for name in sorted(event.vmap)
                },
            }
            for event in log.events
        },
        "ocel:objects": {
            oid: {
                "ocel:type": log.objects[oid].otype,
                "ocel:ovmap": {
                    name: _encode_json_value(log.objects[oid].ovmap[name])
                    for name in sorted(log.objects[oid].ovmap)
                },
            }
            for oid in _object_write_order(log)
        },
    }
    return (
        json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"
    ).encode("utf-8")


# -- XML-OCEL ----------------------------------------------------------------


def _decode_xml_value(elem: ET.Element, table: _KindTable, where: str) -> tuple[str, AttributeValue]:
    kind = _TAG_TO_KIND.get(elem.tag)
    if kind is None:
        raise OcelParseError(f"{where}: unknown value element <{elem.tag}>")
    name = elem.get("key")
    raw = elem.get("value")
    if name is None or raw is None:
        raise OcelParseError(f"{where}: <{elem.tag}> needs key and value attributes")
    try:
        if kind == "string":
            value: object = raw
        elif kind == "integer":
            value = int(raw)
        elif kind == "float":
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError("non-finite float")
        elif kind == "boolean":
            if raw not in ("true", "false"):
                raise ValueError(f"boolean must be 'true' or 'false', got {raw!r}")
            value = raw == "true"
        else:
            value = parse_timestamp(raw)
    except ValueError as exc:
        raise OcelParseError(f"{where}: bad {kind} value {raw!r}: {exc}") from None
    resolved = table.resolve(name, kind, where)
    if resolved == "float" and kind == "integer":
        return name, AttributeValue("float", float(value))
    return name, AttributeValue(resolved, value)


def _xml_children_by_key(elem: ET.Element) -> dict[str, ET.Element]:
    return {child.get("key", ""): child for child in elem}


def _parse_xml(data: bytes, strict: bool) -> OcelLog:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise OcelParseError(f"invalid XML: {exc}") from None
    if root.tag != "log":
        raise OcelParseError(f"document root must be <log>, got <{root.tag}>")

    declared_names: list[str] = []
    declared_otypes: list[str] = []
    declared_kinds: dict[str, str] = {}
    for glob in root.findall("global"):
        if glob.get("scope") != "log":
            continue
        for child in glob:
            key = child.get("key")
            if key == "attribute-names":
                declared_names = [e.get("value", "") for e in child]
            elif key == "object-types":
                declared_otypes = [e.get("value", "") for e in child]
            elif key == "attribute-types":
                for entry in child:
                    name, kind = entry.get("key"), entry.get("value")
                    if name is None or kind is None:
                        raise OcelParseError("attribute-types entries need key and value")
                    if kind not in KINDS:
                        raise OcelParseError(
                            f"attribute-types: unknown kind {kind!r} for {name!r}"
                        )
                    declared_kinds[name] = kind
    table = _KindTable(declared_kinds)

    objects = []
    objects_elem = root.find("objects")
    for obj_elem in objects_elem if objects_elem is not None else []:
        fields = _xml_children_by_key(obj_elem)
        if "id" not in fields or "type" not in fields:
            raise OcelParseError("object element needs id and type entries")
        oid = fields["id"].get("value", "")
        otype = fields["type"].get("value", "")
        where = f"object {oid!r}"
        ovmap = {}
        ovmap_elem = fields.get("ovmap")
        for value_elem in ovmap_elem if ovmap_elem is not None else []:
            name, attr = _decode_xml_value(value_elem, table, where)
            ovmap[name] = attr
        objects.append(ObjectInstance(id=oid, otype=otype, ovmap=ovmap))

    events = []
    pending: list[tuple[str, str]] = []
    known_objects = {o.id for o in objects}
    events_elem = root.find("events")
    for event_elem in events_elem if events_elem is not None else []:
        fields = _xml_children_by_key(event_elem)
        for required in ("id", "activity", "timestamp"):
            if required not in fields:
                raise OcelParseError(f"event element lacks {required!r}")
        eid = fields["id"].get("value", "")
        where = f"event {eid!r}"
        activity = fields["activity"].get("value", "")
        try:
            timestamp = parse_timestamp(fields["timestamp"].get("value", ""))
        except ValueError as exc:
            raise OcelParseError(f"{where}: {exc}") from None
        omap = []
        omap_elem = fields.get("omap")
        for entry in omap_elem if omap_elem is not None else []:
            oid = entry.get("value")
            if oid is None:
                raise OcelParseError(f"{where}: omap entry lacks a value")
            omap.append(oid)
            if oid not in known_objects:
                pending.append((eid, oid))
        vmap = {}
        vmap_elem = fields.get("vmap")
        for value_elem in vmap_elem if vmap_elem is not None else []:
            name, attr = _decode_xml_value(value_elem, table, where)
            vmap[name] = attr
        events.append(
            Event(
                id=eid,
                activity=activity,
                timestamp=timestamp,
                omap=frozenset(omap),
                vmap=vmap,
            )
        )

    objects.extend(_resolve_undeclared(pending, known_objects, strict))
    return OcelLog.build(
        events=events,
        objects=objects,
        attribute_names=frozenset(declared_names),
        attribute_types=declared_kinds,
        object_types=frozenset(declared_otypes),
    )


def _xml_value_attrs(attr: AttributeValue) -> tuple[str, str]:
    if attr.kind == "timestamp":
        return _KIND_TO_TAG[attr.kind], format_timestamp(attr.value)
    if attr.kind == "boolean":
        return _KIND_TO_TAG[attr.kind], "true" if attr.value else "false"
    return _KIND_TO_TAG[attr.kind], repr(attr.value) if attr.kind == "float" else str(attr.value)


def _write_xml(log: OcelLog) -> bytes:
    root = ET.Element("log")
    glob_event = ET.SubElement(root, "global", scope="event")
    ET.SubElement(glob_event, "string", key="activity", value="__INVALID__")
    glob_object = ET.SubElement(root, "global", scope="object")
    ET.SubElement(glob_object, "string", key="type", value="__INVALID__")
    glob_log = ET.SubElement(root, "global", scope="log")
    ET.SubElement(glob_log, "string", key="version", value=OCEL_VERSION)
    ET.SubElement(glob_log, "string", key="ordering", value="document")
    names = ET.SubElement(glob_log, "list", key="attribute-names")
    for name in sorted(log.attribute_names):
        ET.SubElement(names, "string", key="attribute-name", value=name)
    kinds = ET.SubElement(glob_log, "list", key="attribute-types")
    for name in sorted(log.attribute_types):
        ET.SubElement(kinds, "string", key=name, value=log.attribute_types[name])
    otypes = ET.SubElement(glob_log, "list", key="object-types")
    for otype in sorted(log.object_types):
        ET.SubElement(otypes, "string", key="object-type", value=otype)

    events = ET.SubElement(root, "events")
    for event in log.events:
        event_elem = ET.SubElement(events, "event")
        ET.SubElement(event_elem, "string", key="id", value=event.id)
        ET.SubElement(event_elem, "string", key="activity", value=event.activity)
        ET.SubElement(
            event_elem, "date", key="timestamp", value=format_timestamp(event.timestamp)
        )
        omap = ET.SubElement(event_elem, "list", key="omap")
        for oid in sorted(event.omap):
            ET.SubElement(omap, "string", key="object-id", value=oid)
        vmap = ET.SubElement(event_elem, "list", key="vmap")
        for name in sorted(event.vmap):
            tag, value = _xml_value_attrs(event.vmap[name])
            ET.SubElement(vmap, tag, key=name, value=value)

    objects = ET.SubElement(root, "objects")
    for oid in _object_write_order(log):
        obj = log.objects[oid]
        obj_elem = ET.SubElement(objects, "object")
        ET.SubElement(obj_elem, "string", key="id", value=obj.id)
        ET.SubElement(obj_elem, "string", key="type", value=obj.otype)
        ovmap = ET.SubElement(obj_elem, "list", key="ovmap")
        for name in sorted(obj.ovmap):
            tag, value = _xml_value_attrs(obj.ovmap[name])
            ET.SubElement(ovmap, tag, key=name, value=value)

    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


# -- public API --------------------------------------------------------------


def parse_ocel(
    data: bytes, kind: FormatKind | None = None, strict: bool = True
) -> OcelLog:
    """Parse an OCEL document; ``kind=None`` auto-detects from the content.

    The event sequence keeps document order, which defines the log's total
    order.  Declared attribute names and object types are unioned with what
    the content actually uses.  In strict mode an event referencing an
    undeclared object is an error; in lenient mode the object is created
    with type "unknown" and a warning is logged.
    """
    if kind is None:
        kind = detect_format(data)
    if kind is FormatKind.JSON:
        return _parse_json(data, strict)
    return _parse_xml(data, strict)


def write_ocel(log: OcelLog, kind: FormatKind) -> bytes:
    """Serialize to the canonical byte form of the chosen format."""
    if kind is FormatKind.JSON:
        return _write_json(log)
    if kind is FormatKind.XML:
        return _write_xml(log)
    raise ValueError(f"unknown format {kind!r}")


def export_xes(flat: TraditionalLog) -> bytes:
    """Serialize a flattened log as XES, one trace per case.

    An event related to several cases is replicated into each of their
    traces (the convergence cost of case-based formats).  Traces appear in
    order of their first event, ties broken by case id.
    """
    root = ET.Element("log", {"xes.version": "1.0", "xes.features": ""})
    ET.SubElement(
        root,
        "extension",
        name="Concept",
        prefix="concept",
        uri="http://www.xes-standard.org/concept.xesext",
    )
    ET.SubElement(
        root,
        "extension",
        name="Time",
        prefix="time",
        uri="http://www.xes-standard.org/time.xesext",
    )
    ET.SubElement(root, "classifier", name="Activity", keys="concept:name")
    ET.SubElement(root, "string", key="concept:name", value=flat.source_type)

    case_order: list[str] = []
    seen: set[str] = set()
    for event in flat.events:
        for case in sorted(event.cases):
            if case not in seen:
                case_order.append(case)
                seen.add(case)

    for case in case_order:
        trace = ET.SubElement(root, "trace")
        ET.SubElement(trace, "string", key="concept:name", value=case)
        for event in flat.events:
            if case not in event.cases:
                continue
            event_elem = ET.SubElement(trace, "event")
            ET.SubElement(event_elem, "string", key="concept:name", value=event.activity)
            ET.SubElement(
                event_elem,
                "date",
                key="time:timestamp",
                value=format_timestamp(event.timestamp),
            )
            ET.SubElement(event_elem, "string", key="ocel:eid", value=event.id)

    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"

"""Seeded random log generator for property suites.

Logs are always structurally valid (no dangling references, complete
declarations) but deliberately messy: timestamp ties and inversions, events
without objects, objects without events, attributes of all five kinds.
"""

import random
from datetime import datetime, timedelta, timezone

from ocpm.core import AttributeValue, Event, ObjectInstance, OcelLog

_ACTIVITIES = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"]
_EVENT_ATTRS = [("res", "string"), ("qty", "integer"), ("cost", "float"), ("ok", "boolean"), ("due", "timestamp")]
_OBJECT_ATTRS = [("owner", "string"), ("rank", "integer"), ("price", "float")]

_BASE = datetime(2021, 3, 1, 9, 0, 0, tzinfo=timezone.utc)


def _attr(rng: random.Random, kind: str) -> AttributeValue:
    if kind == "string":
        return AttributeValue("string", rng.choice(["x", "y", "zed", "quux"]))
    if kind == "integer":
        return AttributeValue("integer", rng.randint(-5, 99))
    if kind == "float":
        return AttributeValue("float", round(rng.uniform(-10, 1000), 3))
    if kind == "boolean":
        return AttributeValue("boolean", rng.random() < 0.5)
    return AttributeValue(
        "timestamp", _BASE + timedelta(seconds=rng.randint(0, 10_000), milliseconds=rng.randint(0, 999))
    )


def random_log(rng: random.Random, max_events: int = 50, max_types: int = 4) -> OcelLog:
    num_types = rng.randint(1, max_types)
    types = [f"t{i}" for i in range(num_types)]
    objects = []
    for otype in types:
        for j in range(rng.randint(0, 5)):
            ovmap = {}
            for name, kind in rng.sample(_OBJECT_ATTRS, rng.randint(0, 2)):
                ovmap[name] = _attr(rng, kind)
            objects.append(ObjectInstance(f"{otype}_o{j}", otype, ovmap))
    object_ids = [o.id for o in objects]

    activities = rng.sample(_ACTIVITIES, rng.randint(2, len(_ACTIVITIES)))
    num_events = rng.randint(0, max_events)
    events = []
    clock = _BASE
    for i in range(num_events):
        # ties, and occasional inversions, keep order != timestamp order
        step = rng.choice([0, 0, 1, 2, 30, -5])
        clock = clock + timedelta(seconds=step, milliseconds=rng.choice([0, 250, 527]))
        omap: frozenset = frozenset()
        if object_ids and rng.random() > 0.1:
            omap = frozenset(rng.sample(object_ids, rng.randint(1, min(4, len(object_ids)))))
        vmap = {}
        for name, kind in rng.sample(_EVENT_ATTRS, rng.randint(0, 3)):
            vmap[name] = _attr(rng, kind)
        events.append(Event(f"e{i}", rng.choice(activities), clock, omap, vmap))

    return OcelLog.build(
        events=events,
        objects=objects,
        object_types=frozenset(types),
    )

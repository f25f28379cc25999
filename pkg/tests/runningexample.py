"""In-memory construction of the order/item/package/delivery running example.

Eight events over six objects of four types; the event sequence contains a
timestamp tie (e_4/e_5 and e_6/e_7) and an inversion (e_3 is later than
e_4/e_5 by timestamp but earlier in the order), which several tests rely on.
"""

from datetime import datetime, timedelta, timezone

from ocpm.core import AttributeValue, Event, ObjectInstance, OcelLog

TZ = timezone(timedelta(hours=1))


def ts(hour: int, minute: int, second: int) -> datetime:
    return datetime(2020, 7, 9, hour, minute, second, 527000, tzinfo=TZ)


def _s(value: str) -> AttributeValue:
    return AttributeValue("string", value)


def _f(value: float) -> AttributeValue:
    return AttributeValue("float", value)


def running_example() -> OcelLog:
    events = [
        Event(
            "e_1", "place order", ts(8, 20, 1),
            frozenset({"o_1", "i_1", "i_2"}),
            {"resource": _s("Alessandro"), "prepaid-amount": _f(200.0)},
        ),
        Event(
            "e_2", "check availability", ts(8, 21, 1),
            frozenset({"i_1"}),
            {"resource": _s("Anahita"), "weight": _f(10.0)},
        ),
        Event(
            "e_3", "check availability", ts(8, 22, 1),
            frozenset({"i_2"}),
            {"resource": _s("Anahita"), "weight": _f(20.0)},
        ),
        Event(
            "e_4", "create package", ts(8, 21, 1),
            frozenset({"i_1", "p_1"}),
            {"resource": _s("Miriam"), "weight": _f(10.0)},
        ),
        Event(
            "e_5", "create package", ts(8, 21, 1),
            frozenset({"i_2", "p_2"}),
            {"resource": _s("Tobias"), "weight": _f(20.0)},
        ),
        Event(
            "e_6", "load package", ts(8, 23, 1),
            frozenset({"p_1", "p_2", "d_1"}),
            {"resource": _s("Marco"), "total-weight": _f(30.0)},
        ),
        Event(
            "e_7", "delivery successful", ts(8, 23, 1),
            frozenset({"d_1"}),
            {"resource": _s("Marco"), "total-weight": _f(30.0)},
        ),
        Event(
            "e_8", "order completed", ts(8, 24, 1),
            frozenset({"o_1"}),
            {"resource": _s("Alessandro")},
        ),
    ]
    objects = [
        ObjectInstance("o_1", "order", {"customer": _s("Apple"), "costs": _f(3500.0)}),
        ObjectInstance("i_1", "item", {"color": _s("Orange"), "size": _s("Big")}),
        ObjectInstance("i_2", "item", {"color": _s("Green"), "size": _s("Small")}),
        ObjectInstance("p_1", "package", {"ensured": _s("Yes")}),
        ObjectInstance("p_2", "package", {"ensured": _s("No")}),
        ObjectInstance("d_1", "delivery", {"priority": _s("High")}),
    ]
    return OcelLog.build(events=events, objects=objects)

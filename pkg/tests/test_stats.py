import random

import pytest

from ocpm.core import empty_log, general_stats
from ocpm.stats import compute_stats
from randlog import random_log


def test_objects_per_type(example_log):
    bundle = compute_stats(example_log)
    assert bundle.objects_per_type == {
        "order": 1,
        "item": 2,
        "package": 2,
        "delivery": 1,
    }


def test_events_per_activity(example_log):
    bundle = compute_stats(example_log)
    assert bundle.events_per_activity == {
        "place order": 1,
        "check availability": 2,
        "create package": 2,
        "load package": 1,
        "delivery successful": 1,
        "order completed": 1,
    }


def test_lifecycle_length_distribution(example_log):
    bundle = compute_stats(example_log)
    assert bundle.lifecycle_length_distribution == {2: 4, 3: 2}


def test_related_objects_per_event(example_log):
    bundle = compute_stats(example_log)
    assert bundle.related_objects_per_event == {1: 4, 2: 2, 3: 2}


def test_empty_log_bundle():
    bundle = compute_stats(empty_log())
    assert bundle.objects_per_type == {}
    assert bundle.events_per_activity == {}
    assert bundle.related_objects_per_event == {}
    assert bundle.lifecycle_length_distribution == {}
    assert bundle.events_over_time.counts == ()
    assert bundle.dotted_chart_points == ()


def test_histogram_totals():
    rng = random.Random(53)
    for _ in range(25):
        log = random_log(rng)
        bundle = compute_stats(log)
        stats = general_stats(log)
        assert sum(bundle.events_per_activity.values()) == stats.num_events
        assert sum(bundle.objects_per_type.values()) == stats.num_unique_objects
        assert sum(bundle.related_objects_per_event.values()) == stats.num_events
        assert sum(bundle.lifecycle_length_distribution.values()) == stats.num_unique_objects
        # every event-object incidence counted once
        assert sum(
            k * n for k, n in bundle.lifecycle_length_distribution.items()
        ) == stats.num_total_objects
        assert sum(bundle.events_over_time.counts) == stats.num_events


def test_degenerate_time_range_single_bucket(example_log):
    # all events in one instant collapse to one bucket
    from ocpm.filtering import restrict_to_events

    log = restrict_to_events(example_log, {"e_6", "e_7"})
    bundle = compute_stats(log)
    assert bundle.events_over_time.counts == (2,)


def test_time_bucket_count(example_log):
    bundle = compute_stats(example_log, time_buckets=4)
    assert len(bundle.events_over_time.counts) == 4
    assert sum(bundle.events_over_time.counts) == 8
    assert bundle.events_over_time.start == "2020-07-09T08:20:01.527+01:00"
    assert bundle.events_over_time.end == "2020-07-09T08:24:01.527+01:00"


def test_dotted_chart_default_type(example_log):
    # item and package tie at 2 objects; the lexicographically smaller wins
    bundle = compute_stats(example_log)
    assert bundle.dotted_chart_type == "item"
    lanes = {p.lane for p in bundle.dotted_chart_points}
    assert lanes == {"i_1", "i_2"}
    assert len(bundle.dotted_chart_points) == 6


def test_dotted_chart_chosen_type(example_log):
    bundle = compute_stats(example_log, dotted_chart_type="delivery")
    assert [(p.lane, p.activity) for p in bundle.dotted_chart_points] == [
        ("d_1", "load package"),
        ("d_1", "delivery successful"),
    ]
    with pytest.raises(ValueError, match="unknown object type"):
        compute_stats(example_log, dotted_chart_type="invoice")


def test_bundle_doc_shape(example_log):
    doc = compute_stats(example_log).to_doc()
    assert set(doc) == {
        "objects_per_type",
        "events_per_activity",
        "related_objects_per_event",
        "lifecycle_length_distribution",
        "events_over_time",
        "dotted_chart",
    }
    assert doc["lifecycle_length_distribution"] == [[2, 4], [3, 2]]
    assert doc["dotted_chart"]["type"] == "item"

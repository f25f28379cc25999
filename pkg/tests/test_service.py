import json

import pytest
from fastapi.testclient import TestClient

from ocpm.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def session(client, golden_json):
    response = client.post(
        "/api/v1/sessions", files={"file": ("log.jsonocel", golden_json)}
    )
    assert response.status_code == 200
    return response.json()["session_id"]


def test_upload_and_general(client, session):
    general = client.get(f"/api/v1/sessions/{session}/general").json()
    assert general == {
        "num_events": 8,
        "num_unique_objects": 6,
        "num_total_objects": 14,
    }


def test_stats_endpoint(client, session):
    stats = client.get(f"/api/v1/sessions/{session}/stats").json()
    assert stats["events_per_activity"]["check availability"] == 2
    assert stats["objects_per_type"] == {
        "delivery": 1,
        "item": 2,
        "order": 1,
        "package": 2,
    }


def test_malformed_upload_is_rejected(client):
    response = client.post("/api/v1/sessions", files={"file": ("x", b"{broken")})
    assert response.status_code == 400
    body = response.json()
    assert set(body) == {"code", "message"}
    assert body["code"] == "parse-error"


def test_missing_file_field(client):
    response = client.post("/api/v1/sessions")
    assert response.status_code == 400


def test_sessions_are_independent(client, golden_json):
    first = client.post("/api/v1/sessions", files={"file": ("a", golden_json)}).json()
    second = client.post("/api/v1/sessions", files={"file": ("b", golden_json)}).json()
    assert first["session_id"] != second["session_id"]
    client.post(
        f"/api/v1/sessions/{first['session_id']}/filters",
        json={"kind": "type-subset", "types": ["item"]},
    )
    untouched = client.get(f"/api/v1/sessions/{second['session_id']}/general").json()
    assert untouched["num_events"] == 8


def test_unknown_session_404(client):
    response = client.get("/api/v1/sessions/nope/general")
    assert response.status_code == 404
    assert response.json()["code"] == "unknown-session"


def test_upload_cap(golden_json):
    small = TestClient(create_app(max_upload_bytes=64))
    response = small.post("/api/v1/sessions", files={"file": ("big", golden_json)})
    assert response.status_code == 413
    assert response.json()["code"] == "too-large"


def test_idle_sessions_are_evicted(golden_json):
    fleeting = TestClient(create_app(session_ttl_seconds=0))
    sid = fleeting.post(
        "/api/v1/sessions", files={"file": ("log", golden_json)}
    ).json()["session_id"]
    response = fleeting.get(f"/api/v1/sessions/{sid}/general")
    assert response.status_code == 404


def test_push_type_filter(client, session):
    summary = client.post(
        f"/api/v1/sessions/{session}/filters",
        json={"kind": "type-subset", "types": ["item"]},
    ).json()
    assert summary["general"]["num_events"] == 5
    assert len(summary["chain"]["steps"]) == 1
    assert summary["chain"]["steps"][0]["label"] == "object types: item"


def test_get_filters_rehydrates_chain(client, session):
    client.post(
        f"/api/v1/sessions/{session}/filters",
        json={"kind": "type-subset", "types": ["item"]},
    )
    summary = client.get(f"/api/v1/sessions/{session}/filters").json()
    assert summary["chain"]["steps"][0]["label"] == "object types: item"
    assert summary["general"]["num_events"] == 5


def test_push_then_pop_restores_base(client, session):
    client.post(
        f"/api/v1/sessions/{session}/filters",
        json={"kind": "type-subset", "types": ["item"]},
    )
    summary = client.delete(f"/api/v1/sessions/{session}/filters/0").json()
    assert summary["general"]["num_events"] == 8
    assert summary["chain"]["steps"] == []


def test_pop_middle_step(client, session):
    filters = [
        {"kind": "type-subset", "types": ["item"]},
        {"kind": "activity-subset", "activities": ["place order", "create package"]},
        {"kind": "end-activity", "activities": ["create package"]},
    ]
    for body in filters:
        response = client.post(f"/api/v1/sessions/{session}/filters", json=body)
        assert response.status_code == 200
    summary = client.delete(f"/api/v1/sessions/{session}/filters/1").json()
    assert [s["kind"] for s in summary["chain"]["steps"]] == [
        "type-subset",
        "end-activity",
    ]
    # replay of the remaining steps from base: items ending in create package
    assert summary["general"]["num_events"] == 5
    assert summary["general"]["num_unique_objects"] == 2


def test_bad_criterion_rejected(client, session):
    response = client.post(
        f"/api/v1/sessions/{session}/filters", json={"kind": "wat"}
    )
    assert response.status_code == 400
    assert response.json()["code"] == "bad-criterion"
    # chain unchanged
    assert client.get(f"/api/v1/sessions/{session}/general").json()["num_events"] == 8


def test_bad_pop_index(client, session):
    response = client.delete(f"/api/v1/sessions/{session}/filters/5")
    assert response.status_code == 400
    assert response.json()["code"] == "bad-step-index"


def test_model_endpoint(client, session):
    doc = client.get(f"/api/v1/sessions/{session}/model?metric=UO").json()
    # six distinct activities over four type-colored edge families
    assert len(doc["activities"]) == 6
    assert len(doc["object_types"]) == 4
    assert doc["max_node_value"] == 4


def test_model_thresholds_exclude_everything(client, session):
    doc = client.get(
        f"/api/v1/sessions/{session}/model?metric=UO&min_node=999"
    ).json()
    assert doc["activities"] == []
    assert doc["edges"] == []
    # slider maxima still reflect the unfiltered model
    assert doc["max_node_value"] == 4


def test_model_node_threshold_3(client, session):
    doc = client.get(
        f"/api/v1/sessions/{session}/model?metric=UO&min_node=3"
    ).json()
    assert [a["name"] for a in doc["activities"]] == [
        "create package",
        "load package",
        "place order",
    ]


def test_model_is_deterministic(client, session):
    url = f"/api/v1/sessions/{session}/model?metric=TO&min_node=1&min_edge=1"
    assert client.get(url).content == client.get(url).content


def test_bad_metric(client, session):
    response = client.get(f"/api/v1/sessions/{session}/model?metric=XX")
    assert response.status_code == 400


def test_events_page(client, session):
    doc = client.get(f"/api/v1/sessions/{session}/events").json()
    assert [e["id"] for e in doc["events"]] == [
        "e_1", "e_2", "e_3", "e_4", "e_5", "e_6", "e_7", "e_8",
    ]
    assert doc["events"][0]["vmap"]["prepaid-amount"] == 200.0


def test_events_page_object_lifecycle(client, session):
    doc = client.get(f"/api/v1/sessions/{session}/events?object=i_1").json()
    assert [e["id"] for e in doc["events"]] == ["e_1", "e_2", "e_4"]
    missing = client.get(f"/api/v1/sessions/{session}/events?object=zz")
    assert missing.status_code == 404


def test_objects_page(client, session):
    doc = client.get(f"/api/v1/sessions/{session}/objects?type=item").json()
    assert [o["id"] for o in doc["objects"]] == ["i_1", "i_2"]
    assert doc["objects"][0]["duration_seconds"] == 60.0
    assert doc["objects"][0]["trace"] == [
        "place order",
        "check availability",
        "create package",
    ]
    everything = client.get(f"/api/v1/sessions/{session}/objects").json()
    assert len(everything["objects"]) == 6


def test_conformance_endpoints(client, session):
    count = client.get(f"/api/v1/sessions/{session}/conformance/count?zeta=1").json()
    assert any(
        row["activity"] == "place order" and row["object_type"] == "item"
        for row in count["rows"]
    )
    duration = client.get(
        f"/api/v1/sessions/{session}/conformance/duration?zeta=1"
    ).json()
    item_row = next(r for r in duration["rows"] if r["object_type"] == "item")
    assert item_row["mean"] == 60.0 and item_row["stdev"] == 0.0


def test_conformance_apply(client, session):
    summary = client.post(
        f"/api/v1/sessions/{session}/conformance/apply",
        json={"check": "duration", "zeta": 0},
    ).json()
    assert len(summary["chain"]["steps"]) == 1
    assert summary["chain"]["steps"][0]["kind"] == "keep-objects"
    assert "report" in summary


def test_download_round_trip(client, session, golden_json):
    payload = client.get(f"/api/v1/sessions/{session}/download?format=jsonocel")
    assert payload.content == golden_json
    xml = client.get(f"/api/v1/sessions/{session}/download?format=xmlocel")
    assert xml.content.startswith(b"<?xml")


def test_flatten_endpoint(client, session):
    response = client.get(f"/api/v1/sessions/{session}/flatten/item?format=xes")
    assert response.content.count(b"<trace>") == 2
    assert response.content.count(b"<event>") == 6
    missing = client.get(f"/api/v1/sessions/{session}/flatten/invoice")
    assert missing.status_code == 404


def test_replay_consistency(client, session):
    client.post(
        f"/api/v1/sessions/{session}/filters",
        json={"kind": "type-subset", "types": ["item", "package"]},
    )
    model = client.get(f"/api/v1/sessions/{session}/model?metric=UO").content
    stats = client.get(f"/api/v1/sessions/{session}/stats").content
    downloaded = client.get(
        f"/api/v1/sessions/{session}/download?format=jsonocel"
    ).content
    fresh = client.post(
        "/api/v1/sessions", files={"file": ("again", downloaded)}
    ).json()["session_id"]
    assert client.get(f"/api/v1/sessions/{fresh}/model?metric=UO").content == model
    assert client.get(f"/api/v1/sessions/{fresh}/stats").content == stats

"""HTTP ingest endpoint, log store durability, and report byte-identity."""

import json

import pytest
from starlette.testclient import TestClient

from termfix.events import encode_event
from termfix.reports import session_report_json
from termfix.service import LogStore, ServiceSettings, create_app
from termfix.sessions import build_sessions
from termfix.simulator import SimConfig, generate
from termfix.textnorm import default_config

QUERY = (
    '{"type":"query","session_id":"s1","ts_ms":10,"raw_terms":["Armut"],'
    '"fixations":[{"stem":"armut","total_ms":8000,"first_ms":100,"last_ms":8100,'
    '"first_aoi":"result_list","first_field":"title"},'
    '{"stem":"kind","total_ms":2000,"first_ms":50,"last_ms":2050,'
    '"first_aoi":"facets","first_field":"none"}]}'
)
CLICK = (
    '{"type":"click","session_id":"s1","ts_ms":20,"doc_id":"d1",'
    '"title":"Armut heute","keywords":["Armut"]}'
)


@pytest.fixture()
def client(tmp_path):
    settings = ServiceSettings(log_path=tmp_path / "events.jsonl")
    app = create_app(settings)
    with TestClient(app) as c:
        yield c


def post(client, body: str, **kwargs):
    return client.post("/v1/events", content=body.encode("utf-8"), **kwargs)


def test_ingest_happy_path(client):
    r = post(client, QUERY + "\n" + CLICK + "\n")
    assert r.status_code == 202
    assert r.json() == {
        "accepted": 2,
        "rejected": 0,
        "records": 2,
        "first_error": None,
    }


def test_ingest_partial_batch(client):
    body = QUERY + "\n" + CLICK + "\n" + "{broken\n"
    r = post(client, body)
    assert r.status_code == 202
    ack = r.json()
    assert ack["accepted"] == 2
    assert ack["rejected"] == 1
    assert ack["records"] == 3
    assert ack["first_error"] == {"line": 3, "error": "MalformedJson"}


def test_ingest_blank_lines_are_not_records(client):
    r = post(client, "\n\n" + QUERY + "\n\n\n")
    assert r.status_code == 202
    assert r.json()["records"] == 1


def test_ingest_comment_lines_rejected(client):
    # the wire format has no comments; '#' lines only exist in files on disk
    r = post(client, "# header\n" + QUERY + "\n")
    ack = r.json()
    assert r.status_code == 202
    assert ack["rejected"] == 1
    assert ack["first_error"] == {"line": 1, "error": "MalformedJson"}


def test_ingest_first_error_line_number_counts_blanks(client):
    r = post(client, QUERY + "\n\n{broken\n")
    assert r.json()["first_error"]["line"] == 3


def test_ingest_empty_body(client):
    r = post(client, "")
    assert r.status_code == 400
    assert r.json() == {
        "accepted": 0,
        "rejected": 0,
        "records": 0,
        "first_error": None,
    }


def test_ingest_all_rejected(client):
    r = post(client, '{"type":"scroll"}\n{bad\n')
    assert r.status_code == 400
    ack = r.json()
    assert ack["accepted"] == 0 and ack["rejected"] == 2
    assert ack["first_error"] == {"line": 1, "error": "UnknownType"}


def test_invariant_violation_error_name(client):
    bad = QUERY.replace('"total_ms":8000', '"total_ms":0')
    r = post(client, bad + "\n")
    assert r.status_code == 400
    assert r.json()["first_error"]["error"] == "InvariantViolation"


def test_payload_too_large(tmp_path):
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl", max_batch_bytes=64)
    with TestClient(create_app(settings)) as client:
        r = post(client, QUERY + "\n")
        assert r.status_code == 413
        assert r.json()["detail"] == "PayloadTooLarge"


def test_non_utf8_body(client):
    r = client.post("/v1/events", content=b"\xff\xfe{}\n")
    assert r.status_code == 400
    assert r.json()["detail"] == "MalformedBatch"


def test_report_unknown_session(client):
    r = client.get("/v1/sessions/zz/report")
    assert r.status_code == 404
    assert r.json()["detail"] == "UnknownSession"


def test_report_clicks_only_not_admitted(client):
    r = post(client, CLICK + "\n")
    assert r.status_code == 202
    r = client.get("/v1/sessions/s1/report")
    assert r.status_code == 404


def test_report_roundtrip(client):
    post(client, QUERY + "\n" + CLICK + "\n")
    r = client.get("/v1/sessions/s1/report")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("application/json")
    obj = r.json()
    assert obj["session_id"] == "s1"
    assert obj["match"]["found"] == ["armut"]
    assert obj["interest"]["terms"][0]["stem"] == "armut"


def test_report_bytes_equal_offline(tmp_path):
    cfg = SimConfig(seed=29, n_sessions=8)
    events, _ = generate(cfg)
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl")
    norm = default_config()
    with TestClient(create_app(settings)) as client:
        body = "\n".join(encode_event(e) for e in events) + "\n"
        assert post(client, body).status_code == 202
        corpus = build_sessions(events, norm)
        for session in corpus.sessions:
            r = client.get(f"/v1/sessions/{session.session_id}/report")
            assert r.status_code == 200
            assert r.content.decode("utf-8") == session_report_json(session, norm)


def test_append_durability(tmp_path):
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl")
    with TestClient(create_app(settings)) as client:
        post(client, QUERY + "\n{bad\n" + CLICK + "\n")
    on_disk = (tmp_path / "log.jsonl").read_text(encoding="utf-8")
    assert on_disk == QUERY + "\n" + CLICK + "\n"  # only accepted lines land


def test_store_rescan_equivalence(tmp_path):
    path = tmp_path / "log.jsonl"
    store = LogStore(path)
    store.append_lines([("s1", QUERY), ("s1", CLICK)])
    store.append_lines([("s2", QUERY.replace('"s1"', '"s2"'))])
    fresh = LogStore(path)  # cold start over the same file
    assert fresh.session_lines("s1") == store.session_lines("s1") == [QUERY, CLICK]
    assert fresh.session_lines("s2") == store.session_lines("s2")
    assert fresh.session_lines("zz") == []


def test_store_scan_skips_junk(tmp_path):
    path = tmp_path / "log.jsonl"
    path.write_text(
        "# header\n\n" + QUERY + "\nnot json at all\n", encoding="utf-8"
    )
    store = LogStore(path)
    assert store.session_lines("s1") == [QUERY]
    # appends continue after the junk without corrupting offsets
    store.append_lines([("s1", CLICK)])
    assert store.session_lines("s1") == [QUERY, CLICK]


def test_storage_unavailable(tmp_path, monkeypatch):
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl")
    app = create_app(settings)
    with TestClient(app) as client:

        def boom(pairs):
            raise OSError("disk full")

        monkeypatch.setattr(app.state.store, "append_lines", boom)
        r = post(client, QUERY + "\n")
        assert r.status_code == 503
        assert r.json()["detail"] == "StorageUnavailable"


def test_token_auth(tmp_path):
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl", token="sekrit")
    with TestClient(create_app(settings)) as client:
        assert post(client, QUERY + "\n").status_code == 401
        assert (
            post(
                client, QUERY + "\n", headers={"Authorization": "Bearer wrong"}
            ).status_code
            == 401
        )
        assert client.get("/v1/sessions/s1/report").status_code == 401
        ok = post(client, QUERY + "\n", headers={"Authorization": "Bearer sekrit"})
        assert ok.status_code == 202
        r = client.get(
            "/v1/sessions/s1/report", headers={"Authorization": "Bearer sekrit"}
        )
        assert r.status_code == 200


def test_cors_headers(tmp_path):
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl")
    with TestClient(create_app(settings)) as client:
        r = client.options(
            "/v1/events",
            headers={
                "Origin": "https://example.org",
                "Access-Control-Request-Method": "POST",
            },
        )
        assert r.status_code == 200
        assert r.headers["access-control-allow-origin"] == "*"


def test_report_alpha_setting(tmp_path):
    settings = ServiceSettings(log_path=tmp_path / "log.jsonl", alpha=0.05)
    second = (
        '{"type":"query","session_id":"s1","ts_ms":30,"raw_terms":["Armut"],'
        '"fixations":[{"stem":"armut","total_ms":9000,"first_ms":100,"last_ms":9100,'
        '"first_aoi":"result_list","first_field":"title"},'
        '{"stem":"kind","total_ms":2500,"first_ms":50,"last_ms":2550,'
        '"first_aoi":"facets","first_field":"none"},'
        '{"stem":"losig","total_ms":1500,"first_ms":60,"last_ms":1560,'
        '"first_aoi":"facets","first_field":"none"}]}'
    )
    with TestClient(create_app(settings)) as client:
        post(client, QUERY + "\n" + second + "\n")
        obj = client.get("/v1/sessions/s1/report").json()
        assert obj["timing"]["anova"] is not None
        assert obj["timing"]["anova"]["alpha"] == 0.05


def test_settings_defaults():
    s = ServiceSettings(log_path="x.jsonl")
    assert s.max_batch_bytes == 1 << 20
    assert s.cors_origins == ("*",)
    assert s.token is None

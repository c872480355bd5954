import pytest
from fastapi.testclient import TestClient

from transcene import Generator, GeneratorConfig, eval_multi, reward, write_dataset, read_dataset
from transcene.service import create_app
from transcene.transform import value_token


@pytest.fixture(scope="module")
def service(tmp_path_factory):
    out = tmp_path_factory.mktemp("svc_ds")
    cfg = GeneratorConfig(seed=17, split_sizes=(("test", 40),))
    write_dataset(Generator(cfg).generate_splits(), cfg, out)
    dataset = read_dataset(out)
    app = create_app(dataset, store_path=out / "sessions.db", trusted=True)
    return TestClient(app), dataset


def _tokens(T):
    return [{"obj": t.object_id, "value": value_token(t.value)} for t in T]


def test_health(service):
    client, dataset = service
    res = client.get("/health")
    assert res.status_code == 200
    assert res.json()["samples"] == 40


def test_get_sample_hides_reference_by_default(service):
    client, dataset = service
    sample = dataset.all_samples()[0]
    body = client.get(f"/samples/{sample.id}").json()
    assert "transformations" not in body
    assert len(body["objects"]) == 10

    trusted = client.get(f"/samples/{sample.id}", params={"include_reference": True}).json()
    assert trusted["transformations"] == _tokens(sample.reference)

    assert client.get("/samples/nope").status_code == 404
    assert client.get("/samples/nope").json()["code"] == "unknown_sample"


def test_schematic_endpoint(service):
    client, dataset = service
    sample = dataset.all_samples()[0]
    res = client.get(f"/samples/{sample.id}/schematic", params={"state": "initial"})
    assert res.json()["svg"].startswith("<svg")
    res = client.get(f"/samples/{sample.id}/schematic", params={"state": "bogus"})
    assert res.status_code == 400


def test_solution_endpoint(service):
    client, dataset = service
    sample = dataset.all_samples()[3]
    body = client.get(f"/samples/{sample.id}/solution").json()
    assert len(body["transformations"]) == len(sample.reference)


def test_evaluate_matches_library(service):
    client, dataset = service
    samples = dataset.all_samples()[:10]
    payload = {"predictions": [{"id": s.id, "transformations": _tokens(s.reference)} for s in samples]}
    body = client.post("/evaluate", json=payload).json()
    assert body["report"]["Acc"] == 1.0
    lib_scores = [eval_multi(s.reference, s) for s in samples]
    for row, score in zip(body["scores"], lib_scores):
        assert row["distance"] == score.distance
        assert row["strict_correct"] == score.strict_correct


def test_reward_endpoint(service):
    client, dataset = service
    s = dataset.all_samples()[0]
    body = client.post(
        "/reward",
        json={"queries": [{"id": s.id, "transformations": _tokens(s.reference)},
                          {"id": s.id, "transformations": []}], "kind": "corr_and_dist"},
    ).json()
    assert body["rewards"][0] == 1.0
    assert body["rewards"][1] == reward((), s, "corr_and_dist")

    res = client.post("/reward", json={"queries": [], "kind": "bogus"})
    assert res.status_code == 400


def test_stats_endpoint(service):
    client, _ = service
    assert client.get("/stats/test").json()["samples"] == 40
    assert client.get("/stats/all").json()["samples"] == 40
    assert client.get("/stats/unknown").status_code == 404


def test_session_flow(service):
    client, dataset = service
    created = client.post("/sessions", json={"user": "alice", "count": 2, "seed": 9}).json()
    sid = created["id"]
    assert created["total"] == 2

    first = client.get(f"/sessions/{sid}/next").json()
    assert "solution" not in first
    assert first["initial_svg"].startswith("<svg")
    assert len(first["vocabulary"]) == 33
    sample = dataset.get(first["sample"]["id"])
    assert "transformations" not in first["sample"]

    res = client.post(f"/sessions/{sid}/answer", json={"transformations": _tokens(sample.reference),
                                                        "elapsed_ms": 1200.5}).json()
    assert res["score"]["strict_correct"] is True
    assert res["score"]["distance"] == 0
    assert res["reference"] == _tokens(sample.reference)

    second = client.get(f"/sessions/{sid}/next").json()
    sample2 = dataset.get(second["sample"]["id"])
    short = client.post(f"/sessions/{sid}/answer", json={"transformations": []}).json()
    assert short["score"]["distance"] > 0

    report = client.get(f"/sessions/{sid}/report").json()
    assert report["completed"] is True
    assert len(report["answers"]) == 2
    assert report["report"]["count"] == 2
    assert report["answers"][0]["elapsed_ms"] == 1200.5

    # completed sessions reject further answers
    res = client.post(f"/sessions/{sid}/answer", json={"transformations": []})
    assert res.status_code == 409
    assert res.json()["code"] == "session_complete"


def test_malformed_answer_does_not_advance(service):
    client, dataset = service
    sid = client.post("/sessions", json={"user": "bob", "count": 1, "seed": 4}).json()["id"]
    before = client.get(f"/sessions/{sid}/next").json()
    res = client.post(f"/sessions/{sid}/answer", json={"transformations": [{"obj": 0, "value": "sparkly"}]})
    assert res.status_code == 400
    assert res.json()["code"] == "malformed_answer"
    after = client.get(f"/sessions/{sid}/next").json()
    assert after["sample"]["id"] == before["sample"]["id"]


def test_sessions_isolated(service):
    client, _ = service
    a = client.post("/sessions", json={"user": "u1", "count": 1, "seed": 1}).json()["id"]
    b = client.post("/sessions", json={"user": "u2", "count": 1, "seed": 2}).json()["id"]
    client.post(f"/sessions/{a}/answer", json={"transformations": []})
    rb = client.get(f"/sessions/{b}/report").json()
    assert rb["answers"] == []
    assert client.get("/sessions/zzz/report").status_code == 404


def test_practice_session_reveals_solution(service):
    client, dataset = service
    sid = client.post("/sessions", json={"user": "p", "count": 1, "practice": True, "seed": 8}).json()["id"]
    first = client.get(f"/sessions/{sid}/next").json()
    assert "solution" in first and len(first["solution"]) >= 1


def test_untrusted_mode(tmp_path):
    cfg = GeneratorConfig(seed=23, split_sizes=(("test", 5),))
    write_dataset(Generator(cfg).generate_splits(), cfg, tmp_path)
    app = create_app(read_dataset(tmp_path), store_path=tmp_path / "s.db", trusted=False)
    client = TestClient(app)
    sample_id = read_dataset(tmp_path).all_samples()[0].id
    body = client.get(f"/samples/{sample_id}", params={"include_reference": True}).json()
    assert "transformations" not in body
    assert client.get(f"/samples/{sample_id}/solution").status_code == 404


def test_sessions_survive_restart(tmp_path):
    cfg = GeneratorConfig(seed=29, split_sizes=(("test", 5),))
    write_dataset(Generator(cfg).generate_splits(), cfg, tmp_path)
    dataset = read_dataset(tmp_path)
    store = tmp_path / "sessions.db"
    client1 = TestClient(create_app(dataset, store_path=store, trusted=True))
    sid = client1.post("/sessions", json={"user": "z", "count": 1, "seed": 0}).json()["id"]
    client2 = TestClient(create_app(dataset, store_path=store, trusted=True))
    assert client2.get(f"/sessions/{sid}/report").json()["id"] == sid

import pytest
from fastapi.testclient import TestClient

from chaoskit import __version__
from chaoskit.main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "version": __version__}


def test_zoo(client):
    systems = client.get("/api/zoo").json()["systems"]
    assert len(systems) == 9
    assert {"name": "bipartite_3", "kind": "matrix", "alphabet_size": 3, "provenance": "matrix"} in systems


class TestCheck:
    def test_zoo_system(self, client):
        response = client.post("/api/check", json={"zoo": "golden_mean", "options": {"periodic_counts": 2}})
        assert response.status_code == 200
        body = response.json()
        assert body["periodic_counts"] == {"1": 1, "2": 3}
        assert body["dichotomy"]["dichotomy"] == "sensitive"

    def test_inline_definition(self, client):
        response = client.post("/api/check", json={"definition": {"kind": "forbidden_words", "forbidden": ["11"]}})
        assert response.status_code == 200
        assert response.json()["system"]["name"] == "forbidden_words"

    def test_definition_without_kind(self, client):
        definition = {"alphabet": 2, "matrix": [[1, 1], [1, 0]]}
        response = client.post("/api/check", json={"definition": definition, "options": {"periodic_counts": 3}})
        assert response.status_code == 200
        assert response.json()["periodic_counts"] == {"1": 1, "2": 3, "3": 4}

    def test_one_source_only(self, client):
        response = client.post("/api/check", json={"zoo": "golden_mean", "definition": {"kind": "full_shift"}})
        assert response.status_code == 422

    def test_hypothesis_failure(self, client):
        response = client.post("/api/check", json={"zoo": "two_loops", "options": {"scramble": {}}})
        assert response.status_code == 422
        assert response.json()["error"] == "NotIrreducible"

    def test_unknown_zoo_name(self, client):
        response = client.post("/api/check", json={"zoo": "nosuch"})
        assert response.status_code == 400
        assert response.json()["error"] == "SystemSpecError"


class TestTrace:
    def test_certificate(self, client):
        payload = {"zoo": "full_shift_2", "delta": "1/4", "entries": ["0110(0)", "110(1)", "101(0)"]}
        response = client.post("/api/trace", json=payload)
        assert response.status_code == 200
        body = response.json()
        assert body["traced"] == "01101(0)"
        assert body["distances"] == ["1/16", "1/16", "0"]
        assert body["verified"]

    def test_delta_too_large(self, client):
        payload = {"zoo": "full_shift_2", "delta": "1/2", "entries": ["(0)"]}
        response = client.post("/api/trace", json=payload)
        assert response.status_code == 400
        assert response.json()["error"] == "DeltaTooLarge"


class TestTuples:
    def test_classify(self, client):
        payload = {"zoo": "full_shift_2", "points": ["(0)", "(1)"], "eps": "1/2", "delta": "1/2"}
        response = client.post("/api/classify-tuple", json=payload)
        assert response.status_code == 200
        verdicts = {v["name"]: v["holds"] for v in response.json()["verdicts"]}
        assert verdicts["eps_distal"]
        assert not verdicts["eps_asymptotic"]
        assert not verdicts["dist_scrambled"]

    def test_build_scrambled(self, client):
        response = client.post("/api/build-scrambled", json={"zoo": "bipartite_3", "n": 2})
        assert response.status_code == 200
        body = response.json()
        assert body["route"] == "periodic_decomposition"
        assert body["delta"] == "1/4"
        assert body["targets"]["targets"] == ["(01)", "(02)"]
        assert "plan" not in body

    def test_build_scrambled_on_a_cycle(self, client):
        response = client.post("/api/build-scrambled", json={"zoo": "even_period_cycle"})
        assert response.status_code == 422
        assert response.json()["error"] == "SingleCycle"

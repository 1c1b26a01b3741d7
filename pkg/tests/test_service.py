from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from bdg.calculus import proof_to_json
from bdg.game import game_to_json
from bdg.instances import HANDCRAFTED, schema_instance
from bdg.jsonio import refutation_to_json
from bdg.service import app
from support import micro_game


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def _refutation_body(pr) -> dict:
    return {"pair": refutation_to_json(pr), "proof": proof_to_json(pr.refutation)}


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_game_endpoints(client):
    g = game_to_json(micro_game(3, 3, 1))
    w = client.post("/solve", json=g).json()["winner"]
    found = client.post("/find-strategy", json={"game": g, "player": w}).json()
    if found["found"]:
        body = {"game": g, "strategy": found["strategy"]}
        assert client.post("/verify-strategy", json=body).json()["ok"] is True
    rt = client.post("/roundtrip", json=g).json()
    assert rt["verdict"] == "ok"


def test_proof_endpoints(client):
    g = game_to_json(micro_game(8, 2, 2))
    out = client.post("/game2proof", json=g).json()
    assert client.post("/check-proof", json={"proof": out["proof"]}).json()["ok"] is True
    sat = client.post("/sat", json=out["pair"]["cnf"]).json()
    assert sat["sat"] is False
    body = _refutation_body(HANDCRAFTED["sat_x_side"](2))
    assert client.post("/proof-roundtrip", json=body).json()["verdict"] == "ok"
    body = _refutation_body(schema_instance("threshold", 2))
    assert client.post("/sweep", json=body).json()["verdict"] == "ok"


def test_equivalence_endpoints(client):
    g = game_to_json(micro_game(4, 3, 2))
    pl = client.post("/d2topl?expand=true", json=g).json()
    won = client.post("/plsolve", json={"pl": pl}).json()
    assert won["winner"] in ("Black", "White")
    assert client.post("/solve", json=g).json()["winner"] == won["player"]
    circ = {"root": 0, "gates": [{"op": "or", "in": [1, 2]}], "leaves": {"1": "x1", "2": "0"}}
    d1 = client.post("/circuittod1", json=circ).json()
    back = client.post("/d1tocircuit", json=d1).json()
    assert "gates" in back


def test_invalid_input_is_rejected(client):
    assert client.post("/solve", json={"n": 1}).status_code == 422
    bad = {"proof": {"cls": "Pi2", "lines": [], "steps": []}}
    assert client.post("/check-proof", json=bad).status_code == 422

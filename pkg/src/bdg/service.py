"""HTTP front end.  Run with ``uvicorn bdg.service:app``."""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import equivalences as eq
from .calculus import check_proof, proof_from_json, proof_to_json
from .errors import BdgError
from .game import (I, II, find_positional, game_from_json, solve_bruteforce, strategy_from_json,
                   strategy_to_json, verify_positional)
from .jsonio import (assignment_from_json, cnf_of_pair, pair_to_json, plain, refutation_from_json,
                     schema_from_json, schema_to_json)

app = FastAPI(title="bdg", version="0.1.0")


class GameIn(BaseModel):
    n: int = Field(ge=2)
    k: int = Field(ge=1)
    alphabet: list[str]
    fwd: list[list[list[int]]]
    bwd: list[list[list[int]]]
    winning: list[int]


class StrategyIn(BaseModel):
    game: GameIn
    strategy: dict[str, Any]


class ProofIn(BaseModel):
    proof: dict[str, Any]


class RefutationIn(BaseModel):
    pair: dict[str, Any]
    proof: dict[str, Any]


class CnfIn(BaseModel):
    clauses: list[list[int]]
    partition: dict[str, list[int]] = {}


class FindIn(BaseModel):
    game: GameIn
    player: Literal["I", "II"]


class PointLineIn(BaseModel):
    pl: dict[str, Any]
    mode: Literal["minimax", "functions"] = "minimax"
    assignment: dict[str, bool] = {}


class Verdict(BaseModel):
    ok: bool
    detail: dict[str, Any] = {}


def _guard(fn):
    try:
        return fn()
    except (BdgError, KeyError, TypeError, ValueError) as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}") from e


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/check-proof", response_model=Verdict)
def check(body: ProofIn) -> Verdict:
    res = _guard(lambda: check_proof(proof_from_json(body.proof)))
    return Verdict(ok=res.ok, detail={"index": res.index, "error": res.error})


@app.post("/solve")
def solve(body: GameIn) -> dict:
    return {"winner": _guard(lambda: solve_bruteforce(game_from_json(body.model_dump()), None))}


@app.post("/verify-strategy", response_model=Verdict)
def verify(body: StrategyIn) -> Verdict:
    g = game_from_json(body.game.model_dump())
    ok, _ = _guard(lambda: verify_positional(g, strategy_from_json(body.strategy)))
    return Verdict(ok=ok)


@app.post("/find-strategy")
def find(body: FindIn) -> dict:
    s = _guard(lambda: find_positional(game_from_json(body.game.model_dump()), body.player))
    return {"found": s is not None, "strategy": strategy_to_json(s) if s else None}


@app.post("/game2proof")
def game2proof(body: GameIn) -> dict:
    from .game_to_proof import build_refutation, encode_game

    def run():
        g = game_from_json(body.model_dump())
        pair = encode_game(g)
        return {"pair": pair_to_json(pair), "proof": proof_to_json(build_refutation(g, pair))}
    return plain(_guard(run))


@app.post("/sat")
def sat(body: CnfIn) -> dict:
    from .harness import sat_solve
    m = _guard(lambda: sat_solve(cnf_of_pair(body.model_dump())))
    return {"sat": m is not None, "model": {str(k): v for k, v in (m or {}).items()}}


@app.post("/roundtrip")
def roundtrip(body: GameIn) -> dict:
    from .harness import run_pipeline
    return plain(run_pipeline("game-roundtrip", game_from_json(body.model_dump())).to_json())


@app.post("/proof-roundtrip")
def proof_roundtrip(body: RefutationIn) -> dict:
    from .harness import run_pipeline
    pr = _guard(lambda: refutation_from_json(body.pair, body.proof))
    return plain(run_pipeline("proof-roundtrip", pr).to_json())


@app.post("/sweep")
def sweep(body: RefutationIn) -> dict:
    from .harness import run_pipeline
    pr = _guard(lambda: refutation_from_json(body.pair, body.proof))
    return plain(run_pipeline("interpolation-sweep", pr).to_json())


@app.post("/d1tocircuit")
def d1tocircuit(body: dict[str, Any]) -> dict:
    return _guard(lambda: eq.circuit_to_json(eq.d1_to_circuit(schema_from_json(body))))


@app.post("/circuittod1")
def circuittod1(body: dict[str, Any]) -> dict:
    return plain(_guard(lambda: schema_to_json(eq.circuit_to_d1(eq.circuit_from_json(body)))))


@app.post("/d2topl")
def d2topl(body: dict[str, Any], expand: bool = False) -> dict:
    def run():
        g = schema_from_json(body) if "labels" in body else game_from_json(body)
        plg = eq.d2_to_pointline(g)
        return eq.pl_to_json(eq.expand_gadgets(plg) if expand else plg)
    return _guard(run)


@app.post("/plsolve")
def plsolve(body: PointLineIn) -> dict:
    def run():
        plg = eq.pl_from_json(body.pl)
        a = assignment_from_json(body.assignment)
        if body.mode == "functions":
            nf = eq.pl_solve(plg, "functions")
            return {"root_value": nf.root_value(eq.root_values(plg, a))}
        w = eq.pl_solve(plg, "minimax", a)
        return {"winner": w, "player": I if w == eq.BLACK else II}
    return _guard(run)

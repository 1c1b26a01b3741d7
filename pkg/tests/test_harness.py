from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from bdg.errors import TooLarge
from bdg.formula import Cnf, cnf_true
from bdg.game import I, II
from bdg.harness import all_models, restrict, run_pipeline, sat_solve, side_clauses
from bdg.instances import HANDCRAFTED, schema_instance
from support import brute_models, brute_sat, clause_lists, micro_game


@settings(max_examples=400, deadline=None)
@given(clause_lists)
def test_dpll_agrees_with_exhaustive_search(clauses):
    want = brute_sat(clauses)
    for mode in ("dpll", "exhaustive"):
        got = sat_solve(clauses, mode=mode)
        assert (got is None) == (want is None)
        if got is not None:
            assert cnf_true(clauses, got)


@settings(max_examples=100, deadline=None)
@given(clause_lists)
def test_model_enumeration_is_complete(clauses):
    vs = sorted({abs(x) for c in clauses for x in c})
    got = sorted(tuple(sorted(m.items())) for m in all_models(clauses, vs))
    want = sorted(tuple(sorted(m.items())) for m in brute_models(clauses, vs))
    assert got == want


def test_guards():
    with pytest.raises(TooLarge):
        sat_solve([(v,) for v in range(1, 20)], mode="exhaustive")
    with pytest.raises(TooLarge):
        sat_solve([(v,) for v in range(1, 20)], max_vars=5)
    with pytest.raises(TooLarge):
        list(all_models([(1, 2, 3)], limit=2))
    assert sat_solve([(1,), ()]) is None


def test_restrict_and_sides():
    assert restrict([(1, 2), (-1, 3)], {1: True}) == [(3,)]
    assert restrict([(1,)], {1: False}) is None
    cnf = Cnf([(1, 2), (3,), (1, 3)], {1: "x", 2: "x", 3: "y"})
    assert side_clauses(cnf, I) == [(1, 2)]
    assert side_clauses(cnf, II) == [(3,)]


@pytest.mark.parametrize("k,n", [(1, 3), (2, 2)])
def test_game_roundtrip_report(k, n):
    rep = run_pipeline("game-roundtrip", micro_game(5, n, k), seed=5)
    assert rep.ok, rep.verdict
    names = [s.name for s in rep.stages]
    assert names[:4] == ["encode_game", "build_refutation", "check_proof", "sat_oracle"]
    d = json.loads(json.dumps(rep.to_json(timings=False)))
    assert d["kind"] == "game-roundtrip" and d["seed"] == 5
    assert all("seconds" not in s for s in d["stages"])


def test_proof_roundtrip_report_caps_models():
    rep = run_pipeline("proof-roundtrip", HANDCRAFTED["sat_y_side"](2), model_limit=2)
    assert rep.ok
    ext = {s.name: s.detail for s in rep.stages if s.name.startswith("extract")}
    assert ext["extract_abridged_II"] == {"models": 2, "capped": True}
    assert ext["extract_abridged_I"]["models"] == 0


def test_sweep_report():
    rep = run_pipeline("interpolation-sweep", schema_instance("some_one", 2))
    assert rep.ok and rep.sizes["assignments"] == 8


def test_failed_stage_stops_the_pipeline():
    pr = HANDCRAFTED["two_chains"](2)
    bad = type(pr)(pr.refutation, Cnf([(1,), (2,)], {1: "x", 2: "y"}))
    rep = run_pipeline("proof-roundtrip", bad)
    assert not rep.ok and rep.verdict == "failed at sat_oracle"
    with pytest.raises(ValueError):
        run_pipeline("nothing", None)

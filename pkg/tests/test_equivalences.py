from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings

from bdg.equivalences import (BLACK, NONE, WHITE, MonotoneCircuit, PointLineGame, circuit_from_json,
                              circuit_to_d1, circuit_to_json, d1_to_circuit, d2_strategy_to_pl,
                              d2_to_pointline, eval_circuit, expand_gadgets, node_functions,
                              pl_from_json, pl_solve, pl_strategy_to_d2, pl_to_json,
                              pointline_to_d2, root_values)
from bdg.errors import NonStandardForm, UnboundInput
from bdg.game import I, II, GameSchema, find_positional, schema_instantiate, solve_bruteforce
from bdg.generalized import _Search, plays_against, solve_generalized
from support import rand_game, seeds

VARS = ("x1", "x2", "x3")


def rand_circuit(rng: random.Random, gates: int = 6) -> MonotoneCircuit:
    leaves = {f"v{i}": lab for i, lab in enumerate(VARS + ("0", "1"))}
    ids = list(leaves)
    gs = {}
    for i in range(gates):
        ins = tuple(rng.sample(ids, rng.randint(1, min(3, len(ids)))))
        gs[f"g{i}"] = (rng.choice(("or", "and")), ins)
        ids.append(f"g{i}")
    root = ids[-1]
    # keep only what the root reads
    keep, stack = set(), [root]
    while stack:
        v = stack.pop()
        if v not in keep:
            keep.add(v)
            stack.extend(gs.get(v, ("", ()))[1])
    return MonotoneCircuit({v: g for v, g in gs.items() if v in keep},
                           {v: lab for v, lab in leaves.items() if v in keep}, root)


def eval_oracle(c: MonotoneCircuit, a) -> bool:
    def val(v):
        if v in c.leaves:
            lab = c.leaves[v]
            return lab == "1" if lab in ("0", "1") else a[lab]
        op, ins = c.gates[v]
        vals = [val(u) for u in ins]
        return all(vals) if op == "and" else any(vals)
    return val(c.root)


def _assignments():
    for bits in itertools.product((False, True), repeat=len(VARS)):
        yield dict(zip(VARS, bits))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_circuit_evaluation_and_monotonicity(seed):
    c = rand_circuit(random.Random(seed))
    for a in _assignments():
        v = eval_circuit(c, a)
        assert v == eval_oracle(c, a)
        for x in VARS:
            if not a[x]:
                assert not v or eval_circuit(c, {**a, x: True})


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_depth_one_schema_to_circuit(seed):
    rng = random.Random(seed)
    m = rng.randint(2, 4)
    g = rand_game(rng, rng.randint(2, 5), 1, m)
    s = GameSchema(g, {a: rng.choice(("0", "1") + VARS) for a in range(m)})
    c = d1_to_circuit(s)
    for a in _assignments():
        assert eval_circuit(c, a) == (solve_bruteforce(schema_instantiate(s, a)) == I)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_circuit_to_depth_one_schema(seed):
    c = rand_circuit(random.Random(seed))
    s = circuit_to_d1(c)
    assert s.game.k == 1
    c2 = circuit_from_json(circuit_to_json(c))
    for a in _assignments():
        w = solve_bruteforce(schema_instantiate(s, a), max_moves=None)
        assert (w == I) == eval_circuit(c, a) == eval_circuit(c2, a)


def test_circuit_errors():
    with pytest.raises(ValueError):
        MonotoneCircuit({"g": ("xor", ("a",))}, {"a": "x1"}, "g")
    with pytest.raises(ValueError):
        MonotoneCircuit({"g": ("or", ("b",))}, {"a": "x1"}, "g")
    c = MonotoneCircuit({"g": ("or", ("a",))}, {"a": "x1"}, "g")
    with pytest.raises(UnboundInput):
        eval_circuit(c, {})


def test_single_node_point_line_game():
    plg = PointLineGame("r", {"r": NONE}, {"r": ("p",)}, {}, {}, {"p": "x"})
    assert pl_solve(plg, assignment={"x": True}) == BLACK
    assert pl_solve(plg, assignment={"x": False}) == WHITE
    assert node_functions(plg).root_value({"p": True})
    gg = pointline_to_d2(plg)
    assert solve_generalized(gg, {"x": True}) == I
    assert solve_generalized(gg, {"x": False}) == II


def test_gadget_expansion_is_identity_without_gates():
    rng = random.Random(11)
    hits = 0
    for _ in range(60):
        plg = d2_to_pointline(rand_game(rng, rng.randint(2, 3), 2, 2))
        if plg.is_standard():
            hits += 1
            assert pl_to_json(expand_gadgets(plg)) == pl_to_json(plg)
    assert hits > 0


def test_round_two_of_the_point_line_game_is_forced():
    rng = random.Random(5)
    for _ in range(30):
        plg = expand_gadgets(d2_to_pointline(rand_game(rng, 3, 2, 2)))
        gg = pointline_to_d2(plg)

        def on_decision(d, key, branch):
            assert key[0] == 1
            return any(branch(t) for t in range(len(d.options)))

        _Search(gg, lambda lab: lab == "1", on_decision).start()


def test_gated_game_needs_expansion():
    rng = random.Random(2)
    for _ in range(50):
        plg = d2_to_pointline(rand_game(rng, 3, 2, 2))
        if not plg.is_standard():
            with pytest.raises(NonStandardForm):
                pointline_to_d2(plg)
            return
    pytest.fail("no gated instance generated")


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_depth_two_point_line_round_trip(seed):
    rng = random.Random(seed)
    g = rand_game(rng, rng.randint(2, 3), 2, rng.randint(2, 3))
    w = solve_bruteforce(g)
    plg = d2_to_pointline(g)
    assert (pl_solve(plg) == BLACK) == (w == I)
    assert node_functions(plg).root_value(root_values(plg)) == (w == I)
    ex = expand_gadgets(plg)
    assert ex.is_standard()
    assert pl_solve(ex) == pl_solve(pl_from_json(pl_to_json(ex))) == pl_solve(plg)
    gg = pointline_to_d2(ex)
    assert solve_generalized(gg) == w
    s = find_positional(g, w)
    if s is not None:
        col = BLACK if w == I else WHITE
        ch = d2_strategy_to_pl(g, ex, s)
        assert pl_solve(ex, "play", strategies={col: ch}) == col
        assert plays_against(gg, pl_strategy_to_d2(ex, col, ch))[0]

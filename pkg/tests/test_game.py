from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from bdg.errors import IncompatibleStrategy, UnboundLabel
from bdg.game import (I, II, Game, GameSchema, PositionalStrategy, check_compatible,
                      enumerate_strategies, find_positional, game_from_json, game_to_json, owner,
                      run_play, schedule, schema_instantiate, solve_bruteforce, solve_k1,
                      strategy_chooser, strategy_from_json, strategy_to_json, verify_positional,
                      winning_plays_all)
from support import rand_game, seeds


def minimax_oracle(g: Game) -> str:
    """Plain recursion over the move list, kept apart from the library solver."""
    moves = list(schedule(g.n, g.k))
    rows = {}

    def cell(r, j):
        if r == 0 or (r, j) not in rows:
            return g.lam
        return rows[(r, j)]

    def rec(t):
        if t == len(moves):
            last = g.n if g.k % 2 else 1
            return g.is_winning(rows[(g.k, last)])
        r, j, s = moves[t]
        fresh = (r, s) not in rows
        if fresh:
            # a round starts by copying the cell above its first column
            rows[(r, s)] = cell(r - 1, s)
        right = r % 2 == 1
        a, b = (rows[(r, s)], cell(r - 1, j)) if right else (cell(r - 1, j), rows[(r, s)])
        vals = []
        for h in (0, 1):
            rows[(r, j)] = g.T(right, h, a, b)
            vals.append(rec(t + 1))
            del rows[(r, j)]
        if fresh:
            del rows[(r, s)]
        return any(vals) if owner(s) == I else all(vals)

    return I if rec(0) else II


def test_round_directions_and_owners():
    assert list(schedule(3, 2)) == [(1, 2, 1), (1, 3, 2), (2, 2, 3), (2, 1, 2)]
    assert owner(1) == I and owner(2) == II and owner(3) == I


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_minimax_matches_oracle(seed):
    rng = random.Random(seed)
    g = rand_game(rng, rng.randint(2, 4), rng.randint(1, 3), rng.randint(2, 3))
    assert solve_bruteforce(g, max_moves=None) == minimax_oracle(g)
    if g.k == 1:
        assert solve_k1(g) == minimax_oracle(g)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_verifier_agrees_with_all_plays(seed):
    rng = random.Random(seed)
    g = rand_game(rng, rng.randint(2, 3), rng.randint(1, 2))
    w = minimax_oracle(g)
    for p in (I, II):
        for s in enumerate_strategies(g, p):
            ok, _ = verify_positional(g, s)
            assert ok == winning_plays_all(g, s)
            if ok:
                assert p == w


def test_found_strategy_wins_every_play():
    rng = random.Random(4)
    for _ in range(30):
        g = rand_game(rng, 3, 2)
        w = solve_bruteforce(g)
        s = find_positional(g, w)
        if s is None:
            continue
        ok, _ = verify_positional(g, s)
        assert ok
        for opp in enumerate_strategies(g, II if w == I else I):
            mine, theirs = strategy_chooser(g, s), strategy_chooser(g, opp)
            won, hist = run_play(g, *((mine, theirs) if w == I else (theirs, mine)))
            assert won == w
            assert len(hist.rows()) == g.k


def test_strategy_compatibility_checks():
    g = Game.dense(3, 1, 2, [[[0, 0], [1, 1]], [[1, 1], [1, 1]]], [[[0, 0]] * 2] * 2, [1])
    with pytest.raises(IncompatibleStrategy):
        check_compatible(g, PositionalStrategy(I, {(1, 2, 0, 0): 1}))
    with pytest.raises(IncompatibleStrategy):
        check_compatible(g, PositionalStrategy(I, {(1, 1, 0, 0): 7}))
    with pytest.raises(IncompatibleStrategy):
        verify_positional(g, PositionalStrategy(I, {}))


def test_schema_instantiation():
    g = Game.dense(2, 1, 2, [[[0, 0], [0, 0]], [[1, 1], [1, 1]]], [[[0, 0]] * 2] * 2, [])
    s = GameSchema(g, {0: "x", 1: "0"})
    assert s.variables == ("x",)
    assert solve_bruteforce(schema_instantiate(s, {"x": True})) == I
    assert solve_bruteforce(schema_instantiate(s, {"x": False})) == II
    with pytest.raises(UnboundLabel):
        schema_instantiate(s, {})
    with pytest.raises(UnboundLabel):
        GameSchema(g, {0: "x"})


def test_json_round_trip():
    rng = random.Random(9)
    g = rand_game(rng, 3, 2, 3)
    h = game_from_json(game_to_json(g))
    assert game_to_json(h) == game_to_json(g)
    s = find_positional(g, solve_bruteforce(g))
    if s is not None:
        t = strategy_from_json(strategy_to_json(s))
        assert t.table == s.table and verify_positional(g, t)[0]


def test_bad_dimensions():
    with pytest.raises(ValueError):
        Game.dense(1, 1, 2, [[[0, 0]] * 2] * 2, [[[0, 0]] * 2] * 2, [])

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from bdg.calculus import check_proof
from bdg.errors import DepthOverflow, NotWinning
from bdg.formula import FormulaClass, cnf_true, pad_cnf
from bdg.game import I, II, PositionalStrategy, find_positional, solve_bruteforce
from bdg.game_to_proof import DeltaContext, build_refutation, encode_game, strategy_witness
from bdg.harness import sat_solve
from bdg.resolution import embed_resolution, tree_refutation
from support import brute_sat, clause_lists, micro_game, rand_game, seeds


@settings(max_examples=120, deadline=None)
@given(clause_lists)
def test_tree_refutation_exists_exactly_for_unsat(clauses):
    t = tree_refutation(clauses)
    assert (t is None) == (brute_sat(clauses) is not None)
    if t is not None:
        assert t.clause == ()


@pytest.mark.parametrize("depth", [2, 3, 4])
def test_embedded_resolution_checks(depth):
    cls = [(1, 2), (-1, 2), (1, -2), (-1, -2, 3), (-3,)]
    p = embed_resolution(cls, depth)
    assert check_proof(p)
    assert p.lines[0] == pad_cnf(cls, depth)
    assert p.cls == FormulaClass("Pi", depth)


def test_embedding_bounds():
    with pytest.raises(DepthOverflow):
        embed_resolution([(1,), (-1,)], 5)
    with pytest.raises(ValueError):
        embed_resolution([(1, 2)], 2)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_encoding_sides_are_never_both_satisfiable(seed):
    rng = random.Random(seed)
    g = rand_game(rng, rng.randint(2, 3), rng.randint(1, 2))
    pair = encode_game(g)
    a, b = sat_solve(pair.phi), sat_solve(pair.psi)
    assert a is None or b is None
    w = solve_bruteforce(g)
    # the winner's side is exactly the satisfiable one when a positional winner exists
    s = find_positional(g, w)
    if s is not None:
        assert (a if w == I else b) is not None


def test_witness_satisfies_the_winner_side():
    for seed in range(12):
        g = micro_game(seed, 3, 1 + seed % 2)
        pair = encode_game(g)
        w = solve_bruteforce(g)
        s = find_positional(g, w)
        if s is None:
            continue
        a = strategy_witness(g, s, pair)
        assert cnf_true(pair.phi if w == I else pair.psi, a)


def test_witness_rejects_losing_strategy():
    g = micro_game(1, 2, 1)
    w = solve_bruteforce(g)
    loser = II if w == I else I
    with pytest.raises(NotWinning):
        strategy_witness(g, PositionalStrategy(loser, {}, rule=lambda r, s, a, b: g.T(r % 2 == 1, 0, a, b)))


@pytest.mark.parametrize("k,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_refutation_checks_and_starts_at_the_padded_cnf(k, n):
    g = micro_game(40 + 7 * k + n, n, k)
    pair = encode_game(g)
    p = build_refutation(g, pair)
    assert check_proof(p)
    assert p.lines[0] == pad_cnf(pair.clauses, k + 1)
    if k >= 2:
        ctx = DeltaContext(pair)
        for i, (li, pos) in p.meta["marks"].items():
            assert [p.lines[li].kids[j] for j in pos] == ctx.conjuncts(i)

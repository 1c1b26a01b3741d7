from __future__ import annotations

import itertools

import pytest

from bdg.errors import NotSatisfying, TooLarge
from bdg.formula import Cnf
from bdg.game import I, II
from bdg.generalized import plays_against, solve_generalized
from bdg.instances import HANDCRAFTED, SCHEMAS, schema_instance
from bdg.proof_to_game import (PartitionedRefutation, abridge, build_monotone_schema,
                               build_traversal_game, extract_strategy, verify_extracted)
from bdg.harness import side_clauses
from bdg.resolution import embed_resolution
from support import brute_models


def _models(pr, p):
    side = side_clauses(pr.cnf, p, pr.clause_owner)
    vs = sorted({abs(x) for c in side for x in c})
    return brute_models(side, vs)


@pytest.mark.parametrize("name", sorted(HANDCRAFTED))
@pytest.mark.parametrize("depth", [2, 3])
def test_handcrafted_extraction(name, depth):
    pr = HANDCRAFTED[name](depth)
    t = build_traversal_game(pr)
    ab = abridge(t)
    assert ab.rounds == t.rounds - 1
    for game in (t, ab):
        for p in (I, II):
            for a in _models(pr, p)[:16]:
                st = extract_strategy(game, a, p)
                assert plays_against(game.game, st)[0]
                if game.rounds <= 2:
                    assert verify_extracted(game, st)
                    assert solve_generalized(game.game) == p


def test_extraction_needs_a_model():
    pr = HANDCRAFTED["two_chains"](2)
    t = abridge(build_traversal_game(pr))
    with pytest.raises(NotSatisfying):
        extract_strategy(t, {1: True, 2: True}, I)


def test_provenance_covers_reachable_cells():
    pr = HANDCRAFTED["sat_y_side"](2)
    t = abridge(build_traversal_game(pr))
    states = t.materialize()
    assert (1, 1, t.game.start) in states
    for (r, c, x), (line, path, direction, phase) in states.items():
        assert line == t.line_of(c)
        assert direction == ("left" if r % 2 else "right")
        assert phase in ("node", "hit")
    with pytest.raises(TooLarge):
        t.materialize(max_states=3)


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_monotone_schema_matches_interpolation(name):
    pr = schema_instance(name, 2)
    ms = build_monotone_schema(pr)
    zs = sorted(ms.zprime)
    won = {}
    for bits in itertools.product((False, True), repeat=len(zs)):
        za = dict(zip(zs, bits))
        won[bits] = solve_generalized(ms.traversal.game, ms.labels(za)) == I
    # Player I wins exactly when the x side stays satisfiable
    for bits, w in won.items():
        za = dict(zip(zs, bits))
        fixed = [c for c in pr.cnf.clauses
                 if all(pr.cnf.partition.get(abs(x)) in ("x", "z") for x in c)]
        rest = [tuple(x for x in c if abs(x) not in za) for c in fixed
                if not any(abs(x) in za and za[abs(x)] == (x > 0) for x in c)]
        vs = sorted({abs(x) for c in rest for x in c})
        assert w == (all(rest) and bool(brute_models(rest, vs)))
    for bits, w in won.items():
        for i, b in enumerate(bits):
            if not b and w:
                assert won[bits[:i] + (True,) + bits[i + 1:]]


def test_clause_owner_defaults():
    cnf = Cnf([(1, 2), (3,), (1, 3)], {1: "x", 2: "x", 3: "y"})
    pr = PartitionedRefutation(embed_resolution([(1,), (-1,)], 2), cnf)
    assert pr.clause_owner(0) == I and pr.clause_owner(1) == II and pr.clause_owner(2) == I

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from bdg.errors import EmptyClause, NotApplicable, NotStratified, UnassignedVariable
from bdg.formula import (AND, OR, Cnf, F, FormulaClass, classify, cnf_from_json, cnf_to_json,
                         cnf_true, conj, core, count_subformulas, disj, dual, evaluate, from_json,
                         lit, neg, pad_cnf, pad_to, to_json, variables, zip_unzip)
from support import assignments, rand_formula, seeds


def _nodes_without_unary(f: F) -> int:
    # written independently of core(): a unary node contributes nothing
    if f.is_leaf:
        return 1
    below = sum(_nodes_without_unary(k) for k in f.kids)
    return below if len(f.kids) == 1 else below + 1


def test_classify_examples():
    f = conj(disj(lit(1), lit(-2)), disj(lit(3)))
    assert classify(f) == FormulaClass("Pi", 2)
    assert classify(disj(f)) == FormulaClass("Sigma", 3)
    assert classify(lit(4)).depth == 0


def test_classify_rejects_non_alternating_and_ragged():
    with pytest.raises(NotStratified):
        classify(conj(conj(lit(1))))
    with pytest.raises(NotStratified):
        classify(conj(disj(lit(1)), lit(2)))


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_negation_is_a_complement_one_level_deeper(seed):
    rng = random.Random(seed)
    f = rand_formula(rng, rng.choice((AND, OR)), rng.randint(1, 3))
    g = neg(f)
    cls = classify(f).dual()
    assert classify(g) == FormulaClass(cls.shape, cls.depth + 1)
    for a in assignments(sorted(variables(f))):
        assert evaluate(g, a) != evaluate(f, a)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_dual_is_an_involution(seed):
    rng = random.Random(seed)
    f = rand_formula(rng, AND, rng.randint(0, 3))
    assert dual(dual(f)) == f


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_subformula_count_matches_independent_count(seed):
    rng = random.Random(seed)
    f = rand_formula(rng, rng.choice((AND, OR)), rng.randint(0, 4), unary=0.5)
    assert count_subformulas(f) == _nodes_without_unary(f)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_padding_preserves_meaning(seed):
    rng = random.Random(seed)
    f = rand_formula(rng, AND, rng.randint(1, 2))
    d = classify(f).depth
    for extra in (1, 2, 3):
        cls = FormulaClass(rng.choice(("Pi", "Sigma")), d + extra)
        try:
            g = pad_to(f, cls)
        except NotApplicable:
            continue
        assert classify(g) == cls and core(g) == core(f)


def test_pad_cnf_evaluates_like_the_clause_list():
    cls = [(1, -2), (3,), (-1, 2, -3)]
    for k in (2, 3, 4, 5):
        f = pad_cnf(cls, k)
        assert classify(f) == FormulaClass("Pi", k)
        for a in assignments([1, 2, 3]):
            assert evaluate(f, a) == cnf_true(cls, a)


def test_pad_cnf_rejects_degenerate_input():
    with pytest.raises(EmptyClause):
        pad_cnf([], 2)
    with pytest.raises(NotApplicable):
        pad_cnf([(1,)], 1)
    with pytest.raises(EmptyClause):
        Cnf([(1,), ()])


def test_zip_unzip_round_trip():
    inner = conj(lit(1), lit(2))
    f = disj(conj(disj(inner)))
    g = zip_unzip(disj(f), (0,), "unzip")
    assert core(g) == core(disj(f))
    assert zip_unzip(g, (0,), "zip") == disj(f)


def test_json_round_trips():
    f = conj(disj(lit(1), lit(-2)), disj(conj(lit(3))))
    assert from_json(to_json(f)) == f
    c = Cnf([(1, -2), (3,)], {1: "x", 2: "y", 3: "z"})
    back = cnf_from_json(cnf_to_json(c))
    assert back.clauses == c.clauses and dict(back.partition) == dict(c.partition)


def test_evaluate_needs_every_variable():
    with pytest.raises(UnassignedVariable):
        evaluate(lit(7), {1: True})

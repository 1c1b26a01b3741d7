from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from bdg.calculus import (Proof, RuleInstance, apply_rule, check_proof, dualize_proof, kid_class,
                          padded, proof_from_json, proof_to_json)
from bdg.errors import RuleError
from bdg.formula import (AND, BOTTOM, OR, F, classify, conj, core, disj, evaluate, lit,
                         variables)
from bdg.macros import cut_premise, mk_cut
from bdg.resolution import embed_resolution
from support import assignments, planted_instance, rand_formula, seeds


def _implies(f, g) -> bool:
    vs = sorted(variables(f) | variables(g)) or [1]
    return all(evaluate(g, a) for a in assignments(vs) if evaluate(f, a))


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_every_applicable_rule_is_sound(seed):
    rng = random.Random(seed)
    got = planted_instance(rng)
    if got is None:
        return
    f, s = got
    try:
        g = apply_rule(f, s)
    except RuleError:
        return
    assert classify(g) == classify(f)
    assert _implies(f, g)


def test_rules_reject_wrong_polarity_and_bad_params():
    f = conj(disj(lit(1), lit(2)), disj(lit(-1), lit(3)))
    with pytest.raises(RuleError):
        apply_rule(f, RuleInstance("Contract", (), pos=0))
    with pytest.raises(RuleError):
        apply_rule(f, RuleInstance("Res", (), split=0, pivot=1))
    with pytest.raises(RuleError):
        apply_rule(f, RuleInstance("Permute", (), perm=(0, 0)))
    with pytest.raises(RuleError):
        apply_rule(f, RuleInstance("Clone", (5,), pos=0))
    with pytest.raises(ValueError):
        RuleInstance("Modus")


def test_resolution_step():
    f = conj(disj(conj(lit(2)), conj(lit(1))), disj(conj(lit(3)), conj(lit(-1))))
    g = apply_rule(f, RuleInstance("Res", (), split=0, pivot=1))
    assert g == conj(disj(conj(lit(2)), padded(BOTTOM, kid_class(f.kids[0])), conj(lit(3))))


def test_check_proof_locates_a_tampered_line():
    p = embed_resolution([(1, 2), (-1, 2), (-2,)], 2)
    assert check_proof(p)
    lines = list(p.lines)
    lines[2] = lines[1]
    bad = check_proof(Proof(p.cls, lines, list(p.steps), dict(p.meta)))
    assert not bad and bad.index == 1


@pytest.mark.parametrize("depth", [2, 3, 4])
def test_dual_proof_checks(depth):
    p = embed_resolution([(1,), (-1, 2), (-2, 3), (-3,)], depth)
    d = dualize_proof(p)
    assert check_proof(d)
    assert d.cls == p.cls.dual()


def test_proof_json_round_trip():
    p = embed_resolution([(1,), (-1,)], 3)
    q = proof_from_json(proof_to_json(p))
    assert q.lines == p.lines and q.steps == p.steps and check_proof(q)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cut_expands_once_per_subformula(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 5)
    c = rand_formula(rng, AND, d - 2) if d > 2 else lit(rng.choice((1, -1)) * rng.randint(1, 4))
    a = [rand_formula(rng, AND, d - 2) for _ in range(rng.randint(0, 2))]
    b = [rand_formula(rng, AND, d - 2) for _ in range(rng.randint(0, 2))]
    prem = cut_premise(a, b, c)
    p = mk_cut(prem)
    assert check_proof(p)
    want = conj(F(OR, tuple(a) + (padded(BOTTOM, kid_class(prem.kids[0])),) + tuple(b)))
    assert p.last == want
    assert p.meta["expansions"] == _tree_size(core(c))


def _tree_size(f) -> int:
    return 1 + sum(_tree_size(k) for k in f.kids)

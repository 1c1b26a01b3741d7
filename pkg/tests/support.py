"""Shared generators for the test-suite."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from bdg.calculus import TAGS, RuleInstance, kid_class, padded
from bdg.formula import AND, BOTTOM, OR, TOPF, F, classify, core, flip, lit, pad_to, replace_raw
from bdg.game import Game


def rand_formula(rng: random.Random, op: str, depth: int, nvars: int = 4, width: int = 3,
                 unary: float = 0.35) -> F:
    """Stratified formula whose every branch has `depth` connectives."""
    if depth == 0:
        return lit(rng.choice((1, -1)) * rng.randint(1, nvars))
    w = 1 if rng.random() < unary else rng.randint(2, width)
    return F(op, tuple(rand_formula(rng, flip(op), depth - 1, nvars, width, unary) for _ in range(w)))


def rand_game(rng: random.Random, n: int, k: int, m: int = 2) -> Game:
    fwd = [[[rng.randrange(m) for _ in range(m)] for _ in range(m)] for _ in (0, 1)]
    bwd = [[[rng.randrange(m) for _ in range(m)] for _ in range(m)] for _ in (0, 1)]
    return Game.dense(n, k, m, fwd, bwd, [x for x in range(m) if rng.random() < 0.5])


def micro_game(seed: int, n: int, k: int) -> Game:
    return rand_game(random.Random(seed), n, k, 2)


def brute_sat(clauses) -> dict | None:
    vs = sorted({abs(x) for c in clauses for x in c})
    for bits in itertools.product((False, True), repeat=len(vs)):
        a = dict(zip(vs, bits))
        if all(any(a[abs(x)] == (x > 0) for x in c) for c in clauses):
            return a
    return None


def brute_models(clauses, vs) -> list[dict]:
    out = []
    for bits in itertools.product((False, True), repeat=len(vs)):
        a = dict(zip(vs, bits))
        if all(any(a[abs(x)] == (x > 0) for x in c) for c in clauses):
            out.append(a)
    return out


def assignments(vs):
    for bits in itertools.product((False, True), repeat=len(vs)):
        yield dict(zip(vs, bits))


seeds = st.integers(min_value=0, max_value=10**9)

clause_lists = st.lists(
    st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from((v, -v))), min_size=1, max_size=3)
    .map(tuple),
    min_size=0, max_size=14,
)

LEFT_TAGS = ("Contract", "BotElim", "WeakenOr", "DualRes")


def _nodes(f, p=()):
    if not f.is_leaf:
        yield p, f
        for i, k in enumerate(f.kids):
            yield from _nodes(k, p + (i,))


def planted_instance(rng: random.Random):
    """A random line and a rule instance whose side conditions were planted into it."""
    f = rand_formula(rng, rng.choice((AND, OR)), rng.randint(1, 3))
    tag = rng.choice(TAGS)
    want = OR if tag in LEFT_TAGS else AND
    cands = [(p, n) for p, n in _nodes(f) if tag == "Permute" or n.op == want]
    if not cands:
        return None
    p, n = rng.choice(cands)
    kids, kc = list(n.kids), kid_class(n)
    x = rng.choice((1, -1)) * rng.randint(1, 4)
    kw: dict = {}
    if tag == "Permute":
        kw["perm"] = tuple(rng.sample(range(len(kids)), len(kids)))
    elif tag == "Contract":
        if len(kids) < 2:
            kids.append(kids[0])
        i = rng.randrange(len(kids) - 1)
        kids[i + 1] = kids[i]
        kw["pos"] = i
    elif tag in ("Clone", "WeakenAnd"):
        kw["pos"] = rng.randrange(len(kids))
    elif tag == "BotElim":
        i = rng.randrange(len(kids) + 1)
        kids.insert(i, padded(BOTTOM, kc))
        kw["pos"] = i
    elif tag == "TopIntro":
        kw["pos"] = rng.randrange(len(kids) + 1)
    elif tag == "WeakenOr":
        kw["pos"] = rng.randrange(len(kids) + 1)
        if kc.depth:
            g = rand_formula(rng, flip(n.op), kc.depth, width=2)
            kw["formula"] = g if classify(g) == kc else pad_to(core(g), kc)
        else:
            kw["formula"] = lit(x)
    elif tag == "DualRes":
        i = rng.randrange(len(kids))
        c = kids[i]
        if c.is_leaf:
            return None
        ck = list(c.kids)
        j = rng.randrange(len(ck) + 1)
        ck.insert(j, padded(TOPF, kid_class(c)))
        kids[i] = F(AND, tuple(ck))
        kw.update(pos=i, split=j, pivot=x)
    elif tag == "Res":
        if len(kids) < 2:
            kids.append(kids[0])
        i = rng.randrange(len(kids) - 1)
        if kids[i].is_leaf or kids[i + 1].is_leaf:
            return None
        cc = kid_class(kids[i])
        kids[i] = F(OR, kids[i].kids + (padded(lit(x), cc),))
        kids[i + 1] = F(OR, kids[i + 1].kids + (padded(lit(-x), cc),))
        kw.update(split=i, pivot=x)
    return replace_raw(f, p, F(n.op, tuple(kids))), RuleInstance(tag, p, **kw)


__all__ = ["AND", "OR", "assignments", "brute_models", "brute_sat", "clause_lists", "micro_game",
           "planted_instance", "rand_formula", "rand_game", "seeds"]

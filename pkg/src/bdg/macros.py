"""Derived rules built from primitive steps.

Every builder works in place on a :class:`Builder` so recursive calls share
one line history.  The public ``mk_*`` functions wrap them and return a
standalone proof segment that starts at the given ambient line.

Conventions for the cut: the premises are two consecutive conjuncts
``(A v C)`` and ``(B v N)`` where ``C`` is the last term of the first one and
``N`` is the list ``negterms(C)`` of terms whose disjunction is the stratified
negation of ``C``.  The conclusion is the single conjunct ``A v F v B``.
"""

from __future__ import annotations

from collections.abc import Sequence

from .calculus import Builder, Proof, dualize_proof, kid_class, padded
from .errors import DepthOverflow, ShapeMismatch
from .formula import AND, BOTTOM, OR, TOPF, F, core, dual, neg

# -- helpers ------------------------------------------------------------------


def negterms(c: F) -> list[F]:
    """Terms whose disjunction (or conjunction, for a Sigma term) negates `c`."""
    if c.is_leaf:
        return [dual(c)]
    return list(neg(c).kids)


def cut_premise(a: Sequence[F], b: Sequence[F], c: F) -> F:
    """The conjunction ``(A v C) & (B v negterms(C))``."""
    return F(AND, (F(OR, tuple(a) + (c,)), F(OR, tuple(b) + tuple(negterms(c)))))


def dual_cut_premise(a: Sequence[F], b: Sequence[F], kc) -> F:
    """The disjunction ``v(A & T & B)`` whose conjunct has children in class `kc`."""
    return F(OR, (F(AND, tuple(a) + (padded(TOPF, kc),) + tuple(b)),))


def _settle(b: Builder, path: tuple, target: Sequence[F]) -> None:
    """Reorder the node at `path` to `target`, contracting surplus duplicates."""
    kids = list(b.at(path).kids)
    used = [False] * len(kids)
    slots: list[int] = []
    for t in target:
        for i, k in enumerate(kids):
            if not used[i] and k == t:
                used[i] = True
                slots.append(i)
                break
        else:
            raise ShapeMismatch(f"missing term {t}")
    attach: dict[int, list[int]] = {j: [] for j in range(len(slots))}
    for i, k in enumerate(kids):
        if used[i]:
            continue
        for j, t in enumerate(target):
            if t == k:
                attach[j].append(i)
                break
        else:
            raise ShapeMismatch(f"surplus term {k} has no partner")
    order: list[int] = []
    for j, i in enumerate(slots):
        order.append(i)
        order.extend(attach[j])
    b.permute(path, order)
    pos = 0
    for j in range(len(slots)):
        for _ in attach[j]:
            b.do("Contract", path, pos=pos)
        pos += 1


def _chain(c: F) -> tuple[int, F]:
    """Length of the unary chain on top of `c` and the node below it."""
    n = 0
    while not c.is_leaf and len(c.kids) == 1:
        c = c.kids[0]
        n += 1
    return n, c


# -- cut ----------------------------------------------------------------------


def _cut(b: Builder, path: tuple, i: int, aux: bool = False) -> None:
    node = b.at(path)
    if node.is_leaf or node.op != AND or i + 1 >= len(node.kids):
        raise ShapeMismatch("cut needs two consecutive conjuncts")
    p1, p2 = node.kids[i], node.kids[i + 1]
    if p1.is_leaf or p2.is_leaf or p1.op != OR or p2.op != OR:
        raise ShapeMismatch("cut premises must be disjunctions")
    c = p1.kids[-1]
    a = list(p1.kids[:-1])
    nt = negterms(c)
    if len(p2.kids) < len(nt) or list(p2.kids[len(p2.kids) - len(nt):]) != nt:
        raise ShapeMismatch("second premise does not end with the negation of the cut formula")
    bb = list(p2.kids[:len(p2.kids) - len(nt)])
    kc = kid_class(p1)
    bot = padded(BOTTOM, kc)
    target = a + [bot] + bb

    def count() -> None:
        if aux:
            b.aux += 1
        else:
            b.expansions += 1

    x = core(c)
    if x.is_leaf:
        count()
        if x.op == "lit":
            b.do("Res", path, split=i, pivot=x.lit)
        elif x.op == "top":
            b.do("WeakenAnd", path, pos=i)
            for j, t in enumerate(a):
                b.do("WeakenOr", path + (i,), pos=j, formula=t)
            _settle(b, path + (i,), target)
        else:
            b.do("WeakenAnd", path, pos=i + 1)
            for t in bb:
                b.do("WeakenOr", path + (i,), pos=len(b.at(path + (i,)).kids), formula=t)
        return
    if len(c.kids) >= 2:
        count()
        _cut_and(b, path, i, a, bb, c, nt, aux)
        return
    e = c.kids[0]
    if not e.is_leaf and len(e.kids) >= 2:
        count()
        _cut_or(b, path, i, a, bb, c, aux)
        return
    # zipped cut formula: lift the first wide node by one unzipping step
    ln, _ = _chain(c)
    q = (0,) * (ln - 2)
    cpath = path + (i, len(a))
    tpath = path + (i + 1, len(p2.kids) - 1)
    _unzip(b, cpath + q)
    if ln >= 3:
        _unzip(b, tpath + (0,) * (ln - 3))
    else:
        _unzip_disj(b, path + (i + 1,), len(p2.kids) - 1)
    _cut(b, path, i, aux)


def _unzip(b: Builder, p: tuple) -> None:
    n = b.at(p)
    if n.op == AND:
        _unzip_conj(b, p)
    else:
        _unzip_disj(b, p, 0)


def _cut_and(b: Builder, path: tuple, i: int, a, bb, c: F, nt, aux: bool) -> None:
    n = len(c.kids)
    for _ in range(n - 1):
        b.do("Clone", path, pos=i)
    for j in range(n):
        for t in reversed(range(n)):
            if t != j:
                b.do("WeakenAnd", path + (i + j, len(a)), pos=t)
    for j in range(n):
        b.move(path, i + n - j, i + 1)
        r = b.at(path + (i + 1,))
        b.move(path + (i + 1,), len(r.kids) - (n - j), len(r.kids) - 1)
        _cut(b, path, i, aux)
        rest = list(nt[j + 1:])
        _settle(b, path + (i,), list(a) + [padded(BOTTOM, kid_class(b.at(path + (i,))))] + list(bb) + rest)
        b.move(path, i, i + (n - 1 - j))


def _cut_or(b: Builder, path: tuple, i: int, a, bb, c: F, aux: bool) -> None:
    r = len(c.kids[0].kids)
    _unzip_disj(b, path + (i,), len(a))
    for _ in range(r - 1):
        b.do("Clone", path, pos=i + 1)
    for j in range(r):
        for t in reversed(range(r)):
            if t != j:
                b.do("WeakenAnd", path + (i + 1 + j, len(bb)), pos=t)
    bot = padded(BOTTOM, kid_class(b.at(path + (i,))))
    for j in range(r):
        p1 = b.at(path + (i,))
        b.move(path + (i,), len(a), len(p1.kids) - 1)
        rem = list(b.at(path + (i,)).kids[len(a):len(a) + r - 1 - j])
        _cut(b, path, i, aux)
        _settle(b, path + (i,), list(a) + rem + [bot] + list(bb))


# -- zipping ------------------------------------------------------------------


def _unzip_conj(b: Builder, p: tuple) -> None:
    """``&(v(&(x1..xm)))`` becomes ``&(v&x1, .., v&xm)`` by cloning and weakening."""
    n = b.at(p)
    ln, w = _chain(n)
    if n.op != AND or ln < 2 or w.is_leaf or w.op != AND:
        raise ShapeMismatch("not a zipped conjunction")
    m = len(n.kids[0].kids[0].kids)
    for _ in range(m - 1):
        b.do("Clone", p, pos=0)
    for j in range(m):
        for t in reversed(range(m)):
            if t != j:
                b.do("WeakenAnd", p + (j, 0), pos=t)


def _zip_conj(b: Builder, p: tuple, i: int, m: int) -> None:
    """Children i..i+m-1 ``v&e1, .., v&em`` of the conjunction at `p` become ``v&(e1..em)``."""
    for j in range(1, m):
        conj = p + (i, 0)
        b.do("TopIntro", conj, pos=j)
        e = b.at(p + (i + 1, 0, 0))
        _dual_cut(b, p + (i,), 0, j, e, aux=True)
        b.move(p, i + 1, i)
        _cut(b, p, i, aux=True)
        b.do("BotElim", p + (i,), pos=0)


def _unzip_disj(b: Builder, p: tuple, k: int) -> None:
    """Child k ``&v(x1..xm)`` of the disjunction at `p` becomes ``&vx1, .., &vxm``."""
    t = b.at(p + (k,))
    ln, w = _chain(t)
    if t.op != AND or ln < 1 or w.is_leaf or w.op != OR:
        raise ShapeMismatch("not a zipped disjunction")
    xs = w.kids
    start = F(AND, tuple(F(OR, (F(AND, (dual(x),)),)) for x in xs))
    z = Builder(start)
    _zip_conj(z, (), 0, len(xs))
    seg = dualize_proof(z.proof())
    b.run(seg, p, offset=k)


def _zip_disj(b: Builder, p: tuple, k: int, m: int) -> None:
    """Children k..k+m-1 ``&vx1, .., &vxm`` of the disjunction at `p` become ``&v(x1..xm)``."""
    xs = [b.at(p + (k + j, 0, 0)) for j in range(m)]
    start = F(AND, (F(OR, (F(AND, tuple(dual(x) for x in xs)),)),))
    z = Builder(start)
    _unzip_conj(z, ())
    b.run(dualize_proof(z.proof()), p, offset=k)


# -- dual cut -----------------------------------------------------------------


def _dual_cut(b: Builder, p: tuple, k: int, split: int, d: F, aux: bool = False) -> None:
    """Child k ``&(A, T, B)`` of the disjunction at `p` becomes ``&(A, D), &(B, negterms(D))``."""
    t = b.at(p + (k,))
    a, rest = t.kids[:split], t.kids[split + 1:]
    x = core(d)
    if x.is_leaf and x.op == "lit" and d == padded(x, kid_class(t)):
        b.do("DualRes", p, pos=k, split=split, pivot=x.lit)
        if aux:
            b.aux += 1
        else:
            b.expansions += 1
        return
    dc = dual(d)
    start = F(AND, (F(OR, tuple(dual(y) for y in a) + (dc,)),
                    F(OR, tuple(dual(y) for y in rest) + tuple(negterms(dc)))))
    z = Builder(start)
    _cut(z, (), 0)
    seg = dualize_proof(z.proof())
    b.run(seg, p, offset=k, aux=aux)


# -- public builders ----------------------------------------------------------


def mk_cut(line: F, path: Sequence[int] = (), index: int = 0, mode: str = "cut",
           formula: F | None = None, split: int | None = None) -> Proof:
    """Cut at conjuncts index, index+1 of the node at `path`, or a dual cut.

    For ``mode="dual-cut"`` the node at `path` is a disjunction whose child
    `index` is a conjunction with a padded top at `split`; `formula` is the
    cut formula.
    """
    b = Builder(line)
    path = tuple(path)
    if mode == "cut":
        _cut(b, path, index)
    elif mode == "dual-cut":
        if formula is None:
            raise ShapeMismatch("dual cut needs a formula")
        conj = b.at(path + (index,))
        if split is None:
            split = next((j for j, y in enumerate(conj.kids)
                          if y == padded(TOPF, kid_class(conj))), None)
            if split is None:
                raise ShapeMismatch("no padded top in the conjunction")
        _dual_cut(b, path, index, split, formula)
    else:
        raise ValueError(mode)
    return b.proof()


def _distribute_or(b: Builder, path: tuple, i: int, j: int) -> None:
    t = b.at(path + (i, j))
    if t.is_leaf or t.op != AND or len(t.kids) < 2:
        raise ShapeMismatch("term is not a conjunction of two or more")
    n = len(t.kids)
    for _ in range(n - 1):
        b.do("Clone", path, pos=i)
    for c in range(n):
        for x in reversed(range(n)):
            if x != c:
                b.do("WeakenAnd", path + (i + c, j), pos=x)


def _extend_conj(b: Builder, p: tuple, k: int, ds: Sequence[F], aux: bool = True) -> None:
    """Conjoin `ds` to child k of the disjunction at `p`; their negations follow it."""
    for d in ds:
        conj = b.at(p + (k,))
        b.do("TopIntro", p + (k,), pos=len(conj.kids))
        _dual_cut(b, p, k, len(conj.kids), d, aux=aux)
    q = len(ds)
    order = list(range(k + 1)) + [k + q - j for j in range(q)]
    n = len(b.at(p).kids)
    b.permute(p, order + list(range(k + q + 1, n)))


def _conj_intro(b: Builder, path: tuple, i: int) -> None:
    p1, p2 = b.at(path + (i,)), b.at(path + (i + 1,))
    a = list(p1.kids[:-1])
    if list(p2.kids[:-1]) != a:
        raise ShapeMismatch("premises do not share the side formula")
    bt, ct = p1.kids[-1], p2.kids[-1]
    if bt.is_leaf or ct.is_leaf:
        raise DepthOverflow("conjunction introduction needs conjunction terms")
    _extend_conj(b, path + (i,), len(a), list(ct.kids))
    b.move(path, i + 1, i)
    _cut(b, path, i, aux=True)
    both = F(AND, bt.kids + ct.kids)
    bot = padded(BOTTOM, kid_class(b.at(path + (i,))))
    _settle(b, path + (i,), a + [bot, both])
    b.do("BotElim", path + (i,), pos=len(a))


def _ext_con(b: Builder, p: tuple, k: int, d: F) -> None:
    conj = b.at(p + (k,))
    if conj.is_leaf:
        raise DepthOverflow("term is not a conjunction")
    b.do("TopIntro", p + (k,), pos=len(conj.kids))
    _dual_cut(b, p, k, len(conj.kids), d, aux=True)
    b.move(p, k + 1, k)


def mk_distrib(kind: str, line: F, path: Sequence[int] = (), index: int = 0, **kw) -> Proof:
    """Derived distributive steps.

    * ``or-over-and``: conjunct `index` of the node at `path` is ``A v (B1 & .. & Bn)``
      (the conjunction is term ``kw['term']``, default last) and is split into n conjuncts.
    * ``and-over-or``: disjunct `index` is ``A & (B1 v .. v Bp v C1 ..)``; ``kw['split']``
      says where the inner disjunction divides.
    * ``conj-intro``: conjuncts index, index+1 are ``A v B`` and ``A v C``.
    * ``ext-con``: disjunct `index` ``B`` becomes ``negD v (B & D)`` for ``kw['formula']``.
    """
    b = Builder(line)
    path = tuple(path)
    if kind == "or-over-and":
        n = b.at(path + (index,))
        _distribute_or(b, path, index, kw.get("term", len(n.kids) - 1))
    elif kind == "conj-intro":
        _conj_intro(b, path, index)
    elif kind == "ext-con":
        _ext_con(b, path, index, kw["formula"])
    elif kind == "and-over-or":
        _and_over_or(b, path, index, kw.get("split", 1))
    else:
        raise ValueError(kind)
    return b.proof()


def _and_over_or(b: Builder, path: tuple, i: int, split: int) -> None:
    t = b.at(path + (i,))
    a, inner = list(t.kids[:-1]), t.kids[-1]
    if inner.is_leaf or inner.op != OR or not 0 < split < len(inner.kids):
        raise ShapeMismatch("last conjunct must be a disjunction that can be split")
    left = F(OR, tuple(dual(x) for x in a) + (F(AND, tuple(dual(y) for y in inner.kids[:split])),))
    right = F(OR, tuple(dual(x) for x in a) + (F(AND, tuple(dual(y) for y in inner.kids[split:])),))
    z = Builder(F(AND, (left, right)))
    _conj_intro(z, (), 0)
    b.run(dualize_proof(z.proof()), path, offset=i)


def mk_zip_proof(direction: str, line: F, path: Sequence[int] = (), index: int = 0, count: int = 2) -> Proof:
    """Zip `count` children starting at `index`, or unzip child `index`, of the node at `path`.

    For conjunctions the unzipped node is the node at `path` itself.
    """
    b = Builder(line)
    path = tuple(path)
    node = b.at(path)
    if direction == "unzip":
        if node.op == AND:
            _unzip_conj(b, path)
        else:
            _unzip_disj(b, path, index)
    elif direction == "zip":
        if node.op == AND:
            _zip_conj(b, path, index, count)
        else:
            _zip_disj(b, path, index, count)
    else:
        raise ValueError(direction)
    return b.proof()


def _insert(b: Builder, path: tuple, i: int) -> None:
    p1, p2 = b.at(path + (i,)), b.at(path + (i + 1,))
    if len(p1.kids) != 1 or p1.op != OR:
        raise ShapeMismatch("first conjunct must be a unary disjunction")
    a, b1 = p1.kids[0], p2.kids[0]
    if a.is_leaf or b1.is_leaf:
        raise DepthOverflow("insertion needs conjunction terms")
    _extend_conj(b, path + (i,), 0, list(b1.kids))
    b.move(path + (i + 1,), 0, len(p2.kids) - 1)
    b.move(path, i + 1, i)
    _cut(b, path, i, aux=True)
    n = len(p2.kids)
    b.do("BotElim", path + (i,), pos=n - 1)
    b.move(path + (i,), n - 1, 0)


def mk_insert(line: F, path: Sequence[int] = (), index: int = 0) -> Proof:
    """``v(A) & (B1 v .. v Bn)`` at conjuncts index, index+1 becomes ``(A & B1) v B2 .. v Bn``."""
    b = Builder(line)
    _insert(b, tuple(path), index)
    return b.proof()

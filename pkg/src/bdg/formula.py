"""Stratified formulas: ordered AND/OR trees with unary padding.

Literals are signed non-zero integers (``-3`` is the negation of variable 3).
Formulas are immutable and hashable, so they can be shared freely between
proof lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import BadPath, EmptyClause, NotApplicable, NotStratified, UnassignedVariable

AND = "and"
OR = "or"
LIT = "lit"
BOT = "bot"
TOP = "top"

Path = tuple[int, ...]


@dataclass(frozen=True)
class F:
    op: str
    kids: tuple["F", ...] = ()
    lit: int = 0
    _hash: int = field(default=0, compare=False, repr=False)
    is_leaf: bool = field(default=False, compare=False, repr=False)
    # memoized branch length; -1 means not stratified, None means unknown
    _depth: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((self.op, self.kids, self.lit)))
        object.__setattr__(self, "is_leaf", self.op in (LIT, BOT, TOP))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, F) or self._hash != other._hash:
            return False
        return self.op == other.op and self.lit == other.lit and self.kids == other.kids

    def __repr__(self) -> str:
        return show(self)


def lit(x: int) -> F:
    if x == 0:
        raise ValueError("literal 0 is not allowed")
    return F(LIT, (), x)


BOTTOM = F(BOT)
TOPF = F(TOP)


def conj(*kids: F) -> F:
    if not kids:
        raise ValueError("empty conjunction")
    return F(AND, tuple(kids))


def disj(*kids: F) -> F:
    if not kids:
        raise ValueError("empty disjunction")
    return F(OR, tuple(kids))


def node(op: str, kids: Iterable[F]) -> F:
    kids = tuple(kids)
    if not kids:
        raise ValueError(f"empty {op}")
    return F(op, kids)


def flip(op: str) -> str:
    return OR if op == AND else AND


@dataclass(frozen=True)
class FormulaClass:
    shape: str  # "Pi" or "Sigma"
    depth: int

    @property
    def top(self) -> str | None:
        if self.depth == 0:
            return None
        return AND if self.shape == "Pi" else OR

    @property
    def bottom(self) -> str | None:
        """Connective directly above the leaves."""
        if self.depth == 0:
            return None
        return self.top if self.depth % 2 == 1 else flip(self.top)

    def dual(self) -> "FormulaClass":
        return FormulaClass("Sigma" if self.shape == "Pi" else "Pi", self.depth)

    def __str__(self) -> str:
        return f"{self.shape}{self.depth}"


def shape_of(op: str) -> str:
    return "Pi" if op == AND else "Sigma"


def _depth(f: F) -> int:
    d = f._depth
    if d is not None:
        return d
    if f.is_leaf:
        d = 0
    elif not f.kids:
        d = -1
    else:
        d = None
        for k in f.kids:
            kd = _depth(k)
            if kd < 0 or (not k.is_leaf and k.op == f.op) or (d is not None and kd != d):
                d = -2
                break
            d = kd
        d = -1 if d == -2 else d + 1
    object.__setattr__(f, "_depth", d)
    return d


def _strat(f: F, path: list[int]) -> int:
    """Slow path used only to locate the first violation."""
    if f.is_leaf:
        return 0
    if not f.kids:
        raise NotStratified(tuple(path), "empty connective")
    h = None
    for i, k in enumerate(f.kids):
        path.append(i)
        if not k.is_leaf and k.op == f.op:
            raise NotStratified(tuple(path), "connectives do not alternate")
        kh = _strat(k, path)
        if h is None:
            h = kh
        elif kh != h:
            raise NotStratified(tuple(path), f"branch length {kh + 1} vs {h + 1}")
        path.pop()
    return h + 1


def classify(f: F) -> FormulaClass:
    d = _depth(f)
    if d < 0:
        _strat(f, [])
        raise NotStratified((), "not stratified")
    if d == 0:
        return FormulaClass("Pi", 0)
    return FormulaClass(shape_of(f.op), d)


def is_class(f: F, cls: FormulaClass) -> bool:
    try:
        c = classify(f)
    except NotStratified:
        return False
    if cls.depth == 0:
        return c.depth == 0
    return c == cls


@lru_cache(maxsize=1 << 18)
def dual(f: F) -> F:
    """Plain De Morgan dual: swap connectives, constants and literal signs."""
    if f.op == LIT:
        return F(LIT, (), -f.lit)
    if f.op == BOT:
        return TOPF
    if f.op == TOP:
        return BOTTOM
    return F(flip(f.op), tuple(dual(k) for k in f.kids))


def _pad_leaves(f: F, op: str) -> F:
    if f.is_leaf:
        return F(op, (f,))
    return F(f.op, tuple(_pad_leaves(k, op) for k in f.kids))


def stratified_negation(f: F) -> F:
    """Dualize and pad leaves with the original bottom connective."""
    cls = classify(f)
    d = dual(f)
    if cls.depth == 0:
        return d
    return _pad_leaves(d, cls.bottom)


def neg(f: F, cls: FormulaClass | None = None) -> F:
    """Stratified negation at a known class (avoids re-classifying)."""
    if cls is None:
        return stratified_negation(f)
    d = dual(f)
    if cls.depth == 0:
        return d
    return _pad_leaves(d, cls.bottom)


def wrap(f: F, ops: Sequence[str]) -> F:
    """Wrap `f` in unary nodes; ops[0] becomes the outermost."""
    for op in reversed(ops):
        f = F(op, (f,))
    return f


def pad_to(f: F, cls: FormulaClass) -> F:
    """Pad `f` on top with unary nodes until it lies in `cls`."""
    c = classify(f)
    if c.depth > cls.depth:
        raise NotApplicable(f"cannot pad {c} up to {cls}")
    if c.depth == cls.depth:
        if c.depth == 0 or c == cls:
            return f
        raise NotApplicable(f"cannot pad {c} up to {cls}")
    cur = f
    depth = c.depth
    top = None if depth == 0 else cur.op
    while depth < cls.depth:
        nxt = AND if top == OR else OR if top == AND else None
        if nxt is None:
            # bare leaf: choose the op that makes parity work out
            remaining = cls.depth - depth
            want = cls.top
            nxt = want if remaining % 2 == 1 else flip(want)
        cur = F(nxt, (cur,))
        top = nxt
        depth += 1
    if classify(cur) != cls:
        raise NotApplicable(f"cannot pad {c} up to {cls}")
    return cur


def padded_leaf(leaf: F, cls: FormulaClass) -> F:
    return pad_to(leaf, cls)


def pclass(op: str, depth: int) -> FormulaClass:
    return FormulaClass(shape_of(op), depth)


# -- paths ------------------------------------------------------------------

def subformula_at(f: F, p: Sequence[int]) -> F:
    cur = f
    for i in p:
        if cur.is_leaf or not (0 <= i < len(cur.kids)):
            raise BadPath(f"bad path {list(p)}")
        cur = cur.kids[i]
    return cur


def _replace(f: F, p: Sequence[int], g: F, at: int) -> F:
    if at == len(p):
        return g
    i = p[at]
    if f.is_leaf or not (0 <= i < len(f.kids)):
        raise BadPath(f"bad path {list(p)}")
    kids = list(f.kids)
    kids[i] = _replace(kids[i], p, g, at + 1)
    return F(f.op, tuple(kids))


def replace_raw(f: F, p: Sequence[int], g: F) -> F:
    """Replace without re-checking stratification."""
    return _replace(f, p, g, 0)


def replace_at(f: F, p: Sequence[int], g: F) -> F:
    out = _replace(f, p, g, 0)
    classify(out)
    return out


def paths(f: F, prefix: Path = ()) -> Iterable[Path]:
    yield prefix
    if not f.is_leaf:
        for i, k in enumerate(f.kids):
            yield from paths(k, prefix + (i,))


# -- representations --------------------------------------------------------

def core(f: F) -> F:
    """Erase unary chains; m-ary nodes (and their nesting) are kept."""
    if f.is_leaf:
        return f
    if len(f.kids) == 1:
        return core(f.kids[0])
    return F(f.op, tuple(core(k) for k in f.kids))


def _unary_chain(f: F, length: int) -> list[str] | None:
    ops = []
    cur = f
    for _ in range(length):
        if cur.is_leaf or len(cur.kids) != 1:
            return None
        ops.append(cur.op)
        cur = cur.kids[0]
    return ops


def zip_unzip(f: F, p: Sequence[int], mode: str, group: int = 2) -> F:
    """Unzip `c(d(..c(x1..xm)))` into `c(d(..c x1), .., d(..c xm))` or zip back.

    `group` is the number of unary nodes moved across the m-ary node and
    must be even so that connectives are preserved.
    """
    if group < 2 or group % 2:
        raise NotApplicable("group size must be a positive even number")
    n = subformula_at(f, p)
    if n.is_leaf:
        raise NotApplicable("leaf")
    if mode == "unzip":
        ops = _unary_chain(n, group)
        if ops is None:
            raise NotApplicable("no unary chain of the requested length")
        m = subformula_at(n, (0,) * group)
        if m.is_leaf or m.op != n.op:
            raise NotApplicable("chain does not end at a node of the same connective")
        inner = ops[1:] + [m.op]
        g = F(n.op, tuple(wrap(k, inner) for k in m.kids))
    elif mode == "zip":
        chains = [_unary_chain(k, group) for k in n.kids]
        if any(c is None for c in chains) or len({tuple(c) for c in chains}) != 1:
            raise NotApplicable("children do not share a unary chain")
        ch = chains[0]
        if ch[-1] != n.op:
            raise NotApplicable("chain ends in the wrong connective")
        leaves = tuple(subformula_at(k, (0,) * group) for k in n.kids)
        g = wrap(F(n.op, leaves), [n.op] + ch[:-1])
    else:
        raise ValueError(mode)
    return replace_raw(f, p, g)


def same_representation(f: F, g: F) -> bool:
    return core(f) == core(g)


# -- CNFs ------------------------------------------------------------------

@dataclass(frozen=True)
class Cnf:
    clauses: tuple[tuple[int, ...], ...]
    partition: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if not c:
                raise EmptyClause("empty clause")

    def variables(self) -> set[int]:
        return {abs(x) for c in self.clauses for x in c}

    def owner(self, v: int) -> str:
        return self.partition.get(abs(v), "x")

    def __hash__(self) -> int:
        return hash(self.clauses)


def cnf_true(c: Cnf | Sequence[Sequence[int]], a: Mapping[int, bool]) -> bool:
    cl = c.clauses if isinstance(c, Cnf) else c
    return all(any(a[abs(x)] == (x > 0) for x in cl_) for cl_ in cl)


def pad_clause(clause: Sequence[int], k: int) -> F:
    """One clause as the Sigma(k-1) conjunct of `pad_cnf(., k)`."""
    if not clause:
        raise EmptyClause("empty clause")
    if k % 2 == 0:
        body = disj(*(lit(x) for x in clause))
    else:
        body = disj(*(conj(lit(x)) for x in clause))
    return pad_to(body, FormulaClass("Sigma", k - 1))


def pad_cnf(c: Cnf | Sequence[Sequence[int]], k: int) -> F:
    cl = c.clauses if isinstance(c, Cnf) else c
    if k < 2:
        raise NotApplicable("pad_cnf needs k >= 2")
    if not cl:
        raise EmptyClause("no clauses")
    return conj(*(pad_clause(x, k) for x in cl))


def padded_bot(cls: FormulaClass) -> F:
    return pad_to(BOTTOM, cls)


# -- semantics -------------------------------------------------------------

def evaluate(f: F, a: Mapping[int, bool]) -> bool:
    if f.op == LIT:
        v = abs(f.lit)
        if v not in a:
            raise UnassignedVariable(f"variable {v} unassigned")
        return a[v] == (f.lit > 0)
    if f.op == BOT:
        return False
    if f.op == TOP:
        return True
    if f.op == AND:
        return all(evaluate(k, a) for k in f.kids)
    return any(evaluate(k, a) for k in f.kids)


eval_formula = evaluate


def variables(f: F) -> set[int]:
    if f.op == LIT:
        return {abs(f.lit)}
    out: set[int] = set()
    for k in f.kids:
        out |= variables(k)
    return out


def size(f: F) -> int:
    return 1 + sum(size(k) for k in f.kids)


def count_subformulas(f: F) -> int:
    """Number of subformulas once unary padding is erased."""
    return size(core(f))


def show(f: F) -> str:
    if f.op == LIT:
        return f"x{f.lit}" if f.lit > 0 else f"~x{-f.lit}"
    if f.op == BOT:
        return "F"
    if f.op == TOP:
        return "T"
    sym = "&" if f.op == AND else "|"
    if len(f.kids) == 1:
        return sym + show(f.kids[0])
    return "(" + f" {sym} ".join(show(k) for k in f.kids) + ")"


# -- JSON -----------------------------------------------------------------

def to_json(f: F) -> dict:
    if f.op == LIT:
        return {"lit": f.lit}
    if f.op == BOT:
        return {"bot": True}
    if f.op == TOP:
        return {"top": True}
    return {f.op: [to_json(k) for k in f.kids]}


def from_json(d: Mapping) -> F:
    if "lit" in d:
        return lit(int(d["lit"]))
    if d.get("bot"):
        return BOTTOM
    if d.get("top"):
        return TOPF
    for op in (AND, OR):
        if op in d:
            return node(op, (from_json(x) for x in d[op]))
    raise ValueError(f"bad formula json: {d!r}")


_TAGS = {"x": "x", "y": "y", "z": "z", "zp": "zp"}


def cnf_to_json(c: Cnf) -> dict:
    part: dict[str, list[int]] = {"x": [], "y": [], "z": []}
    for v in sorted(c.partition):
        part.setdefault(c.partition[v], []).append(v)
    return {"clauses": [list(x) for x in c.clauses], "partition": part}


def cnf_from_json(d: Mapping) -> Cnf:
    part: dict[int, str] = {}
    for tag, vs in d.get("partition", {}).items():
        t = tag.lower()
        if t not in _TAGS:
            raise ValueError(f"bad partition tag {tag}")
        for v in vs:
            part[int(v)] = t
    return Cnf(tuple(tuple(int(x) for x in c) for c in d["clauses"]), part)

"""Bounded-depth Symmetric Calculus: rules, proofs, checking and dualization.

A rule instance names the node it rewrites by a path.  Left-column rules
(Contract, BotElim, WeakenOr, DualRes) act on disjunctions, right-column rules
(Clone, TopIntro, WeakenAnd, Res) act on conjunctions; Permute acts on either.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import BadPath, NotStratified, RuleError
from .formula import (
    AND, BOTTOM, OR, TOPF, F, FormulaClass, Path, classify, core, dual,
    from_json, lit, pad_to, pclass, subformula_at, replace_raw, to_json,
)

LEFT = ("Contract", "BotElim", "WeakenOr", "DualRes")
RIGHT = ("Clone", "TopIntro", "WeakenAnd", "Res")
TAGS = ("Permute",) + LEFT + RIGHT


@dataclass(frozen=True)
class RuleInstance:
    tag: str
    path: Path = ()
    pos: int = 0
    perm: tuple[int, ...] = ()
    formula: F | None = None
    pivot: int = 0
    split: int = 0
    span: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ValueError(f"unknown rule {self.tag}")
        object.__setattr__(self, "path", tuple(self.path))
        object.__setattr__(self, "perm", tuple(self.perm))


Step = RuleInstance


def kid_class(n: F) -> FormulaClass:
    """Class shared by the children of the stratified node `n`."""
    d = classify(n).depth
    return pclass(AND if n.op == OR else OR, d - 1)


def padded(leaf: F, cls: FormulaClass) -> F:
    return pad_to(leaf, cls) if cls.depth > 0 else leaf


def _is_padded(f: F, leaf: F, cls: FormulaClass) -> bool:
    return f == padded(leaf, cls)


def _node(f: F, path: Path) -> F:
    try:
        n = subformula_at(f, path)
    except BadPath:
        raise RuleError("BadPath", f"no node at {list(path)}")
    return n


def _need(cond: bool, kind: str, msg: str = "") -> None:
    if not cond:
        raise RuleError(kind, msg)


def _rewrite(n: F, s: RuleInstance) -> F:
    kids = list(n.kids)
    tag = s.tag
    if tag == "Permute":
        _need(sorted(s.perm) == list(range(len(kids))), "BadParams", "not a permutation")
        return F(n.op, tuple(kids[i] for i in s.perm))
    if tag == "DualRes" and s.span is not None:
        conj = kids[s.pos] if n.op == OR and 0 <= s.pos < len(kids) else n
        if tuple(s.span) != (0, len(conj.kids)):
            raise RuleError("NotWholeNode", "dual resolution must consume an entire conjunction")
    want = OR if tag in LEFT else AND
    _need(n.op == want, "WrongPolarity", f"{tag} applies to {want} nodes")
    kc = kid_class(n)
    if tag in ("Contract", "Clone", "BotElim", "WeakenAnd"):
        _need(0 <= s.pos < len(kids), "BadParams", "position out of range")
    if tag == "Contract":
        _need(s.pos + 1 < len(kids) and kids[s.pos] == kids[s.pos + 1], "NotEqual",
              "contraction needs two equal consecutive terms")
        del kids[s.pos + 1]
    elif tag == "Clone":
        kids.insert(s.pos + 1, kids[s.pos])
    elif tag == "BotElim":
        _need(_is_padded(kids[s.pos], BOTTOM, kc), "NotBot", "term is not a padded bottom")
        _need(len(kids) > 1, "SoleTermRemoval", "cannot remove the only term")
        del kids[s.pos]
    elif tag == "WeakenAnd":
        _need(len(kids) > 1, "SoleTermRemoval", "cannot remove the only term")
        del kids[s.pos]
    elif tag == "TopIntro":
        _need(0 <= s.pos <= len(kids), "BadParams", "position out of range")
        kids.insert(s.pos, padded(TOPF, kc))
    elif tag == "WeakenOr":
        _need(0 <= s.pos <= len(kids), "BadParams", "position out of range")
        _need(s.formula is not None, "BadParams", "weakening needs a formula")
        try:
            ok = classify(s.formula) == kc or (kc.depth == 0 and s.formula.is_leaf)
        except NotStratified:
            ok = False
        _need(ok, "NotStratified", "inserted formula has the wrong class")
        kids.insert(s.pos, s.formula)
    elif tag == "DualRes":
        _need(s.pivot != 0, "BadParams", "pivot literal missing")
        _need(0 <= s.pos < len(kids), "BadParams", "position out of range")
        c = kids[s.pos]
        _need(not c.is_leaf and c.op == AND, "WrongPolarity", "term is not a conjunction")
        _need(0 <= s.split < len(c.kids), "BadParams", "split out of range")
        cc = kid_class(c)
        _need(_is_padded(c.kids[s.split], TOPF, cc), "NotTop", "no padded top at split")
        p, q = padded(lit(s.pivot), cc), padded(lit(-s.pivot), cc)
        left = F(AND, c.kids[:s.split] + (p,))
        right = F(AND, c.kids[s.split + 1:] + (q,))
        kids[s.pos:s.pos + 1] = [left, right]
    elif tag == "Res":
        _need(s.pivot != 0, "BadParams", "pivot literal missing")
        i = s.split
        _need(0 <= i and i + 1 < len(kids), "BadParams", "split out of range")
        a, b = kids[i], kids[i + 1]
        for t in (a, b):
            _need(not t.is_leaf and t.op == OR, "WrongPolarity", "premise is not a disjunction")
        cc = kid_class(a)
        for t, x in ((a, s.pivot), (b, -s.pivot)):
            last = t.kids[-1]
            if last != padded(lit(x), cc):
                if core(last) == lit(x):
                    raise RuleError("PivotDepthMismatch", "pivot padded to the wrong depth")
                raise RuleError("PivotMismatch", f"premise does not end with {x}")
        merged = F(OR, a.kids[:-1] + (padded(BOTTOM, cc),) + b.kids[:-1])
        kids[i:i + 2] = [merged]
    return F(n.op, tuple(kids))


def apply_rule(f: F, s: RuleInstance) -> F:
    n = _node(f, s.path)
    if n.is_leaf:
        raise RuleError("WrongPolarity", "rules apply to connectives, not leaves")
    before = classify(n)
    m = _rewrite(n, s)
    try:
        after = classify(m)
    except NotStratified as e:
        raise RuleError("NotStratified", str(e))
    _need(after == before, "NotStratified", f"node class changes from {before} to {after}")
    return replace_raw(f, s.path, m)


# -- proofs -------------------------------------------------------------------

@dataclass
class Proof:
    cls: FormulaClass
    lines: list[F]
    steps: list[RuleInstance] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def first(self) -> F:
        return self.lines[0]

    @property
    def last(self) -> F:
        return self.lines[-1]

    def __len__(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    index: int = -1
    error: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_proof(p: Proof) -> CheckResult:
    if len(p.steps) != len(p.lines) - 1:
        return CheckResult(False, 0, "steps/lines length mismatch")
    for i, ln in enumerate(p.lines):
        try:
            c = classify(ln)
        except NotStratified as e:
            return CheckResult(False, i, str(e))
        if c != p.cls and not (p.cls.depth == 0 and c.depth == 0):
            return CheckResult(False, i, f"line {i} is {c}, expected {p.cls}")
    for i, s in enumerate(p.steps):
        try:
            nxt = apply_rule(p.lines[i], s)
        except RuleError as e:
            return CheckResult(False, i, str(e))
        if nxt != p.lines[i + 1]:
            return CheckResult(False, i, "line does not follow from the step")
    return CheckResult(True)


def is_refutation(p: Proof) -> bool:
    return core(p.last) == BOTTOM and bool(check_proof(p))


def _inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for j, i in enumerate(perm):
        inv[i] = j
    return tuple(inv)


def dual_step(before: F, after: F, s: RuleInstance) -> RuleInstance:
    """Step turning dual(after) into dual(before)."""
    t, path = s.tag, s.path
    if t == "Permute":
        return RuleInstance("Permute", path, perm=_inverse(s.perm))
    if t == "Contract":
        return RuleInstance("Clone", path, pos=s.pos)
    if t == "Clone":
        return RuleInstance("Contract", path, pos=s.pos)
    if t == "BotElim":
        return RuleInstance("TopIntro", path, pos=s.pos)
    if t == "TopIntro":
        return RuleInstance("BotElim", path, pos=s.pos)
    if t == "WeakenOr":
        return RuleInstance("WeakenAnd", path, pos=s.pos)
    if t == "WeakenAnd":
        gone = subformula_at(before, path + (s.pos,))
        return RuleInstance("WeakenOr", path, pos=s.pos, formula=dual(gone))
    if t == "DualRes":
        return RuleInstance("Res", path, split=s.pos, pivot=-s.pivot)
    if t == "Res":
        a = subformula_at(before, path + (s.split,))
        return RuleInstance("DualRes", path, pos=s.split, split=len(a.kids) - 1, pivot=-s.pivot)
    raise ValueError(t)


def dualize_proof(p: Proof) -> Proof:
    lines = [dual(x) for x in reversed(p.lines)]
    steps = [dual_step(p.lines[i], p.lines[i + 1], p.steps[i]) for i in reversed(range(len(p.steps)))]
    return Proof(p.cls.dual(), lines, steps, dict(p.meta))


# -- building -----------------------------------------------------------------

class Builder:
    """Accumulates a proof by applying steps to the current line."""

    def __init__(self, line: F, cls: FormulaClass | None = None) -> None:
        self.cls = cls or classify(line)
        self.lines = [line]
        self.steps: list[RuleInstance] = []
        self.expansions = 0
        self.aux = 0

    @property
    def cur(self) -> F:
        return self.lines[-1]

    def at(self, path: Sequence[int]) -> F:
        return subformula_at(self.cur, tuple(path))

    def apply(self, s: RuleInstance) -> F:
        self.lines.append(apply_rule(self.cur, s))
        self.steps.append(s)
        return self.cur

    def do(self, tag: str, path: Sequence[int] = (), **kw) -> F:
        return self.apply(RuleInstance(tag, tuple(path), **kw))

    def permute(self, path: Sequence[int], perm: Sequence[int]) -> None:
        if list(perm) != list(range(len(perm))):
            self.do("Permute", path, perm=tuple(perm))

    def move(self, path: Sequence[int], src: int, dst: int) -> None:
        """Move child `src` of the node at `path` to index `dst`."""
        n = len(self.at(path).kids)
        order = [i for i in range(n) if i != src]
        order.insert(dst, src)
        self.permute(path, order)

    def run(self, seg: Proof, path: Sequence[int] = (), offset: int = 0, aux: bool = True) -> None:
        """Replay a standalone segment whose root is a window of the node at `path`.

        When `offset` is used the segment root stands for the children
        offset..offset+w-1 of that node, w being the segment root's arity.
        """
        path = tuple(path)
        host = self.at(path)
        windowed = host != seg.first
        extra = len(host.kids) - len(seg.first.kids) if windowed else 0
        if windowed:
            w = len(seg.first.kids)
            if host.op != seg.first.op or host.kids[offset:offset + w] != seg.first.kids:
                raise RuleError("BadPath", "segment does not match the addressed window")
        for i, s in enumerate(seg.steps):
            self.apply(lift_step(s, seg.lines[i], path, offset if windowed else 0, extra if windowed else 0))
        n = seg.meta.get("expansions", 0)
        self.aux += seg.meta.get("aux", 0) + (n if aux else 0)
        if not aux:
            self.expansions += n

    def proof(self, **meta) -> Proof:
        m = {"expansions": self.expansions, "aux": self.aux}
        m.update(meta)
        return Proof(self.cls, list(self.lines), list(self.steps), m)


def lift_step(s: RuleInstance, before: F, prefix: Path, offset: int, extra: int) -> RuleInstance:
    if s.path:
        return replace(s, path=prefix + (s.path[0] + offset,) + s.path[1:])
    if offset == 0 and extra == 0:
        return replace(s, path=prefix)
    if s.tag == "Permute":
        w = len(before.kids)
        perm = list(range(offset)) + [offset + i for i in s.perm] + list(range(offset + w, offset + w + extra - offset))
        return replace(s, path=prefix, perm=tuple(perm))
    if s.tag == "Res":
        return replace(s, path=prefix, split=s.split + offset)
    return replace(s, path=prefix, pos=s.pos + offset)


# -- JSON ---------------------------------------------------------------------

def step_to_json(s: RuleInstance) -> dict:
    d: dict = {"tag": s.tag, "path": list(s.path)}
    if s.tag == "Permute":
        d["perm"] = list(s.perm)
    elif s.tag == "Res":
        d.update(split=s.split, pivot=s.pivot)
    elif s.tag == "DualRes":
        d.update(pos=s.pos, split=s.split, pivot=s.pivot)
        if s.span is not None:
            d["span"] = list(s.span)
    else:
        d["pos"] = s.pos
    if s.formula is not None:
        d["formula"] = to_json(s.formula)
    return d


def step_from_json(d: dict) -> RuleInstance:
    f = from_json(d["formula"]) if "formula" in d else None
    span = tuple(d["span"]) if "span" in d else None
    return RuleInstance(d["tag"], tuple(d.get("path", ())), pos=int(d.get("pos", 0)),
                        perm=tuple(d.get("perm", ())), formula=f, pivot=int(d.get("pivot", 0)),
                        split=int(d.get("split", 0)), span=span)


def proof_to_json(p: Proof) -> dict:
    return {
        "class": {"shape": p.cls.shape, "depth": p.cls.depth},
        "lines": [to_json(x) for x in p.lines],
        "steps": [step_to_json(s) for s in p.steps],
    }


def proof_from_json(d: dict) -> Proof:
    c = d["class"]
    return Proof(FormulaClass(c["shape"], int(c["depth"])), [from_json(x) for x in d["lines"]],
                 [step_from_json(s) for s in d["steps"]])

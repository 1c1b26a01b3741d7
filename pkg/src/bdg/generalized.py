"""Generalized tape games and their normalisation to strict games.

A generalized game is given by a local rule ``rule(r, c, cur, above)`` where
``cur`` is the symbol at column ``c`` of round ``r`` and ``above`` is the
symbol of round ``r-1`` at the next column in the travel direction (None if
that cell was never visited).  The rule returns an outcome:

* ``("go", sym)``: write `sym` at the next column;
* ``("turn", sym)``: round ``r+1`` starts at column ``c`` with `sym`;
* ``("end", label)``: the play ends; label is "1" (Player I wins), "0" or a
  variable name;
* a :class:`Decision` whose options are again outcomes.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Hashable, Mapping
from dataclasses import dataclass, field

from .errors import IncompatibleStrategy, TooLarge, UnboundLabel
from .game import I, II, Game, PositionalStrategy, label_value, owner, rightward


@dataclass(frozen=True)
class Decision:
    mover: str
    options: tuple
    tag: Hashable = None


def go(sym) -> tuple:
    return ("go", sym)


def turn(sym) -> tuple:
    return ("turn", sym)


def end(label: str) -> tuple:
    return ("end", label)


@dataclass(eq=False)
class GeneralizedGame:
    n: int
    k: int
    start: Hashable
    rule: Callable
    meta: dict = field(default_factory=dict)
    strict: Game | None = None

    def __post_init__(self) -> None:
        self._memo: dict = {}

    def outcome(self, r: int, c: int, cur, above):
        key = (r, c, cur, above)
        got = self._memo.get(key)
        if got is None:
            got = self._memo[key] = self.rule(r, c, cur, above)
        return got

    def step(self, c: int, r: int) -> int:
        return c + 1 if rightward(r) else c - 1


@dataclass(eq=False)
class LocalStrategy:
    """Choices ``(r, c, cur, above, path) -> option index`` for one player."""

    player: str
    choose: Callable | None = None
    table: dict = field(default_factory=dict)

    def get(self, key: tuple, decision: Decision) -> int:
        got = self.table.get(key)
        if got is None:
            if self.choose is None:
                raise IncompatibleStrategy(f"no choice for {key}")
            got = self.table[key] = self.choose(key, decision)
        if not 0 <= got < len(decision.options):
            raise IncompatibleStrategy(f"choice {got} out of range at {key}")
        return got


def as_generalized(g: Game) -> GeneralizedGame:
    """View a strict game as a generalized one."""

    def rule(r, c, cur, above):
        right = rightward(r)
        last = g.n if right else 1
        if c == last:
            if r == g.k:
                return end("1" if g.is_winning(cur) else "0")
            return turn(cur)
        b = g.lam if above is None else above
        args = (cur, b) if right else (b, cur)
        opts = tuple(go(x) for x in g.options(right, *args))
        if len(opts) == 1:
            return opts[0]
        return Decision(owner(c), opts, ("move", r, c))

    return GeneralizedGame(g.n, g.k, g.lam, rule, meta={"from": "strict"}, strict=g)


# -- exhaustive play ----------------------------------------------------------


def _value(label: str, assignment) -> bool:
    if assignment is None:
        if label not in ("0", "1"):
            raise UnboundLabel(f"unresolved label {label!r}")
        return label == "1"
    return label_value(label, assignment)


class _Search:
    """Depth-first walk over all plays; deterministic moves are taken in a loop.

    With ``share=True`` the callbacks must be pure.  Subtrees of the last
    round are then cached by (column, symbol): the row above is fixed for the
    whole round and the row being written is never read again.
    """

    def __init__(self, gg: GeneralizedGame, on_end, on_decision, share: bool = False):
        self.gg, self.on_end, self.on_decision = gg, on_end, on_decision
        self.share = share
        self.memo: dict = {}
        self.leaves = 0

    def start(self):
        import sys
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 50_000))
        try:
            gg = self.gg
            self.memo = {}
            return self.run(1, 1, gg.start, {}, {1: gg.start})
        finally:
            sys.setrecursionlimit(old)

    def run(self, r, c, x, prev, cur):
        gg = self.gg
        memo = self.memo if self.share and r == gg.k else None
        if memo is not None:
            hit = memo.get((c, x))
            if hit is not None:
                self.leaves += hit[1]
                return hit[0]
            entry, before = (c, x), self.leaves
        d = 1 if rightward(r) else -1
        table, rule, n = gg._memo, gg.rule, gg.n
        log = []
        try:
            while True:
                if r > gg.k or not 1 <= c <= n:
                    raise ValueError(f"play leaves the board at round {r}, column {c}")
                above = prev.get(c + d)
                key = (r, c, x, above)
                o = table.get(key)
                if o is None:
                    o = table[key] = rule(r, c, x, above)
                if o.__class__ is tuple and o[0] == "go":
                    c, x = c + d, o[1]
                    cur[c] = x
                    log.append(c)
                    continue
                res = self.resolve(o, r, c, x, above, prev, cur, ())
                break
            if memo is not None:
                memo[entry] = (res, self.leaves - before)
            return res
        finally:
            for j in log:
                del cur[j]

    def resolve(self, o, r, c, x, above, prev, cur, path):
        if isinstance(o, Decision):
            def branch(t):
                return self.resolve(o.options[t], r, c, x, above, prev, cur, path + (t,))
            return self.on_decision(o, (r, c, x, above, path), branch)
        kind, y = o
        if kind == "end":
            self.leaves += 1
            return self.on_end(y)
        if kind == "turn":
            if r + 1 != self.gg.k:
                return self.run(r + 1, c, y, cur, {c: y})
            saved, self.memo = self.memo, {}
            try:
                return self.run(r + 1, c, y, cur, {c: y})
            finally:
                self.memo = saved
        nc = self.gg.step(c, r)
        cur[nc] = y
        try:
            return self.run(r, nc, y, prev, cur)
        finally:
            del cur[nc]


def solve_generalized(gg: GeneralizedGame, assignment: Mapping | None = None,
                      max_states: int = 2_000_000) -> str:
    """Minimax winner by exhaustive search of the play tree."""
    count = 0

    def on_end(label):
        nonlocal count
        count += 1
        if count > max_states:
            raise TooLarge("play tree exceeds the guard")
        return _value(label, assignment)

    def on_decision(d, key, branch):
        vals = (branch(t) for t in range(len(d.options)))
        return any(vals) if d.mover == I else all(vals)

    return I if _Search(gg, on_end, on_decision, share=True).start() else II


def plays_against(gg: GeneralizedGame, strat: LocalStrategy, assignment: Mapping | None = None,
                  max_plays: int = 1_000_000) -> tuple[bool, int]:
    """Play `strat` against every opponent behaviour; (all won, plays seen)."""
    want = strat.player == I
    seen = 0

    def on_end(label):
        nonlocal seen
        seen += 1
        if seen > max_plays:
            raise TooLarge("too many plays")
        return _value(label, assignment) == want

    def on_decision(d, key, branch):
        if d.mover == strat.player:
            return branch(strat.get(key, d))
        return all(branch(t) for t in range(len(d.options)))

    search = _Search(gg, on_end, on_decision, share=True)
    ok = search.start()
    return ok, search.leaves


# -- normalisation ------------------------------------------------------------


def _bits(t: int) -> int:
    return 0 if t <= 1 else math.ceil(math.log2(t))


def _depth_bits(o) -> int:
    if isinstance(o, Decision):
        return _bits(len(o.options)) + max(_depth_bits(x) for x in o.options)
    return 0


def decision_bits(gg: GeneralizedGame, max_states: int = 2_000_000) -> int:
    """Largest number of choice bits in one local decision over reachable plays."""
    if "bits" in gg.meta:
        return gg.meta["bits"]
    best = 0
    count = 0

    def on_end(label):
        nonlocal count
        count += 1
        if count > max_states:
            raise TooLarge("play tree exceeds the guard")

    def on_decision(d, key, branch):
        nonlocal best
        if not key[4]:
            best = max(best, _depth_bits(d))
        for t in range(len(d.options)):
            branch(t)

    _Search(gg, on_end, on_decision).start()
    return best


LAM = ("lam",)


def _node(o, path: tuple):
    for t in path:
        o = o.options[t]
    return o


class _Layout:
    def __init__(self, gg: GeneralizedGame, width: int):
        self.gg, self.w = gg, width
        self.N = width * (gg.n + 1) + 1

    def col(self, c: int) -> int:
        return self.w * c + 1

    def locate(self, right: bool, a) -> tuple[int, int]:
        """Round and target column of the write whose previous symbol is `a`."""
        tag = 0 if a == LAM else a[1]
        j = 1 if a == LAM else a[2]
        r = tag if (tag % 2 == 1) == right and tag else tag + 1
        return r, (j + 1 if right else j - 1)

    def above_of(self, b):
        return b[4] if b[0] == "mid" else None

    def state(self, right: bool, a, b):
        """Decode the write after `a` with `b` above it: (r, j, kind, payload)."""
        r, j = self.locate(right, a)
        if a == LAM:
            return r, j, "pending", (1, self.gg.start)
        kind = a[0]
        if kind == "end":
            return r, j, "end", a[3]
        if kind == "post" and a[1] == r - 1 or kind == "pre":
            return r, j, "pending", (a[3], a[4])
        if kind == "post":
            return r, j, "post", (a[3], a[4])
        if kind == "act":
            c, g = a[3], a[4]
            above = self.above_of(b) if r > 1 else None
            return r, j, "block", (c, g, above, (), ())
        return r, j, "block", (a[3], a[4], a[5], a[6], a[7])

    def bit_owner(self, right: bool, j: int) -> str:
        return owner(j - 1 if right else j + 1)

    def write(self, right: bool, h: int, a, b):
        r, j, kind, p = self.state(right, a, b)
        if kind == "end":
            return ("end", r, j, p)
        if kind == "post":
            return ("post", r, j) + p
        if kind == "pending":
            c, g = p
            if j == self.col(c):
                return ("act", r, j, c, g)
            return ("pre", r, j, c, g)
        c, g, above, path, bits = p
        gg = self.gg
        o = gg.outcome(r, c, g, above)
        node = _node(o, path)
        if isinstance(node, Decision) and len(node.options) == 1:
            path, node = path + (0,), node.options[0]
        if isinstance(node, Decision) and node.mover == self.bit_owner(right, j):
            bits = bits + (h,)
            t = len(node.options)
            if len(bits) == _bits(t):
                idx = min(int("".join(map(str, bits)), 2), t - 1)
                path, bits, node = path + (idx,), (), node.options[idx]
                while isinstance(node, Decision) and len(node.options) == 1:
                    path, node = path + (0,), node.options[0]
        if not isinstance(node, Decision):
            if node[0] == "turn":
                return ("post", r, j, c, node[1])
            if node[0] == "end":
                return ("end", r, j, node[1])
        nc = gg.step(c, r)
        if j == self.col(nc):
            if isinstance(node, Decision):
                raise ValueError("decision did not resolve inside its block")
            if not 1 <= nc <= gg.n:
                raise ValueError(f"play leaves the board at round {r}")
            return ("act", r, j, nc, node[1])
        return ("mid", r, j, c, g, above, path, bits)


def normalize_generalized(gg: GeneralizedGame, assignment: Mapping | None = None,
                          force: bool = False) -> Game:
    """Strict game with the same winner; each decision bit is one strict move.

    Every generalized column becomes a block of strict columns.  Outside the
    active part of a round the symbols are skip markers; inside a block each
    move either contributes one bit to the pending decision or is a dummy
    move with a single legal value.
    """
    if gg.strict is not None and not force and assignment is None:
        return gg.strict
    width = 2 * decision_bits(gg) + 2
    lay = _Layout(gg, width)

    def fwd(h, a, b):
        return lay.write(True, h, a, b)

    def bwd(h, a, b):
        return lay.write(False, h, b, a)

    def winning(s) -> bool:
        return s[0] == "end" and _value(s[3], assignment)

    g = Game(lay.N, gg.k, None, fwd, bwd, winning, lam=LAM,
             meta={"layout": lay, "width": width})
    g.lam = LAM
    return g


def lift_strategy(g: Game, strat: LocalStrategy) -> PositionalStrategy:
    """Positional strategy of the normalised game playing like `strat`."""
    lay: _Layout = g.meta["layout"]

    def rule(r, src, a, b):
        right = rightward(r)
        prev, above_sym = (a, b) if right else (b, a)
        rr, j, kind, p = lay.state(right, prev, above_sym)
        h = 0
        if kind == "block":
            c, gsym, above, path, bits = p
            o = lay.gg.outcome(rr, c, gsym, above)
            node = _node(o, path)
            if isinstance(node, Decision) and len(node.options) == 1:
                path, node = path + (0,), node.options[0]
            if isinstance(node, Decision) and node.mover == strat.player == lay.bit_owner(right, j):
                idx = strat.get((rr, c, gsym, above, path), node)
                code = format(idx, f"0{_bits(len(node.options))}b")
                h = int(code[len(bits)])
        return g.T(right, h, a, b)

    return PositionalStrategy(strat.player, {}, rule)


def _relabel(o, assignment: Mapping):
    if isinstance(o, Decision):
        return Decision(o.mover, tuple(_relabel(x, assignment) for x in o.options), o.tag)
    if o[0] == "end":
        return end("1" if label_value(o[1], assignment) else "0")
    return o


def instantiate_generalized(gg: GeneralizedGame, assignment: Mapping) -> GeneralizedGame:
    """Resolve every variable end label under `assignment`."""

    def rule(r, c, cur, above):
        return _relabel(gg.outcome(r, c, cur, above), assignment)

    meta = dict(gg.meta, assignment=dict(assignment))
    return GeneralizedGame(gg.n, gg.k, gg.start, rule, meta=meta)

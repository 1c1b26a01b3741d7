"""Tape games of bounded depth, positional strategies and their verifier.

Columns and rounds are 1-based.  Odd rounds run left to right, even rounds
right to left.  The move that writes column ``j`` reads a *source* column
(``j-1`` going right, ``j+1`` going left) and is made by Player I iff the
source column is odd.

Transition arguments: a rightward move at target ``j`` of round ``r`` gets
``(M[r][j-1], M[r-1][j])``; a leftward move gets ``(M[r-1][j], M[r][j+1])``.
Round 0 is a virtual row of Lambdas.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Any

from .errors import IncompatibleStrategy, NotWinning, TooLarge, UnboundLabel

I, II = "I", "II"
PLAYERS = (I, II)


def other(p: str) -> str:
    return II if p == I else I


def owner(src: int) -> str:
    """Player who moves from source column `src`."""
    return I if src % 2 == 1 else II


def rightward(r: int) -> bool:
    return r % 2 == 1


# -- games --------------------------------------------------------------------


@dataclass(eq=False)
class Game:
    """A depth-k game.

    ``fwd`` and ``bwd`` map ``(h, a, b)`` to a symbol; either a dict (missing
    keys fall back to ``default``) or a callable.  ``winning`` is a set of
    symbols or a predicate.  ``alphabet[0]`` is Lambda; it may be ``None`` for
    lazily generated games.
    """

    n: int
    k: int
    alphabet: tuple | None
    fwd: Any
    bwd: Any
    winning: Any
    lam: Hashable = 0
    default: Hashable = 0
    names: tuple | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 2 or self.k < 1:
            raise ValueError("need n >= 2 and k >= 1")
        if self.alphabet is not None:
            self.lam = self.alphabet[0]
        self._cache: dict = {}

    def T(self, right: bool, h: int, a, b):
        tab = self.fwd if right else self.bwd
        if callable(tab):
            key = (right, h, a, b)
            got = self._cache.get(key)
            if got is None:
                got = self._cache[key] = tab(h, a, b)
            return got
        return tab.get((h, a, b), self.default)

    def options(self, right: bool, a, b) -> tuple:
        x, y = self.T(right, 0, a, b), self.T(right, 1, a, b)
        return (x,) if x == y else (x, y)

    def is_winning(self, s) -> bool:
        w = self.winning
        return bool(w(s)) if callable(w) else s in w

    @property
    def moves(self) -> int:
        return self.k * (self.n - 1)

    @classmethod
    def dense(cls, n: int, k: int, m: int, fwd, bwd, winning: Iterable[int],
              names: Iterable[str] | None = None) -> "Game":
        """Game over symbols ``0..m-1`` (0 is Lambda) from ``[h][a][b]`` tables."""
        f = {(h, a, b): fwd[h][a][b] for h in (0, 1) for a in range(m) for b in range(m)}
        g = {(h, a, b): bwd[h][a][b] for h in (0, 1) for a in range(m) for b in range(m)}
        nm = tuple(names) if names is not None else None
        return cls(n, k, tuple(range(m)), f, g, frozenset(winning), names=nm)

    def table(self, right: bool) -> list:
        m = len(self.alphabet)
        return [[[self.T(right, h, a, b) for b in range(m)] for a in range(m)] for h in (0, 1)]


def schedule(n: int, k: int) -> Iterator[tuple[int, int, int]]:
    """Moves ``(round, target, source)`` in play order."""
    for r in range(1, k + 1):
        if rightward(r):
            for j in range(2, n + 1):
                yield r, j, j - 1
        else:
            for j in range(n - 1, 0, -1):
                yield r, j, j + 1


def final_column(g: Game) -> int:
    return g.n if rightward(g.k) else 1


def move_args(M, r: int, j: int, lam) -> tuple[bool, Any, Any]:
    """Direction and transition arguments of the move writing ``M[r][j]``."""
    above = M[r - 1] if r > 1 else None
    if rightward(r):
        return True, M[r][j - 1], (above[j] if above else lam)
    return False, (above[j] if above else lam), M[r][j + 1]


def _blank(g: Game) -> list[list]:
    return [[g.lam] * (g.n + 1) for _ in range(g.k + 1)]


def _start_row(M, r: int, n: int) -> None:
    if r == 1:
        return
    if rightward(r):
        M[r][1] = M[r - 1][1]
    else:
        M[r][n] = M[r - 1][n]


@dataclass
class History:
    matrix: list
    trace: list

    def rows(self) -> list[list]:
        return [row[1:] for row in self.matrix[1:]]


def run_play(g: Game, choose_i: Callable, choose_ii: Callable) -> tuple[str, History]:
    """Play one game; choosers get ``(r, j, src, a, b, M)`` and return ``h``."""
    M = _blank(g)
    trace = []
    last_r = 0
    for r, j, s in schedule(g.n, g.k):
        if r != last_r:
            _start_row(M, r, g.n)
            last_r = r
        right, a, b = move_args(M, r, j, g.lam)
        who = owner(s)
        h = (choose_i if who == I else choose_ii)(r, j, s, a, b, M)
        M[r][j] = g.T(right, h, a, b)
        trace.append((r, j, s, who, h, M[r][j]))
    last = M[g.k][final_column(g)]
    return (I if g.is_winning(last) else II), History(M, trace)


# -- positional strategies ----------------------------------------------------


@dataclass(eq=False)
class PositionalStrategy:
    """Map ``(r, src, a, b) -> symbol`` for one player.

    ``rule`` is an optional lazy fallback whose answers are memoised into
    ``table``.  A consulted key with no entry raises IncompatibleStrategy.
    """

    player: str
    table: dict = field(default_factory=dict)
    rule: Callable | None = None

    def get(self, key: tuple):
        got = self.table.get(key)
        if got is None and key not in self.table:
            if self.rule is None:
                raise IncompatibleStrategy(f"no entry for {key}")
            got = self.table[key] = self.rule(*key)
        return got

    def __len__(self) -> int:
        return len(self.table)


def key_args(g: Game, key: tuple) -> tuple[bool, Any, Any]:
    r = key[0]
    return rightward(r), key[2], key[3]


def check_compatible(g: Game, s: PositionalStrategy) -> None:
    for key, c in s.table.items():
        right, a, b = key_args(g, key)
        if owner(key[1]) != s.player:
            raise IncompatibleStrategy(f"{key} belongs to {other(s.player)}")
        if c not in g.options(right, a, b):
            raise IncompatibleStrategy(f"{key} -> {c!r} is not a legal move")


def _play(g: Game, s: PositionalStrategy, key: tuple):
    c = s.get(key)
    right, a, b = key_args(g, key)
    if c not in g.options(right, a, b):
        raise IncompatibleStrategy(f"{key} -> {c!r} is not a legal move")
    return c


def strategy_chooser(g: Game, s: PositionalStrategy) -> Callable:
    def choose(r, j, src, a, b, M):
        c = _play(g, s, (r, src, a, b))
        return 0 if g.T(rightward(r), 0, a, b) == c else 1
    return choose


def strategy_domain(g: Game, player: str) -> list[tuple]:
    """Keys a positional strategy of `player` may be consulted on.

    Round 1 only ever sees Lambda from the virtual round 0.
    """
    if g.alphabet is None:
        raise TooLarge("alphabet is not materialised")
    out = []
    A = g.alphabet
    for r in range(1, g.k + 1):
        srcs = range(1, g.n) if rightward(r) else range(2, g.n + 1)
        for s in srcs:
            if owner(s) != player:
                continue
            bs = (g.lam,) if r == 1 else A
            for a in A:
                for b in bs:
                    out.append((r, s, a, b))
    return out


def enumerate_strategies(g: Game, player: str, domain: list[tuple] | None = None,
                         limit: int = 1 << 20) -> Iterator[PositionalStrategy]:
    dom = strategy_domain(g, player) if domain is None else domain
    opts = [g.options(*key_args(g, key)) for key in dom]
    total = 1
    for o in opts:
        total *= len(o)
    if total > limit:
        raise TooLarge(f"{total} strategies exceed the limit {limit}")
    for pick in itertools.product(*opts):
        yield PositionalStrategy(player, dict(zip(dom, pick)))


# -- the verifier -------------------------------------------------------------


@dataclass
class Reach:
    """Reachable column vectors ``R[(r, i)]`` against all opponent plays."""

    player: str
    sets: dict

    def final(self, g: Game) -> set:
        return self.sets[(g.k, final_column(g))]


def _step_options(g: Game, s: PositionalStrategy, r: int, src: int, a, b) -> tuple:
    right = rightward(r)
    if owner(src) == s.player:
        return (_play(g, s, (r, src, a, b)),)
    return g.options(right, a, b)


def _compatible(g: Game, s: PositionalStrategy, u: tuple, v: tuple, i: int, rows: int) -> bool:
    """Whether column vectors u (column i) and v (column i+1) agree on rows 1..rows."""
    for q in range(1, rows + 1):
        if rightward(q):
            b = v[q - 2] if q > 1 else g.lam
            if v[q - 1] not in _step_options(g, s, q, i, u[q - 1], b):
                return False
        else:
            if u[q - 1] not in _step_options(g, s, q, i + 1, u[q - 2], v[q - 1]):
                return False
    return True


def _reach(g: Game, s: PositionalStrategy, prior: dict | None = None) -> dict:
    """Compute the reachability sets.

    With `prior`, every set is recomputed from the neighbouring sets stored in
    `prior` instead of from the freshly computed ones.
    """
    R: dict = {}
    src = prior if prior is not None else R
    n = g.n
    R[(1, 1)] = {(g.lam,)}
    for r in range(1, g.k + 1):
        right = rightward(r)
        if r > 1:
            edge = 1 if right else n
            R[(r, edge)] = {v + (v[-1],) for v in src[(r - 1, edge)]}
        cols = range(1, n) if right else range(n, 1, -1)
        for c in cols:
            out = set()
            if right:
                i = c
                uppers = src[(r - 1, i + 1)] if r > 1 else {()}
                for u in src[(r, i)]:
                    for p in uppers:
                        if r > 1 and not _compatible(g, s, u[:r - 1], p, i, r - 1):
                            continue
                        b = p[-1] if r > 1 else g.lam
                        for x in _step_options(g, s, r, i, u[-1], b):
                            out.add(p + (x,))
                R[(r, i + 1)] = out
            else:
                i = c - 1
                for v in src[(r, i + 1)]:
                    for p in src[(r - 1, i)]:
                        if not _compatible(g, s, p, v[:r - 1], i, r - 1):
                            continue
                        for x in _step_options(g, s, r, i + 1, p[-1], v[-1]):
                            out.add(p + (x,))
                R[(r, i)] = out
    return R


def verify_positional(g: Game, s: PositionalStrategy) -> tuple[bool, Reach]:
    """Decide whether `s` wins every play, in time polynomial in the game size."""
    R = _reach(g, s)
    reach = Reach(s.player, R)
    want = s.player == I
    ok = all(g.is_winning(v[-1]) == want for v in reach.final(g))
    return ok, reach


def recheck_fixed_point(g: Game, s: PositionalStrategy, reach: Reach) -> bool:
    """Independent check that `reach` satisfies every defining equation."""
    again = _reach(g, s, prior=reach.sets)
    return again == reach.sets


def winning_plays_all(g: Game, s: PositionalStrategy) -> bool:
    """Oracle: play out every opponent choice against `s`."""
    M = _blank(g)
    moves = list(schedule(g.n, g.k))
    want = s.player == I

    def rec(t: int) -> bool:
        if t == len(moves):
            return g.is_winning(M[g.k][final_column(g)]) == want
        r, j, src = moves[t]
        if t == 0 or moves[t - 1][0] != r:
            _start_row(M, r, g.n)
        right, a, b = move_args(M, r, j, g.lam)
        if owner(src) == s.player:
            cs = (_play(g, s, (r, src, a, b)),)
        else:
            cs = g.options(right, a, b)
        for c in cs:
            M[r][j] = c
            if not rec(t + 1):
                return False
        return True

    return rec(0)


# -- exhaustive solving -------------------------------------------------------


def solve_bruteforce(g: Game, max_moves: int | None = 24) -> str:
    """Minimax winner, memoised on the two live rounds."""
    moves = list(schedule(g.n, g.k))
    if max_moves is not None and len(moves) > max_moves:
        raise TooLarge(f"{len(moves)} moves exceed the guard {max_moves}")
    memo: dict = {}

    def rec(t: int, prev: tuple, cur: tuple) -> bool:
        if t == len(moves):
            return g.is_winning(cur[final_column(g)])
        r, j, src = moves[t]
        if t > 0 and moves[t - 1][0] != r:
            prev, row = cur, [g.lam] * (g.n + 1)
            edge = 1 if rightward(r) else g.n
            row[edge] = prev[edge]
            cur = tuple(row)
        key = (t, prev, cur)
        got = memo.get(key)
        if got is not None:
            return got
        above = prev[j] if r > 1 else g.lam
        right = rightward(r)
        a, b = (cur[j - 1], above) if right else (above, cur[j + 1])
        res = []
        for c in g.options(right, a, b):
            nxt = cur[:j] + (c,) + cur[j + 1:]
            res.append(rec(t + 1, prev, nxt))
        got = any(res) if owner(src) == I else all(res)
        memo[key] = got
        return got

    blank = tuple([g.lam] * (g.n + 1))
    return I if rec(0, blank, blank) else II


def solve_k1(g: Game) -> str:
    """Backward induction over (column, symbol) for one-round games."""
    if g.k != 1:
        raise ValueError("only for k = 1")
    win = {a: g.is_winning(a) for a in g.alphabet}
    for j in range(g.n - 1, 0, -1):
        pick = any if owner(j) == I else all
        win = {a: pick(win[c] for c in g.options(True, a, g.lam)) for a in g.alphabet}
    return I if win[g.lam] else II


def find_positional(g: Game, player: str, limit: int = 1 << 20,
                    domain: list[tuple] | None = None) -> PositionalStrategy | None:
    """Search the positional strategies of `player` for a winning one."""
    for s in enumerate_strategies(g, player, domain, limit):
        if verify_positional(g, s)[0]:
            return s
    return None


def require_winning(g: Game, s: PositionalStrategy) -> Reach:
    ok, reach = verify_positional(g, s)
    if not ok:
        raise NotWinning(f"strategy of {s.player} loses some play")
    return reach


# -- schemas ------------------------------------------------------------------


@dataclass(eq=False)
class GameSchema:
    """A game whose winning set depends on variables.

    ``labels`` maps every symbol to ``"0"``, ``"1"`` or a variable name.
    """

    game: Game
    labels: dict
    variables: tuple = ()

    def __post_init__(self) -> None:
        if isinstance(self.game, Game) and self.game.alphabet is not None:
            missing = [a for a in self.game.alphabet if a not in self.labels]
            if missing:
                raise UnboundLabel(f"unlabelled symbols {missing}")
        if not self.variables and self.labels:
            self.variables = tuple(sorted({v for v in self.labels.values() if v not in ("0", "1")}))


def label_value(label: str, assignment: Mapping[str, bool]) -> bool:
    if label == "1":
        return True
    if label == "0":
        return False
    if label not in assignment:
        raise UnboundLabel(f"variable {label!r} is unassigned")
    return bool(assignment[label])


def schema_instantiate(s: GameSchema, assignment: Mapping[str, bool]):
    """The game S(a): winning end symbols are those whose label is true under `a`."""
    base = s.game
    if not isinstance(base, Game):
        missing = [v for v in s.variables if v not in assignment]
        if missing:
            raise UnboundLabel(f"unassigned variables {missing}")
        return instantiate_generalized(base, assignment)
    win = frozenset(a for a, lab in s.labels.items() if label_value(lab, assignment))
    return Game(base.n, base.k, base.alphabet, base.fwd, base.bwd, win,
                default=base.default, names=base.names, meta=dict(base.meta))


# -- serialisation ------------------------------------------------------------


def game_to_json(g: Game) -> dict:
    if g.alphabet is None:
        raise TooLarge("lazy games have no dense form")
    idx = {a: i for i, a in enumerate(g.alphabet)}
    m = len(g.alphabet)

    def dense(right):
        return [[[idx[g.T(right, h, a, b)] for b in g.alphabet] for a in g.alphabet]
                for h in (0, 1)]

    names = list(g.names) if g.names else [str(a) for a in g.alphabet]
    return {"n": g.n, "k": g.k, "alphabet": names, "m": m,
            "fwd": dense(True), "bwd": dense(False),
            "winning": sorted(idx[a] for a in g.alphabet if g.is_winning(a))}


def game_from_json(d: dict) -> Game:
    m = d.get("m", len(d["alphabet"]))
    return Game.dense(d["n"], d["k"], m, d["fwd"], d["bwd"], d["winning"],
                      names=d.get("alphabet"))


def strategy_to_json(s: PositionalStrategy) -> dict:
    rows = [{"r": r, "s": src, "a": a, "b": b, "out": c}
            for (r, src, a, b), c in sorted(s.table.items(), key=repr)]
    return {"player": s.player, "entries": rows}


def strategy_from_json(d: dict) -> PositionalStrategy:
    tab = {(e["r"], e["s"], e["a"], e["b"]): e["out"] for e in d["entries"]}
    return PositionalStrategy(d["player"], tab)


from .generalized import (  # noqa: E402,F401
    Decision, GeneralizedGame, LocalStrategy, as_generalized, decision_bits, end, go,
    instantiate_generalized, lift_strategy, normalize_generalized, plays_against,
    solve_generalized, turn,
)

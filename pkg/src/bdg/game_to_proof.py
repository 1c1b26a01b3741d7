"""From games to refutations.

`encode_game` writes "both players have positional winning strategies" as
two variable-disjoint CNFs; `build_refutation` derives a contradiction from
their conjunction in the bounded-depth calculus, one Pi(k+1) line at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .calculus import Builder, Proof, kid_class, padded
from .errors import NotWinning, TooLarge
from .formula import AND, BOTTOM, OR, Cnf, F, lit, pad_cnf
from .game import (I, II, PLAYERS, Game, PositionalStrategy, other, owner, rightward,
                   strategy_domain, verify_positional)
from . import macros as M


@dataclass(eq=False)
class EncodedPair:
    game: Game
    phi: Cnf
    psi: Cnf
    var_sigma: dict = field(default_factory=dict)   # (player, r, src, a, b, c) -> id
    var_R: dict = field(default_factory=dict)       # (player, r, i, vec) -> id
    families: dict = field(default_factory=dict)    # clause -> family tag
    index: dict = field(default_factory=dict)       # (family, player, ...) -> clause
    alloc: object = field(default=None, repr=False)

    @property
    def clauses(self) -> tuple:
        return self.phi.clauses + self.psi.clauses

    def names(self) -> dict:
        out = {}
        for (p, r, s, a, b, c), v in self.var_sigma.items():
            out[v] = f"s{p}[{r},{s}]({a},{b})={c}"
        for (p, r, i, vec), v in self.var_R.items():
            out[v] = f"R{p}[{r},{i}]({','.join(map(str, vec))})"
        return out


class _Vars:
    def __init__(self, g: Game):
        self.g = g
        self.sigma: dict = {}
        self.R: dict = {}
        self.owner: dict = {}
        self.next = 1

    def _new(self, p: str) -> int:
        v = self.next
        self.next += 1
        self.owner[v] = p
        return v

    def s(self, r: int, src: int, a, b, c) -> int:
        p = owner(src)
        key = (p, r, src, a, b, c)
        v = self.sigma.get(key)
        if v is None:
            v = self.sigma[key] = self._new(p)
        return v

    def r(self, p: str, r: int, i: int, vec: tuple) -> int:
        key = (p, r, i, tuple(vec))
        v = self.R.get(key)
        if v is None:
            v = self.R[key] = self._new(p)
        return v


def compat(g: Game, V: _Vars, p: str | None, u: tuple, v: tuple, i: int, rows: int):
    """Sigma literals saying that u (column i) and v (column i+1) are compatible.

    With ``p=None`` the literals of both players are returned.  None means
    the two vectors are not even T-compatible.
    """
    out = []
    for q in range(1, rows + 1):
        if rightward(q):
            src, a, b, c = i, u[q - 1], (v[q - 2] if q > 1 else g.lam), v[q - 1]
        else:
            src, a, b, c = i + 1, u[q - 2], v[q - 1], u[q - 1]
        if c not in g.options(rightward(q), a, b):
            return None
        if p is None or owner(src) == p:
            out.append(V.s(q, src, a, b, c))
    return out


def _vectors(A: tuple, r: int):
    return itertools.product(A, repeat=r)


def encode_game(g: Game) -> EncodedPair:
    """The CNFs Phi (Player I variables) and Psi (Player II variables)."""
    if g.alphabet is None:
        raise TooLarge("the game alphabet is not materialised")
    A, n, k = g.alphabet, g.n, g.k
    lam = g.lam
    size = 2 * n * sum(len(A) ** (2 * r) for r in range(1, k + 1))
    if size > 2_000_000:
        raise TooLarge(f"about {size} clauses")
    V = _Vars(g)
    out = {I: [], II: []}
    fam: dict = {}

    idx: dict = {}

    def emit(p, clause, tag, *key):
        c = tuple(clause)
        out[p].append(c)
        fam.setdefault(c, tag)
        idx[(tag, p) + key] = c

    # positional strategies are total
    for p in PLAYERS:
        for (r, s, a, b) in strategy_domain(g, p):
            emit(p, [V.s(r, s, a, b, c) for c in g.options(rightward(r), a, b)], "total",
                 r, s, a, b)
    for p in PLAYERS:
        emit(p, [V.r(p, 1, 1, (lam,))], "lambda")
        for r in range(1, k + 1):
            if rightward(r) and r + 1 <= k:
                edge = n
            elif not rightward(r) and r + 1 <= k:
                edge = 1
            else:
                continue
            for vec in _vectors(A, r):
                x, y = V.r(p, r, edge, vec), V.r(p, r + 1, edge, vec + (vec[-1],))
                emit(p, [-x, y], "side", r, vec, 0)
                emit(p, [-y, x], "side", r, vec, 1)
        for r in range(1, k + 1):
            for i in range(1, n):
                for u in _vectors(A, r):
                    for v in _vectors(A, r):
                        cl = compat(g, V, p, u, v, i, r)
                        if cl is None:
                            continue
                        if rightward(r):
                            prem = [V.r(p, r, i, u)] + ([V.r(p, r - 1, i + 1, v[:-1])] if r > 1 else [])
                            concl = V.r(p, r, i + 1, v)
                        else:
                            prem = [V.r(p, r, i + 1, v), V.r(p, r - 1, i, u[:-1])]
                            concl = V.r(p, r, i, u)
                        emit(p, [-x for x in prem + cl] + [concl], "step", r, i, u, v)
        col = n if rightward(k) else 1
        for vec in _vectors(A, k):
            if g.is_winning(vec[-1]) == (p == II):
                emit(p, [-V.r(p, k, col, vec)], "win", vec)
    part = {v: ("x" if p == I else "y") for v, p in V.owner.items()}
    return EncodedPair(g, Cnf(out[I], part), Cnf(out[II], part), V.sigma, V.R, fam, idx, V)


def strategy_witness(g: Game, s: PositionalStrategy, pair: EncodedPair | None = None) -> dict:
    """Assignment to the owner's variables built from a winning strategy."""
    ok, reach = verify_positional(g, s)
    if not ok:
        raise NotWinning(f"strategy of {s.player} is not winning")
    pair = pair or encode_game(g)
    p = s.player
    a: dict = {}
    for (q, r, src, x, y, c), v in pair.var_sigma.items():
        if q == p:
            try:
                want = s.get((r, src, x, y))
            except Exception:
                want = g.T(rightward(r), 0, x, y)
            a[v] = want == c
    for (q, r, i, vec), v in pair.var_R.items():
        if q == p:
            a[v] = vec in reach.sets.get((r, i), ())
    return a


# -- workspace ----------------------------------------------------------------


class Work:
    """A proof under construction whose lines are conjunctions.

    The leading conjuncts are the padded axiom clauses and are never
    consumed: a clause is used by cloning it.  Derived conjuncts follow and
    are addressed by handles.
    """

    def __init__(self, clauses, depth: int):
        self.depth = depth
        self.b = Builder(pad_cnf(clauses, depth))
        self.nax = len(clauses)
        self.axpos = {}
        for j, c in enumerate(clauses):
            self.axpos.setdefault(tuple(c), j)
        self.live: list[int] = []
        self.fresh = 0
        self.marks: dict = {}
        root = self.b.cur
        self.tkc = kid_class(root.kids[0]) if depth > 1 else None

    # terms -------------------------------------------------------------------

    def lt(self, x: int) -> F:
        """Literal as a term of a top-level disjunction."""
        return padded(lit(x), self.tkc) if self.depth > 2 else lit(x)

    def tm(self, lits, clauses=()) -> F:
        """A conjunction term of literals and (at depth 4) inner clauses."""
        if self.depth == 3:
            if clauses:
                raise ValueError("no inner clauses at depth 3")
            return F(AND, tuple(lit(x) for x in lits))
        kids = tuple(F(OR, (lit(x),)) for x in lits)
        kids += tuple(F(OR, tuple(lit(x) for x in c)) for c in clauses)
        return F(AND, kids)

    # bookkeeping -------------------------------------------------------------

    def pos(self, h: int) -> int:
        return self.nax + self.live.index(h)

    def get(self, h: int) -> F:
        return self.b.at((self.pos(h),))

    def _new(self) -> int:
        self.fresh += 1
        return self.fresh

    def _append(self) -> int:
        h = self._new()
        self.live.append(h)
        return h

    def axiom(self, clause, zipped: bool = False) -> int:
        """Clone an axiom clause to the end of the line."""
        j = self.axpos[tuple(clause)]
        self.b.do("Clone", (), pos=j)
        self.b.move((), j + 1, len(self.b.cur.kids) - 1)
        h = self._append()
        if self.depth == 4 and not zipped and len(clause) > 1:
            M._unzip_disj(self.b, (self.pos(h),), 0)
        return h

    def clone(self, h: int) -> int:
        p = self.pos(h)
        self.b.do("Clone", (), pos=p)
        self.b.move((), p + 1, len(self.b.cur.kids) - 1)
        return self._append()

    def drop(self, h: int) -> None:
        self.b.do("WeakenAnd", (), pos=self.pos(h))
        self.live.remove(h)

    def adjacent(self, h1: int, h2: int) -> int:
        """Move h2 right after h1; return the position of h1."""
        p1, p2 = self.pos(h1), self.pos(h2)
        dst = p1 + 1 if p2 > p1 else p1
        self.b.move((), p2, dst)
        self.live.remove(h2)
        self.live.insert(self.live.index(h1) + 1, h2)
        return self.pos(h1)

    def _merge(self, h1: int, h2: int) -> int:
        h = self._new()
        i = self.live.index(h1)
        self.live[i:i + 2] = [h]
        return h

    # shaping -----------------------------------------------------------------

    def settle(self, h: int, target) -> None:
        M._settle(self.b, (self.pos(h),), list(target))

    def weaken_to(self, h: int, target) -> None:
        """Add the missing terms of `target`, then reorder and contract."""
        have = list(self.get(h).kids)
        p = (self.pos(h),)
        for t in target:
            if t in have:
                have.remove(t)
            else:
                self.b.do("WeakenOr", p, pos=len(self.b.at(p).kids), formula=t)
        self.settle(h, target)

    def bot_out(self, h: int) -> None:
        p = (self.pos(h),)
        bot = padded(BOTTOM, kid_class(self.b.at(p))) if self.depth > 2 else BOTTOM
        while len(self.b.at(p).kids) > 1:
            kids = self.b.at(p).kids
            if bot not in kids:
                return
            self.b.do("BotElim", p, pos=kids.index(bot))

    # inference ---------------------------------------------------------------

    def res(self, h1: int, h2: int, x: int) -> int:
        """Resolve on literal x (positive in h1); both premises are consumed."""
        for h, y in ((h1, x), (h2, -x)):
            kids = list(self.get(h).kids)
            t = self.lt(y)
            j = kids.index(t)
            self.b.move((self.pos(h),), j, len(kids) - 1)
        p = self.adjacent(h1, h2)
        self.b.do("Res", (), split=p, pivot=x)
        h = self._merge(h1, h2)
        self.bot_out(h)
        return h

    def cut(self, h1: int, h2: int) -> int:
        """Cut the last term of h1 against the matching tail of h2."""
        p = self.adjacent(h1, h2)
        M._cut(self.b, (), p)
        h = self._merge(h1, h2)
        self.bot_out(h)
        return h

    def conj_intro(self, h1: int, h2: int) -> int:
        p = self.adjacent(h1, h2)
        M._conj_intro(self.b, (), p)
        return self._merge(h1, h2)

    def ext_con(self, h: int, idx: int, x: int) -> None:
        """Conjoin literal x to term idx; its negation appears right before it."""
        p = (self.pos(h),)
        d = lit(x) if self.depth == 3 else F(OR, (lit(x),))
        M._ext_con(self.b, p, idx, d)

    def zip_terms(self, h: int, idx: int, count: int) -> None:
        M._zip_disj(self.b, (self.pos(h),), idx, count)

    def insert(self, hc: int, h: int, idx: int) -> None:
        """Insert the zipped clause hc into term idx of h; hc is consumed."""
        self.b.move((self.pos(h),), idx, 0)
        p = self.adjacent(hc, h)
        M._insert(self.b, (), p)
        i = self.live.index(hc)
        self.live[i:i + 2] = [h]

    def mark(self, name, hs) -> None:
        self.marks[name] = (len(self.b.lines) - 1, [self.pos(h) for h in hs])

    def finish(self, h: int, **meta) -> Proof:
        """Weaken every other conjunct away; h must be a padded bottom."""
        keep = self.pos(h)
        n = len(self.b.cur.kids)
        for j in reversed(range(n)):
            if j != keep:
                self.b.do("WeakenAnd", (), pos=j)
        return self.b.proof(marks=self.marks, **meta)


# -- the formulas Delta_i -----------------------------------------------------


class DeltaContext:
    """Builders for the reachability formulas used by the refutation.

    ``delta(i)`` says: for every first-row symbol x1 reached by both players
    at column i there is a continuation reached by both, alternating
    quantifiers down to row k.  Level L of the line (root = 0) is a
    conjunction for even L; literals are padded with unary nodes down to
    level k+1.
    """

    def __init__(self, pair: EncodedPair):
        self.pair = pair
        self.g = pair.game
        self.depth = self.g.k + 1

    def R(self, p: str, r: int, i: int, vec) -> int:
        return self.pair.alloc.r(p, r, i, tuple(vec))

    def leaf(self, x: int, level: int) -> F:
        ops = [AND if L % 2 == 0 else OR for L in range(level, self.depth)]
        f = lit(x)
        for op in reversed(ops):
            f = F(op, (f,))
        return f

    def node(self, r: int, i: int, vec: tuple) -> F:
        """The level-r subformula about the history prefix `vec` of length r."""
        sign = -1 if r % 2 else 1
        kids = [self.leaf(sign * self.R(p, r, i, vec), r + 1) for p in PLAYERS]
        if r < self.g.k:
            kids += [self.node(r + 1, i, vec + (x,)) for x in self.g.alphabet]
        return F(OR if r % 2 else AND, tuple(kids))

    def conjuncts(self, i: int) -> list[F]:
        return [self.node(1, i, (x,)) for x in self.g.alphabet]

    def delta(self, i: int) -> F:
        return F(AND, tuple(self.conjuncts(i)))

    nabla = delta


# -- refutation ---------------------------------------------------------------


def _uniq(xs) -> list:
    out = []
    for x in xs:
        if x not in out:
            out.append(x)
    return out


class _Refuter:
    def __init__(self, pair: EncodedPair):
        self.pair = pair
        self.g = g = pair.game
        self.k = g.k
        self.A = tuple(g.alphabet)
        self.lam = g.lam
        self.ctx = DeltaContext(pair)
        self.w = Work(pair.clauses, g.k + 1)

    # variables and axioms ----------------------------------------------------

    def R(self, p, r, i, vec) -> int:
        return self.pair.alloc.r(p, r, i, tuple(vec))

    def S(self, r, src, a, b, c) -> int:
        return self.pair.alloc.s(r, src, a, b, c)

    def ax(self, *key, zipped: bool = False) -> int:
        return self.w.axiom(self.pair.index[key], zipped=zipped)

    def lt(self, x: int) -> F:
        return self.w.lt(x)

    def both(self, r, i, vec, sign=1) -> list[int]:
        return [sign * self.R(p, r, i, vec) for p in PLAYERS]

    def opts(self, r, a, b) -> tuple:
        return self.g.options(rightward(r), a, b)

    # shaping -----------------------------------------------------------------

    def arrange(self, h: int, tail) -> None:
        """Deduplicate h and put the terms `tail` last, in order."""
        tail = list(tail)
        rest = [t for t in _uniq(self.w.get(h).kids) if t not in tail]
        self.w.settle(h, rest + tail)

    def shape(self, h: int, target) -> None:
        self.w.weaken_to(h, list(target))

    def resolve_total(self, tot: int, parts: dict) -> int:
        """Resolve a totality clause against clauses holding ``-svar`` each."""
        h = tot
        for x, hp in parts.items():
            h = self.w.res(h, hp, x)
        return h

    def conj_all(self, hs) -> int:
        h = hs[0]
        for h2 in hs[1:]:
            h = self.w.conj_intro(h, h2)
        return h

    def implied(self, side, comps) -> int:
        """From clauses ``side v goal`` derive ``side v &goals``.

        Each component is (handle, goal-term); handles are weakened to the
        common side first.
        """
        hs = []
        for h, goal in comps:
            self.shape(h, list(side) + [goal])
            hs.append(h)
        return self.conj_all(hs)

    # k = 1 -------------------------------------------------------------------

    def run_k1(self) -> Proof:
        g, w, n, lam = self.g, self.w, self.g.n, self.lam
        E = {}
        for a in self.A:
            p = II if g.is_winning(a) else I
            h = self.ax("win", p, (a,))
            self.shape(h, [self.lt(x) for x in self.both(1, n, (a,), -1)])
            E[a] = h
        w.mark(n, list(E.values()))
        for i in range(n - 1, 0, -1):
            P = owner(i)
            new = {}
            for b in self.A:
                parts = {}
                for c in self.opts(1, b, lam):
                    e = w.clone(E[c])
                    for p in (P, other(P)):
                        hp = self.ax("step", p, 1, i, (b,), (c,))
                        e = w.res(hp, e, self.R(p, 1, i + 1, (c,)))
                    parts[self.S(1, i, b, lam, c)] = e
                h = self.resolve_total(self.ax("total", P, 1, i, b, lam), parts)
                self.shape(h, [self.lt(x) for x in self.both(1, i, (b,), -1)])
                new[b] = h
            for h in E.values():
                w.drop(h)
            E = new
            w.mark(i, list(E.values()))
        return self.close_units(E[lam])

    def close_units(self, h: int) -> int:
        for p in PLAYERS:
            h = self.w.res(self.ax("lambda", p), h, self.R(p, 1, 1, (self.lam,)))
        return h

    # k = 2 -------------------------------------------------------------------

    def top_side(self, i, x1) -> list[F]:
        return [self.lt(x) for x in self.both(1, i, (x1,), -1)]

    def lemma_first_row(self, i: int, x1) -> int:
        """``-R1(x1) v OR_y1 (R1'(y1) & sigma1(y1))`` at columns i, i+1."""
        w, lam = self.w, self.lam
        side0 = self.top_side(i, x1)
        parts = {}
        ys = self.opts(1, x1, lam)
        for y1 in ys:
            s1 = self.S(1, i, x1, lam, y1)
            side = side0 + [self.lt(-s1)]
            comps = [(self.ax("step", p, 1, i, (x1,), (y1,)), self.lt(self.R(p, 1, i + 1, (y1,))))
                     for p in PLAYERS]
            h = self.implied(side, comps)
            w.ext_con(h, len(side), s1)
            self.arrange(h, [w.tm(self.both(1, i + 1, (y1,)) + [s1])])
            parts[s1] = h
        h = self.resolve_total(self.ax("total", owner(i), 1, i, x1, lam), parts)
        self.shape(h, side0 + [w.tm(self.both(1, i + 1, (y1,)) + [self.S(1, i, x1, lam, y1)])
                               for y1 in ys])
        return h

    def lemma_second_row(self, i, x1, y1, y2, extra=None) -> int:
        """From row-2 steps: ``-R1(x1) v -sigma1 v OR_x2 S2(x1x2) v -S2'(y1y2)``."""
        s1 = self.S(1, i, x1, self.lam, y1)
        side0 = self.top_side(i, x1) + [self.lt(-s1)]
        nu = M.negterms(self.ctx.node(2, i + 1, (y1, y2)))
        parts = {}
        for x2 in self.opts(2, x1, y2):
            s2 = self.S(2, i + 1, x1, y2, x2)
            side = side0 + [self.lt(-s2)] + nu
            if extra is None:
                comps = [(self.ax("step", p, 2, i, (x1, x2), (y1, y2)),
                          self.lt(self.R(p, 2, i, (x1, x2)))) for p in PLAYERS]
                h = self.implied(side, comps)
            else:
                h = extra(side, x2, s2)
            parts[s2] = h
        h = self.resolve_total(self.ax("total", owner(i + 1), 2, i + 1, x1, y2), parts)
        self.arrange(h, nu)
        return h

    def descend(self, i: int, D: dict, second=None) -> dict:
        """Conjuncts of the column-i formula from those of column i+1."""
        w, lam = self.w, self.lam
        out = {}
        for x1 in self.A:
            G = self.lemma_first_row(i, x1)
            for y1 in self.opts(1, x1, lam):
                s1 = self.S(1, i, x1, lam, y1)
                Dp = w.clone(D[y1])
                for y2 in self.A:
                    U = self.ctx.node(2, i + 1, (y1, y2))
                    L = (second or self.lemma_second_row)(i, x1, y1, y2)
                    self.arrange(Dp, [U])
                    self.arrange(L, M.negterms(U))
                    Dp = w.cut(Dp, L)
                T = w.tm(self.both(1, i + 1, (y1,)) + [s1])
                self.arrange(G, [T])
                self.arrange(Dp, M.negterms(T))
                G = w.cut(G, Dp)
            self.shape(G, self.ctx.node(1, i, (x1,)).kids)
            out[x1] = G
        for h in D.values():
            w.drop(h)
        w.mark(i, [out[x] for x in self.A])
        return out

    def run_k2(self) -> Proof:
        g, w, n = self.g, self.w, self.g.n
        D = {}
        for x1 in self.A:
            comps = [(self.ax("side", p, 1, (x1,), 0), self.lt(self.R(p, 2, n, (x1, x1))))
                     for p in PLAYERS]
            h = self.implied(self.top_side(n, x1), comps)
            self.shape(h, self.ctx.node(1, n, (x1,)).kids)
            D[x1] = h
        w.mark(n, [D[x] for x in self.A])
        for i in range(n - 1, 0, -1):
            D = self.descend(i, D)
        h = self.close_units(D[self.lam])
        for x2 in self.A:
            vec = (self.lam, x2)
            U = self.ctx.node(2, 1, vec)
            e = self.ax("win", II if g.is_winning(x2) else I, vec)
            self.shape(e, M.negterms(U))
            self.arrange(h, [U])
            h = w.cut(h, e)
        return h

    # k = 3 -------------------------------------------------------------------

    def third_row(self, i, x1, y1, y2, x2, x3, side) -> int:
        """``side v &v(-R3(x1x2x3) v -R3(x1x2x3))`` from the row-3 steps."""
        w, lam = self.w, self.lam
        u = (x1, x2, x3)
        lo = [self.lt(x) for x in self.both(3, i, u, -1)]
        base = self.top_side(i, x1) + [self.lt(-self.S(1, i, x1, lam, y1)),
                                       self.lt(-self.S(2, i + 1, x1, y2, x2))]
        base += [self.lt(x) for x in self.both(2, i + 1, (y1, y2), -1)] + lo
        parts = {}
        for y3 in self.opts(3, x3, y2):
            s3 = self.S(3, i, x3, y2, y3)
            v = (y1, y2, y3)
            comps = [(self.ax("step", p, 3, i, u, v), self.lt(self.R(p, 3, i + 1, v)))
                     for p in PLAYERS]
            parts[s3] = self.implied(base + [self.lt(-s3)], comps)
        h = self.resolve_total(self.ax("total", owner(i), 3, i, x3, y2), parts)
        self.arrange(h, lo)
        w.zip_terms(h, len(w.get(h).kids) - 2, 2)
        self.shape(h, list(side) + [w.get(h).kids[-1]])
        return h

    def second_row3(self, i, x1, y1, y2) -> int:
        def extra(side, x2, s2):
            comps = [(self.ax("step", p, 2, i, (x1, x2), (y1, y2)),
                      self.lt(self.R(p, 2, i, (x1, x2)))) for p in PLAYERS]
            hs = []
            for h, goal in comps:
                self.shape(h, side + [goal])
                hs.append(h)
            for x3 in self.A:
                hs.append(self.third_row(i, x1, y1, y2, x2, x3, side))
            return self.conj_all(hs)
        return self.lemma_second_row(i, x1, y1, y2, extra)

    def run_k3(self) -> Proof:
        g, w, n, lam = self.g, self.w, self.g.n, self.lam
        D = {}
        for x1 in self.A:
            side = self.top_side(n, x1)
            hs = []
            for p in PLAYERS:
                h = self.ax("side", p, 1, (x1,), 0)
                self.shape(h, side + [self.lt(self.R(p, 2, n, (x1, x1)))])
                hs.append(h)
            for x3 in self.A:
                vec = (x1, x1, x3)
                e = self.ax("win", II if g.is_winning(x3) else I, vec)
                self.shape(e, [self.lt(x) for x in self.both(3, n, vec, -1)])
                w.zip_terms(e, 0, 2)
                self.shape(e, side + [w.get(e).kids[-1]])
                hs.append(e)
            h = self.conj_all(hs)
            self.shape(h, self.ctx.node(1, n, (x1,)).kids)
            D[x1] = h
        w.mark(n, [D[x] for x in self.A])
        for i in range(n - 1, 0, -1):
            D = self.descend(i, D, self.second_row3)
        h = self.close_units(D[lam])
        for x2 in self.A:
            vec = (lam, x2)
            V = self.ctx.node(2, 1, vec)
            nt = M.negterms(V)
            hs = []
            for p in PLAYERS:
                e = self.ax("side", p, 2, vec, 0)
                self.shape(e, nt[:2] + [self.lt(self.R(p, 3, 1, vec + (x2,)))])
                hs.append(e)
            e = self.conj_all(hs)
            self.shape(e, nt)
            self.arrange(h, [V])
            h = w.cut(h, e)
        return h


def build_refutation(g: Game, pair: EncodedPair | None = None) -> Proof:
    """A refutation of Phi and Psi for `g`, checked rule by rule by check_proof."""
    pair = pair or encode_game(g)
    if g.k > 3:
        raise TooLarge("refutations are built for k <= 3")
    rf = _Refuter(pair)
    run = {1: rf.run_k1, 2: rf.run_k2, 3: rf.run_k3}[g.k]
    h = run()
    w = rf.w
    if w.get(h) != F(OR, (padded(BOTTOM, kid_class(w.get(h))) if w.depth > 2 else BOTTOM,)):
        raise RuntimeError(f"refutation did not close: {w.get(h)}")
    return w.finish(h, k=g.k, n=g.n, expansions=w.b.expansions, aux=w.b.aux)

"""Depth-1 schemas versus monotone circuits, depth-2 games versus point-line games.

A point-line game is a DAG of nodes, each holding points.  Pebbles sit on
the root points (black = 1, white = 0) and travel along the lines of the
arrows the players take; the pebble on the point of the leaf that is reached
decides the play.  Before gadget expansion a target point may collect
several source points under an ``or``/``and`` gate.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Mapping
from dataclasses import dataclass, field

from .errors import NonStandardForm, TooLarge, UnboundInput, WrongDepth
from .game import (
    I, II, Game, GameSchema, PositionalStrategy, label_value, owner,
)
from .generalized import Decision, GeneralizedGame, LocalStrategy, end, go, turn

BLACK, WHITE, NONE = "Black", "White", "none"
COLOR = {I: BLACK, II: WHITE}
PLAYER = {BLACK: I, WHITE: II}


# -- monotone circuits --------------------------------------------------------


@dataclass(eq=False)
class MonotoneCircuit:
    """Gates ``id -> (op, inputs)`` with op in {"or", "and"}; leaves ``id -> label``.

    A leaf label is a variable name or one of the constants "0", "1".
    """

    gates: dict
    leaves: dict
    root: Hashable

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        both = set(self.gates) & set(self.leaves)
        if both:
            raise ValueError(f"ids used as gate and leaf: {sorted(both, key=repr)}")
        for v, (op, ins) in self.gates.items():
            if op not in ("or", "and"):
                raise ValueError(f"gate {v!r} has unknown op {op!r}")
            for u in ins:
                if u not in self.gates and u not in self.leaves:
                    raise ValueError(f"gate {v!r} reads unknown node {u!r}")
        order = self.topological()
        if set(order) != set(self.gates) | set(self.leaves):
            raise ValueError("some nodes are unreachable from the root")

    def topological(self) -> list:
        """Nodes reachable from the root, inputs before the gates reading them."""
        if self.root not in self.gates and self.root not in self.leaves:
            raise ValueError("unknown root")
        out, state = [], {}
        stack = [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                state[v] = 2
                out.append(v)
                continue
            if state.get(v) == 2:
                continue
            if state.get(v) == 1:
                raise ValueError("the circuit has a cycle")
            state[v] = 1
            stack.append((v, True))
            for u in reversed(self.gates.get(v, ("or", ()))[1]):
                if state.get(u) == 1:
                    raise ValueError("the circuit has a cycle")
                if state.get(u) != 2:
                    stack.append((u, False))
        return out

    @property
    def size(self) -> int:
        return len(self.gates) + len(self.leaves)

    def variables(self) -> tuple:
        return tuple(sorted({x for x in self.leaves.values() if x not in ("0", "1")}))

    def depth(self) -> int:
        d: dict = {}
        for v in self.topological():
            ins = self.gates.get(v, ("or", ()))[1]
            d[v] = 1 + max((d[u] for u in ins), default=-1) if v in self.gates else 0
        return d[self.root]


def eval_circuit(c: MonotoneCircuit, inputs: Mapping[str, bool]) -> bool:
    val: dict = {}
    for v in c.topological():
        if v in c.leaves:
            lab = c.leaves[v]
            if lab not in ("0", "1") and lab not in inputs:
                raise UnboundInput(f"input {lab!r} is unassigned")
            val[v] = lab == "1" if lab in ("0", "1") else bool(inputs[lab])
        else:
            op, ins = c.gates[v]
            vals = [val[u] for u in ins]
            val[v] = any(vals) if op == "or" else all(vals)
    return val[c.root]


def circuit_to_json(c: MonotoneCircuit) -> dict:
    ids = {v: i for i, v in enumerate(sorted(c.gates, key=repr))}
    for v in sorted(c.leaves, key=repr):
        ids[v] = len(ids)
    gates = [{"op": c.gates[v][0], "in": [ids[u] for u in c.gates[v][1]]}
             for v in sorted(c.gates, key=repr)]
    return {"gates": gates, "root": ids[c.root],
            "leaves": {str(ids[v]): lab for v, lab in c.leaves.items()}}


def circuit_from_json(d: dict) -> MonotoneCircuit:
    gates = {i: (g["op"], tuple(g["in"])) for i, g in enumerate(d["gates"])}
    leaves = {int(k): str(v) for k, v in d["leaves"].items()}
    return MonotoneCircuit(gates, leaves, d["root"])


def _d1_rule(s):
    """Local rule and start symbol of a depth-1 schema, strict or generalized."""
    if isinstance(s, Game):
        s = GameSchema(s, {a: "1" if s.is_winning(a) else "0" for a in s.alphabet})
    g = s.game
    if g.k != 1:
        raise WrongDepth(f"expected depth 1, got {g.k}")
    if isinstance(g, GeneralizedGame):
        return g.n, g.start, lambda c, x: g.outcome(1, c, x, None)

    def rule(c, x):
        if c == g.n:
            return end(s.labels[x])
        opts = tuple(go(y) for y in g.options(True, x, g.lam))
        return opts[0] if len(opts) == 1 else Decision(owner(c), opts, ("move", 1, c))

    return g.n, g.lam, rule


def d1_to_circuit(s) -> MonotoneCircuit:
    """Circuit over the positions of a depth-1 schema.

    A position where Player I decides becomes an OR gate, one of Player II an
    AND gate; forced moves are skipped, so there are at most as many vertices
    as positions.
    """
    n, start, rule = _d1_rule(s)
    gates: dict = {}
    leaves: dict = {}
    pos: dict = {}
    label_leaf: dict = {}

    def leaf(lab):
        if lab not in label_leaf:
            label_leaf[lab] = ("leaf", lab)
            leaves[("leaf", lab)] = lab
        return label_leaf[lab]

    def outcome(o, c, x, path):
        if isinstance(o, Decision):
            ins = tuple(outcome(t, c, x, path + (i,)) for i, t in enumerate(o.options))
            v = ("pos", c, x, path)
            gates[v] = ("or" if o.mover == I else "and", ins)
            return v
        kind, y = o
        if kind == "end":
            return leaf(y)
        if kind == "turn":
            raise WrongDepth("a depth-1 play turned")
        return position(c + 1, y)

    def position(c, x):
        key = (c, x)
        if key not in pos:
            if c > n:
                raise ValueError("play leaves the board")
            pos[key] = None
            pos[key] = outcome(rule(c, x), c, x, ())
        elif pos[key] is None:
            raise ValueError("cyclic positions")
        return pos[key]

    root = position(1, start)
    return MonotoneCircuit(gates, leaves, root)


def _binarize(c: MonotoneCircuit) -> MonotoneCircuit:
    gates, leaves = {}, dict(c.leaves)
    fresh = itertools.count()

    def split(op, ins):
        if len(ins) <= 2:
            return ins
        mid = len(ins) // 2
        out = []
        for part in (ins[:mid], ins[mid:]):
            if len(part) == 1:
                out.append(part[0])
            else:
                v = ("split", next(fresh))
                gates[v] = (op, split(op, part))
                out.append(v)
        return tuple(out)

    for v, (op, ins) in c.gates.items():
        if not ins:
            leaves[v] = "0" if op == "or" else "1"
        else:
            gates[v] = (op, split(op, tuple(ins)))
    return MonotoneCircuit(gates, leaves, c.root)


def circuit_to_d1(c: MonotoneCircuit) -> GameSchema:
    """Depth-1 schema whose Player I wins exactly when the circuit outputs 1.

    Symbols are (node, column parity).  When the gate type does not match the
    player to move the move is a dummy that keeps the node, so OR and AND
    decisions fall on the right columns.
    """
    b = _binarize(c)
    nodes = b.topological()
    depth = b.depth()
    n = max(2, 1 + 2 * depth)
    syms = [("lam",)] + [(v, p) for v in nodes for p in (0, 1)]
    idx = {s: i for i, s in enumerate(syms)}
    m = len(syms)

    def succ(a: int, h: int) -> int:
        v, par = (b.root, 1) if a == 0 else syms[a]
        if v in b.leaves:
            return idx[(v, 1 - par)]
        op, ins = b.gates[v]
        if len(ins) == 1:
            return idx[(ins[0], 1 - par)]
        mine = (op == "or") == (par == 1)
        return idx[(ins[h], 1 - par)] if mine else idx[(v, 1 - par)]

    fwd = [[[succ(a, h) for _ in range(m)] for a in range(m)] for h in (0, 1)]
    bwd = [[[0] * m for _ in range(m)] for _ in (0, 1)]
    names = ["lam"] + [f"{v}@{p}" for v, p in syms[1:]]
    g = Game.dense(n, 1, m, fwd, bwd, (), names=names)
    g.meta["circuit_nodes"] = len(nodes)
    labels = {i: "0" for i in range(m)}
    for s, i in idx.items():
        if i and s[0] in b.leaves:
            labels[i] = b.leaves[s[0]]
    return GameSchema(g, labels, c.variables())


# -- point-line games ---------------------------------------------------------


@dataclass(eq=False)
class PointLineGame:
    """Point-line game with pebbles (labels) on the root points.

    ``lines[(P, Q)]`` maps a point of Q to its source point in P, or to
    ``(op, sources)`` for a gated point.  Owners are Black (Player I), White
    or "none" for nodes with a single successor.
    """

    root: Hashable
    owner: dict
    points: dict
    arrows: dict
    lines: dict
    labels: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.validate()

    def nodes(self) -> list:
        seen, order, stack = {self.root}, [], [self.root]
        while stack:
            p = stack.pop()
            order.append(p)
            for q in self.arrows.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return order

    def validate(self) -> None:
        for p in self.nodes():
            succ = self.arrows.get(p, ())
            pts = self.points.get(p, ())
            if not succ and len(pts) != 1:
                raise ValueError(f"leaf {p!r} must hold exactly one point")
            if len(succ) > 1 and self.owner.get(p, NONE) == NONE:
                raise ValueError(f"node {p!r} has several arrows but no owner")
            for q in succ:
                src = set(pts)
                for pt, ln in self.lines.get((p, q), {}).items():
                    if pt not in self.points[q]:
                        raise ValueError(f"line into unknown point {pt!r} of {q!r}")
                    used = ln[1] if isinstance(ln, tuple) and ln and ln[0] in ("or", "and") \
                        else (ln,)
                    if not set(used) <= src:
                        raise ValueError(f"line from unknown point of {p!r}")
        for pt in self.points.get(self.root, ()):
            if pt not in self.labels:
                raise UnboundInput(f"root point {pt!r} has no label")
        self._topo()

    def _topo(self) -> list:
        out, state = [], {}
        stack = [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                state[v] = 2
                out.append(v)
                continue
            if state.get(v):
                if state[v] == 1:
                    raise ValueError("the node graph has a cycle")
                continue
            state[v] = 1
            stack.append((v, True))
            for u in self.arrows.get(v, ()):
                if state.get(u) == 1:
                    raise ValueError("the node graph has a cycle")
                if not state.get(u):
                    stack.append((u, False))
        return out

    def is_leaf(self, p) -> bool:
        return not self.arrows.get(p)

    def gated(self):
        for (p, q), ln in self.lines.items():
            for pt, src in ln.items():
                if _is_gate(src):
                    yield p, q, pt

    def is_standard(self) -> bool:
        if any(True for _ in self.gated()):
            return False
        for p in self.nodes():
            for q in self.arrows.get(p, ()):
                if set(self.lines.get((p, q), {})) != set(self.points[q]):
                    return False
        return True

    @property
    def size(self) -> int:
        return sum(len(self.points[p]) for p in self.nodes())

    def variables(self) -> tuple:
        return tuple(sorted({v for v in self.labels.values() if v not in ("0", "1")}))


def _is_gate(src) -> bool:
    return isinstance(src, tuple) and len(src) == 2 and src[0] in ("or", "and") \
        and isinstance(src[1], tuple)


def _line_value(src, vals: Mapping, missing: bool) -> bool:
    if src is None:
        return missing
    if _is_gate(src):
        got = [vals[x] for x in src[1]]
        return any(got) if src[0] == "or" else all(got)
    return vals[src]


def _missing(plg: PointLineGame, p) -> bool:
    # an uncovered point gets the pebble of the player not moving
    return plg.owner.get(p, NONE) == WHITE


def _advance(plg: PointLineGame, p, q, vals: Mapping) -> dict:
    ln = plg.lines.get((p, q), {})
    miss = _missing(plg, p)
    return {pt: _line_value(ln.get(pt), vals, miss) for pt in plg.points[q]}


def root_values(plg: PointLineGame, assignment: Mapping | None = None) -> dict:
    return {pt: label_value(plg.labels[pt], assignment or {}) for pt in plg.points[plg.root]}


@dataclass
class NodeFunctions:
    """Truth table of f_P per node, indexed by bitmasks over ``points[P]``."""

    tables: dict
    order: dict
    root: Hashable

    def value(self, node, vals: Mapping) -> bool:
        mask = sum(1 << i for i, pt in enumerate(self.order[node]) if vals[pt])
        return self.tables[node][mask]

    def root_value(self, vals: Mapping) -> bool:
        return self.value(self.root, vals)


def node_functions(plg: PointLineGame, max_points: int = 16) -> NodeFunctions:
    """Bottom-up substitution recursion computing every f_P as a truth table."""
    tables, order = {}, {}
    for p in plg._topo():
        pts = tuple(plg.points[p])
        if len(pts) > max_points:
            raise TooLarge(f"node {p!r} has {len(pts)} points")
        order[p] = pts
        succ = plg.arrows.get(p, ())
        if not succ:
            tables[p] = (False, True)
            continue
        miss = _missing(plg, p)
        pick = all if plg.owner.get(p) == WHITE else any
        subs = []
        for q in succ:
            ln = plg.lines.get((p, q), {})
            subs.append((q, [ln.get(pt) for pt in order[q]]))
        tab = []
        for mask in range(1 << len(pts)):
            vals = {pt: bool(mask >> i & 1) for i, pt in enumerate(pts)}
            outs = []
            for q, srcs in subs:
                qm = 0
                for i, src in enumerate(srcs):
                    if _line_value(src, vals, miss):
                        qm |= 1 << i
                outs.append(tables[q][qm])
            tab.append(pick(outs))
        tables[p] = tuple(tab)
    return NodeFunctions(tables, order, plg.root)


def pl_solve(plg: PointLineGame, mode: str = "minimax", assignment: Mapping | None = None,
             strategies: Mapping | None = None, max_states: int = 1_000_000):
    """Winner ("Black"/"White") in play or minimax mode; NodeFunctions in functions mode.

    In play mode the players with a strategy (``{color: {node: successor}}``)
    follow it and the others play every option; Black wins iff all resulting
    plays are won by Black's side as minimax over the free choices.
    """
    if mode == "functions":
        return node_functions(plg)
    if mode not in ("minimax", "play"):
        raise ValueError(f"unknown mode {mode!r}")
    strategies = (strategies or {}) if mode == "play" else {}
    memo: dict = {}

    def rec(p, vals: dict) -> bool:
        succ = plg.arrows.get(p, ())
        if not succ:
            return vals[plg.points[p][0]]
        key = (p, tuple(sorted(vals.items(), key=repr)))
        got = memo.get(key)
        if got is not None:
            return got
        if len(memo) > max_states:
            raise TooLarge("too many pebble configurations")
        who = plg.owner.get(p, NONE)
        fixed = strategies.get(who)
        if fixed is not None and len(succ) > 1:
            q = fixed[p]
            if q not in succ:
                raise ValueError(f"strategy leaves {p!r} along a missing arrow")
            got = rec(q, _advance(plg, p, q, vals))
        else:
            outs = (rec(q, _advance(plg, p, q, vals)) for q in succ)
            got = all(outs) if who == WHITE else any(outs)
        memo[key] = got
        return got

    return BLACK if rec(plg.root, root_values(plg, assignment)) else WHITE


# -- depth 2 to point-line ----------------------------------------------------


def _d2_parts(g):
    if isinstance(g, GameSchema):
        return g.game, g.labels
    return g, None


def d2_to_pointline(g) -> PointLineGame:
    """Nodes are first-round positions (j, a); their points (j, a, c) are the
    second-round positions in column j.  Root point labels carry the winning
    set (or the schema labels)."""
    g, labels = _d2_parts(g)
    if not isinstance(g, Game) or g.k != 2:
        raise WrongDepth("expected a strict depth-2 game")
    A = g.alphabet
    if labels is None:
        labels = {a: "1" if g.is_winning(a) else "0" for a in A}
    root = (1, g.lam)
    own, pts, arrows, lines = {}, {}, {}, {}
    todo, seen = [root], {root}
    while todo:
        node = todo.pop()
        j, a = node
        if j == g.n:
            own[node], pts[node], arrows[node] = NONE, ((j, a, a),), ()
            continue
        own[node] = COLOR[owner(j)]
        pts[node] = tuple((j, a, c) for c in A)
        succ = tuple((j + 1, b) for b in g.options(True, a, g.lam))
        arrows[node] = succ
        for q in succ:
            if q not in seen:
                seen.add(q)
                todo.append(q)
    for node, succ in arrows.items():
        j, a = node
        for q in succ:
            ln = {}
            for pt in pts[q]:
                d = pt[2]
                srcs = tuple((j, a, c) for c in g.options(False, a, d))
                if len(srcs) == 1:
                    ln[pt] = srcs[0]
                else:
                    ln[pt] = ("or" if owner(j + 1) == I else "and", srcs)
            lines[(node, q)] = ln
    lab = {(1, g.lam, c): labels[c] for c in A}
    return PointLineGame(root, own, pts, arrows, lines, lab,
                         meta={"n": g.n, "from": "depth2"})


def expand_gadgets(plg: PointLineGame) -> PointLineGame:
    """Replace gated points by decision gadgets, one gate at a time.

    For an arrow P -> Q with gated points q_1..q_m the arrow is replaced by a
    chain.  Node D_t copies the points of its predecessor and belongs to Black
    for an or-gate, to White for an and-gate; it has one successor D_t,s per
    source s of q_t, which adds a point ("g", q_t) fed by s.  The last D_m,s
    lead to Q, where gated points read their ("g", q) copy.
    """
    own, pts, arrows, lines = dict(plg.owner), dict(plg.points), {}, {}
    gadgets, entry = {}, {}
    for p in plg.nodes():
        new_succ = []
        for q in plg.arrows.get(p, ()):
            ln = plg.lines.get((p, q), {})
            gates = [(pt, src) for pt, src in ln.items()
                     if _is_gate(src) and len(set(src[1])) > 1]
            if not gates:
                lines[(p, q)] = {pt: (src[1][0] if _is_gate(src) else src)
                                 for pt, src in ln.items()}
                new_succ.append(q)
                continue
            cur_pts = tuple(plg.points[p])
            prev = [p]
            for t, (pt, (op, srcs)) in enumerate(gates):
                srcs = tuple(dict.fromkeys(srcs))
                d = ("D", p, q, t)
                own[d], pts[d] = (BLACK if op == "or" else WHITE), cur_pts
                for u in prev:
                    lines[(u, d)] = {x: x for x in cur_pts}
                    (new_succ if u == p else arrows.setdefault(u, [])).append(d)
                gadgets[d] = (p, q, pt, srcs)
                nxt_pts = cur_pts + (("g", pt),)
                prev = []
                arrows[d] = []
                for i, s in enumerate(srcs):
                    ds = ("D", p, q, t, i)
                    own[ds], pts[ds] = NONE, nxt_pts
                    arrows[d].append(ds)
                    lines[(d, ds)] = {x: x for x in cur_pts} | {("g", pt): s}
                    prev.append(ds)
                cur_pts = nxt_pts
            gated = {pt for pt, _ in gates}
            for u in prev:
                arrows.setdefault(u, []).append(q)
                lines[(u, q)] = {x: (("g", x) if x in gated else
                                     (src[1][0] if _is_gate(src) else src))
                                 for x, src in ln.items()}
            entry[(p, q)] = ("D", p, q, 0)
        arrows[p] = new_succ
    arrows = {k: tuple(v) for k, v in arrows.items()}
    meta = dict(plg.meta, gadgets=gadgets, entry=entry, expanded=True)
    return PointLineGame(plg.root, own, pts, arrows, lines, dict(plg.labels), meta=meta)


def pointline_to_d2(plg: PointLineGame) -> GeneralizedGame:
    """Depth-2 game: round 1 marks a root-to-leaf path, round 2 walks the lines
    back from the leaf point to a root point, whose label decides."""
    if not plg.is_standard():
        raise NonStandardForm("expand the gadgets first")
    longest: dict = {}
    for p in plg._topo():
        longest[p] = 1 + max((longest[q] for q in plg.arrows.get(p, ())), default=0)
    n = max(2, longest[plg.root])

    def rule(r, c, cur, above):
        if r == 1:
            p = cur[1]
            succ = plg.arrows.get(p, ())
            if c == n:
                if succ:
                    raise ValueError("round one ended before a leaf")
                return turn(("p", p, plg.points[p][0]))
            if not succ:
                return go(cur)
            opts = tuple(go(("n", q)) for q in succ)
            if len(opts) == 1:
                return opts[0]
            return Decision(PLAYER[plg.owner[p]], opts, ("node", p))
        q, pt = cur[1], cur[2]
        if c == 1:
            return end(plg.labels[pt])
        p = above[1]
        if p == q:
            return go(cur)
        return go(("p", p, plg.lines[(p, q)][pt]))

    return GeneralizedGame(n, 2, ("n", plg.root), rule,
                           meta={"from": "pointline", "n": n})


# -- strategy translations ----------------------------------------------------


def d2_strategy_to_pl(g, plg: PointLineGame, s: PositionalStrategy) -> dict:
    """Positional depth-2 strategy as a choice per node of the expanded game."""
    g, _ = _d2_parts(g)
    color = COLOR[s.player]
    entry = plg.meta.get("entry", {})
    out = {}
    for p in plg.nodes():
        succ = plg.arrows.get(p, ())
        if len(succ) < 2 or plg.owner.get(p) != color:
            continue
        gad = plg.meta.get("gadgets", {}).get(p)
        if gad is None:
            j, a = p
            c = s.get((1, j, a, g.lam))
            q = (j + 1, c)
            out[p] = entry.get((p, q), q)
        else:
            (j, a), _, pt, srcs = gad
            c = s.get((2, j + 1, a, pt[2]))
            out[p] = succ[srcs.index((j, a, c))]
    return out


def pl_strategy_to_d2(plg: PointLineGame, color: str, choice: Mapping) -> LocalStrategy:
    """Point-line node choices as a local strategy of ``pointline_to_d2(plg)``."""

    def choose(key, d):
        p = d.tag[1]
        return plg.arrows[p].index(choice[p])

    return LocalStrategy(PLAYER[color], choose)


def pl_to_json(plg: PointLineGame) -> dict:
    nodes = plg.nodes()
    nid = {p: i for i, p in enumerate(nodes)}
    pid = {p: {pt: i for i, pt in enumerate(plg.points[p])} for p in nodes}

    def src(p, s):
        if _is_gate(s):
            return {"op": s[0], "from": [pid[p][x] for x in s[1]]}
        return pid[p][s]

    return {
        "root": nid[plg.root],
        "nodes": [{"owner": plg.owner.get(p, NONE), "points": len(plg.points[p]),
                   "name": repr(p)} for p in nodes],
        "arrows": [{"from": nid[p], "to": nid[q],
                    "lines": {str(pid[q][pt]): src(p, s)
                              for pt, s in plg.lines.get((p, q), {}).items()}}
                   for p in nodes for q in plg.arrows.get(p, ())],
        "labels": [plg.labels[pt] for pt in plg.points[plg.root]],
    }


def pl_from_json(d: dict) -> PointLineGame:
    own, pts, arrows, lines = {}, {}, {}, {}
    for i, nd in enumerate(d["nodes"]):
        own[i] = nd.get("owner", NONE)
        pts[i] = tuple(range(nd["points"]))
        arrows[i] = []
    for a in d["arrows"]:
        p, q = a["from"], a["to"]
        arrows[p].append(q)
        ln = {}
        for k, s in a["lines"].items():
            ln[int(k)] = (s["op"], tuple(s["from"])) if isinstance(s, dict) else s
        lines[(p, q)] = ln
    labels = dict(enumerate(d["labels"]))
    return PointLineGame(d["root"], own, pts, {k: tuple(v) for k, v in arrows.items()},
                         lines, labels)


def positions_d2(g: Game) -> int:
    """Number of reachable (column, first-row symbol, second-row symbol) positions."""
    plg = d2_to_pointline(g)
    return plg.size


__all__ = [
    "BLACK", "WHITE", "MonotoneCircuit", "NodeFunctions", "PointLineGame",
    "circuit_from_json", "circuit_to_d1", "circuit_to_json", "d1_to_circuit",
    "d2_strategy_to_pl", "d2_to_pointline", "eval_circuit", "expand_gadgets",
    "node_functions", "pl_from_json", "pl_solve", "pl_strategy_to_d2", "pl_to_json",
    "pointline_to_d2", "positions_d2", "root_values",
]

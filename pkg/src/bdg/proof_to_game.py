"""From refutations to games.

A refutation of a partitioned CNF becomes a traversal game.  Columns are the
proof lines read backwards, so round 1 starts at the final padded bottom.
Round r plays a node of depth r: odd rounds walk towards the refuted CNF and
even rounds walk back.  Between neighbouring lines a node moves along the
rule that links them; nodes untouched by the rule keep their path.

Whenever the rule offers several counterparts of a node, the legal one is the
child of the node played one round earlier on the target line.  The only real
choices are the premise of a resolution step (going left), the branch of a
dual resolution (going right) and the literal of a clause of the CNF.  Each
belongs to the player owning the pivot variable or the clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .calculus import Proof, check_proof
from .errors import NotSatisfying, PolarityViolation, TooLarge, UncheckedProof
from .formula import BOT, TOP, Cnf, F, pad_cnf
from .game import I, II, GameSchema, verify_positional
from .generalized import (Decision, GeneralizedGame, LocalStrategy, end, go, lift_strategy,
                          normalize_generalized, turn)

OWNER_OF_TAG = {"x": I, "y": II, "z": I, "zp": II}


@dataclass(eq=False)
class PartitionedRefutation:
    refutation: Proof
    cnf: Cnf
    challenges: dict = field(default_factory=dict)   # clause index -> (z, z')

    @property
    def depth(self) -> int:
        return self.refutation.cls.depth

    def owner(self, lit_or_var: int) -> str:
        return OWNER_OF_TAG.get(self.cnf.partition.get(abs(lit_or_var), "x"), I)

    def clause_owner(self, j: int) -> str:
        if j in self.challenges:
            return I
        owners = {self.owner(x) for x in self.cnf.clauses[j]}
        return owners.pop() if len(owners) == 1 else I


def _chain_leaf(f: F) -> F:
    while not f.is_leaf and len(f.kids) == 1:
        f = f.kids[0]
    return f


def _const_chain(f: F, op: str) -> bool:
    g = _chain_leaf(f)
    return g.is_leaf and g.op == op


def _at(f: F, path: tuple) -> F | None:
    for i in path:
        if f.is_leaf or not 0 <= i < len(f.kids):
            return None
        f = f.kids[i]
    return f


# -- node connections ---------------------------------------------------------


def connect(before: F, step, q: tuple, right: bool):
    """Counterparts of node `q` across one rule application.

    Returns ``("det", paths)`` (the legal one is picked by the previous
    round) or ``("choice", pivot, paths)`` for a decision of the pivot owner.
    `before` is the premise line; `q` lives in the premise when `right` holds
    and in the conclusion otherwise.
    """
    P, d = step.path, len(step.path)
    if len(q) <= d or q[:d] != P:
        return ("det", [q])
    j, rest = q[d], q[d + 1:]
    node = _at(before, P)
    kids = node.kids
    tag = step.tag

    def at(i, *tail):
        return P + (i,) + tuple(tail)

    def one(i):
        return ("det", [P + (i,) + rest])

    if tag == "Permute":
        return one(step.perm.index(j)) if right else one(step.perm[j])
    if tag in ("Contract", "Clone"):
        pos = step.pos
        merge = right == (tag == "Contract")
        if merge:
            if j <= pos:
                return one(j)
            return one(pos) if j == pos + 1 else one(j - 1)
        if j < pos:
            return one(j)
        if j == pos:
            return ("det", [at(pos, *rest), at(pos + 1, *rest)])
        return one(j + 1)
    if tag in ("BotElim", "WeakenAnd", "WeakenOr", "TopIntro"):
        pos = step.pos
        removes = tag in ("BotElim", "WeakenAnd")
        if removes == right:
            # the premise loses kid pos going right / the conclusion gained it going left
            if j == pos:
                return ("det", [])
            return one(j) if j < pos else one(j - 1)
        return one(j) if j < pos else one(j + 1)
    if tag == "DualRes":
        pos, split, p = step.pos, step.split, step.pivot
        nb = len(kids[pos].kids) - split - 1
        if right:
            if j < pos:
                return one(j)
            if j > pos:
                return one(j + 1)
            if not rest:
                return ("choice", p, [at(pos), at(pos + 1)])
            i, r2 = rest[0], rest[1:]
            if i < split:
                return ("det", [at(pos, i, *r2)])
            if i == split:
                return ("det", [at(pos, split, *r2), at(pos + 1, nb, *r2)])
            return ("det", [at(pos + 1, i - split - 1, *r2)])
        if j < pos:
            return one(j)
        if j > pos + 1:
            return one(j - 1)
        if not rest:
            return ("det", [at(pos)])
        i, r2 = rest[0], rest[1:]
        if j == pos:
            return ("det", [at(pos, i, *r2)])
        if i < nb:
            return ("det", [at(pos, split + 1 + i, *r2)])
        return ("det", [at(pos, split, *r2)])
    if tag == "Res":
        s, p = step.split, step.pivot
        na, nb = len(kids[s].kids) - 1, len(kids[s + 1].kids) - 1
        if right:
            if j < s:
                return one(j)
            if j > s + 1:
                return one(j - 1)
            if not rest:
                return ("det", [at(s)])
            i, r2 = rest[0], rest[1:]
            if j == s:
                return ("det", [at(s, i, *r2)])
            if i < nb:
                return ("det", [at(s, na + 1 + i, *r2)])
            return ("det", [at(s, na, *r2)])
        if j < s:
            return one(j)
        if j > s:
            return one(j + 1)
        if not rest:
            return ("choice", p, [at(s), at(s + 1)])
        i, r2 = rest[0], rest[1:]
        if i < na:
            return ("det", [at(s, i, *r2)])
        if i == na:
            return ("det", [at(s, na, *r2), at(s + 1, nb, *r2)])
        return ("det", [at(s + 1, i - na - 1, *r2)])
    raise ValueError(f"unknown rule {tag}")


# -- the traversal game -------------------------------------------------------


class Inconsistent(RuntimeError):
    """A node lost its connection to the previous round (a construction bug)."""


@dataclass(eq=False)
class TraversalGame:
    game: GeneralizedGame
    source: PartitionedRefutation
    rounds: int
    stats: dict = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return self.rounds

    def line_of(self, c: int) -> int:
        return len(self.source.refutation.lines) - c

    def provenance(self, r: int, c: int, sym) -> tuple:
        """(proof line, node path, direction, phase) of a game state."""
        t = self.line_of(c)
        phase = "node" if sym[0] == "n" else "hit"
        return (t, sym[1], "left" if r % 2 else "right", phase)

    def materialize(self, max_states: int = 1_000_000) -> dict:
        """Provenance of the states reachable in an over-approximation.

        Symbols are collected per (round, column); a cell may read any symbol
        collected one round earlier at its neighbour, or nothing.  Pairs that
        no real play can produce and that the rule rejects are skipped.
        """
        gg = self.game
        seen = {(1, 1): {gg.start}}
        out: dict = {}
        for r in range(1, gg.k + 1):
            cols = range(1, gg.n + 1) if r % 2 else range(gg.n, 0, -1)
            for c in cols:
                for x in list(seen.get((r, c), ())):
                    out[(r, c, x)] = self.provenance(r, c, x)
                    if len(out) > max_states:
                        raise TooLarge("too many states to materialize")
                    nc = gg.step(c, r)
                    aboves = {None} | seen.get((r - 1, nc), set())
                    for above in aboves:
                        try:
                            stack = [gg.outcome(r, c, x, above)]
                        except Inconsistent:
                            continue
                        while stack:
                            o = stack.pop()
                            if isinstance(o, Decision):
                                stack.extend(o.options)
                            elif o[0] == "go":
                                seen.setdefault((r, nc), set()).add(o[1])
                            elif o[0] == "turn":
                                seen.setdefault((r + 1, c), set()).add(o[1])
        return out


def _label_loser(owner: str) -> str:
    return "0" if owner == I else "1"


def build_traversal_game(pr: PartitionedRefutation, rounds: int | None = None,
                         check: bool = True) -> TraversalGame:
    """The full traversal game (`rounds` = proof depth) or a shortened one."""
    proof = pr.refutation
    if check:
        res = check_proof(proof)
        if not res:
            raise UncheckedProof(f"refutation fails at step {res.index}: {res.error}")
    K = proof.cls.depth
    if K < 2:
        raise UncheckedProof("traversal games need depth at least 2")
    if proof.lines[0] != pad_cnf(pr.cnf, K):
        raise UncheckedProof("the first line is not the padded CNF")
    lines, steps = proof.lines, proof.steps
    m = len(lines)
    rounds = K if rounds is None else rounds
    cd = K - 1 if K % 2 == 0 else K - 2          # depth of a clause node in line 1
    stats = {"unconstrained": 0}

    def lit_owner(x: int) -> str:
        return pr.owner(x)

    def leaf_lit(t: int, q: tuple) -> int:
        f = _chain_leaf(_at(lines[t], q))
        return f.lit if f.op == "lit" else 0

    def finish(r: int, x: int):
        """Play enters round r+1 with literal x to be played next."""
        return end(_label_loser(lit_owner(x)))

    def enter(r: int, t: int, q: tuple, x: int):
        if r >= rounds:
            return finish(r, x)
        return turn(("n", q))

    def at_cnf(r: int, q: tuple):
        j = q[0]
        if r == K:
            return end(_label_loser(lit_owner(leaf_lit(0, q))))
        if r < cd:
            return enter(r, 0, q + (0,), 0)
        clause = _at(lines[0], q)
        opts = []
        for i, kid in enumerate(clause.kids):
            x = _chain_leaf(kid).lit
            o = enter(r, 0, q + (i,), x)
            if j in pr.challenges and x == -pr.challenges[j][1]:
                z = pr.challenges[j][0]
                o = Decision(II, (end(f"z{z}"), o), ("challenge", j, z))
            opts.append(o)
        if len(opts) == 1:
            return opts[0]
        lits = tuple(_chain_leaf(kid).lit for kid in clause.kids)
        return Decision(pr.clause_owner(j), tuple(opts), ("clause", j, lits))

    def rule(r, c, cur, above):
        t = m - c
        kind, q = cur[0], cur[1]
        left = r % 2 == 1
        if kind == "h":
            if r >= rounds:
                return end(_label_loser(lit_owner(cur[2])))
            return turn(("n", q + (0,)))
        if left and t == 0:
            return at_cnf(r, q)
        if not left and t == m - 1:
            raise Inconsistent("a rightward play reached the last line")
        s = t - 1 if left else t
        tt = t - 1 if left else t + 1
        res = connect(lines[s], steps[s], q, not left)
        want = None if above is None else above[1]

        def target(paths):
            if want is not None:
                paths = [p for p in paths if p[:-1] == want]
            elif len(paths) > 1:
                stats["unconstrained"] += 1
                paths = paths[:1]
            if len(paths) != 1:
                raise Inconsistent(f"round {r} line {t} node {q}: no legal counterpart")
            p = paths[0]
            f = _at(lines[tt], p)
            if f is None:
                raise Inconsistent(f"round {r} line {tt}: no node {p}")
            if _const_chain(f, TOP if left else BOT):
                return go(("h", p, leaf_lit(t, q)))
            return go(("n", p))

        if res[0] == "det":
            return target(res[1])
        _, piv, paths = res
        lits = (piv, -piv) if left else (piv, -piv)
        opts = tuple(target([p]) for p in paths)
        return Decision(lit_owner(piv), opts, ("res" if left else "dualres", s, lits))

    gg = GeneralizedGame(m, rounds, ("n", (0,)), rule,
                         meta={"proof_depth": K, "kind": "traversal"})
    return TraversalGame(gg, pr, rounds, stats)


def abridge(t: TraversalGame) -> TraversalGame:
    """Drop the bottom round: entering it ends the play against the owner
    of the literal that would be played there."""
    return build_traversal_game(t.source, rounds=t.rounds - 1, check=False)


# -- strategies from assignments ----------------------------------------------


def _val(a, x: int) -> bool:
    return bool(a.get(abs(x), False)) == (x > 0)


def extract_strategy(t: TraversalGame, assignment, player: str) -> LocalStrategy:
    """Positional strategy of `player` read off a satisfying assignment.

    Resolution going left: take the premise whose pivot literal is false.
    Dual resolution going right: take the branch whose literal is true.
    Clause of the CNF: the first true literal.  Challenge: only when the
    challenged literal is false for Player II's reading of the z variables.
    """
    pr = t.source
    side = [c for j, c in enumerate(pr.cnf.clauses)
            if pr.clause_owner(j) == player and j not in pr.challenges]
    for c in side:
        if not any(_val(assignment, x) for x in c):
            raise NotSatisfying(f"clause {c} is false")

    def choose(key, d: Decision) -> int:
        kind = d.tag[0]
        if kind == "res":
            return 0 if not _val(assignment, d.tag[2][0]) else 1
        if kind == "dualres":
            return 0 if _val(assignment, d.tag[2][0]) else 1
        if kind == "clause":
            for i, x in enumerate(d.tag[2]):
                if _val(assignment, x):
                    return i
            raise NotSatisfying(f"no true literal in clause {d.tag[1]}")
        if kind == "challenge":
            z = d.tag[2]
            return 0 if not assignment.get(z, False) else 1
        raise ValueError(kind)

    return LocalStrategy(player, choose)


def verify_extracted(t: TraversalGame, strat: LocalStrategy, labels=None) -> bool:
    """Verify the lifted strategy on the normalised strict game."""
    g = normalize_generalized(t.game, labels)
    ok, _ = verify_positional(g, lift_strategy(g, strat))
    return ok


# -- monotone schemas ---------------------------------------------------------


def _side_of(c, part) -> str:
    tags = {part.get(abs(x), "x") for x in c}
    if "x" in tags and "y" in tags:
        raise PolarityViolation(f"clause {c} mixes both sides")
    if "x" in tags:
        return "x"
    if "y" in tags:
        return "y"
    return "x" if all(x > 0 for x in c) else "y"


@dataclass(eq=False)
class MonotoneSchema:
    schema: GameSchema
    traversal: TraversalGame
    zprime: dict            # z -> z'

    def labels(self, zassign) -> dict:
        return {f"z{z}": bool(zassign[z]) for z in self.zprime}

    def player_assignment(self, player: str, side_assign, zassign) -> dict:
        """Valuation used by `player`: its own variables, z, and z' read as not z."""
        a = dict(side_assign)
        for z, zp in self.zprime.items():
            a[z] = bool(zassign[z])
            a[zp] = not zassign[z]
        return a


def build_monotone_schema(pr: PartitionedRefutation) -> MonotoneSchema:
    """Game schema over the z variables of a refutation of Phi(x,z) & Psi(y,z).

    z may occur only positively in Phi and only negatively in Psi.  Psi gets
    fresh z' in place of the negated z, the clauses ``-z v -z'`` are added,
    and each Psi clause is recovered by resolution before the given
    refutation is replayed.  At a clause ``-z v -z'`` Player I picks the
    literal; picking ``-z'`` lets Player II end the play with label z.
    """
    from .game_to_proof import Work

    proof, cnf = pr.refutation, pr.cnf
    part = dict(cnf.partition)
    zs = sorted(v for v, t in part.items() if t == "z")
    K = proof.cls.depth
    if K > 4:
        raise UncheckedProof("schemas are built for refutations of depth at most 4")
    res = check_proof(proof)
    if not res:
        raise UncheckedProof(f"refutation fails at step {res.index}: {res.error}")
    for c in cnf.clauses:
        side = _side_of(c, part)
        for x in c:
            if part.get(abs(x)) == "z" and (x > 0) != (side == "x"):
                raise PolarityViolation(f"z{abs(x)} occurs with the wrong sign in {c}")
    top = max([abs(x) for c in cnf.clauses for x in c] + zs)
    zp = {z: top + 1 + i for i, z in enumerate(zs)}
    orig = [tuple(c) for c in cnf.clauses]
    primed = [tuple(zp[-x] if x < 0 and -x in zp else x for x in c) for c in orig]
    gates = [(-z, -zp[z]) for z in zs]
    clauses = primed + gates
    w = Work(clauses, K)
    made = []
    for c, c2 in zip(orig, primed):
        if c == c2:
            made.append(w.axiom(c2, zipped=True))
            continue
        h = w.axiom(c2)
        for x in c:
            if x < 0 and -x in zp:
                h = w.res(h, w.axiom((x, -zp[-x])), zp[-x])
        w.settle(h, [w.lt(x) for x in dict.fromkeys(c)])
        if K == 4 and len(c) > 1:
            w.zip_terms(h, 0, len(c))
        made.append(h)
    for j in reversed(range(w.nax)):
        w.b.do("WeakenAnd", (), pos=j)
    pre = w.b.proof()
    if pre.lines[-1] != proof.lines[0]:
        raise UncheckedProof("recovered line differs from the refuted CNF")
    full = Proof(proof.cls, pre.lines + proof.lines[1:], list(pre.steps) + list(proof.steps),
                 meta={"prefix": len(pre.lines) - 1})
    part2 = dict(part)
    for z in zs:
        part2[zp[z]] = "zp"
    challenges = {len(primed) + i: (z, zp[z]) for i, z in enumerate(zs)}
    src = PartitionedRefutation(full, Cnf(clauses, part2), challenges)
    t = abridge(build_traversal_game(src))
    t.game.meta["schema"] = True
    schema = GameSchema(t.game, {}, tuple(f"z{z}" for z in zs))
    return MonotoneSchema(schema, t, zp)

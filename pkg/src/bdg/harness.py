"""Oracles and end-to-end pipelines.

`sat_solve` is a small DPLL with unit propagation, independent of the proof
machinery.  `run_pipeline` chains the reductions and records one entry per
stage; the first failing stage stops the run.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import asdict, dataclass, field

from .calculus import check_proof
from .errors import BdgError, TooLarge
from .formula import Cnf, cnf_true
from .game import I, II, Game, find_positional, solve_bruteforce
from .generalized import plays_against, solve_generalized

UNSAT = None


def _clauses(c) -> list[tuple[int, ...]]:
    if isinstance(c, Cnf):
        return [tuple(x) for x in c.clauses]
    return [tuple(x) for x in c]


def sat_solve(c, mode: str = "dpll", max_vars: int | None = 5000) -> dict | None:
    """A model as ``{var: bool}`` over the variables of `c`, or None (UNSAT)."""
    cls = _clauses(c)
    vs = sorted({abs(x) for cl in cls for x in cl})
    if mode == "exhaustive":
        if len(vs) > 15:
            raise TooLarge(f"{len(vs)} variables exceed the exhaustive guard")
        for bits in itertools.product((False, True), repeat=len(vs)):
            a = dict(zip(vs, bits))
            if cnf_true(cls, a):
                return a
        return UNSAT
    if max_vars is not None and len(vs) > max_vars:
        raise TooLarge(f"{len(vs)} variables exceed the guard {max_vars}")
    if any(not cl for cl in cls):
        return UNSAT
    model = _Dpll(cls).solve()
    if model is None:
        return UNSAT
    return {v: model.get(v, False) for v in vs}


class _Dpll:
    """Iterative DPLL: two watched literals, chronological backtracking."""

    def __init__(self, clauses: Sequence[tuple[int, ...]]):
        self.clauses = [tuple(dict.fromkeys(c)) for c in clauses
                        if not any(-x in c for x in c)]
        self.val: dict = {}
        self.trail: list = []
        self.watch: dict = {}
        self.units = []
        for i, c in enumerate(self.clauses):
            if len(c) == 1:
                self.units.append(c[0])
            else:
                for x in c[:2]:
                    self.watch.setdefault(x, []).append(i)
        self.wpos = [[0, 1] if len(c) > 1 else [0, 0] for c in self.clauses]
        score: dict = {}
        for c in self.clauses:
            for x in c:
                score[abs(x)] = score.get(abs(x), 0) + 1.0 / len(c)
        self.order = sorted(score, key=lambda v: -score[v])

    def value(self, x: int):
        v = self.val.get(abs(x))
        return None if v is None else (v == (x > 0))

    def assign(self, x: int) -> bool:
        got = self.value(x)
        if got is not None:
            return got
        self.val[abs(x)] = x > 0
        self.trail.append(x)
        return True

    def propagate(self, start: int) -> bool:
        q = start
        while q < len(self.trail):
            x = -self.trail[q]
            q += 1
            ws = self.watch.get(x, [])
            keep = []
            conflict = False
            for i in ws:
                if conflict:
                    keep.append(i)
                    continue
                c, wp = self.clauses[i], self.wpos[i]
                me = 0 if c[wp[0]] == x else 1
                them = c[wp[1 - me]]
                if self.value(them) is True:
                    keep.append(i)
                    continue
                moved = False
                for j, y in enumerate(c):
                    if j in wp or self.value(y) is False:
                        continue
                    wp[me] = j
                    self.watch.setdefault(y, []).append(i)
                    moved = True
                    break
                if moved:
                    continue
                keep.append(i)
                if self.value(them) is False or not self.assign(them):
                    conflict = True
            self.watch[x] = keep
            if conflict:
                return False
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            del self.val[abs(self.trail.pop())]

    def solve(self) -> dict | None:
        for x in self.units:
            if not self.assign(x):
                return None
        if not self.propagate(0):
            return None
        stack = []          # (trail mark, literal tried, flipped)
        while True:
            v = next((v for v in self.order if v not in self.val), None)
            if v is None:
                return dict(self.val)
            mark = len(self.trail)
            stack.append((mark, -v, False))
            self.assign(-v)
            ok = self.propagate(mark)
            while not ok:
                while stack and stack[-1][2]:
                    stack.pop()
                if not stack:
                    return None
                mark, x, _ = stack.pop()
                self.undo(mark)
                stack.append((mark, -x, True))
                self.assign(-x)
                ok = self.propagate(mark)


def all_models(c, variables: Iterable[int] | None = None, limit: int = 1 << 16) -> Iterator[dict]:
    """Every model over `variables` (default: those of `c`), by blocking clauses."""
    cls = _clauses(c)
    vs = sorted(set(variables) if variables is not None
                else {abs(x) for cl in cls for x in cl})
    if not vs:
        if sat_solve(cls) is not None or not cls:
            yield {}
        return
    extra = [(v, -v) for v in vs]       # mention every variable
    count = 0
    while True:
        m = sat_solve(cls + extra)
        if m is None:
            return
        a = {v: m[v] for v in vs}
        yield a
        count += 1
        if count >= limit:
            raise TooLarge("too many models")
        cls.append(tuple(-v if a[v] else v for v in vs))


def side_clauses(cnf: Cnf, player: str, owner_of=None) -> list[tuple[int, ...]]:
    if owner_of is None:
        tag = "x" if player == I else "y"
        return [c for c in cnf.clauses if {cnf.owner(x) for x in c} <= {tag}]
    return [c for j, c in enumerate(cnf.clauses) if owner_of(j) == player]


def restrict(clauses: Iterable[Sequence[int]], fixed: Mapping[int, bool]) -> list | None:
    """Clauses under a partial assignment; None if one becomes empty."""
    out = []
    for c in clauses:
        if any(abs(x) in fixed and fixed[abs(x)] == (x > 0) for x in c):
            continue
        rest = tuple(x for x in c if abs(x) not in fixed)
        if not rest:
            return None
        out.append(rest)
    return out


# -- pipelines ----------------------------------------------------------------


@dataclass
class Stage:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class PipelineReport:
    kind: str
    stages: list = field(default_factory=list)
    sizes: dict = field(default_factory=dict)
    verdict: str = "ok"
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.verdict == "ok"

    def to_json(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            for s in d["stages"]:
                s.pop("seconds", None)
        return d


class _Abort(Exception):
    pass


class _Run:
    def __init__(self, kind: str, seed=None):
        self.rep = PipelineReport(kind, seed=seed)

    def stage(self, name: str, fn):
        t0 = time.perf_counter()
        try:
            ok, detail, value = fn()
        except BdgError as e:
            ok, detail, value = False, {"error": f"{type(e).__name__}: {e}"}, None
        self.rep.stages.append(Stage(name, bool(ok), detail, time.perf_counter() - t0))
        if not ok:
            self.rep.verdict = f"failed at {name}"
            raise _Abort
        return value


def _game_roundtrip(run: _Run, g: Game, limit: int, strict: bool | None):
    from .game_to_proof import build_refutation, encode_game, strategy_witness
    from .proof_to_game import (PartitionedRefutation, abridge, build_traversal_game,
                                extract_strategy, verify_extracted)

    rep = run.rep
    def encode():
        pg = encode_game(g)
        return True, {"phi": len(pg.phi.clauses), "psi": len(pg.psi.clauses)}, pg
    pair = run.stage("encode_game", encode)
    rep.sizes["clauses"] = len(pair.clauses)
    proof = run.stage("build_refutation", lambda: (True, {}, build_refutation(g, pair)))
    rep.sizes["proof_lines"] = len(proof.lines)

    def chk():
        res = check_proof(proof)
        return bool(res), {"class": str(proof.cls)}, res
    run.stage("check_proof", chk)

    def sat():
        a, b = sat_solve(pair.phi), sat_solve(pair.psi)
        return not (a and b), {"phi_sat": a is not None, "psi_sat": b is not None}, (a, b)
    run.stage("sat_oracle", sat)

    cnf = Cnf(pair.clauses, dict(pair.phi.partition))
    pr = PartitionedRefutation(proof, cnf)
    t = run.stage("build_traversal_game",
                  lambda: (True, {"rounds": (tt := build_traversal_game(pr)).rounds}, tt))
    ab = run.stage("abridge", lambda: (True, {"rounds": (aa := abridge(t)).rounds}, aa))

    def winner():
        w = solve_bruteforce(g, max_moves=None)
        return True, {"winner": w}, w
    w = run.stage("solve", winner)

    def find():
        s = find_positional(g, w, limit=limit)
        return True, {"found": s is not None}, s
    s = run.stage("find_positional", find)
    if s is None:
        return

    def witness():
        a = strategy_witness(g, s, pair)
        side = pair.phi if w == I else pair.psi
        return cnf_true(side, a), {"player": w}, a
    a = run.stage("strategy_witness", witness)

    def extract():
        st = extract_strategy(ab, a, w)
        ok, plays = plays_against(ab.game, st)
        detail = {"plays": plays}
        full = strict if strict is not None else g.k <= 1
        if ok and full:
            detail["strict"] = verify_extracted(ab, st)
            ok = detail["strict"]
        return ok, detail, st
    run.stage("extract_strategy", extract)
    if ab.rounds <= 2:
        # exhaustive minimax over the traversal game is only cheap for two rounds
        w2 = solve_generalized(ab.game)
        run.stage("winner_agrees", lambda: (w2 == w, {"traversal": w2}, w2))


def _proof_roundtrip(run: _Run, pr, strict: bool | None, model_limit: int):
    from .proof_to_game import abridge, build_traversal_game, extract_strategy, verify_extracted

    rep = run.rep
    proof = pr.refutation
    rep.sizes["proof_lines"] = len(proof.lines)
    rep.sizes["clauses"] = len(pr.cnf.clauses)

    def chk():
        res = check_proof(proof)
        return bool(res), {"class": str(proof.cls)}, res
    run.stage("check_proof", chk)
    run.stage("sat_oracle", lambda: ((m := sat_solve(pr.cnf)) is None, {"unsat": m is None}, m))
    t = run.stage("build_traversal_game",
                  lambda: (True, {"rounds": (tt := build_traversal_game(pr)).rounds}, tt))
    ab = run.stage("abridge", lambda: (True, {"rounds": (aa := abridge(t)).rounds}, aa))
    for game, tag in ((t, "full"), (ab, "abridged")):
        for p in (I, II):
            def ext(game=game, p=p):
                side = side_clauses(pr.cnf, p, pr.clause_owner)
                vs = {abs(x) for c in side for x in c}
                n = 0
                for a in itertools.islice(all_models(side, vs, limit=1 << 30), model_limit):
                    st = extract_strategy(game, a, p)
                    ok, _ = plays_against(game.game, st)
                    full = strict if strict is not None else game.rounds <= 2
                    if ok and full:
                        ok = verify_extracted(game, st)
                    if not ok:
                        return False, {"models": n, "failed": a}, n
                    n += 1
                return True, {"models": n, "capped": n == model_limit}, n
            run.stage(f"extract_{tag}_{p}", ext)


def _sweep(run: _Run, pr, strict: bool):
    from .proof_to_game import _side_of, build_monotone_schema, extract_strategy, verify_extracted

    rep = run.rep
    ms = run.stage("build_monotone_schema", lambda: (True, {}, build_monotone_schema(pr)))
    t = ms.traversal
    rep.sizes["proof_lines"] = len(t.source.refutation.lines)
    zs = sorted(ms.zprime)
    part = pr.cnf.partition
    phi = [c for c in pr.cnf.clauses if _side_of(c, part) == "x"]
    psi = [c for c in pr.cnf.clauses if _side_of(c, part) == "y"]
    rows = []
    for bits in itertools.product((False, True), repeat=len(zs)):
        za = dict(zip(zs, bits))
        labels = ms.labels(za)

        def one():
            rp, rs = restrict(phi, za), restrict(psi, za)
            a1 = sat_solve(rp) if rp is not None else None
            a2 = sat_solve(rs) if rs is not None else None
            win = solve_generalized(t.game, labels)
            row = {"z": [int(b) for b in bits], "phi_sat": a1 is not None,
                   "psi_sat": a2 is not None, "winner": win}
            ok = not (a1 is not None and a2 is not None)
            for p, a in ((I, a1), (II, a2)):
                if a is None:
                    continue
                st = extract_strategy(t, ms.player_assignment(p, a, za), p)
                won, _ = plays_against(t.game, st, labels)
                if won and strict:
                    won = verify_extracted(t, st, labels)
                row[f"verified_{p}"] = won
                ok = ok and won and win == p
            rows.append(row)
            return ok, row, row
        run.stage("assignment " + "".join(str(int(b)) for b in bits), one)
    rep.sizes["assignments"] = len(rows)
    if not _monotone(rows):
        rep.stages.append(Stage("monotone", False))
        rep.verdict = "failed at monotone"
        raise _Abort


def _monotone(rows) -> bool:
    """Winner I never turns into II when z increases pointwise."""
    val = {tuple(r["z"]): r["winner"] == I for r in rows}
    for z, v in val.items():
        for i, b in enumerate(z):
            if not b:
                up = z[:i] + (1,) + z[i + 1:]
                if v and not val[up]:
                    return False
    return True


def run_pipeline(kind: str, obj, *, strict: bool | None = None, limit: int = 1 << 16,
                 model_limit: int = 256, seed: int | None = None) -> PipelineReport:
    """Run one of "game-roundtrip", "proof-roundtrip" or "interpolation-sweep"."""
    run = _Run(kind, seed)
    try:
        if kind == "game-roundtrip":
            _game_roundtrip(run, obj, limit, strict)
        elif kind == "proof-roundtrip":
            _proof_roundtrip(run, obj, strict, model_limit)
        elif kind == "interpolation-sweep":
            _sweep(run, obj, bool(strict))
        else:
            raise ValueError(f"unknown pipeline {kind!r}")
    except _Abort:
        pass
    return run.rep


__all__ = ["PipelineReport", "Stage", "UNSAT", "all_models", "restrict",
           "run_pipeline", "sat_solve", "side_clauses"]

"""Handcrafted partitioned CNFs and refutations used by tests and the CLI.

Variables are tagged "x" (Player I), "y" (Player II) or "z" (shared, for
interpolation instances).  z occurs positively on the x side and negatively
on the y side.
"""

from __future__ import annotations

import itertools

from .formula import Cnf
from .proof_to_game import PartitionedRefutation
from .resolution import embed_resolution


class _Alloc:
    def __init__(self):
        self.next = 1
        self.part: dict = {}

    def new(self, tag: str) -> int:
        v = self.next
        self.next += 1
        self.part[v] = tag
        return v


def threshold(n: int = 3) -> Cnf:
    """Phi: at least two of z are 1 (x picks a pair).  Psi: at most one is 1."""
    al = _Alloc()
    Z = [al.new("z") for _ in range(n)]
    X = {p: al.new("x") for p in itertools.combinations(Z, 2)}
    Y = {z: al.new("y") for z in Z}
    phi = [tuple(X.values())]
    phi += [(-x, i) for (i, _), x in X.items()] + [(-x, j) for (_, j), x in X.items()]
    psi = [(-z, Y[z]) for z in Z] + [(-Y[a], -Y[b]) for a, b in itertools.combinations(Z, 2)]
    return Cnf(phi + psi, al.part)


def some_one(n: int = 3) -> Cnf:
    """Phi: some z is 1 (x points at it).  Psi: all z are 0."""
    al = _Alloc()
    Z = [al.new("z") for _ in range(n)]
    X = [al.new("x") for _ in Z]
    y = al.new("y")
    phi = [tuple(X)] + [(-x, z) for x, z in zip(X, Z)]
    psi = [(y,)] + [(-y, -z) for z in Z]
    return Cnf(phi + psi, al.part)


GRAPH = (("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("a", "b"))


def _paths(edges, s, t):
    adj: dict = {}
    for i, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, i))
        adj.setdefault(v, []).append((u, i))
    out = []

    def go(u, seen, used):
        if u == t:
            out.append(tuple(used))
            return
        for v, i in adj.get(u, ()):
            if v not in seen:
                go(v, seen | {v}, used + [i])

    go(s, {s}, [])
    return out


def path_cut(edges=GRAPH, s: str = "s", t: str = "t") -> Cnf:
    """Phi: the present edges (z = 1) contain an s-t path.  Psi: a side set
    containing s but not t is closed under present edges."""
    al = _Alloc()
    Z = [al.new("z") for _ in edges]
    paths = _paths(edges, s, t)
    P = [al.new("x") for _ in paths]
    phi = [tuple(P)] + [(-p, Z[i]) for p, path in zip(P, paths) for i in path]
    verts = sorted({v for e in edges for v in e})
    S = {v: al.new("y") for v in verts}
    psi = [(S[s],), (-S[t],)]
    for z, (u, v) in zip(Z, edges):
        psi += [(-z, -S[u], S[v]), (-z, -S[v], S[u])]
    return Cnf(phi + psi, al.part)


SCHEMAS = {"threshold": threshold, "some_one": some_one, "path_cut": path_cut}


def schema_instance(name: str, depth: int = 2) -> PartitionedRefutation:
    cnf = SCHEMAS[name]()
    return PartitionedRefutation(embed_resolution(cnf, depth), cnf)


# -- handcrafted refutations ---------------------------------------------------


def _refute(clauses, part, depth) -> PartitionedRefutation:
    cnf = Cnf(clauses, part)
    return PartitionedRefutation(embed_resolution(cnf, depth), cnf)


def two_chains(depth: int = 2) -> PartitionedRefutation:
    """(x)(-x v y)(-y) on Player I's side and (u)(-u v v)(-v) on Player II's."""
    x, y, u, v = 1, 2, 3, 4
    return _refute([(x,), (-x, y), (-y,), (u,), (-u, v), (-v,)],
                   {x: "x", y: "x", u: "y", v: "y"}, depth)


def sat_x_side(depth: int = 2) -> PartitionedRefutation:
    """Satisfiable x side, contradictory y side."""
    return _refute([(1, 2), (-1, 3), (-2, 3), (4, 5), (-4,), (-5,)],
                   {1: "x", 2: "x", 3: "x", 4: "y", 5: "y"}, depth)


def sat_y_side(depth: int = 2) -> PartitionedRefutation:
    """Contradictory x side, satisfiable y side with several models."""
    return _refute([(1, 2), (-1, 2), (1, -2), (-1, -2), (3, 4), (-3, 5)],
                   {1: "x", 2: "x", 3: "y", 4: "y", 5: "y"}, depth)


def pigeons(depth: int = 2) -> PartitionedRefutation:
    """Three pigeons, two holes, all on Player II's side; Player I gets a free clause."""
    p = {(i, j): 2 * i + j + 1 for i in range(3) for j in range(2)}
    cls = [(p[i, 0], p[i, 1]) for i in range(3)]
    cls += [(-p[a, j], -p[b, j]) for j in range(2) for a, b in itertools.combinations(range(3), 2)]
    part = {v: "y" for v in p.values()}
    part[7] = "x"
    return _refute(cls + [(7,)], part, depth)


def mixed_width(depth: int = 3) -> PartitionedRefutation:
    """A wider x side over four variables; the y side is a short chain."""
    cls = [(1, 2, 3), (-1, 4), (-2, 4), (-3, 4), (5,), (-5, 6), (-6,)]
    part = {1: "x", 2: "x", 3: "x", 4: "x", 5: "y", 6: "y"}
    return _refute(cls, part, depth)


HANDCRAFTED = {
    "two_chains": two_chains,
    "sat_x_side": sat_x_side,
    "sat_y_side": sat_y_side,
    "pigeons": pigeons,
    "mixed_width": mixed_width,
}

"""Tree-like resolution refutations and their embedding into the calculus.

`tree_refutation` runs a plain DPLL without learning and reads a resolution
tree off the search.  `embed_resolution` replays such a tree as a bounded
depth proof whose first line is the padded CNF.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import Proof
from .errors import DepthOverflow, TooLarge
from .formula import Cnf


@dataclass(frozen=True)
class Leaf:
    index: int
    clause: tuple


@dataclass(frozen=True)
class Node:
    pivot: int            # positive in the left child, negative in the right one
    left: object
    right: object
    clause: tuple


def _resolve(a: tuple, b: tuple, v: int) -> tuple:
    out = [x for x in a if x != v]
    out += [x for x in b if x != -v and x not in out]
    return tuple(dict.fromkeys(out))


def tree_refutation(cnf: Cnf | list, max_nodes: int = 200_000):
    """A resolution tree deriving the empty clause, or None if satisfiable."""
    clauses = [tuple(c) for c in (cnf.clauses if isinstance(cnf, Cnf) else cnf)]
    nodes = 0

    def falsified(a: dict):
        for i, c in enumerate(clauses):
            if all(a.get(abs(x)) == (x < 0) for x in c):
                return i
        return None

    def pick(a: dict) -> int:
        best = None
        for c in clauses:
            if any(a.get(abs(x)) == (x > 0) for x in c):
                continue
            free = [abs(x) for x in c if abs(x) not in a]
            if free and (best is None or len(free) < len(best)):
                best = free
        return best[0] if best else 0

    def go(a: dict):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise TooLarge("resolution tree too large")
        i = falsified(a)
        if i is not None:
            return Leaf(i, clauses[i])
        v = pick(a)
        if not v:
            return None
        a[v] = True
        t1 = go(a)
        if t1 is None:
            del a[v]
            return None
        if -v not in t1.clause:
            del a[v]
            return t1
        a[v] = False
        t0 = go(a)
        del a[v]
        if t0 is None:
            return None
        if v not in t0.clause:
            return t0
        return Node(v, t0, t1, _resolve(t0.clause, t1.clause, v))

    return go({})


def tree_size(t) -> int:
    return 1 if isinstance(t, Leaf) else 1 + tree_size(t.left) + tree_size(t.right)


def embed_resolution(cnf: Cnf | list, depth: int, tree=None) -> Proof:
    """A refutation at the given depth (2..4) replaying a resolution tree."""
    from .game_to_proof import Work

    clauses = [tuple(c) for c in (cnf.clauses if isinstance(cnf, Cnf) else cnf)]
    if not 2 <= depth <= 4:
        raise DepthOverflow("resolution embedding supports depths 2 to 4")
    tree = tree if tree is not None else tree_refutation(clauses)
    if tree is None:
        raise ValueError("the CNF is satisfiable")
    w = Work(clauses, depth)

    def derive(t) -> int:
        if isinstance(t, Leaf):
            h = w.axiom(t.clause)
            kids = list(w.get(h).kids)
            w.settle(h, list(dict.fromkeys(kids)))
            return h
        h0, h1 = derive(t.left), derive(t.right)
        h = w.res(h0, h1, t.pivot)
        kids = list(w.get(h).kids)
        w.settle(h, list(dict.fromkeys(kids)))
        return h

    h = derive(tree)
    return w.finish(h, source="resolution", tree_size=tree_size(tree))

"""JSON forms of the objects exchanged by the CLI and the HTTP service."""

from __future__ import annotations

from collections.abc import Mapping

from .calculus import proof_from_json, proof_to_json
from .formula import Cnf, cnf_from_json, cnf_to_json
from .game import GameSchema, game_from_json, game_to_json


def plain(x):
    """Tuples to lists, recursively, so that symbols survive json.dumps."""
    if isinstance(x, (tuple, list)):
        return [plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    return x


def pair_to_json(pair) -> dict:
    cnf = Cnf(pair.clauses, dict(pair.phi.partition))
    return {
        "cnf": cnf_to_json(cnf),
        "phi": cnf_to_json(pair.phi),
        "psi": cnf_to_json(pair.psi),
        "sigma": [[p, r, s, a, b, c, v] for (p, r, s, a, b, c), v in pair.var_sigma.items()],
        "R": [[p, r, i, list(vec), v] for (p, r, i, vec), v in pair.var_R.items()],
    }


def cnf_of_pair(d: Mapping) -> Cnf:
    """The partitioned CNF of a pair file (or of a bare CNF file)."""
    if "cnf" in d:
        return cnf_from_json(d["cnf"])
    if "phi" in d:
        a, b = cnf_from_json(d["phi"]), cnf_from_json(d["psi"])
        return Cnf(a.clauses + b.clauses, {**a.partition, **b.partition})
    return cnf_from_json(d)


def refutation_from_json(pair: Mapping, proof: Mapping, challenges=None):
    from .proof_to_game import PartitionedRefutation
    ch = {int(k): tuple(v) for k, v in (challenges or {}).items()}
    return PartitionedRefutation(proof_from_json(proof), cnf_of_pair(pair), ch)


def refutation_to_json(pr) -> dict:
    return {"cnf": cnf_to_json(pr.cnf), "proof": proof_to_json(pr.refutation),
            "challenges": {str(k): list(v) for k, v in pr.challenges.items()}}


def schema_to_json(s: GameSchema) -> dict:
    return {"game": game_to_json(s.game),
            "labels": {str(k): v for k, v in s.labels.items()}}


def schema_from_json(d: Mapping) -> GameSchema:
    g = game_from_json(d["game"])
    labels = {int(k): str(v) for k, v in d["labels"].items()}
    return GameSchema(g, labels)


def assignment_from_json(d: Mapping) -> dict:
    """Keys that look like integers become variable ids; others stay names."""
    out = {}
    for k, v in d.items():
        key = int(k) if str(k).lstrip("-").isdigit() else str(k)
        out[key] = bool(v)
    return out

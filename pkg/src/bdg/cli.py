"""The ``bdg`` command line.  Objects are exchanged as JSON files.

Exit codes: 0 when the checked property holds, 1 when it fails or the input
is invalid, 2 on usage errors.
"""

from __future__ import annotations

import json
import sys

import click

from . import equivalences as eq
from .calculus import check_proof, proof_from_json, proof_to_json
from .errors import BdgError
from .game import (I, II, find_positional, game_from_json, game_to_json, schema_instantiate,
                   solve_bruteforce, solve_k1, strategy_from_json, strategy_to_json,
                   verify_positional)
from .jsonio import (assignment_from_json, cnf_of_pair, pair_to_json, plain, refutation_from_json,
                     refutation_to_json, schema_from_json, schema_to_json)


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(plain(obj), indent=1, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _fail(msg: str) -> None:
    click.echo(msg, err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Bounded-depth games, symmetric-calculus proofs and their reductions."""


@main.command("check-proof")
@click.argument("proof")
def check_proof_cmd(proof):
    res = check_proof(proof_from_json(_load(proof)))
    if not res:
        _fail(f"step {res.index}: {res.error}")
    click.echo("ok")


@main.command("verify-strategy")
@click.argument("game")
@click.argument("strategy")
def verify_strategy_cmd(game, strategy):
    g = game_from_json(_load(game))
    ok, _ = verify_positional(g, strategy_from_json(_load(strategy)))
    click.echo("winning" if ok else "not winning")
    sys.exit(0 if ok else 1)


@main.command("solve")
@click.argument("game")
@click.option("--brute", is_flag=True, help="exhaustive minimax even for depth 1")
def solve_cmd(game, brute):
    g = game_from_json(_load(game))
    w = solve_k1(g) if g.k == 1 and not brute else solve_bruteforce(g, max_moves=None)
    click.echo(w)


@main.command("find-strategy")
@click.argument("game")
@click.option("--player", type=click.Choice([I, II]), required=True)
@click.option("-o", "out", default=None)
def find_strategy_cmd(game, player, out):
    s = find_positional(game_from_json(_load(game)), player)
    if s is None:
        _fail(f"no positional winning strategy for {player}")
    _emit(strategy_to_json(s), out)


@main.command("instantiate")
@click.argument("schema")
@click.argument("assignment")
@click.option("-o", "out", default=None)
def instantiate_cmd(schema, assignment, out):
    g = schema_instantiate(schema_from_json(_load(schema)), assignment_from_json(_load(assignment)))
    _emit(game_to_json(g), out)


@main.command("game2proof")
@click.argument("game")
@click.option("-o", "out", required=True, help="pair file")
@click.option("-p", "proof", required=True, help="proof file")
def game2proof_cmd(game, out, proof):
    from .game_to_proof import build_refutation, encode_game
    g = game_from_json(_load(game))
    pair = encode_game(g)
    p = build_refutation(g, pair)
    _emit(pair_to_json(pair), out)
    _emit(proof_to_json(p), proof)
    click.echo(f"{len(pair.clauses)} clauses, {len(p.lines)} lines at {p.cls}")


@main.command("proof2game")
@click.argument("pair")
@click.argument("proof")
@click.option("-o", "out", required=True)
@click.option("-m", "prov", default=None, help="provenance file")
@click.option("--full", is_flag=True, help="keep the bottom round")
@click.option("--max-states", default=1_000_000, show_default=True)
def proof2game_cmd(pair, proof, out, prov, full, max_states):
    from .proof_to_game import abridge, build_traversal_game
    pr = refutation_from_json(_load(pair), _load(proof))
    t = build_traversal_game(pr)
    if not full:
        t = abridge(t)
    _emit({"kind": "traversal", "rounds": t.rounds, "columns": t.game.n,
           "source": refutation_to_json(pr)}, out)
    if prov:
        states = t.materialize(max_states)
        _emit([[r, c, x, *p] for (r, c, x), p in states.items()], prov)
    click.echo(f"{t.rounds} rounds over {t.game.n} columns")


def _traversal(d):
    from .proof_to_game import build_traversal_game
    src = d["source"]
    pr = refutation_from_json({"cnf": src["cnf"]}, src["proof"], src.get("challenges"))
    return build_traversal_game(pr, rounds=d["rounds"])


@main.command("extract-strategy")
@click.argument("game")
@click.argument("provenance")
@click.argument("assignment")
@click.option("--player", type=click.Choice([I, II]), required=True)
@click.option("-o", "out", default=None)
def extract_strategy_cmd(game, provenance, assignment, player, out):
    from .generalized import plays_against
    from .proof_to_game import extract_strategy
    t = _traversal(_load(game))
    strat = extract_strategy(t, assignment_from_json(_load(assignment)), player)
    ok, plays = plays_against(t.game, strat)
    _emit({"player": player, "wins": ok, "plays": plays,
           "choices": [[list(k), v] for k, v in strat.table.items()]}, out)
    sys.exit(0 if ok else 1)


@main.command("schema")
@click.argument("pair")
@click.argument("proof")
@click.option("-o", "out", required=True)
def schema_cmd(pair, proof, out):
    from .proof_to_game import build_monotone_schema
    pr = refutation_from_json(_load(pair), _load(proof))
    ms = build_monotone_schema(pr)
    t = ms.traversal
    _emit({"kind": "traversal", "rounds": t.rounds, "columns": t.game.n,
           "variables": list(ms.schema.variables), "zprime": ms.zprime,
           "source": refutation_to_json(t.source)}, out)
    click.echo(f"schema over {', '.join(ms.schema.variables)}: {t.rounds} rounds")


@main.command("d1tocircuit")
@click.argument("schema")
@click.option("-o", "out", default=None)
def d1tocircuit_cmd(schema, out):
    _emit(eq.circuit_to_json(eq.d1_to_circuit(schema_from_json(_load(schema)))), out)


@main.command("circuittod1")
@click.argument("circuit")
@click.option("-o", "out", default=None)
def circuittod1_cmd(circuit, out):
    _emit(schema_to_json(eq.circuit_to_d1(eq.circuit_from_json(_load(circuit)))), out)


@main.command("d2topl")
@click.argument("game")
@click.option("--expand", is_flag=True, help="replace gated points by gadgets")
@click.option("-o", "out", default=None)
def d2topl_cmd(game, expand, out):
    d = _load(game)
    g = schema_from_json(d) if "labels" in d else game_from_json(d)
    plg = eq.d2_to_pointline(g)
    if expand:
        plg = eq.expand_gadgets(plg)
    _emit(eq.pl_to_json(plg), out)


@main.command("pltod2")
@click.argument("pl")
@click.option("--assignment", default=None)
def pltod2_cmd(pl, assignment):
    from .generalized import solve_generalized
    plg = eq.expand_gadgets(eq.pl_from_json(_load(pl)))
    gg = eq.pointline_to_d2(plg)
    a = assignment_from_json(_load(assignment)) if assignment else None
    click.echo(json.dumps({"n": gg.n, "k": gg.k, "winner": solve_generalized(gg, a)}))


@main.command("plsolve")
@click.argument("pl")
@click.option("--mode", type=click.Choice(["minimax", "functions"]), default="minimax")
@click.option("--assignment", default=None)
def plsolve_cmd(pl, mode, assignment):
    plg = eq.pl_from_json(_load(pl))
    a = assignment_from_json(_load(assignment)) if assignment else None
    if mode == "functions":
        nf = eq.pl_solve(plg, "functions")
        click.echo(json.dumps({"root_value": nf.root_value(eq.root_values(plg, a)),
                               "nodes": len(nf.tables)}))
    else:
        click.echo(eq.pl_solve(plg, "minimax", a))


@main.command("sat")
@click.argument("cnf")
def sat_cmd(cnf):
    from .harness import sat_solve
    m = sat_solve(cnf_of_pair(_load(cnf)))
    if m is None:
        click.echo("UNSAT")
        sys.exit(1)
    click.echo(json.dumps({str(k): v for k, v in sorted(m.items())}))


def _report(rep, out):
    _emit(rep.to_json(), out)
    sys.exit(0 if rep.ok else 1)


@main.command("roundtrip")
@click.argument("game")
@click.option("-o", "out", default=None)
def roundtrip_cmd(game, out):
    from .harness import run_pipeline
    _report(run_pipeline("game-roundtrip", game_from_json(_load(game))), out)


@main.command("proof-roundtrip")
@click.argument("pair")
@click.argument("proof")
@click.option("-o", "out", default=None)
def proof_roundtrip_cmd(pair, proof, out):
    from .harness import run_pipeline
    _report(run_pipeline("proof-roundtrip", refutation_from_json(_load(pair), _load(proof))), out)


@main.command("sweep")
@click.argument("pair")
@click.argument("proof")
@click.option("-o", "out", default=None)
def sweep_cmd(pair, proof, out):
    from .harness import run_pipeline
    _report(run_pipeline("interpolation-sweep",
                         refutation_from_json(_load(pair), _load(proof))), out)


@main.command("example")
@click.argument("name")
@click.option("--depth", default=2, show_default=True)
@click.option("-o", "out", required=True, help="pair file")
@click.option("-p", "proof", required=True, help="proof file")
def example_cmd(name, depth, out, proof):
    """Write a handcrafted refutation (see bdg.instances)."""
    from . import instances
    if name in instances.HANDCRAFTED:
        pr = instances.HANDCRAFTED[name](depth)
    elif name in instances.SCHEMAS:
        pr = instances.schema_instance(name, depth)
    else:
        raise click.UsageError(f"unknown example {name!r}")
    _emit(refutation_to_json(pr), out)
    _emit(proof_to_json(pr.refutation), proof)


def run() -> None:
    try:
        main(standalone_mode=True)
    except (BdgError, OSError, ValueError, KeyError, TypeError) as e:
        click.echo(f"{type(e).__name__}: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()

"""Bounded-depth tape games, the Symmetric Calculus and the reductions between them."""

from .calculus import Proof, RuleInstance, apply_rule, check_proof
from .formula import Cnf, F, classify, pad_cnf
from .game import (I, II, Game, GameSchema, PositionalStrategy, find_positional,
                   schema_instantiate, solve_bruteforce, verify_positional)
from .game_to_proof import build_refutation, encode_game, strategy_witness
from .harness import run_pipeline, sat_solve
from .proof_to_game import (PartitionedRefutation, abridge, build_monotone_schema,
                            build_traversal_game, extract_strategy)

__version__ = "0.1.0"

__all__ = [
    "Cnf", "F", "Game", "GameSchema", "I", "II", "PartitionedRefutation", "PositionalStrategy",
    "Proof", "RuleInstance", "abridge", "apply_rule", "build_monotone_schema",
    "build_refutation", "build_traversal_game", "check_proof", "classify", "encode_game",
    "extract_strategy", "find_positional", "pad_cnf", "run_pipeline", "sat_solve",
    "schema_instantiate", "solve_bruteforce", "strategy_witness", "verify_positional",
]

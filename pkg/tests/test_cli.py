from __future__ import annotations

import json
import subprocess
import sys

from click.testing import CliRunner

from bdg.cli import main
from bdg.game import game_to_json
from support import micro_game


def _game(tmp_path, k=1, n=3, seed=3):
    p = tmp_path / "game.json"
    p.write_text(json.dumps(game_to_json(micro_game(seed, n, k))))
    return str(p)


def test_solve_find_and_verify(tmp_path):
    runner = CliRunner()
    g = _game(tmp_path)
    res = runner.invoke(main, ["solve", g])
    assert res.exit_code == 0
    winner = res.output.strip()
    assert winner in ("I", "II")
    assert runner.invoke(main, ["solve", "--brute", g]).output.strip() == winner
    s = str(tmp_path / "s.json")
    res = runner.invoke(main, ["find-strategy", g, "--player", winner, "-o", s])
    if res.exit_code == 0:
        res = runner.invoke(main, ["verify-strategy", g, s])
        assert res.exit_code == 0 and "winning" in res.output


def test_game_to_proof_and_back(tmp_path):
    runner = CliRunner()
    g = _game(tmp_path, k=2, n=2)
    pair, proof = str(tmp_path / "pair.json"), str(tmp_path / "proof.json")
    res = runner.invoke(main, ["game2proof", g, "-o", pair, "-p", proof])
    assert res.exit_code == 0, res.output
    assert runner.invoke(main, ["check-proof", proof]).output.strip() == "ok"
    res = runner.invoke(main, ["sat", pair])
    assert res.exit_code == 1 and "UNSAT" in res.output
    tg = str(tmp_path / "tg.json")
    res = runner.invoke(main, ["proof2game", pair, proof, "-o", tg])
    assert res.exit_code == 0 and "rounds" in res.output
    assert json.loads(open(tg).read())["kind"] == "traversal"


def test_examples_and_extraction(tmp_path):
    runner = CliRunner()
    pair, proof = str(tmp_path / "p.json"), str(tmp_path / "q.json")
    assert runner.invoke(main, ["example", "sat_y_side", "-o", pair, "-p", proof]).exit_code == 0
    tg, prov = str(tmp_path / "tg.json"), str(tmp_path / "prov.json")
    assert runner.invoke(main, ["proof2game", pair, proof, "-o", tg, "-m", prov]).exit_code == 0
    a = tmp_path / "a.json"
    a.write_text(json.dumps({"3": True, "4": False, "5": True}))
    out = str(tmp_path / "ex.json")
    res = runner.invoke(main, ["extract-strategy", tg, prov, str(a), "--player", "II", "-o", out])
    assert res.exit_code == 0
    assert json.loads(open(out).read())["wins"] is True
    res = runner.invoke(main, ["proof-roundtrip", pair, proof])
    assert res.exit_code == 0 and json.loads(res.output)["verdict"] == "ok"


def test_sweep_and_point_line_commands(tmp_path):
    runner = CliRunner()
    pair, proof = str(tmp_path / "p.json"), str(tmp_path / "q.json")
    runner.invoke(main, ["example", "some_one", "-o", pair, "-p", proof])
    assert runner.invoke(main, ["sweep", pair, proof]).exit_code == 0
    g = _game(tmp_path, k=2, n=3)
    pl = str(tmp_path / "pl.json")
    assert runner.invoke(main, ["d2topl", g, "--expand", "-o", pl]).exit_code == 0
    solved = runner.invoke(main, ["plsolve", pl]).output.strip()
    back = json.loads(runner.invoke(main, ["pltod2", pl]).output)
    assert (solved == "Black") == (back["winner"] == "I")


def test_circuit_commands(tmp_path):
    runner = CliRunner()
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"root": 0, "gates": [{"op": "and", "in": [1, 2]}],
                             "leaves": {"1": "x1", "2": "x2"}}))
    d1 = str(tmp_path / "d1.json")
    res = runner.invoke(main, ["circuittod1", str(c), "-o", d1])
    assert res.exit_code == 0, res.output
    res = runner.invoke(main, ["d1tocircuit", d1])
    assert res.exit_code == 0 and "gates" in json.loads(res.output)


def test_errors_exit_with_one(tmp_path):
    cmd = [sys.executable, "-m", "bdg.cli", "solve", str(tmp_path / "missing.json")]
    res = subprocess.run(cmd, capture_output=True, text=True)
    assert res.returncode == 1 and "FileNotFoundError" in res.stderr
    res = subprocess.run([sys.executable, "-m", "bdg.cli", "nope"], capture_output=True, text=True)
    assert res.returncode == 2

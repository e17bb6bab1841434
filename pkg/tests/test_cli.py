import dataclasses
import io
import json
import subprocess
import sys

import pytest

from bethenorm import cli
from bethenorm.solver import SolverError


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, (json.loads(buf.getvalue()) if buf.getvalue() else None)


def test_solve_sl3():
    code, rep = run("solve", "--algebra", "sl3", "--weights", "w1,w1,w1", "--l", "2,1", "--seed", "42")
    assert code == cli.EXIT_OK
    assert rep["schema"] == 1 and rep["command"] == "solve"
    assert rep["orbit_count"] == rep["expected_multiplicity"] == 1 and rep["count_matches"]
    assert len(rep["orbits"][0]["t"]) == 3


def test_solve_sl2_counts_and_tolerances():
    code, rep = run("solve", "--algebra", "sl2", "--weights", "w1,w1,w1,w1", "--l", "2", "--seed", "7")
    assert code == 0 and rep["orbit_count"] == 2
    tol = rep["tolerances"]
    assert tol["newton_residual"] == 1e-12 and tol["orbit_merge"] == 1e-8 and tol["norm_hessian_ratio"] == 1e-8
    for o in rep["orbits"]:
        assert o["residual_norm"] < 1e-12 and o["nondegenerate"]


def test_solve_given_points():
    code, rep = run("solve", "--algebra", "sl2", "--weights", "w1,w1", "--l", "1", "--z", "0,1")
    assert code == 0 and rep["orbit_count"] == 1
    t = rep["orbits"][0]["t"][0]
    assert t == "1/2" or abs(complex(*t) - 0.5) < 1e-14


def test_same_seed_same_bytes():
    argv = ["solve", "--algebra", "sl3", "--weights", "w1,w1,w2,w1", "--l", "2,1", "--seed", "3"]
    a, b = io.StringIO(), io.StringIO()
    assert cli.main(argv, out=a) == 0 and cli.main(argv, out=b) == 0
    assert a.getvalue() == b.getvalue()


def test_verify_ratio():
    code, rep = run("verify", "--algebra", "sl3", "--weights", "w1,w2,w1", "--l", "1,1", "--seed", "1", "--jobs", "2")
    assert code == 0 and rep["all_passed"]
    for o in rep["orbits"]:
        assert o["ratio_minus_one"] < 1e-12 and o["is_singular"] and not o["degenerate"]
        assert abs(complex(*o["eigenvalue_sum"])) < 1e-9


def test_verify_degenerate_point():
    # sl2, three w1 at the cube roots of unity: the only critical point is t = 0, where omega = 0
    code, rep = run("verify", "--algebra", "sl2", "--weights", "w1,w1,w1", "--l", "1", "--z-exact", "cbrt-of-unity")
    assert code == 0
    (o,) = rep["orbits"]
    assert o["degenerate"] and o["exact"] and o["shapovalov_norm"] == "0" and o["hessian_det"] == "0"


def test_verify_empty_l():
    code, rep = run("verify", "--algebra", "sl3", "--weights", "w1,w2", "--l", "0,0")
    assert code == 0 and rep["orbit_count"] == 1 and rep["all_passed"]
    assert rep["orbits"][0]["t"] == []


def test_count():
    code, rep = run("count", "--algebra", "sl4", "--weights", "w2,w2", "--mu", "0")
    assert code == 0 and rep["multiplicity"] == 1
    assert sorted(rep["fundamental_rule"]) == sorted(["2w2", "w1+w3", "0"])
    code, rep = run("count", "--algebra", "sl3", "--weights", "w1,w1,w1,w1")
    assert rep["dimension_check"]
    assert {r["mu"]: r["multiplicity"] for r in rep["decomposition"]} == {"4w1": 1, "2w1+w2": 3, "2w2": 2, "w1": 3}


def test_schubert_plane(tmp_path):
    f = tmp_path / "plane.txt"
    f.write_text("0 0 1\n1 -2 1\n")
    code, rep = run("schubert", "--plane", str(f))
    assert code == 0 and rep["mode"] == "plane" and rep["holds"] and rep["total"] == 2


def test_schubert_from_weights():
    code, rep = run("schubert", "--from-weights", "--algebra", "sl3", "--weights", "w1,w1,w2", "--l", "1,1", "--d", "5")
    assert code == 0 and rep["holds"]
    table = {row["point"] if isinstance(row["point"], str) else str(row["point"]): row["a"] for row in rep["table"]}
    assert table["inf"] == [5 - 2 - 1, 5 - 2 - 1 + 1 - 2, 5 - 2 + 1 - 2 - 1]


@pytest.mark.parametrize("argv", [
    ["solve", "--algebra", "sl2", "--weights", "w1", "--l", "1"],          # target not dominant
    ["solve", "--algebra", "so5", "--weights", "w1", "--l", "0"],
    ["solve", "--algebra", "sl2", "--weights", "w1,w1", "--l", "1", "--z", "0,0"],
    ["solve", "--algebra", "sl3", "--weights", "w1,w1", "--l", "1"],        # wrong l length
    ["solve", "--algebra", "sl2", "--weights", "w1,w1,w1,w1", "--l", "2", "--z-exact", "cbrt-of-unity"],
    ["solve", "--algebra", "sl2", "--weights", "w1,w1", "--l", "1", "--jobs", "0"],
    ["schubert"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert cli.main(argv, out=io.StringIO()) == cli.EXIT_USAGE


def test_solver_failure_exit(monkeypatch):
    def boom(*a, **k):
        raise SolverError("no convergence")
    monkeypatch.setattr(cli, "solve_all", boom)
    code, _ = run("solve", "--algebra", "sl2", "--weights", "w1,w1,w1", "--l", "1")
    assert code == cli.EXIT_SOLVER


def test_verification_failure_exit(monkeypatch):
    real = cli.verify_bethe

    def broken(*a, **k):
        return dataclasses.replace(real(*a, **k), norm_matches_hessian=False)
    monkeypatch.setattr(cli, "verify_bethe", broken)
    code, rep = run("verify", "--algebra", "sl2", "--weights", "w1,w1,w1", "--l", "1", "--seed", "2")
    assert code == cli.EXIT_VERIFY and rep["all_passed"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bethenorm", "count", "--algebra", "sl2", "--weights", "w1,w1", "--mu", "0"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["multiplicity"] == 1

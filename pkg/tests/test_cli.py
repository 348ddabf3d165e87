import csv
import io
import json
import math
import subprocess
import sys

import pytest

from se2geodesic.cli import covector_from_energy, energy_grid, main, parse_grid, InputError
from se2geodesic.phase_cylinder import StratumId, classify, energy
from se2geodesic.special_functions import complete_K


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_geodesic_straight_line(capsys):
    code, out, _ = run(capsys, "geodesic", "--gamma", str(math.pi), "--c", "0", "--time", "2", "--samples", "3")
    assert code == 0
    r = rows(out)
    assert [float(x["x"]) for x in r] == [0.0, 1.0, 2.0]
    assert all(float(x["y"]) == 0.0 and float(x["theta"]) == 0.0 for x in r)
    assert out.splitlines()[0] == "s,x,y,theta,gamma_s,c_s,curvature,cusp"
    assert "\r" not in out


def test_geodesic_rotation_has_inflections(capsys):
    code, out, _ = run(capsys, "geodesic", "--gamma", "0", "--c", "3", "--time", "10", "--samples", "200")
    kappa = [float(x["curvature"]) for x in rows(out)]
    assert code == 0 and any(a * b < 0 for a, b in zip(kappa, kappa[1:]))


def test_geodesic_oracle_mode_agrees(capsys):
    args = ["geodesic", "--gamma", "0", "--c", "1", "--time", "10", "--samples", "5"]
    _, closed, _ = run(capsys, *args)
    _, oracle, _ = run(capsys, *args, "--oracle")
    for a, b in zip(rows(closed), rows(oracle)):
        for key in ("x", "y", "theta"):
            assert abs(float(a[key]) - float(b[key])) < 1e-8


def test_oracle_diff(capsys):
    code, out, _ = run(capsys, "oracle-diff", "--gamma", "0", "--c", "1", "--time", "10")
    assert code == 0 and float(rows(out)[0]["max"]) < 1e-8


def test_cut_time_C4(capsys):
    code, out, _ = run(capsys, "cut-time", "--gamma", "0", "--c", "0")
    r = rows(out)[0]
    assert code == 0 and r["stratum"] == "C4" and r["t_bound"].startswith("3.14159")


def test_cut_time_inf_serialisation(capsys):
    _, out, _ = run(capsys, "cut-time", "--gamma", "0", "--c", "2")
    assert rows(out)[0]["t_bound"] == "inf"
    _, out, _ = run(capsys, "cut-time", "--gamma", "0", "--c", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["rows"][0]["t_bound"] is None and doc["rows"][0]["t_bound_inf"] is True
    assert doc["meta"]["command"] == "cut-time"


def test_maxwell_json(capsys):
    k = 1 / math.sqrt(2)
    t = 2 * complete_K(k)
    code, out, _ = run(capsys, "maxwell", "--energy", "0", "--time", repr(t))
    doc = json.loads(out)
    assert code == 0 and doc["rows"][0]["in_max5"] is True and doc["rows"][0]["stratum"] == "C1"


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--grid", "0.001:0.999:25")
    r = rows(out)
    assert code == 0 and len(r) == 25
    assert abs(float(r[0]["p11"]) - math.pi) < 1e-3
    Ks = [float(x["K"]) for x in r]
    assert all(a < b for a, b in zip(Ks, Ks[1:]))
    assert all(float(x["K"]) < float(x["p11"]) < float(x["two_K"]) for x in r)


def test_tt_curve(capsys):
    code, out, _ = run(capsys, "tt-curve", "--grid=-1:100:60")
    r = rows(out)
    assert code == 0
    assert float(r[0]["E"]) == -1.0 and float(r[0]["t"]) == math.pi
    E = [float(x["E"]) for x in r]
    j = E.index(1.0)
    assert r[j]["t"] == "inf"
    assert float(r[j - 1]["t"]) > float(r[j - 2]["t"]) and float(r[j + 1]["t"]) > float(r[j + 2]["t"])
    assert abs(float(r[-1]["E"]) - 100.0) < 1e-9
    assert abs(float(r[-1]["t"]) * math.sqrt(101) / (2 * math.sqrt(2) * math.pi) - 1) < 0.02


def test_symmetry_check(capsys):
    code, out, _ = run(capsys, "symmetry-check", "--samples", "50", "--seed", "3")
    r = rows(out)
    assert code == 0 and r[-1]["reflection"] == "all" and float(r[-1]["max_residual"]) < 1e-8
    code, _, _ = run(capsys, "symmetry-check", "--samples", "5", "--tol", "1e-300")
    assert code == 1


def test_deterministic_and_round_trip(capsys, tmp_path):
    path = tmp_path / "g.csv"
    args = ["geodesic", "--gamma", "0.4", "--c", "1.3", "--time", "7", "--samples", "50", "--out", str(path)]
    assert main(args) == 0
    first = path.read_bytes()
    assert main(args) == 0
    assert path.read_bytes() == first
    for r in rows(first.decode()):
        for key in ("x", "y", "theta"):
            v = float(r[key])
            assert format(v, ".17g") == r[key]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "cut-time", "--energy", "-3")[0] == 2
    assert run(capsys, "geodesic", "--gamma", "0", "--c", "1")[0] == 2  # no time
    assert run(capsys, "geodesic", "--gamma", "0", "--c", "1", "--time", "-1")[0] == 2
    assert run(capsys, "geodesic", "--gamma", "0", "--c", "1", "--time", "1", "--samples", "1")[0] == 2
    assert run(capsys, "maxwell", "--gamma", "0", "--c", "0", "--time", "1")[0] == 2
    assert run(capsys, "roots", "--grid", "0.5:0.1:3")[0] == 2
    assert run(capsys, "roots", "--grid", "garbage")[0] == 2
    bad = tmp_path / "missing" / "out.csv"
    assert run(capsys, "cut-time", "--gamma", "0", "--c", "0", "--out", str(bad))[0] == 3


def test_root_failure_exit_code(capsys, monkeypatch):
    from se2geodesic import cli, maxwell

    def boom(n, k):
        raise maxwell.RootSearchError("forced")

    monkeypatch.setattr(cli, "p1_root", boom)
    assert run(capsys, "roots")[0] == 4


def test_covector_from_energy():
    assert classify(covector_from_energy(-1.0)).id is StratumId.C4
    assert classify(covector_from_energy(1.0)).id is StratumId.C5
    assert classify(covector_from_energy(1.0, 0.3)).id is StratumId.C3
    for E, f in ((0.2, 0.37), (5.0, 0.81)):
        assert abs(energy(covector_from_energy(E, f)) - E) < 1e-12
    with pytest.raises(InputError):
        covector_from_energy(0.0, 1.0)


def test_grid_parsing():
    assert parse_grid("0:1:5", (0, 0, 0)) == (0.0, 1.0, 5)
    assert parse_grid(None, (1, 2, 3)) == (1, 2, 3)
    with pytest.raises(InputError):
        parse_grid("1:0:5", (0, 0, 0))
    g = energy_grid(-1.0, 3.0, 20)
    assert g[0] == -1.0 and 1.0 in g and g == sorted(g)


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "se2geodesic", "cut-time", "--gamma", "0", "--c", "0"],
        capture_output=True, text=True, check=True,
    )
    assert "C4" in out.stdout

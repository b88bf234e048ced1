import json
import os
import subprocess
import sys

import pytest

from genuschange import __version__
from genuschange.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orbits(capsys, tmp_path):
    out_json = tmp_path / "o.json"
    code, out, _ = run(capsys, "orbits", "--p", "3", "--n", "3", "--json", str(out_json))
    assert code == 0
    assert "2 orbit(s)" in out
    data = json.loads(out_json.read_text())
    assert data["schema_version"] == 1 and data["tool_version"] == __version__
    assert [o["length"] for o in data["orbits"]] == [6, 2]


def test_orbits_31(capsys):
    code, out, _ = run(capsys, "orbits", "--p", "3", "--n", "1", "--json", "-")
    assert code == 0
    data = json.loads(out[out.index("{"):])
    assert data["orbits"] == [{"rep": 0, "members": [0, 1], "length": 2}]


@pytest.mark.parametrize("argv", [
    ["orbits", "--p", "4", "--n", "1"],
    ["orbits", "--p", "2", "--n", "1"],
    ["orbits", "--p", "3", "--n", "0"],
    ["points", "--p", "3"],
    ["nonsense"],
    ["genus", "--p", "3", "--n", "1", "--a", "t^3"],
    ["family", "--p", "3", "--u", "t^^2"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_resource_error(capsys):
    code, _, err = run(capsys, "oracle-coeffs", "--p", "3", "--n", "2", "--k", "2", "--budget", "100")
    assert code == 3
    assert "budget" in err


def test_points_json(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "points", "--p", "3", "--n", "1", "--k", "2", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["count"] == 9 and data["verified"]
    assert set(data["points"][0]) == {"p", "n", "k", "modulus", "alpha", "x", "y"}


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--p", "3", "--n", "3")
    assert code == 0
    assert "6561" in out


def test_genus(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, out, _ = run(capsys, "genus", "--p", "3", "--n", "1", "--oracle", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["genus"] == data["paper_value"] == 1 and data["match"]
    assert all(r["fast"] == r["oracle"] for r in data["oracle"])
    code, _, _ = run(capsys, "genus", "--p", "5", "--n", "1", "--a", "t+t^2")
    assert code == 0


def test_param_check(capsys):
    code, out, _ = run(capsys, "param-check", "--p", "3", "--n", "2", "--k", "4")
    assert code == 0
    assert "81 point(s)" in out


def test_oracle_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "oracle-coeffs", "--p", "3", "--n", "1", "--k", "2", "--workers", "1")
    assert code == 0 and "identical sets" in out
    ck = tmp_path / "ck.json"
    code, out, _ = run(capsys, "oracle-points", "--p", "3", "--n", "1", "--height", "2",
                       "--workers", "1", "--checkpoint", str(ck))
    assert code == 0 and "extra survivors: 0" in out
    assert ck.exists()


def test_family(capsys):
    code, out, _ = run(capsys, "family", "--p", "3", "--u", "t^4")
    assert code == 0
    assert "t^5 + t" in out and "matches" in out
    code, out, _ = run(capsys, "family", "--p", "3", "--u", "0")
    assert code == 0 and "= t\n" in out
    code, out, _ = run(capsys, "family", "--p", "5", "--u", "t^6", "--json", "-")
    assert code == 0
    assert json.loads(out[out.index("{"):])["matches_curve"]


def test_report_small(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "report", "--p", "3", "--n", "1", "--json", str(path))
    assert code == 0
    assert "ALL PASS" in out
    assert "rr_fast_vs_oracle" in out
    data = json.loads(path.read_text())
    assert data["all_pass"] and data["matrix"] == [[3, 1]]


def test_env_overrides(tmp_path):
    env_json = tmp_path / "env.json"
    env = dict(os.environ, GENUSCHANGE_JSON=str(env_json), GENUSCHANGE_WORKERS="1")
    proc = subprocess.run([sys.executable, "-m", "genuschange.cli", "orbits", "--p", "5", "--n", "2"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(env_json.read_text())["n_orbits"] == 1
    bad = dict(os.environ, GENUSCHANGE_WORKERS="many")
    proc = subprocess.run([sys.executable, "-m", "genuschange.cli", "orbits", "--p", "5", "--n", "2"],
                          env=bad, capture_output=True, text=True)
    assert proc.returncode == 2

import json

import numpy as np
import pytest

from hcft import io
from hcft.cli import main
from hcft.integral import CompactDistribution
from hcft.verify import random_superfunction


@pytest.fixture
def files(tmp_path):
    rng = np.random.default_rng(7)
    paths = {}
    for name in ("F", "G"):
        paths[name] = str(tmp_path / f"{name}.json")
        io.save_json(io.superfunction_to_json(random_superfunction(2, rng)), paths[name])
    paths["U"] = str(tmp_path / "U.json")
    io.save_json(io.distribution_to_json(CompactDistribution.delta_identity(2)), paths["U"])
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spinrep_prints_matrix(capsys):
    code, out, _ = run(capsys, "spinrep", "--n", "2", "--zeta", "1,0", "--element", "a{1}")
    assert code == 0
    assert json.loads(out) == [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]


def test_unknown_flag_is_usage_error(capsys):
    assert run(capsys, "spinrep", "--bogus")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_bad_element_and_missing_file(capsys, files):
    assert run(capsys, "spinrep", "--n", "2", "--element", "a{7}")[0] == 2
    code, _, err = run(capsys, "integral", "/nonexistent.json")
    assert code == 2 and "nonexistent" in err


def test_malformed_json_reports_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2,\n "components": [}')
    code, _, err = run(capsys, "integral", str(bad))
    assert code == 2 and "bad.json:2:" in err


def test_transform_and_laplace(capsys, files):
    code, out, _ = run(capsys, "transform", files["F"], "--zmin", "-1", "--zmax", "1", "--zsteps", "3", "--imag", "0.5")
    data = json.loads(out)
    assert code == 0 and len(data["matrices"]) == 3 and data["zeta"][0] == [-1.0, 0.5]
    code, out, _ = run(capsys, "laplace", files["U"], "--zsteps", "2")
    assert code == 0
    assert np.allclose(io.matrix_from_json(json.loads(out)["matrices"][0]), np.eye(2))


def test_transform_component_table(capsys, files):
    code, out, _ = run(capsys, "--json", "transform", files["F"], "--component", "a{1}")
    assert code == 0 and len(json.loads(out)) == 4
    code, _, err = run(capsys, "transform", files["F"], "--component", "1", "--zsteps", "3")
    assert code == 2 and "zeta = 0" in err


def test_inverse_round_trip(capsys, files):
    code, out, _ = run(capsys, "inverse", files["F"], "--tol", "1e-8")
    assert code == 0
    G = io.superfunction_from_json(json.loads(out))
    assert G.max_abs_diff(io.load_superfunction(files["F"])) < 1e-8


def test_algebra_commands(capsys, files):
    for cmd in ("convolve", "product"):
        code, out, _ = run(capsys, cmd, files["F"], files["G"])
        assert code == 0 and json.loads(out)["n"] == 2
    code, out, _ = run(capsys, "dist-convolve", files["U"], files["F"])
    assert io.superfunction_from_json(json.loads(out)).max_abs_diff(io.load_superfunction(files["F"])) < 1e-12
    for argv in (["pair", files["F"], files["G"]], ["integral", files["F"]]):
        code, out, _ = run(capsys, "--json", *argv)
        assert code == 0 and len(json.loads(out)) == 2


def test_norm_and_banach(capsys, files):
    code, out, _ = run(capsys, "norm", files["F"], "--k", "1")
    assert code == 0 and float(out) > 0
    code, out, _ = run(capsys, "--json", "banach-check", files["F"], files["G"])
    assert code == 0 and json.loads(out)["passed"] is True


def test_pw_check_exit_codes(capsys, tmp_path):
    path = tmp_path / "g.json"
    io.save_json(io.superfunction_to_json(random_superfunction(1, np.random.default_rng(0))), path)
    code, out, err = run(capsys, "pw-check", str(path), "--a", "1", "--N", "2")
    assert code == 1 and "FAIL" in out


def test_verify_quick_suite(capsys):
    code, out, _ = run(capsys, "--json", "verify", "--suite", "trace", "--n", "3", "--tol", "1e-8")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["suites"][0]["suite"] == "trace"
    code, out, _ = run(capsys, "--quiet", "verify", "--suite", "delta", "--n", "2")
    assert code == 0 and out == ""


def test_seed_is_deterministic(capsys):
    a = run(capsys, "--json", "--seed", "5", "verify", "--suite", "conv-twopath", "--n", "2")[1]
    b = run(capsys, "--json", "--seed", "5", "verify", "--suite", "conv-twopath", "--n", "2")[1]
    strip = lambda s: [c["max_error"] for c in json.loads(s)["suites"][0]["checks"]]
    assert strip(a) == strip(b)

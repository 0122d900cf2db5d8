import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hcft import io
from hcft.errors import FormatError
from hcft.integral import CompactDistribution
from hcft.verify import VerifyConfig, random_superfunction, run_suite
from conftest import superfunctions


@given(st.integers(1, 4).flatmap(superfunctions))
def test_superfunction_round_trip_is_bit_exact(F):
    text = io.dumps(io.superfunction_to_json(F))
    again = io.dumps(io.superfunction_to_json(io.superfunction_from_json(json.loads(text))))
    assert again == text


def test_grid_round_trip_is_bit_exact(rng):
    F = random_superfunction(2, rng).to_grid((-4, 4, 64))
    text = io.dumps(io.superfunction_to_json(F))
    G = io.superfunction_from_json(json.loads(text))
    assert io.dumps(io.superfunction_to_json(G)) == text
    assert all(np.array_equal(F.component(m).values, G.component(m).values) for m in F.comps)


def test_distribution_round_trip():
    U = CompactDistribution(3, {"{}": [(0, 0.0, 1.0)], "{1,3}": [(2, -0.3, 0.5 - 0.25j)]})
    text = io.dumps(io.distribution_to_json(U))
    V = io.distribution_from_json(json.loads(text))
    assert io.dumps(io.distribution_to_json(V)) == text
    assert V.comps == U.comps


def test_matrix_and_report_round_trip():
    M = np.array([[1 + 2j, -0.5], [0.125j, 3.0]])
    assert np.array_equal(io.matrix_from_json(json.loads(io.dumps(io.matrix_to_json(M)))), M)
    rep = run_suite("trace", VerifyConfig(n_max=2)).to_dict()
    assert json.loads(io.dumps(rep)) == rep


def test_file_helpers(tmp_path, rng):
    F = random_superfunction(2, rng)
    path = tmp_path / "F.json"
    io.save_json(io.superfunction_to_json(F), path)
    assert io.load_superfunction(path).max_abs_diff(F) == 0


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"n": 2, "components": {', "1:"),
        ('{"n": 0, "components": {}}', "$.n"),
        ('{"n": 2, "components": {"{3}": {"type": "grid", "x0": 0, "dx": 1, "values": []}}}', "{3}"),
        ('{"n": 2, "components": {"{}": {"type": "spline"}}}', "unknown type"),
        ('{"n": 2, "components": {"{}": {"type": "gausspoly", "terms": [{"poly": ["x"], "alpha": 1, "mu": 0}]}}}',
         "terms[0].poly"),
    ],
)
def test_malformed_input_names_location(tmp_path, text, fragment):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(FormatError, match=None) as info:
        io.load_superfunction(path)
    assert fragment in str(info.value)


def test_missing_file():
    with pytest.raises(FormatError):
        io.load_json("/nonexistent/file.json")


def test_bad_distribution_order(tmp_path):
    path = tmp_path / "U.json"
    path.write_text('{"n": 1, "components": {"{}": [{"order": -1, "x0": 0, "coeff": [1, 0]}]}}')
    with pytest.raises(FormatError, match="order"):
        io.load_distribution(path)

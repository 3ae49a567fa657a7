import json

import numpy as np
import pytest

from conftest import H_CHSH
from rocnbell import build_self_testing_matrix
from rocnbell.io import (
    MatrixFormatError,
    matrix_to_json,
    observables_from_json,
    observables_to_json,
    parse_matrix,
    probabilities_to_json,
    read_matrix,
    write_matrix,
)
from rocnbell.strategy import canonical_strategy, correlations, probabilities


def test_round_trip_is_bitwise(tmp_path):
    h = build_self_testing_matrix(4)
    path = tmp_path / "h.json"
    write_matrix(path, h)
    back = read_matrix(path)
    assert back.entries.tobytes() == h.entries.tobytes()
    assert back.label == h.label


def test_header_and_digits():
    doc = json.loads(matrix_to_json(H_CHSH, "chsh"))
    assert (doc["m"], doc["n"], doc["label"]) == (2, 2, "chsh")
    assert "0.70710678118654746" in matrix_to_json(H_CHSH)


@pytest.mark.parametrize("token", ["NaN", "Infinity", "-Infinity"])
def test_non_finite_rejected(token):
    text = '{"m": 1, "n": 2, "entries": [[1.0, %s]], "label": ""}' % token
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


@pytest.mark.parametrize(
    "text",
    [
        '{"m": 2, "n": 2, "entries": [[1.0, 0.0]], "label": ""}',
        '{"m": 1, "n": 2, "entries": [[1.0]], "label": ""}',
        '{"m": 1, "n": 1, "entries": [["x"]]}',
        '{"n": 1, "entries": [[1.0]]}',
        "[1, 2]",
        "not json",
    ],
)
def test_malformed_rejected(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_observables_round_trip():
    ops = canonical_strategy(H_CHSH).bob.ops
    doc = json.loads(observables_to_json(ops))
    assert set(doc[0][0][0]) == {"re", "im"}
    np.testing.assert_array_equal(observables_from_json(observables_to_json(ops)), ops)


def test_probability_layout():
    p = probabilities(correlations(canonical_strategy(H_CHSH)))
    nested = json.loads(probabilities_to_json(p))
    assert len(nested) == 2 and len(nested[0]) == 2 and len(nested[0][0]) == 2
    # [i][j][a][b], index 0 is outcome +1
    assert nested[0][0][0][0] == pytest.approx(0.25 * (1 + 1 / np.sqrt(2)))

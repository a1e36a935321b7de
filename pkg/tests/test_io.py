import json

import pytest
from hypothesis import given, settings

from conftest import M, square_matrices
from ginv.errors import MatrixParseError
from ginv.exactcore import I, dump_matrix, load_matrix, matrix_from_json, matrix_to_json, parse_matrix


def test_json_shape():
    m = M([[1, "1/2"], [I, 0]])
    assert matrix_to_json(m) == {
        "rows": 2,
        "cols": 2,
        "entries": [["1", "1/2"], [{"re": "0", "im": "1"}, "0"]],
    }


@settings(max_examples=50, deadline=None)
@given(square_matrices())
def test_round_trip(m):
    assert parse_matrix(json.dumps(matrix_to_json(m))) == m


def test_file_round_trip(tmp_path):
    m = M([[0, 1], [0, 0]])
    path = tmp_path / "m.json"
    dump_matrix(m, path)
    assert load_matrix(path) == m


@pytest.mark.parametrize(
    "obj, fragment",
    [
        ({"rows": 1, "cols": 1, "entries": [[1]]}, "row 1, column 1"),
        ({"rows": 1, "cols": 2, "entries": [["1", "2/0"]]}, "row 1, column 2"),
        ({"rows": 2, "cols": 1, "entries": [["1"]]}, "expected 2 entry rows"),
        ({"rows": 1, "cols": 2, "entries": [["1"]]}, "row 1 must have 2"),
        ({"rows": 1, "cols": 1, "entries": [[{"re": "1"}]]}, "'re' and 'im'"),
        ({"rows": 0, "cols": 1, "entries": []}, "positive integer"),
        ({"cols": 1, "entries": [["1"]]}, "missing key 'rows'"),
        ([["1"]], "JSON object"),
    ],
)
def test_malformed_input_is_located(obj, fragment):
    with pytest.raises(MatrixParseError, match=fragment):
        matrix_from_json(obj)


def test_syntax_error_cites_position():
    with pytest.raises(MatrixParseError, match="line 2, column"):
        parse_matrix('{"rows": 1,\n "cols": 1 "entries": []}')


def test_missing_file(tmp_path):
    with pytest.raises(MatrixParseError):
        load_matrix(tmp_path / "nope.json")

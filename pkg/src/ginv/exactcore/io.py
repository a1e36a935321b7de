"""Matrix JSON format.

``{"rows": n, "cols": m, "entries": [[s, ...], ...]}`` where each ``s`` is a
rational string (``"3"``, ``"-1/2"``) or ``{"re": "...", "im": "..."}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import MatrixParseError
from .matrix import Matrix
from .scalar import RATIONAL_PATTERN, Scalar, format_rational


def scalar_to_json(s: Scalar):
    if s.is_real:
        return format_rational(s.re)
    return {"re": format_rational(s.re), "im": format_rational(s.im)}


def matrix_to_json(m: Matrix) -> dict[str, Any]:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[scalar_to_json(x) for x in row] for row in m.to_rows()],
    }


def _rational(text, where):
    if not isinstance(text, str) or not RATIONAL_PATTERN.match(text):
        raise MatrixParseError(f"{where}: malformed rational {text!r}")
    return text


def _scalar(value, where) -> Scalar:
    if isinstance(value, dict):
        extra = set(value) - {"re", "im"}
        if extra or "re" not in value or "im" not in value:
            raise MatrixParseError(f"{where}: complex entry needs exactly the keys 're' and 'im'")
        return Scalar(_rational(value["re"], where), _rational(value["im"], where))
    return Scalar(_rational(value, where))


def matrix_from_json(obj: Any, source: str = "<matrix>") -> Matrix:
    if not isinstance(obj, dict):
        raise MatrixParseError(f"{source}: expected a JSON object with rows, cols, entries")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise MatrixParseError(f"{source}: missing key {key!r}")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    for key, val in (("rows", rows), ("cols", cols)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise MatrixParseError(f"{source}: {key!r} must be a positive integer, got {val!r}")
    if not isinstance(entries, list) or len(entries) != rows:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise MatrixParseError(f"{source}: expected {rows} entry rows, got {got}")
    grid = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise MatrixParseError(f"{source}: row {i + 1} must have {cols} entries, got {got}")
        grid.append([_scalar(v, f"{source}: row {i + 1}, column {j + 1}") for j, v in enumerate(row)])
    return Matrix(grid)


def parse_matrix(text: str, source: str = "<matrix>") -> Matrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return matrix_from_json(obj, source)


def load_matrix(path: str | Path) -> Matrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixParseError(f"{path}: {exc.strerror or exc}") from None
    return parse_matrix(text, str(path))


def dump_matrix(m: Matrix, path: str | Path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(m), indent=2) + "\n")

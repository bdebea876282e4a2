"""JSON matrix files.

Two layouts, complex entries always written as ``[re, im]``::

    {"size": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
    {"n": 1, "A": [[[1, 0]]], "X": [[[0, 1]]], "B": [[[1, 0]]]}

The block layout describes ``[[A, X], [X*, B]]`` and requires Hermitian
``A`` and ``B``.  Floats are written with ``repr`` precision so a
serialise/parse round trip is exact.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .blocks import BlockMatrix
from .errors import DimensionError, NonHermitianBlock, ParseError
from .numkernel import is_hermitian

Parsed = Union[BlockMatrix, np.ndarray]


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    f = float(v)
    if not np.isfinite(f):
        raise ParseError(f"{where}: non-finite value")
    return f


def _square(rows, size: int, where: str) -> np.ndarray:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of rows")
    if len(rows) != size:
        raise DimensionError(f"{where}: expected {size} rows, got {len(rows)}")
    out = np.empty((size, size), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError(f"{where}[{i}]: expected a list of entries")
        if len(row) != size:
            raise DimensionError(f"{where}[{i}]: expected {size} entries, got {len(row)}")
        for j, z in enumerate(row):
            at = f"{where}[{i}][{j}]"
            if not isinstance(z, list) or len(z) != 2:
                raise ParseError(f"{at}: expected a [re, im] pair, got {z!r}")
            out[i, j] = complex(_number(z[0], at + "[0]"), _number(z[1], at + "[1]"))
    return out


def _size(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise DimensionError(f"{where}: expected a positive integer, got {v!r}")
    return v


def from_obj(obj) -> Parsed:
    if not isinstance(obj, dict):
        raise ParseError("top level: expected a JSON object")
    if "entries" in obj:
        size = _size(obj.get("size"), "size")
        return _square(obj["entries"], size, "entries")
    if {"A", "X", "B"} <= obj.keys():
        n = _size(obj.get("n"), "n")
        a = _square(obj["A"], n, "A")
        x = _square(obj["X"], n, "X")
        b = _square(obj["B"], n, "B")
        for name, blk in (("A", a), ("B", b)):
            if not is_hermitian(blk):
                raise NonHermitianBlock(f"{name}: diagonal block {name} is not Hermitian")
        return BlockMatrix(a, x, b)
    raise ParseError("top level: expected keys {size, entries} or {n, A, X, B}")


def loads(text: str) -> Parsed:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_obj(obj)


def parse_matrix_file(path) -> Parsed:
    """Read a matrix file; block layout gives a BlockMatrix, full layout an array."""
    return loads(Path(path).read_text(encoding="utf-8"))


def encode_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=np.complex128)]


def to_obj(m: Parsed) -> dict:
    if isinstance(m, BlockMatrix):
        return {"n": m.n, "A": encode_matrix(m.A), "X": encode_matrix(m.X), "B": encode_matrix(m.B)}
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"only square matrices can be written, got shape {m.shape}")
    return {"size": m.shape[0], "entries": encode_matrix(m)}


def dumps(m: Parsed) -> str:
    return json.dumps(to_obj(m))


def write_matrix_file(path, m: Parsed) -> None:
    Path(path).write_text(dumps(m) + "\n", encoding="utf-8")

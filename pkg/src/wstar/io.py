"""JSON (de)serialization of block elements.

Complex numbers travel as ``[re, im]`` pairs; plain real numbers are
accepted on input.  An element file looks like::

    {"shape": [2, 1], "blocks": [[[[1, 0], [0, 0]], [[0, 0], [2, 0]]], [[[5, 0]]]]}

and a central element like ``{"shape": [2, 1], "scalars": [[1, 0], [3, 0]]}``.
"""

import json
from pathlib import Path

import numpy as np

from .algebra import DEFAULT_TOL, AlgebraShape, BlockElement, CentralElement, make_central, make_element
from .errors import DimensionMismatch

__all__ = [
    "complex_to_json",
    "complex_from_json",
    "element_to_json",
    "element_from_json",
    "central_to_json",
    "central_from_json",
    "load_element",
]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        return complex(v[0], v[1])
    raise DimensionMismatch(f"expected a number or an [re, im] pair, got {v!r}")


def complex_to_json(z) -> list:
    z = complex(z)
    # 0.0 + avoids emitting -0.0
    return [0.0 + z.real, 0.0 + z.imag]


def _matrix_from_json(rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DimensionMismatch("a block must be a list of rows")
    return np.array([[complex_from_json(v) for v in r] for r in rows], dtype=complex) \
        if rows else np.zeros((0, 0), dtype=complex)


def element_from_json(data, tol: float = DEFAULT_TOL) -> BlockElement:
    if not isinstance(data, dict) or "shape" not in data or "blocks" not in data:
        raise DimensionMismatch('element JSON needs "shape" and "blocks"')
    shape = AlgebraShape(tuple(int(n) for n in data["shape"]))
    if not isinstance(data["blocks"], list):
        raise DimensionMismatch('"blocks" must be a list')
    mats = []
    for rows in data["blocks"]:
        m = _matrix_from_json(rows)
        if m.ndim != 2:
            raise DimensionMismatch("ragged block rows")
        mats.append(m)
    return make_element(shape, mats, tol)


def element_to_json(x: BlockElement) -> dict:
    return {
        "shape": list(x.shape.block_dims),
        "blocks": [[[complex_to_json(v) for v in row] for row in b] for b in x.blocks],
    }


def central_from_json(data, shape=None) -> CentralElement:
    scalars = [complex_from_json(v) for v in data["scalars"]]
    shape = data.get("shape", shape) if isinstance(data, dict) else shape
    if shape is None:
        raise DimensionMismatch("central element needs a shape")
    return make_central(shape, scalars)


def central_to_json(c: CentralElement) -> dict:
    return {"shape": list(c.shape.block_dims),
            "scalars": [complex_to_json(s) for s in c.scalars]}


def load_element(path, tol: float = DEFAULT_TOL) -> BlockElement:
    with Path(path).open() as fh:
        return element_from_json(json.load(fh), tol)

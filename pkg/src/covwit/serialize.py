"""JSON file formats for matrices and linear maps.

Matrix JSON: {"rows": n, "cols": m, "data": [[re, im], ...]} row-major.
Map JSON: {"d_in": n, "d_out": m, "choi_unnormalized": <matrix JSON>}
          or {"family": "hh"|"werner3-L"|"quo-M", "d": d, "coeffs": {...}}.
"""

import json

import numpy as np

from .linalg import ContractError, DimensionError


def matrix_to_obj(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionError("matrix JSON requires a 2-d array")
    data = [[float(z.real), float(z.imag)] for z in m.reshape(-1)]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": data}


def matrix_from_obj(obj):
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError) as exc:
        raise ContractError(f"malformed matrix JSON: {exc}") from exc
    if rows < 1 or cols < 1:
        raise DimensionError("matrix JSON dimensions must be positive")
    if len(data) != rows * cols:
        raise ContractError("matrix JSON data length != rows*cols")
    flat = np.array([complex(re, im) for re, im in data])
    if not np.isfinite(flat).all():
        raise ContractError("matrix JSON contains non-finite entries")
    return flat.reshape(rows, cols)


def dump_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def write_matrix(m, path):
    dump_json(matrix_to_obj(m), path)


def read_matrix(path):
    return matrix_from_obj(load_json(path))

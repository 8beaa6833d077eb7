"""JSON encodings of matrices, block matrices, groups and characters.

Matrix:       {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
Block matrix: {"m": m, "n": n, "blocks": [[matrix, ...], ...]}
Group:        {"degree": m, "generators": [[images...], ...]}      (1-based)
Character:    {"name": "sign"} | {"generator_values": [[re, im], ...]}
              | {"values": [[re, im], ...]}  (aligned with canonical element order;
                                              need not be multiplicative)
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import FormatError
from .linalg import BlockMatrix
from .matfun import GmfSpec
from .permgroup import (Character, PermGroup, builtin_character, character_from_generator_values,
                        close_generators)


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _complex(item, where: str) -> complex:
    if isinstance(item, (int, float)) and not isinstance(item, bool):
        return complex(item)
    if (isinstance(item, list) and len(item) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)):
        return complex(item[0], item[1])
    raise FormatError(f"{where}: expected [re, im], got {item!r}")


def _require(obj, keys, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{where}: missing key {missing[0]!r}")


def complex_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    return {"rows": M.shape[0], "cols": M.shape[1], "entries": [complex_pair(z) for z in M.ravel()]}


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    _require(obj, ("rows", "cols", "entries"), where)
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 0 and cols >= 0):
        raise FormatError(f"{where}: rows and cols must be nonnegative integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise FormatError(f"{where}: expected {rows * cols} entries")
    vals = [_complex(e, f"{where}.entries[{i}]") for i, e in enumerate(entries)]
    M = np.array(vals, dtype=np.complex128).reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise FormatError(f"{where}: non-finite entry")
    return M


def block_to_json(B: BlockMatrix) -> dict:
    return {"m": B.m, "n": B.n,
            "blocks": [[matrix_to_json(B[i, j]) for j in range(B.m)] for i in range(B.m)]}


def block_from_json(obj, where: str = "block matrix") -> BlockMatrix:
    _require(obj, ("m", "n", "blocks"), where)
    m, n, grid = obj["m"], obj["n"], obj["blocks"]
    if not isinstance(grid, list) or len(grid) != m or any(not isinstance(r, list) or len(r) != m for r in grid):
        raise FormatError(f"{where}: blocks must be an {m}x{m} grid")
    out = np.zeros((m, m, n, n), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            M = matrix_from_json(grid[i][j], f"{where}.blocks[{i}][{j}]")
            if M.shape != (n, n):
                raise FormatError(f"{where}.blocks[{i}][{j}]: expected {n}x{n}, got {M.shape}")
            out[i, j] = M
    return BlockMatrix(out)


def group_to_json(G: PermGroup) -> dict:
    return {"degree": G.degree, "generators": [[x + 1 for x in g] for g in G.generators]}


def group_from_json(obj, where: str = "group") -> PermGroup:
    _require(obj, ("degree", "generators"), where)
    m, gens = obj["degree"], obj["generators"]
    if not isinstance(m, int) or m < 1:
        raise FormatError(f"{where}: degree must be a positive integer")
    if not isinstance(gens, list) or any(not isinstance(g, list) for g in gens):
        raise FormatError(f"{where}: generators must be a list of image lists")
    zero_based = []
    for g in gens:
        if any(not isinstance(x, int) for x in g):
            raise FormatError(f"{where}: generator images must be integers")
        zero_based.append([x - 1 for x in g])
    return close_generators(m, zero_based)


def spec_from_json(obj, G: PermGroup, where: str = "character") -> GmfSpec:
    """Character JSON to a GMF spec; a raw ``values`` table may be non-multiplicative."""
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if "name" in obj:
        return GmfSpec.from_character(builtin_character(G, obj["name"]))
    if "generator_values" in obj:
        vals = [_complex(v, f"{where}.generator_values[{i}]") for i, v in enumerate(obj["generator_values"])]
        return GmfSpec.from_character(character_from_generator_values(G, vals))
    if "values" in obj:
        vals = [_complex(v, f"{where}.values[{i}]") for i, v in enumerate(obj["values"])]
        return GmfSpec.from_table(G, vals)
    raise FormatError(f"{where}: expected one of 'name', 'generator_values', 'values'")


def character_from_json(obj, G: PermGroup, where: str = "character") -> Character:
    return spec_from_json(obj, G, where).character


def multi_index_labels(indices) -> list[list[int]]:
    return [[x + 1 for x in alpha] for alpha in indices]

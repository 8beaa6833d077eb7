"""Generalized matrix functions and their blockwise maps.

For a subgroup ``G`` of S_m and a class function ``chi`` on it,

    d(A) = sum_{sigma in G} chi(sigma) * prod_i A[i, sigma(i)].

``(S_m, sign)`` gives the determinant and ``(S_m, 1)`` the permanent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ShapeError, ValidationError
from .linalg import BlockMatrix, as_matrix, permanent
from .permgroup import (DEFAULT_GROUP_CAP, Character, PermGroup, builtin_character, symmetric_group,
                        validate_character)

# matrices of at least this size use the O(n^3) / Ryser paths when they apply
FAST_PATH_MIN = 7


@dataclass(frozen=True, eq=False)
class GmfSpec:
    """The pair ``(G, chi)``; ``values`` is aligned with ``group.elements``.

    A table that is not a degree-1 character is accepted for plain
    evaluation, but such a spec is flagged ``evaluation_only`` and rejected by the
    induced-matrix code.
    """

    group: PermGroup
    values: np.ndarray
    evaluation_only: bool = False
    name: str | None = field(default=None, compare=False)

    @classmethod
    def from_character(cls, chi: Character) -> "GmfSpec":
        return cls(chi.group, chi.values, evaluation_only=False, name=chi.name)

    @classmethod
    def from_table(cls, group: PermGroup, values, name: str | None = None) -> "GmfSpec":
        v = np.asarray(values, dtype=np.complex128).ravel()
        if v.shape[0] != group.order:
            raise ValidationError(f"{v.shape[0]} values for a group of order {group.order}")
        return cls(group, v, evaluation_only=not validate_character(group, v), name=name)

    @classmethod
    def named(cls, group: PermGroup, name: str) -> "GmfSpec":
        return cls.from_character(builtin_character(group, name))

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def character(self) -> Character:
        if self.evaluation_only:
            raise ValidationError("value table is not a degree-1 character")
        return Character(self.group, self.values, name=self.name)

    def fast_path(self) -> str | None:
        """'det' or 'per' when ``(G, chi)`` is ``(S_m, sign)`` or ``(S_m, 1)``."""
        if not self.group.is_symmetric():
            return None
        if np.allclose(self.values, 1.0, atol=1e-12):
            return "per"
        signs = builtin_character(self.group, "sign").values
        if np.allclose(self.values, signs, atol=1e-12):
            return "det"
        return None


def determinant_spec(n: int, cap: int = DEFAULT_GROUP_CAP) -> GmfSpec:
    return GmfSpec.named(symmetric_group(n, cap), "sign")


def permanent_spec(n: int, cap: int = DEFAULT_GROUP_CAP) -> GmfSpec:
    return GmfSpec.named(symmetric_group(n, cap), "trivial")


def _diagonal_products(spec: GmfSpec, stack: np.ndarray) -> np.ndarray:
    m = spec.degree
    # picked[..., g, i] = A[..., i, sigma_g(i)]
    picked = stack[..., np.arange(m)[None, :], spec.group.array]
    return picked.prod(axis=-1)


def _evaluate_stack(spec: GmfSpec, stack: np.ndarray, fast: bool = True) -> np.ndarray:
    m = spec.degree
    if stack.shape[-2:] != (m, m):
        raise ShapeError(f"GMF of degree {m} applied to {stack.shape[-2]}x{stack.shape[-1]} matrices")
    kind = spec.fast_path() if fast and m >= FAST_PATH_MIN else None
    if kind == "det":
        return np.linalg.det(stack)
    if kind == "per":
        flat = stack.reshape(-1, m, m)
        return np.array([permanent(a) for a in flat]).reshape(stack.shape[:-2])
    # fixed canonical summation order over group elements
    return np.sum(_diagonal_products(spec, stack) * spec.values, axis=-1)


def evaluate(spec: GmfSpec, A, fast: bool = True) -> complex:
    """Value of the generalized matrix function at ``A``.

    With ``fast=False`` the defining sum over ``G`` is always used.
    """
    A = as_matrix(A, square=True)
    return complex(_evaluate_stack(spec, A, fast=fast))


def submatrix(A, beta: Sequence[int], alpha: Sequence[int]) -> np.ndarray:
    """``A[beta | alpha]``: entry ``(i, j)`` is ``A[beta[i], alpha[j]]``; indices may repeat."""
    A = as_matrix(A)
    beta = np.asarray(beta, dtype=np.int64)
    alpha = np.asarray(alpha, dtype=np.int64)
    if beta.size and (beta.min() < 0 or beta.max() >= A.shape[0]):
        raise ValidationError(f"row index out of range for {A.shape[0]} rows")
    if alpha.size and (alpha.min() < 0 or alpha.max() >= A.shape[1]):
        raise ValidationError(f"column index out of range for {A.shape[1]} columns")
    return A[np.ix_(beta, alpha)]


def block_gmf_map(spec: GmfSpec, blocks: BlockMatrix, fast: bool = True) -> np.ndarray:
    """Apply the GMF to every block: the ``m x m`` matrix ``[d(A_ij)]``."""
    if blocks.n != spec.degree:
        raise ShapeError(f"block size {blocks.n} differs from GMF degree {spec.degree}")
    return _evaluate_stack(spec, blocks.blocks, fast=fast)


def det_m(blocks: BlockMatrix) -> np.ndarray:
    """``[det A_ij]`` for a block matrix."""
    return np.linalg.det(blocks.blocks)

"""Symmetrizers, star bases and induced matrices.

The induced matrix of ``A`` (``p x q``) on the symmetry class of
``(G, chi)`` is ``K(A) = Z_p^* (A (x) ... (x) A) Z_q``, where the columns of
``Z_n`` are the normalized star products ``sqrt(|G|/nu(alpha)) * S e_alpha``
for ``alpha`` in the class's index set, in lexicographic order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .errors import CapacityError, ConsistencyError, ShapeError, ValidationError
from .linalg import BlockMatrix, adjoint, as_matrix, size_cap
from .matfun import GmfSpec, _evaluate_stack
from .permgroup import Character, PermGroup, inverse
from .symclass import SymmetryClass, _gamma_array, _index_codes, delta_bar

log = logging.getLogger(__name__)

ORTHONORMALITY_TOL = 1e-8
COMPRESSION_TOL = 1e-8


def _check_pair(G: PermGroup, chi: Character):
    if chi.group != G:
        raise ValidationError("character is defined on a different group")


def symmetrizer(m: int, n: int, G: PermGroup, chi: Character, cap: int | None = None) -> np.ndarray:
    """Matrix of ``S = (1/|G|) sum_sigma chi(sigma) P(sigma)`` on ``(C^n)^{(x) m}``.

    ``P(sigma)`` sends ``v_1 (x) ... (x) v_m`` to
    ``v_{sigma^-1(1)} (x) ... (x) v_{sigma^-1(m)}``.
    """
    _check_pair(G, chi)
    if G.degree != m:
        raise ShapeError(f"group degree {G.degree} != tensor order {m}")
    cap = size_cap() if cap is None else cap
    dim = n**m
    if dim * dim > cap:
        raise CapacityError(f"symmetrizer: {dim}x{dim} exceeds cap of {cap} entries")
    gamma = _gamma_array(m, n, cap)
    cols = np.arange(dim)
    S = np.zeros((dim, dim), dtype=np.complex128)
    for sigma, value in zip(G.elements, chi.values):
        rows = _index_codes(gamma[:, inverse(sigma)], n)
        S[rows, cols] += value
    return S / G.order


@dataclass(frozen=True, eq=False)
class StarBasis:
    """Orthonormal star basis of a symmetry class; ``Z`` is ``n**m x dim``."""

    symclass: SymmetryClass
    Z: np.ndarray

    @property
    def m(self) -> int:
        return self.symclass.m

    @property
    def n(self) -> int:
        return self.symclass.n

    @property
    def dim(self) -> int:
        return self.symclass.dim

    @property
    def character(self) -> Character:
        return self.symclass.character


def _build_star_basis(cls: SymmetryClass, cap: int | None) -> StarBasis:
    m, n, G, chi = cls.m, cls.n, cls.group, cls.character
    cap = size_cap() if cap is None else cap
    if n**m * max(cls.dim, 1) > cap:
        raise CapacityError(f"star basis: {n**m}x{cls.dim} exceeds cap of {cap} entries")
    Z = np.zeros((n**m, cls.dim), dtype=np.complex128)
    if cls.dim:
        reps = np.array(cls.delta_bar, dtype=np.int64).reshape(cls.dim, m)
        cols = np.arange(cls.dim)
        for sigma, value in zip(G.elements, chi.values):
            rows = _index_codes(reps[:, inverse(sigma)], n)
            np.add.at(Z, (rows, cols), value)
        scale = np.sqrt(G.order / np.array(cls.nu, dtype=float)) / G.order
        Z *= scale[None, :]
    gram = Z.conj().T @ Z
    err = np.max(np.abs(gram - np.eye(cls.dim))) if cls.dim else 0.0
    if err > ORTHONORMALITY_TOL:
        raise ConsistencyError(f"star basis is not orthonormal (max deviation {err:.3e})")
    return StarBasis(cls, Z)


def star_basis(cls: SymmetryClass, cap: int | None = None) -> StarBasis:
    return _build_star_basis(cls, cap)


@lru_cache(maxsize=256)
def _cached_basis(m: int, n: int, chi: Character, cap: int | None) -> StarBasis:
    return _build_star_basis(delta_bar(m, n, chi.group, chi, cap=cap), cap)


def basis_for(n: int, chi: Character, cap: int | None = None) -> StarBasis:
    """Star basis for ``chi``'s group acting on ``(C^n)^{(x) degree}``; cached."""
    return _cached_basis(chi.group.degree, n, chi, cap)


def _tensor_power(A: np.ndarray, k: int, cap: int | None) -> np.ndarray:
    cap = size_cap() if cap is None else cap
    rows, cols = A.shape[0] ** k, A.shape[1] ** k
    if rows * cols > cap:
        raise CapacityError(f"tensor power: {rows}x{cols} exceeds cap of {cap} entries")
    return reduce(np.kron, [A] * k)


def _as_basis(obj, n: int | None = None, cap: int | None = None) -> StarBasis:
    if isinstance(obj, StarBasis):
        return obj
    if isinstance(obj, SymmetryClass):
        return basis_for(obj.n, obj.character, cap)
    if isinstance(obj, Character):
        return basis_for(n, obj, cap)
    if isinstance(obj, GmfSpec):
        return basis_for(n, obj.character, cap)
    raise TypeError(f"cannot build a star basis from {type(obj).__name__}")


def induced_matrix(A, rows, cols=None, cap: int | None = None) -> np.ndarray:
    """``K(A) = Z_p^* (tensor power of A) Z_q``.

    ``rows`` and ``cols`` are star bases, symmetry classes, characters or
    GMF specs; a character or spec is expanded to the basis matching the
    corresponding dimension of ``A``.  ``cols`` defaults to ``rows``.
    """
    A = as_matrix(A)
    p, q = A.shape
    row_basis = _as_basis(rows, p, cap)
    col_basis = _as_basis(rows if cols is None else cols, q, cap)
    if row_basis.n != p or col_basis.n != q:
        raise ShapeError(f"bases over C^{row_basis.n}, C^{col_basis.n} do not fit a {p}x{q} matrix")
    if row_basis.character != col_basis.character:
        raise ValidationError("row and column bases use different characters")
    if row_basis.dim == 0 or col_basis.dim == 0:
        return np.zeros((row_basis.dim, col_basis.dim), dtype=np.complex128)
    T = _tensor_power(A, row_basis.m, cap)
    return row_basis.Z.conj().T @ T @ col_basis.Z


def induced_matrix_entrywise(A, cls) -> np.ndarray:
    """Induced matrix assembled entry by entry from GMF values of submatrices.

    ``out[a, b] = d(A^T[beta | alpha]) / sqrt(nu(alpha) nu(beta))`` with
    ``alpha = delta_bar[a]`` and ``beta = delta_bar[b]``.  For Hermitian ``A``
    and a real character this is ``d(A*[beta | alpha])`` read with rows and
    columns swapped.  Agrees with :func:`induced_matrix` for every square
    ``A``.
    """
    A = as_matrix(A, square=True)
    basis = _as_basis(cls, A.shape[0])
    sc = basis.symclass
    if sc.n != A.shape[0]:
        raise ShapeError(f"class over C^{sc.n} does not fit a {A.shape[0]}x{A.shape[0]} matrix")
    if sc.dim == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    spec = GmfSpec.from_character(sc.character)
    idx = np.array(sc.delta_bar, dtype=np.int64)
    # subs[a, b] = A^T[beta_b | alpha_a]
    subs = A.T[idx[None, :, :, None], idx[:, None, None, :]]
    vals = _evaluate_stack(spec, subs, fast=False)
    norm = np.sqrt(np.array(sc.nu, dtype=float))
    return vals / np.outer(norm, norm)


def blockwise_induced(blocks: BlockMatrix, basis, check: bool = False,
                      cap: int | None = None) -> BlockMatrix:
    """The block matrix ``[K(A_ij)]`` of induced matrices of the blocks.

    With ``check=True`` the compression identity
    ``[K(A_ij)] = Q^* K(A) Q`` with ``Q = [K(E_1), ..., K(E_m)]`` is verified,
    where ``E_i`` is the ``i``-th ``n``-column block of ``I_mn``; a residual
    above ``1e-8`` (relative) raises :class:`ConsistencyError`.
    """
    n = blocks.n
    basis = _as_basis(basis, n, cap)
    if basis.n != n:
        raise ShapeError(f"basis over C^{basis.n} does not fit blocks of size {n}")
    grid = np.array([[induced_matrix(blocks[i, j], basis, cap=cap) for j in range(blocks.m)]
                     for i in range(blocks.m)])
    out = BlockMatrix(grid.reshape(blocks.m, blocks.m, basis.dim, basis.dim))
    if check:
        residual = compression_residual(blocks, basis, out, cap=cap)
        if residual > COMPRESSION_TOL:
            raise ConsistencyError(f"compression identity residual {residual:.3e}")
    return out


def compression_isometry(m: int, basis: StarBasis, cap: int | None = None) -> np.ndarray:
    """``Q = [K(E_1), ..., K(E_m)]`` for ``m`` blocks of size ``basis.n``."""
    n = basis.n
    big = basis_for(m * n, basis.character, cap)
    eye = np.eye(m * n)
    parts = [induced_matrix(eye[:, i * n:(i + 1) * n], big, basis, cap=cap) for i in range(m)]
    return np.hstack(parts)


def compression_residual(blocks: BlockMatrix, basis: StarBasis, induced_blocks: BlockMatrix | None = None,
                         cap: int | None = None) -> float:
    """Relative Frobenius residual of ``[K(A_ij)] - Q^* K(A) Q``."""
    basis = _as_basis(basis, blocks.n, cap)
    if basis.dim == 0:
        log.info("empty symmetry class; compression identity holds vacuously")
        return 0.0
    if induced_blocks is None:
        induced_blocks = blockwise_induced(blocks, basis, cap=cap)
    lhs = induced_blocks.flatten()
    big = basis_for(blocks.m * blocks.n, basis.character, cap)
    Q = compression_isometry(blocks.m, basis, cap)
    rhs = adjoint(Q) @ induced_matrix(blocks.flatten(), big, cap=cap) @ Q
    return float(np.linalg.norm(lhs - rhs) / max(1.0, np.linalg.norm(rhs)))

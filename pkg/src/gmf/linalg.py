"""Dense complex matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Block matrices
in ``M_m(M_n)`` are held by :class:`BlockMatrix`, which stores the grid as a
``(m, m, n, n)`` array and converts to and from the flat ``mn x mn`` form.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

from .errors import CapacityError, ShapeError

DEFAULT_SIZE_CAP = 2**20
PERMANENT_MAX_N = 20
DEFAULT_PSD_TOL = 1e-9
HERMITIAN_TOL = 1e-12

SeedLike = Union[int, Sequence[int], np.random.SeedSequence, np.random.Generator]


def size_cap() -> int:
    """Maximum number of entries of any dense intermediate.

    ``GMF_SIZE_CAP`` in the environment overrides the default of ``2**20``.
    """
    raw = os.environ.get("GMF_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CapacityError(f"GMF_SIZE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise CapacityError(f"GMF_SIZE_CAP must be positive, got {cap}")
    return cap


def as_matrix(A, *, square: bool = False) -> np.ndarray:
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ShapeError("matrix has non-finite entries")
    return M


def adjoint(A: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


@dataclass(frozen=True)
class BlockMatrix:
    """An ``m x m`` grid of ``n x n`` complex blocks."""

    blocks: np.ndarray  # shape (m, m, n, n)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=np.complex128)
        if b.ndim != 4 or b.shape[0] != b.shape[1] or b.shape[2] != b.shape[3]:
            raise ShapeError(f"blocks must have shape (m, m, n, n), got {b.shape}")
        if not np.all(np.isfinite(b)):
            raise ShapeError("block matrix has non-finite entries")
        object.__setattr__(self, "blocks", b)

    @property
    def m(self) -> int:
        return self.blocks.shape[0]

    @property
    def n(self) -> int:
        return self.blocks.shape[2]

    def __getitem__(self, ij) -> np.ndarray:
        i, j = ij
        return self.blocks[i, j]

    def flatten(self) -> np.ndarray:
        m, n = self.m, self.n
        return self.blocks.transpose(0, 2, 1, 3).reshape(m * n, m * n)

    @classmethod
    def from_flat(cls, M, n: int) -> "BlockMatrix":
        M = as_matrix(M, square=True)
        if n < 1 or M.shape[0] % n:
            raise ShapeError(f"cannot split a {M.shape[0]}x{M.shape[0]} matrix into {n}x{n} blocks")
        m = M.shape[0] // n
        return cls(M.reshape(m, n, m, n).transpose(0, 2, 1, 3).copy())

    @classmethod
    def from_grid(cls, grid) -> "BlockMatrix":
        return cls(np.array([[np.asarray(b, dtype=np.complex128) for b in row] for row in grid]))

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.blocks.shape != other.blocks.shape:
            raise ShapeError(f"block shapes differ: {self.blocks.shape} vs {other.blocks.shape}")
        return BlockMatrix(self.blocks + other.blocks)


def kron_power(A, k: int, cap: int | None = None) -> np.ndarray:
    """k-fold Kronecker power of a square matrix.

    Entry ``(alpha, beta)`` (multi-indices read in row-major order) equals
    ``prod_i A[alpha_i, beta_i]``.
    """
    A = as_matrix(A, square=True)
    if k < 1:
        raise ShapeError(f"tensor power must be >= 1, got {k}")
    cap = size_cap() if cap is None else cap
    dim = A.shape[0] ** k
    if dim * dim > cap:
        raise CapacityError(f"kron_power: {dim}x{dim} result exceeds cap of {cap} entries")
    return reduce(np.kron, [A] * k)


def determinant(A) -> complex:
    A = as_matrix(A, square=True)
    # LAPACK getrf: LU with partial pivoting
    return complex(np.linalg.det(A))


def permanent(A, max_n: int = PERMANENT_MAX_N) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula.

    Column subsets are split into a low part of at most 12 columns, whose
    row sums are tabulated once, and a high part that is looped over.
    """
    A = as_matrix(A, square=True)
    n = A.shape[0]
    if n > max_n:
        raise CapacityError(f"permanent: n={n} exceeds cap of {max_n}")
    if n == 0:
        return 1.0 + 0j

    low = min(n, 12)
    high = n - low
    low_masks = np.arange(1 << low)
    low_bits = (low_masks[:, None] >> np.arange(low)) & 1
    low_sums = low_bits @ A[:, :low].T  # (2**low, n) row sums per subset
    low_sizes = low_bits.sum(axis=1)

    total = 0j
    for h in range(1 << high):
        h_bits = (h >> np.arange(high)) & 1
        h_sum = A[:, low:] @ h_bits
        sizes = low_sizes + int(h_bits.sum())
        signs = np.where(sizes % 2, -1.0, 1.0)
        prods = np.prod(low_sums + h_sum, axis=1)
        total += np.sum(signs * prods)
    return complex((-1) ** n * total)


def hermitian_part(M, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(M + M*)/2`` after checking ``M`` is Hermitian to ``tol``.

    The check is relative: ``max|M - M*| <= tol * (1 + max|M|)``.
    """
    M = as_matrix(M, square=True)
    if M.size:
        asym = np.max(np.abs(M - M.conj().T))
        if asym > tol * (1.0 + np.max(np.abs(M))):
            raise ShapeError(f"matrix is not Hermitian (max asymmetry {asym:.3e})")
    return (M + M.conj().T) / 2


def psd_check(M, tol: float = DEFAULT_PSD_TOL) -> tuple[bool, float]:
    """Test positive semidefiniteness.

    Returns ``(ok, lambda_min)`` where ``ok`` means
    ``lambda_min >= -tol * (1 + ||M||_2)``.  An empty matrix is PSD with
    witness ``inf``.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    H = hermitian_part(M)
    if H.shape[0] == 0:
        return True, float("inf")
    eig = np.linalg.eigvalsh(H)
    lam_min = float(eig[0])
    norm = max(abs(eig[0]), abs(eig[-1]))
    return bool(lam_min >= -tol * (1.0 + norm)), lam_min


def rng_from(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """``g1 + i*g2`` with ``g1, g2`` independent standard normals."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_psd(n: int, seed: SeedLike, rank: int | None = None) -> np.ndarray:
    """Gram matrix ``R* R`` with ``R`` a ``rank x n`` complex Gaussian matrix.

    ``rank`` defaults to ``n``.  The same ``(n, seed, rank)`` always yields
    the same matrix (numpy's PCG64 stream).
    """
    if n < 1:
        raise ShapeError(f"n must be >= 1, got {n}")
    rank = n if rank is None else rank
    R = complex_gaussian(rng_from(seed), (rank, n))
    G = R.conj().T @ R
    return (G + G.conj().T) / 2

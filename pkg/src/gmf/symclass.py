"""Multi-indices, G-orbits and the index set of a symmetry class of tensors.

A multi-index is a 0-based tuple ``alpha`` of length ``m`` with entries in
``range(n)``.  A permutation ``sigma`` acts on positions:
``(alpha . sigma)[i] = alpha[sigma[i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, ShapeError, ValidationError
from .linalg import size_cap
from .permgroup import Character, PermGroup, validate_character

MultiIndex = tuple[int, ...]


def _gamma_array(m: int, n: int, cap: int | None) -> np.ndarray:
    cap = size_cap() if cap is None else cap
    if m < 1 or n < 1:
        raise ShapeError(f"need m, n >= 1, got m={m}, n={n}")
    if n**m > cap:
        raise CapacityError(f"Gamma({m},{n}) has {n**m} sequences, cap is {cap}")
    # row-major over the last axis gives lexicographic order
    return np.indices((n,) * m).reshape(m, -1).T


def _index_codes(arr: np.ndarray, n: int) -> np.ndarray:
    m = arr.shape[1]
    return arr @ (n ** np.arange(m - 1, -1, -1, dtype=np.int64))


def enumerate_gamma(m: int, n: int, cap: int | None = None) -> list[MultiIndex]:
    """All ``n**m`` sequences in lexicographic order."""
    return [tuple(int(x) for x in row) for row in _gamma_array(m, n, cap)]


def act(alpha: Sequence[int], sigma: Sequence[int]) -> MultiIndex:
    return tuple(alpha[s] for s in sigma)


def _check_degree(m: int, G: PermGroup):
    if G.degree != m:
        raise ShapeError(f"group has degree {G.degree}, multi-indices have length {m}")


def _representative_mask(gamma: np.ndarray, n: int, G: PermGroup) -> np.ndarray:
    codes = _index_codes(gamma, n)
    least = codes.copy()
    for sigma in G.array:
        np.minimum(least, _index_codes(gamma[:, sigma], n), out=least)
    return codes == least


def orbit_representatives(m: int, n: int, G: PermGroup, cap: int | None = None) -> list[MultiIndex]:
    """Lexicographically least member of each G-orbit of Gamma(m, n), sorted."""
    _check_degree(m, G)
    gamma = _gamma_array(m, n, cap)
    reps = gamma[_representative_mask(gamma, n, G)]
    return [tuple(int(x) for x in row) for row in reps]


def orbit(alpha: Sequence[int], G: PermGroup) -> list[MultiIndex]:
    return sorted({act(alpha, s) for s in G.elements})


def _stabilizer_mask(alphas: np.ndarray, G: PermGroup) -> np.ndarray:
    """``mask[a, g]`` is True iff ``G.elements[g]`` fixes ``alphas[a]``."""
    return np.stack([np.all(alphas[:, s] == alphas, axis=1) for s in G.array], axis=1)


def stabilizer(alpha: Sequence[int], G: PermGroup) -> list[tuple[int, ...]]:
    """Elements of ``G`` fixing ``alpha``, in the group's canonical order.

    ``nu(alpha)`` is the length of the result.
    """
    alpha = tuple(alpha)
    _check_degree(len(alpha), G)
    return [s for s in G.elements if act(alpha, s) == alpha]


def nu(alpha: Sequence[int], G: PermGroup) -> int:
    return len(stabilizer(alpha, G))


def stabilizer_character_sum(alpha: Sequence[int], G: PermGroup, chi: Character) -> complex:
    """Sum of ``chi`` over the stabilizer of ``alpha``; either ``nu(alpha)`` or 0."""
    return complex(sum(chi(s) for s in stabilizer(alpha, G)))


@dataclass(frozen=True, eq=False)
class SymmetryClass:
    """Index data of the symmetry class of ``m``-tensors over ``C^n`` for ``(G, chi)``.

    ``delta`` holds the orbit representatives, ``delta_bar`` those whose
    stabilizer lies in the kernel of ``chi``, and ``nu`` the stabilizer
    orders aligned with ``delta_bar``.  ``dim == len(delta_bar)``.
    """

    m: int
    n: int
    group: PermGroup
    character: Character
    delta: tuple[MultiIndex, ...]
    delta_bar: tuple[MultiIndex, ...]
    nu: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.delta_bar)

    def _key(self):
        return (self.m, self.n, self.character)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetryClass) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())


def delta_bar(m: int, n: int, G: PermGroup, chi: Character, cap: int | None = None) -> SymmetryClass:
    _check_degree(m, G)
    if chi.group != G:
        raise ValidationError("character is defined on a different group")
    if not validate_character(G, chi.values):
        raise ValidationError("character is not a degree-1 character of the group")
    gamma = _gamma_array(m, n, cap)
    reps = gamma[_representative_mask(gamma, n, G)]
    stab = _stabilizer_mask(reps, G)
    nus = stab.sum(axis=1)
    sums = stab.astype(np.complex128) @ chi.values
    keep = np.abs(sums - nus) <= 1e-9
    to_tuple = lambda row: tuple(int(x) for x in row)  # noqa: E731
    return SymmetryClass(
        m=m,
        n=n,
        group=G,
        character=chi,
        delta=tuple(map(to_tuple, reps)),
        delta_bar=tuple(map(to_tuple, reps[keep])),
        nu=tuple(int(x) for x in nus[keep]),
    )

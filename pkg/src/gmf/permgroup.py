"""Permutation groups given by explicit element lists, and their linear characters.

Permutations are tuples in 0-based one-line notation: ``p[i]`` is the image
of ``i``.  Composition is right-to-left, ``compose(s, t)[i] == s[t[i]]``.
File formats and the CLI use 1-based images; conversion happens at that
boundary only.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CapacityError, ValidationError

Perm = tuple[int, ...]

DEFAULT_GROUP_CAP = 5040
CHARACTER_TOL = 1e-12
_FULL_PAIR_CHECK_MAX = 1000


def identity(m: int) -> Perm:
    return tuple(range(m))


def compose(s: Perm, t: Perm) -> Perm:
    return tuple(s[i] for i in t)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def check_perm(p: Sequence[int], m: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != m or sorted(p) != list(range(m)):
        raise ValidationError(f"{p} is not a permutation of degree {m} (0-based)")
    return p


def sign(p: Perm) -> int:
    seen = [False] * len(p)
    cycles = 0
    for i in range(len(p)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
    return -1 if (len(p) - cycles) % 2 else 1


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length:
            order = order * length // math.gcd(order, length)
    return order


def _codes(arr: np.ndarray, m: int) -> np.ndarray:
    # base-m encoding; numeric order equals lexicographic order of rows
    weights = m ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return arr.astype(np.int64) @ weights


class PermGroup:
    """A subgroup of S_m stored as its full element list.

    Elements are kept in canonical order: identity first, then the rest in
    lexicographic order of their one-line notation.  Closure under
    composition is verified at construction unless the caller vouches for it.
    """

    def __init__(self, degree: int, elements: Iterable[Sequence[int]],
                 generators: Sequence[Sequence[int]] | None = None, *, _closed: bool = False):
        if degree < 1:
            raise ValidationError(f"degree must be >= 1, got {degree}")
        self.degree = degree
        elems = [check_perm(p, degree) for p in elements]
        if len(set(elems)) != len(elems):
            raise ValidationError("group element list has duplicates")
        e = identity(degree)
        if e not in elems:
            raise ValidationError("group does not contain the identity")
        rest = sorted(p for p in elems if p != e)
        self.elements: tuple[Perm, ...] = (e, *rest)
        self._index = {p: i for i, p in enumerate(self.elements)}
        self.array = np.array(self.elements, dtype=np.int64).reshape(len(self.elements), degree)
        codes = _codes(self.array, degree)
        self._sorted_codes = np.sort(codes)
        self._code_pos = np.argsort(codes)
        if not _closed:
            self._verify_closed()
        if generators is None:
            generators = self._greedy_generators()
        self.generators: tuple[Perm, ...] = tuple(check_perm(g, degree) for g in generators)
        for g in self.generators:
            if g not in self._index:
                raise ValidationError(f"generator {g} is not a group element")

    def _lookup(self, arr: np.ndarray) -> np.ndarray:
        """Element indices for rows of ``arr``; -1 where a row is not in the group."""
        codes = _codes(arr, self.degree)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.clip(pos, 0, len(self._sorted_codes) - 1)
        hit = self._sorted_codes[pos] == codes
        return np.where(hit, self._code_pos[pos], -1)

    def _verify_closed(self):
        for s in self.array:
            if np.any(self._lookup(s[self.array]) < 0):
                raise ValidationError("element list is not closed under composition")

    def _greedy_generators(self) -> list[Perm]:
        gens: list[Perm] = []
        covered = {identity(self.degree)}
        for p in self.elements[1:]:
            if p not in covered:
                gens.append(p)
                covered = set(_bfs_closure(self.degree, gens))
        return gens

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    def index(self, p: Sequence[int]) -> int:
        try:
            return self._index[tuple(p)]
        except KeyError:
            raise ValidationError(f"{tuple(p)} is not an element of the group") from None

    def multiplication_table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] o elements[j]``."""
        N = self.order
        prods = self.array[np.arange(N)[:, None, None], self.array[None, :, :]]
        return self._lookup(prods.reshape(N * N, self.degree)).reshape(N, N)

    def is_symmetric(self) -> bool:
        return self.order == math.factorial(self.degree)

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and (self.degree, self.elements) == (other.degree, other.elements)

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _bfs_closure(m: int, gens: Sequence[Perm], limit: int | None = None) -> list[Perm]:
    e = identity(m)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue and (limit is None or len(out) <= limit):
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def close_generators(m: int, gens: Sequence[Sequence[int]], cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """Smallest subgroup of S_m containing ``gens``, by breadth-first closure."""
    gens = [check_perm(g, m) for g in gens]
    elements = _bfs_closure(m, gens, limit=cap)
    if len(elements) > cap:
        raise CapacityError(f"group order exceeds cap of {cap}")
    return PermGroup(m, elements, generators=gens, _closed=True)


def symmetric_group(m: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    if m == 1:
        return close_generators(1, [])
    gens = [(1, 0, *range(2, m)), tuple(range(1, m)) + (0,)]
    return close_generators(m, gens, cap)


def alternating_group(m: int, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    gens = []
    for k in range(2, m):
        p = list(range(m))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return close_generators(m, gens, cap)


def cyclic_group(m: int) -> PermGroup:
    return close_generators(m, [tuple(range(1, m)) + (0,)] if m > 1 else [])


def trivial_group(m: int) -> PermGroup:
    return close_generators(m, [])


GROUP_FAMILIES = {
    "S": symmetric_group,
    "A": alternating_group,
    "C": cyclic_group,
    "trivial": trivial_group,
}


def group_family(name: str, m: int) -> PermGroup:
    try:
        return GROUP_FAMILIES[name](m)
    except KeyError:
        raise ValidationError(f"unknown group family {name!r}; expected one of {sorted(GROUP_FAMILIES)}") from None


def _table_values(G: PermGroup, table) -> np.ndarray:
    if isinstance(table, Character):
        return table.values
    if isinstance(table, Mapping):
        missing = [p for p in G.elements if p not in table]
        if missing:
            raise ValidationError(f"character table has no value for {missing[0]}")
        return np.array([complex(table[p]) for p in G.elements])
    values = np.asarray(table, dtype=np.complex128).ravel()
    if values.shape[0] != G.order:
        raise ValidationError(f"character table has {values.shape[0]} values for a group of order {G.order}")
    return values


def validate_character(G: PermGroup, table, tol: float = CHARACTER_TOL) -> bool:
    """True iff ``table`` is a degree-1 character of ``G``.

    ``table`` is a mapping from permutations to values, a sequence aligned
    with ``G.elements``, or a :class:`Character`.
    """
    v = _table_values(G, table)
    if not np.all(np.isfinite(v)):
        return False
    if abs(v[0] - 1) > tol or np.any(np.abs(np.abs(v) - 1) > tol):
        return False
    if G.order <= _FULL_PAIR_CHECK_MAX:
        table_idx = G.multiplication_table()
        return bool(np.all(np.abs(v[table_idx] - np.outer(v, v)) <= tol))
    # multiplicativity against a generating set implies it for all pairs
    for g in G.generators:
        prods = G._lookup(np.array(g)[G.array])
        if np.any(np.abs(v[prods] - v[G.index(g)] * v) > tol):
            return False
    return True


class Character:
    """A validated degree-1 character; ``values`` is aligned with ``group.elements``."""

    def __init__(self, group: PermGroup, values, name: str | None = None):
        self.group = group
        self.values = _table_values(group, values).copy()
        self.values.setflags(write=False)
        self.name = name
        if not validate_character(group, self.values):
            raise ValidationError(f"values do not form a degree-1 character{f' ({name})' if name else ''}")

    def __call__(self, p: Sequence[int]) -> complex:
        return complex(self.values[self.group.index(p)])

    def kernel_mask(self, tol: float = 1e-9) -> np.ndarray:
        return np.abs(self.values - 1) <= tol

    def is_trivial(self) -> bool:
        return bool(np.all(self.kernel_mask()))

    def is_sign(self) -> bool:
        signs = np.array([sign(p) for p in self.group.elements])
        return bool(np.allclose(self.values, signs, atol=1e-9))

    def _key(self):
        v = np.round(self.values, 9) + 0.0  # + 0.0 folds -0.0 into 0.0
        return (self.group, tuple(v.tolist()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        label = self.name or "character"
        return f"Character({label}, group order {self.group.order})"


def builtin_character(G: PermGroup, name: str) -> Character:
    if name == "trivial":
        return Character(G, np.ones(G.order), name="trivial")
    if name == "sign":
        return Character(G, [sign(p) for p in G.elements], name="sign")
    raise ValidationError(f"unknown character {name!r}; expected 'trivial' or 'sign'")


def root_of_unity(phase: Fraction) -> complex:
    """``exp(2 pi i phase)``, exact at multiples of 1/4."""
    phase = phase % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if phase in exact:
        return exact[phase]
    return cmath.exp(2j * math.pi * float(phase))


def _extend_phases(G: PermGroup, gen_phases: Sequence[Fraction]) -> list[Fraction] | None:
    """Propagate generator phases over the Cayley graph; None on inconsistency."""
    phases: list[Fraction | None] = [None] * G.order
    phases[0] = Fraction(0)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = G.elements[i]
        for g, ph in zip(G.generators, gen_phases):
            j = G.index(compose(g, x))
            val = (ph + phases[i]) % 1
            if phases[j] is None:
                phases[j] = val
                queue.append(j)
            elif phases[j] != val:
                return None
    return phases  # type: ignore[return-value]


def enumerate_degree1_characters(G: PermGroup, cap: int = DEFAULT_GROUP_CAP) -> list[Character]:
    """All homomorphisms from ``G`` to the unit circle, trivial character first.

    Each generator is tried on every root of unity whose order divides its
    own; an assignment survives if it extends consistently over the group.
    """
    if G.order > cap:
        raise CapacityError(f"group order {G.order} exceeds cap of {cap}")
    choices = [[Fraction(k, perm_order(g)) for k in range(perm_order(g))] for g in G.generators]
    out = []
    for assignment in product(*choices):
        phases = _extend_phases(G, assignment)
        if phases is None:
            continue
        values = [root_of_unity(ph) for ph in phases]
        out.append(Character(G, values))
    for ch in out:
        if ch.is_trivial():
            ch.name = "trivial"
        elif ch.is_sign():
            ch.name = "sign"
    return out


def character_from_generator_values(G: PermGroup, gen_values: Sequence[complex],
                                    tol: float = 1e-9) -> Character:
    """Extend values on ``G.generators`` multiplicatively to the whole group."""
    if len(gen_values) != len(G.generators):
        raise ValidationError(f"{len(gen_values)} generator values for {len(G.generators)} generators")
    values: list[complex | None] = [None] * G.order
    values[0] = 1 + 0j
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = G.elements[i]
        for g, gv in zip(G.generators, gen_values):
            j = G.index(compose(g, x))
            val = complex(gv) * values[i]
            if values[j] is None:
                values[j] = val
                queue.append(j)
            elif abs(values[j] - val) > tol:
                raise ValidationError("generator values do not extend to a homomorphism")
    return Character(G, values)

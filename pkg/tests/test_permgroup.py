import itertools
import math

import numpy as np
import pytest

from gmf import (CapacityError, Character, PermGroup, ValidationError, alternating_group, builtin_character,
                 close_generators, cyclic_group, enumerate_degree1_characters, symmetric_group, trivial_group,
                 validate_character)
from gmf.permgroup import character_from_generator_values, compose, group_family, inverse, sign
from oracles import bfs_closure, homomorphisms_to_roots, perm_sign


def test_close_generators_examples():
    assert close_generators(3, []).elements == ((0, 1, 2),)
    S2 = close_generators(2, [(1, 0)])
    assert S2.order == 2
    C3 = close_generators(3, [(1, 2, 0)])  # (2,3,1) in 1-based notation
    assert C3.order == 3
    assert set(C3.elements) == bfs_closure(3, [(1, 2, 0)])


def test_canonical_order():
    G = symmetric_group(3)
    assert G.elements[0] == (0, 1, 2)
    assert list(G.elements[1:]) == sorted(G.elements[1:])
    assert len(set(G.elements)) == 6


@pytest.mark.parametrize("m", range(1, 6))
def test_family_orders(m):
    assert symmetric_group(m).order == math.factorial(m)
    assert cyclic_group(m).order == m
    assert trivial_group(m).order == 1
    assert alternating_group(m).order == max(1, math.factorial(m) // 2)


def test_closure_is_idempotent():
    for G in (symmetric_group(4), alternating_group(4), cyclic_group(5)):
        again = close_generators(G.degree, G.elements)
        assert again.elements == G.elements


def test_closure_matches_oracle():
    gens = [(1, 0, 2, 3), (0, 1, 3, 2)]
    assert set(close_generators(4, gens).elements) == bfs_closure(4, gens)


def test_invalid_permutation_rejected():
    with pytest.raises(ValidationError):
        close_generators(3, [(0, 0, 1)])
    with pytest.raises(ValidationError):
        PermGroup(3, [(0, 1, 2), (1, 2, 0)])  # not closed
    with pytest.raises(ValidationError):
        group_family("Q", 3)


def test_group_cap():
    with pytest.raises(CapacityError):
        close_generators(8, [(1, 0, 2, 3, 4, 5, 6, 7), (1, 2, 3, 4, 5, 6, 7, 0)])


def test_explicit_group_gets_generators():
    G = PermGroup(3, symmetric_group(3).elements)
    assert close_generators(3, G.generators).elements == G.elements


def test_validate_character_examples():
    S3 = symmetric_group(3)
    assert validate_character(S3, np.ones(6))
    signs = {p: perm_sign(p) for p in S3.elements}
    assert validate_character(S3, signs)
    S2 = symmetric_group(2)
    assert not validate_character(S2, {(0, 1): 1, (1, 0): 1j})
    with pytest.raises(ValidationError):
        validate_character(S2, {(0, 1): 1})


def test_sign_is_multiplicative_on_all_pairs():
    S3 = symmetric_group(3)
    for s, t in itertools.product(S3.elements, repeat=2):
        assert sign(compose(s, t)) == sign(s) * sign(t)
        assert sign(s) == perm_sign(s)


def test_enumerate_trivial_group():
    assert len(enumerate_degree1_characters(trivial_group(3))) == 1


def test_enumerate_matches_brute_force():
    for G in (cyclic_group(3), symmetric_group(3), cyclic_group(4)):
        brute = homomorphisms_to_roots(G.elements, G.order)
        found = enumerate_degree1_characters(G)
        assert len(found) == len(brute)
        for b in brute:
            assert any(np.allclose(ch.values, b, atol=1e-12) for ch in found)


def test_enumerate_c3_values_are_cube_roots():
    chars = enumerate_degree1_characters(cyclic_group(3))
    assert len(chars) == 3
    for ch in chars:
        assert np.allclose(ch.values**3, 1)


@pytest.mark.parametrize("m", range(2, 6))
def test_symmetric_and_cyclic_character_counts(m):
    assert len(enumerate_degree1_characters(symmetric_group(m))) == 2
    assert len(enumerate_degree1_characters(cyclic_group(m))) == m


def test_a4_has_three_linear_characters():
    # abelianization of A_4 is C_3
    assert len(enumerate_degree1_characters(alternating_group(4))) == 3


@pytest.mark.parametrize("G", [symmetric_group(4), cyclic_group(5), alternating_group(4)])
def test_enumerated_characters_are_homomorphisms(G):
    for ch in enumerate_degree1_characters(G):
        for s, t in itertools.product(G.elements, repeat=2):
            assert abs(ch(compose(s, t)) - ch(s) * ch(t)) <= 1e-12
        assert ch(G.elements[0]) == 1


def test_builtin_characters():
    S2 = symmetric_group(2)
    sgn = builtin_character(S2, "sign")
    assert sgn((0, 1)) == 1 and sgn((1, 0)) == -1
    C3 = cyclic_group(3)
    assert np.all(builtin_character(C3, "sign").values == 1)
    assert np.all(builtin_character(C3, "sign").values == [perm_sign(p) for p in C3.elements])
    assert np.all(builtin_character(symmetric_group(4), "trivial").values == 1)
    with pytest.raises(ValidationError):
        builtin_character(S2, "alternating")


def test_character_rejects_non_multiplicative():
    with pytest.raises(ValidationError):
        Character(symmetric_group(2), [1, 1j])


def test_character_from_generator_values():
    C4 = cyclic_group(4)
    ch = character_from_generator_values(C4, [1j])
    assert ch(C4.generators[0]) == 1j
    with pytest.raises(ValidationError):
        character_from_generator_values(C4, [np.exp(2j * np.pi / 3)])


def test_inverse():
    for p in symmetric_group(4).elements:
        assert compose(p, inverse(p)) == (0, 1, 2, 3)

"""
Generalized matrix functions
============================

A permutation group G of degree n and a degree-1 character chi give the
function d(A) = sum over sigma in G of chi(sigma) * prod_i A[i, sigma(i)].
The determinant and the permanent are the two ends of the S_n family.
"""

import numpy as np

from gmf import (GmfSpec, cyclic_group, determinant_spec, enumerate_degree1_characters, evaluate, permanent_spec,
                 random_psd, symmetric_group)

A = np.array([[1.0, 2.0], [3.0, 4.0]])

# S_2 with the sign character is the determinant, with the trivial one the permanent
S2 = symmetric_group(2)
print("det", evaluate(GmfSpec.named(S2, "sign"), A))
print("per", evaluate(GmfSpec.named(S2, "trivial"), A))

# The cyclic group C_3 has three linear characters: 1, w, w^2 on the generator
C3 = cyclic_group(3)
chars = enumerate_degree1_characters(C3)
for chi in chars:
    print("C_3 character values", np.round(chi.values, 3))

# On a PSD matrix every GMF is real and nonnegative
P = random_psd(3, seed=0)
for chi in chars:
    v = evaluate(GmfSpec.from_character(chi), P)
    print(f"d(P) = {v.real:.6f} {v.imag:+.1e}i")

# From n = 7 on, the determinant uses LU and the permanent Ryser's formula
B = random_psd(7, seed=1)
for spec in (determinant_spec(7), permanent_spec(7)):
    print(spec.fast_path(), evaluate(spec, B).real, "defining sum", evaluate(spec, B, fast=False).real)

# Larger symmetric groups need an explicit cap on the group order
print("det of 8x8 via LU", evaluate(determinant_spec(8, cap=40320), random_psd(8, seed=2)).real)

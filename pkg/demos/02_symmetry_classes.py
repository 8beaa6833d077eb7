"""
Symmetry classes and their index sets
=====================================

Multi-indices alpha in {1..n}^m fall into G-orbits.  Keeping the least
member of each orbit whose stabilizer lies in ker(chi) gives a basis index
set for the symmetry class of (G, chi).
"""

from math import comb

from gmf import builtin_character, cyclic_group, delta_bar, enumerate_degree1_characters, symmetric_group


def show(cls, label):
    one_based = ["".join(str(x + 1) for x in a) for a in cls.delta_bar]
    print(f"{label:>18}: dim {cls.dim:2d}  {one_based}")


# Symmetric and antisymmetric tensors of order 2 over C^3
S2 = symmetric_group(2)
show(delta_bar(2, 3, S2, builtin_character(S2, "trivial")), "S_2 trivial")
show(delta_bar(2, 3, S2, builtin_character(S2, "sign")), "S_2 sign")

# The dimensions match the binomial counts on S_m
for m in range(1, 5):
    S = symmetric_group(m)
    for n in range(1, 5):
        triv = delta_bar(m, n, S, builtin_character(S, "trivial")).dim
        sgn = delta_bar(m, n, S, builtin_character(S, "sign")).dim
        assert (triv, sgn) == (comb(n + m - 1, m), comb(n, m))
print("binomial dimension counts hold for m, n <= 4")

# A complex character of C_3 drops the orbits whose stabilizer it does not kill
C3 = cyclic_group(3)
for i, chi in enumerate(enumerate_degree1_characters(C3)):
    show(delta_bar(3, 2, C3, chi), f"C_3 character {i}")

"""
Induced matrices
================

The induced matrix K(A) is the restriction of A (x) ... (x) A to a symmetry
class, written in its orthonormal star basis.  There are two constructions:
compress the Kronecker power, or fill in each entry from a GMF of a
submatrix.  They agree, and K is multiplicative.
"""

import numpy as np

from gmf import (BlockMatrix, basis_for, builtin_character, compression_residual, induced_matrix,
                 induced_matrix_entrywise, random_psd, symmetric_group)

S2 = symmetric_group(2)
sign, trivial = builtin_character(S2, "sign"), builtin_character(S2, "trivial")

# For the sign character of S_2 on C^2 the class is one-dimensional and K(A) = det A
A = random_psd(2, seed=3)
print("K(A)  ", induced_matrix(A, sign).ravel(), " det A", np.linalg.det(A))

# The symmetric square of diag(a, b) is diag(a^2, ab, b^2)
print(np.diag(induced_matrix(np.diag([2.0, 3.0]), trivial)).real)

# Compression and the entrywise formula agree
basis = basis_for(3, trivial)
H = random_psd(3, seed=4)
diff = np.abs(induced_matrix(H, basis) - induced_matrix_entrywise(H, basis)).max()
print(f"compression vs entrywise: {diff:.1e}")

# K(XY) = K(X) K(Y)
rng = np.random.default_rng(5)
X, Y = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
gap = np.abs(induced_matrix(X @ Y, basis) - induced_matrix(X, basis) @ induced_matrix(Y, basis)).max()
print(f"multiplicativity residual: {gap:.1e}")

# Blockwise induced matrices are a compression of the induced matrix of the whole block matrix
blocks = BlockMatrix.from_flat(random_psd(4, seed=6), 2)
for chi in (sign, trivial):
    print(f"{chi.name:>8} compression residual {compression_residual(blocks, basis_for(2, chi)):.1e}")

"""
Thompson's determinant inequality
=================================

For a PSD block matrix A, det A <= det(det_m A).  Writing A = T* T with T
block upper-triangular and rescaling so every diagonal block of T is the
identity turns this into det(det_m(T* T)) >= 1.
"""

import numpy as np

from gmf import BlockMatrix, det_m, random_psd
from gmf.harness import TrialConfig, block_cholesky, normalize_unit_diagonal, run_suite, thompson_base_case

A = BlockMatrix.from_flat(random_psd(6, seed=0), 2)
print("det A          ", np.linalg.det(A.flatten()).real)
print("det(det_m A)   ", np.linalg.det(det_m(A)).real)

T = normalize_unit_diagonal(block_cholesky(A))
Tf = T.flatten()
print("normalized form", np.linalg.det(det_m(BlockMatrix.from_flat(Tf.conj().T @ Tf, 2))).real)

# With two blocks the normalized form is det(I + V*V) - det(V*V) for V = T_12
lhs, rhs = thompson_base_case(T[0, 1])
print(f"base case: {lhs:.6f} = {rhs:.6f} >= 1")

for m in (2, 3):
    r = run_suite("thompson", TrialConfig(m=m, n=3, trials=200, seed=3))
    print(f"m={m}: passed={r.passed} checks={r.checks} near-singular skipped={r.skipped}")

"""
Checking strong superadditivity
===============================

For PSD A, B, C the map X -> [d(X_ij)] on block matrices satisfies

    F(A + B + C) + F(C) >= F(A + C) + F(B + C)

in the Loewner order.  The harness draws seeded random inputs and reports
the smallest relative margin seen; a negative margin beyond tol is a failure
that can be replayed from its trial index.
"""

from gmf import cyclic_group, enumerate_degree1_characters, symmetric_group, trivial_group
from gmf.harness import TrialConfig, run_suite

for m, n in [(2, 2), (2, 3), (3, 2)]:
    for family in (symmetric_group, cyclic_group, trivial_group):
        G = family(n)
        for chi in enumerate_degree1_characters(G):
            cfg = TrialConfig(m=m, n=n, group=G, character=chi, trials=50, seed=1)
            r = run_suite("css", cfg)
            print(f"m={m} n={n} {family.__name__:>15} {chi.name or '':>8}  "
                  f"passed={r.passed} min margin {r.min_margin:.2e}")

# det_m(A + B) >= det_m(A) + det_m(B), where det_m takes the determinant of every block
r = run_suite("detm", TrialConfig(m=3, n=2, trials=100, seed=2))
print("det_m superadditivity:", r.passed, r.subcases)

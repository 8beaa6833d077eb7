"""Independent brute-force references used by the tests.

Nothing here imports the package: each function recomputes its quantity
from the definition with plain loops.
"""

import cmath
import itertools
import math


def perm_sign(p):
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def brute_gmf(A, elements, values):
    """sum_sigma chi(sigma) prod_i A[i][sigma(i)] over an explicit element list."""
    n = len(A)
    total = 0j
    for sigma, chi in zip(elements, values):
        term = complex(chi)
        for i in range(n):
            term *= complex(A[i][sigma[i]])
        total += term
    return total


def brute_det(A):
    n = len(A)
    perms = list(itertools.permutations(range(n)))
    return brute_gmf(A, perms, [perm_sign(p) for p in perms])


def brute_per(A):
    n = len(A)
    perms = list(itertools.permutations(range(n)))
    return brute_gmf(A, perms, [1] * len(perms))


def kron_entry(A, k, row, col):
    """Entry of the k-fold Kronecker power by the product formula over digits."""
    l = len(A)
    a = [(row // l ** (k - 1 - i)) % l for i in range(k)]
    b = [(col // l ** (k - 1 - i)) % l for i in range(k)]
    out = 1 + 0j
    for x, y in zip(a, b):
        out *= A[x][y]
    return out


def compose(s, t):
    return tuple(s[i] for i in t)


def bfs_closure(m, gens):
    e = tuple(range(m))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (compose(g, x), compose(x, g)):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return seen


def orbit_reps(m, n, elements):
    """Least element of each orbit, found by enumerating orbits directly."""
    remaining = set(itertools.product(range(n), repeat=m))
    reps = []
    while remaining:
        alpha = min(remaining)
        orbit = {tuple(alpha[s[i]] for i in range(m)) for s in elements}
        remaining -= orbit
        reps.append(min(orbit))
    return sorted(reps)


def stabilizer_scan(alpha, elements):
    return [s for s in elements if all(alpha[s[i]] == alpha[i] for i in range(len(alpha)))]


def homomorphisms_to_roots(elements, order):
    """All maps to order-th roots of unity that are multiplicative, by backtracking."""
    roots = [cmath.exp(2j * math.pi * k / order) for k in range(order)]
    elements = list(elements)
    idx = {p: i for i, p in enumerate(elements)}
    products = {(i, j): idx[compose(elements[i], elements[j])]
                for i in range(len(elements)) for j in range(len(elements))}
    out = []

    def consistent(assign):
        for (i, j), k in products.items():
            if i in assign and j in assign and k in assign:
                if abs(assign[k] - assign[i] * assign[j]) > 1e-9:
                    return False
        return True

    def extend(pos, assign):
        if pos == len(elements):
            out.append([assign[i] for i in range(len(elements))])
            return
        for r in roots:
            assign[pos] = r
            if consistent(assign):
                extend(pos + 1, assign)
            del assign[pos]

    extend(0, {})
    return out


def symmetrizer_s2(n, sign):
    """Matrix of (I + sign * swap) / 2 on C^n (x) C^n, written out by hand."""
    N = n * n
    S = [[0.0] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            r = i * n + j
            S[r][r] += 0.5
            S[j * n + i][r] += 0.5 * sign
    return S

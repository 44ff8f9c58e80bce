"""Brute-force references that share no code with the package.

Everything here works on plain nested lists of ints or Fractions.
"""

import itertools
from fractions import Fraction
from math import gcd


def frac_rank(rows):
    m = [[Fraction(v) for v in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                c = m[i][col] / m[rank][col]
                m[i] = [a - c * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def invariant_factors(rows):
    """Smith invariants from determinantal divisors (gcd of k-by-k minors)."""
    if not rows or not rows[0]:
        return []
    m, n = len(rows), len(rows[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in itertools.combinations(range(m), k):
            for c in itertools.combinations(range(n), k):
                g = gcd(g, det([[rows[i][j] for j in c] for i in r]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def betti(dims, diffs):
    """``diffs[n-1]`` is ``d_n`` as a list of rows (``dims[n-1]`` by ``dims[n]``)."""
    def r(n):
        if n < 1 or n >= len(dims) or not dims[n] or not dims[n - 1]:
            return 0
        return frac_rank(diffs[n - 1])

    return [dims[n] - r(n) - r(n + 1) for n in range(len(dims))]


def group_elements(orders):
    """Elements of ``⊕ Z/k`` as tuples (every order positive)."""
    return itertools.product(*[range(k) for k in orders])


def hom_count(source_orders, target_orders):
    """``|Hom(⊕ Z/a, ⊕ Z/b)|`` by counting generator images killed by each order (0 means Z)."""
    total = 1
    elems = list(group_elements(target_orders))
    for a in source_orders:
        if a == 0:
            total *= len(elems)
        else:
            total *= sum(all((a * t) % b == 0 for t, b in zip(e, target_orders)) for e in elems)
    return total


def monotone_surjections(n):
    """All monotone surjections from ``{0..n}`` onto some ``{0..k}``."""
    out = []
    for k in range(n + 1):
        for f in itertools.product(range(k + 1), repeat=n + 1):
            if all(f[i] <= f[i + 1] for i in range(n)) and set(f) == set(range(k + 1)):
                out.append(f)
    return out


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]

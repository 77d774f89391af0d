"""Independent brute-force oracles.

These deliberately recompute results by exhaustive enumeration, without
touching the library's algorithms, so frozen expected values and property
tests do not share a code path with what they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_maximal_cliques(n: int, edges) -> list[tuple[int, ...]]:
    edge_set = {frozenset(e) for e in edges}

    def is_clique(s) -> bool:
        return all(frozenset((a, b)) in edge_set for a, b in itertools.combinations(s, 2))

    cliques = [
        set(s)
        for k in range(1, n + 1)
        for s in itertools.combinations(range(n), k)
        if is_clique(s)
    ]
    maximal = [c for c in cliques if not any(c < d for d in cliques)]
    return sorted(tuple(sorted(c)) for c in maximal)


def brute_minimal_covers(n: int, edges) -> list[tuple[int, ...]]:
    esets = [set(e) for e in edges]
    if not esets:
        return [()]
    covers = [
        set(s)
        for k in range(n + 1)
        for s in itertools.combinations(range(n), k)
        if all(e & set(s) for e in esets)
    ]
    minimal = [c for c in covers if not any(d < c for d in covers)]
    return sorted(set(tuple(sorted(c)) for c in minimal))


def brute_alpha0(n: int, edges) -> int:
    esets = [set(e) for e in edges]
    if not esets:
        return 0
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            if all(e & set(s) for e in esets):
                return k
    raise AssertionError("no cover found")


def brute_beta1(edges) -> int:
    esets = [set(e) for e in edges]
    best = 0
    for mask in range(1 << len(esets)):
        chosen = [esets[i] for i in range(len(esets)) if mask >> i & 1]
        if all(not (a & b) for a, b in itertools.combinations(chosen, 2)):
            best = max(best, len(chosen))
    return best


def minimalize(vecs) -> list[tuple[int, ...]]:
    vs = set(tuple(v) for v in vecs)
    return sorted(
        v for v in vs if not any(w != v and all(x <= y for x, y in zip(w, v)) for w in vs)
    )


def brute_power_generators(generators, i: int) -> list[tuple[int, ...]]:
    sums = [
        tuple(sum(col) for col in zip(*combo))
        for combo in itertools.combinations_with_replacement(generators, i)
    ]
    return minimalize(sums)


def brute_symbolic_power(n: int, covers, i: int) -> list[tuple[int, ...]]:
    """Intersection of the i-th powers of the cover primes via pairwise
    lcm expansion (exponential; fine at oracle scale)."""
    prime_powers = []
    for cover in covers:
        gens = []
        for combo in itertools.combinations_with_replacement(sorted(cover), i):
            v = [0] * n
            for x in combo:
                v[x] += 1
            gens.append(tuple(v))
        prime_powers.append(gens)
    current = prime_powers[0]
    for nxt in prime_powers[1:]:
        current = minimalize(
            tuple(max(a, b) for a, b in zip(u, v)) for u in current for v in nxt
        )
    return minimalize(current)


def brute_lattice_points_of_scaled_blocker(columns, k: int, caps) -> list[tuple[int, ...]]:
    """Integer points a of k*B(Q) in the box, decided by exhaustive search
    for a rational convex combination with small denominators is NOT
    possible; instead use the halfspace description derived from brute
    vertex enumeration over constraint subsets."""
    n = len(columns[0])
    verts = brute_q_vertices(columns)
    out = []
    for a in itertools.product(*(range(c + 1) for c in caps)):
        if all(sum(Fraction(x) * y for x, y in zip(v, a)) >= k for v in verts):
            out.append(a)
    return out


def brute_q_vertices(columns) -> list[tuple[Fraction, ...]]:
    """Vertices of {x >= 0 : <col, x> >= 1} by brute subset enumeration
    and rational elimination (independent of the library's solvers)."""
    n = len(columns[0])
    constraints = [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ] + [tuple(Fraction(c) for c in col) for col in columns]
    rhs = [Fraction(0)] * n + [Fraction(1)] * len(columns)
    verts = set()
    for subset in itertools.combinations(range(len(constraints)), n):
        sol = _solve(
            [list(constraints[i]) for i in subset], [rhs[i] for i in subset]
        )
        if sol is None:
            continue
        if any(x < 0 for x in sol):
            continue
        if all(
            sum(c * x for c, x in zip(row, sol)) >= b
            for row, b in zip(constraints, rhs)
        ):
            verts.add(tuple(sol))
    return sorted(verts)


def _solve(mat, rhs):
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def brute_idp_holds(columns, kmax: int, caps) -> bool:
    """Direct recursive decomposition search over the box."""
    b1 = set(brute_lattice_points_of_scaled_blocker(columns, 1, caps))

    def decomposes(a, k) -> bool:
        if k == 1:
            return a in b1
        for part in b1:
            if all(x <= y for x, y in zip(part, a)):
                if decomposes(tuple(y - x for x, y in zip(part, a)), k - 1):
                    return True
        return False

    for k in range(1, kmax + 1):
        for a in brute_lattice_points_of_scaled_blocker(columns, k, caps):
            if not decomposes(a, k):
                return False
    return True

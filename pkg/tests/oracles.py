"""Slow, independent reference implementations used as test oracles.

None of these share code with the package: determinants by cofactor
expansion, LPs by exhaustive vertex enumeration, canonical forms by trying
every permutation, matchings by trying every assignment.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product


def det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * Fraction(M[0][j]) * det(minor)
    return total


def principal_minors(M):
    n = len(M)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            yield idx, det([[M[i][j] for j in idx] for i in idx])


def sylvester_psd(M) -> bool:
    """PSD iff every principal minor (not only the leading ones) is >= 0."""
    return all(d >= 0 for _, d in principal_minors(M))


def rank_by_minors(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                if det([[rows[i][j] for j in ci] for i in ri]) != 0:
                    return k
    return 0


def solve_square(A, b):
    """Exact solution of a square system, or None when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def _vertices(nv, eqs, ges):
    """Vertices of {x >= 0 : eqs, ges} as a list of exact points."""
    rows = [(list(a), Fraction(b), True) for a, b in eqs]
    rows += [(list(a), Fraction(b), False) for a, b in ges]
    rows += [([1 if k == j else 0 for k in range(nv)], Fraction(0), False) for j in range(nv)]
    # a vertex is a feasible point where some nv independent rows are tight;
    # equalities are enforced by the feasibility filter below
    cand_sets = combinations(range(len(rows)), nv)
    out = []
    for s in cand_sets:
        x = solve_square([rows[i][0] for i in s], [rows[i][1] for i in s])
        if x is None:
            continue
        ok = all((sum(a * v for a, v in zip(r[0], x)) == r[1]) if r[2]
                 else (sum(a * v for a, v in zip(r[0], x)) >= r[1]) for r in rows)
        if ok and x not in out:
            out.append(x)
    return out


def lp_oracle(nv, eqs, ges, c):
    """("infeasible"|"unbounded"|"optimal", value) for max c.x over
    {x >= 0 : eqs, ges} by vertex enumeration of the region and of the
    normalized recession cone."""
    verts = _vertices(nv, eqs, ges)
    if not verts:
        return "infeasible", None
    rec_eqs = [(a, 0) for a, _ in eqs] + [([1] * nv, 1)]
    rec_ges = [(a, 0) for a, _ in ges]
    for d in _vertices(nv, rec_eqs, rec_ges):
        if sum(ci * di for ci, di in zip(c, d)) > 0:
            return "unbounded", None
    return "optimal", max(sum(ci * xi for ci, xi in zip(c, x)) for x in verts)


def triangle_mc3(B, strict=False) -> bool:
    """Membership of a unit-diagonal 3x3 matrix in MC_3 via the four
    triangle facets s1 B12 + s2 B13 + s3 B23 >= -1, s1 s2 s3 = 1."""
    b12, b13, b23 = Fraction(B[0][1]), Fraction(B[0][2]), Fraction(B[1][2])
    for s1, s2, s3 in product((1, -1), repeat=3):
        if s1 * s2 * s3 != 1:
            continue
        v = s1 * b12 + s2 * b13 + s3 * b23
        if v < -1 or (strict and v == -1):
            return False
    return True


def brute_canonical(n, sets):
    """Lex-least relabeled family over all n! permutations, as a tuple of
    (cardinality, sorted tuple) keys."""
    best = None
    for perm in permutations(range(1, n + 1)):
        img = sorted((len(s), tuple(sorted(perm[i - 1] for i in s))) for s in sets)
        if best is None or img < best:
            best = img
    return tuple(best)


def brute_matching_exists(left_adj) -> bool:
    """True iff every left vertex gets a distinct right neighbour."""
    r = len(left_adj)
    if r == 0:
        return True
    rights = sorted({w for adj in left_adj for w in adj})
    for choice in permutations(rights, r):
        if all(choice[i] in left_adj[i] for i in range(r)):
            return True
    return False


def grid_zero_supports(A, top=3):
    """Inclusion-minimal supports of grid points x in {0..top}^n with
    x^T A x = 0 (exact)."""
    n = len(A)
    supports = set()
    for x in product(range(top + 1), repeat=n):
        if not any(x):
            continue
        q = sum(A[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        if q == 0:
            supports.add(frozenset(i for i in range(n) if x[i]))
    return {s for s in supports if not any(t < s for t in supports)}

"""Random exact test objects shared by the suites."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from minzero.ratlin import SymmetricRationalMatrix


def rational_unit_vector(rng: random.Random, d: int) -> list[Fraction]:
    """Inverse stereographic image of a random rational point: exact unit norm."""
    if d == 1:
        return [Fraction(rng.choice((1, -1)))]
    t = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d - 1)]
    s = sum(x * x for x in t)
    u = [2 * x / (s + 1) for x in t] + [(s - 1) / (s + 1)]
    rng.shuffle(u)
    return u


def psd_plus_nonnegative(rng: random.Random, n: int, density: float = 0.25) -> SymmetricRationalMatrix:
    """Unit-diagonal A = G + N with G the Gram matrix of rational unit
    vectors in a random dimension below n and N >= 0 with zero diagonal."""
    d = rng.randint(1, max(1, n - 1))
    vs = [rational_unit_vector(rng, d) for _ in range(n)]
    rows = [[sum(a * b for a, b in zip(vs[i], vs[j])) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                e = Fraction(rng.randint(1, 4), 4)
                rows[i][j] += e
                rows[j][i] += e
    return SymmetricRationalMatrix.from_rows(rows)


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def symmetric_matrices(draw, min_n=1, max_n=4, elements=small_rationals):
    n = draw(st.integers(min_n, max_n))
    vals = {}
    for i in range(n):
        for j in range(i, n):
            vals[i, j] = draw(elements)
    return SymmetricRationalMatrix.from_rows([[vals[min(i, j), max(i, j)] for j in range(n)] for i in range(n)])


@st.composite
def copositive_matrices(draw, min_n=2, max_n=5):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    return psd_plus_nonnegative(random.Random(seed), n)

"""Irreducibility of a copositive matrix with respect to the nonnegative
cone, the PSD cone and single generators, and the angle relations that a
minimal support set imposes on a unit-diagonal matrix.

Matrix indices are 0-based, like everywhere in :mod:`minzero.zeros`.
Relation reports name index sets 1-based so they read like family literals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .floatlin import DEFAULT_TOL
from .ratlin import SymmetricRationalMatrix, as_fraction, rank
from .zeros import Matrix, MinimalZeroSet, Zero, _dim, _is_rational, _matvec, find_minimal_zeros


class OutOfRange(ValueError):
    """Diagonal not 1 or an off-diagonal entry outside [-1, 1]."""


@dataclass(frozen=True)
class Eij:
    i: int
    j: int


@dataclass(frozen=True)
class RankOne:
    w: tuple

    def __post_init__(self):
        if not any(x != 0 for x in self.w):
            raise ValueError("rank-one generator needs a nonzero vector")


Generator = Union[Eij, RankOne]


def _zeros(A, mz, tol):
    return mz if mz is not None else find_minimal_zeros(A, tol)


def _vanishes(x, tol):
    return x == 0 if tol == 0 else abs(x) <= tol


def _tol(A, tol):
    return 0 if _is_rational(A) else tol


def _covers(A, z: Zero, prod, i, j, tol) -> bool:
    return _vanishes(prod[i], tol) and _vanishes(prod[j], tol) and z.vector[i] + z.vector[j] > tol


@dataclass(frozen=True)
class NonnegativeIrreducibility:
    holds: bool
    witnesses: dict  # (i, j) with i <= j -> Zero or None

    def __bool__(self):
        return self.holds

    @property
    def missing(self) -> list[tuple[int, int]]:
        return [ij for ij, z in self.witnesses.items() if z is None]


def irreducible_wrt_nonnegative(A: Matrix, mz: MinimalZeroSet | None = None,
                                tol: float = DEFAULT_TOL) -> NonnegativeIrreducibility:
    """For every pair ``i <= j`` look for a minimal zero ``u`` with
    ``(Au)_i = (Au)_j = 0`` and ``u_i + u_j > 0``."""
    tol = _tol(A, tol)
    zs = _zeros(A, mz, tol)
    n = _dim(A)
    prods = [(z, _matvec(A, z.vector)) for z in zs]
    wit = {}
    for i in range(n):
        for j in range(i, n):
            wit[i, j] = next((z for z, p in prods if _covers(A, z, p, i, j, tol)), None)
    return NonnegativeIrreducibility(all(z is not None for z in wit.values()), wit)


@dataclass(frozen=True)
class PsdIrreducibility:
    holds: bool
    rank: int

    def __bool__(self):
        return self.holds


def _span_rank(zs: MinimalZeroSet, tol) -> int:
    vecs = [z.vector for z in zs]
    if not vecs:
        return 0
    if tol == 0:
        return rank(vecs)
    return int(np.linalg.matrix_rank(np.asarray(vecs, dtype=float), tol=tol))


def irreducible_wrt_psd(A: Matrix, mz: MinimalZeroSet | None = None,
                        tol: float = DEFAULT_TOL) -> PsdIrreducibility:
    """Irreducible w.r.t. the PSD cone iff the minimal zeros span R^n."""
    tol = _tol(A, tol)
    zs = _zeros(A, mz, tol)
    r = _span_rank(zs, tol)
    return PsdIrreducibility(r == _dim(A), r)


def irreducible_wrt_generator(A: Matrix, gen: Generator, mz: MinimalZeroSet | None = None,
                              tol: float = DEFAULT_TOL) -> bool:
    """``A - g M`` fails copositivity for every ``g > 0``, for ``M = E_ij``
    (symmetric unit pair) or ``M = w w^T``."""
    tol = _tol(A, tol)
    zs = _zeros(A, mz, tol)
    n = _dim(A)
    if isinstance(gen, Eij):
        if not (0 <= gen.i < n and 0 <= gen.j < n):
            raise IndexError((gen.i, gen.j))
        return any(_covers(A, z, _matvec(A, z.vector), gen.i, gen.j, tol) for z in zs)
    if isinstance(gen, RankOne):
        if len(gen.w) != n:
            raise ValueError("dimension mismatch")
        if tol == 0:
            w = [as_fraction(x) for x in gen.w]
        else:
            w = [float(x) for x in gen.w]
        return any(not _vanishes(sum(a * b for a, b in zip(w, z.vector)), tol) for z in zs)
    raise TypeError(f"unknown generator {gen!r}")


@dataclass(frozen=True)
class IrreducibilityReport:
    wrt_nonnegative: NonnegativeIrreducibility
    wrt_psd: PsdIrreducibility
    generator_results: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        wit = {}
        for (i, j), z in self.wrt_nonnegative.witnesses.items():
            wit[f"{i + 1},{j + 1}"] = None if z is None else [str(x) for x in z.vector]
        return {"wrt_nonnegative": self.wrt_nonnegative.holds, "nonnegative_witnesses": wit,
                "wrt_psd": self.wrt_psd.holds, "span_rank": self.wrt_psd.rank,
                "generators": {repr(g): v for g, v in self.generator_results.items()}}


def irreducibility_report(A: Matrix, mz: MinimalZeroSet | None = None, generators: Sequence = (),
                          tol: float = DEFAULT_TOL) -> IrreducibilityReport:
    zs = _zeros(A, mz, _tol(A, tol))
    return IrreducibilityReport(irreducible_wrt_nonnegative(A, zs, tol), irreducible_wrt_psd(A, zs, tol),
                                {g: irreducible_wrt_generator(A, g, zs, tol) for g in generators})


# ------------------------------------------------------------ angles

_EXACT_ALPHA = {Fraction(-1): Fraction(0), Fraction(0): Fraction(1, 2), Fraction(1): Fraction(1)}


@dataclass(frozen=True)
class AlphaMatrix:
    """``A_ij = -cos(alpha_ij pi)`` with ``alpha_ij`` in [0, 1], stored for
    ``i < j``; ``B_ij = 2 alpha_ij - 1``.  Exact when every off-diagonal
    entry is -1, 0 or 1."""

    n: int
    values: dict
    exact: bool

    def __call__(self, i: int, j: int):
        if i == j:
            return Fraction(1) if self.exact else 1.0
        return self.values[min(i, j), max(i, j)]

    def b(self, i: int, j: int):
        return 2 * self(i, j) - 1


def alpha_matrix(A: Matrix) -> AlphaMatrix:
    n = _dim(A)
    if _is_rational(A):
        for i in range(n):
            if A[i, i] != 1:
                raise OutOfRange(f"diagonal entry ({i + 1},{i + 1}) is {A[i, i]}, not 1")
        off = {(i, j): A[i, j] for i, j in combinations(range(n), 2)}
        for (i, j), a in off.items():
            if abs(a) > 1:
                raise OutOfRange(f"entry ({i + 1},{j + 1}) = {a} lies outside [-1, 1]")
        if all(a in _EXACT_ALPHA for a in off.values()):
            return AlphaMatrix(n, {ij: _EXACT_ALPHA[a] for ij, a in off.items()}, True)
        return AlphaMatrix(n, {ij: math.acos(-float(a)) / math.pi for ij, a in off.items()}, False)
    M = np.asarray(A, dtype=float)
    if not np.allclose(np.diag(M), 1.0, rtol=0, atol=1e-12):
        raise OutOfRange("diagonal entries must be 1")
    vals = {}
    for i, j in combinations(range(n), 2):
        a = M[i, j]
        if abs(a) > 1 + 1e-12:
            raise OutOfRange(f"entry ({i + 1},{j + 1}) = {a} lies outside [-1, 1]")
        vals[i, j] = math.acos(min(1.0, max(-1.0, -a))) / math.pi
    return AlphaMatrix(n, vals, False)


@dataclass(frozen=True)
class RelationCheck:
    relation: str  # "a" .. "h"
    index: tuple[int, ...]  # 1-based
    value: object
    holds: bool | None  # None: not evaluated in this setting


@dataclass(frozen=True)
class RelationReport:
    alpha: AlphaMatrix
    checks: tuple[RelationCheck, ...]

    def summary(self) -> dict[str, str]:
        out = {}
        for r in "abcdefgh":
            rs = [c for c in self.checks if c.relation == r]
            if not rs:
                out[r] = "not applicable"
            elif any(c.holds is False for c in rs):
                out[r] = "fail"
            elif all(c.holds is None for c in rs):
                out[r] = "not evaluated"
            else:
                out[r] = "pass"
        return out

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if c.holds is False]

    def holds(self, relation: str) -> bool:
        return all(c.holds is not False for c in self.checks if c.relation == relation)


def _triangle_values(al: AlphaMatrix, t):
    """The four triangle forms B_ij s1 + B_ik s2 + B_jk s3 with an even number
    of minus signs; MC_3 is where each is >= -1."""
    i, j, k = t
    bij, bik, bjk = al.b(i, j), al.b(i, k), al.b(j, k)
    return [bij + bik + bjk, bij - bik - bjk, -bij + bik - bjk, -bij - bik + bjk]


def lin_rel_check(A: Matrix, mz: MinimalZeroSet | None = None, tol: float = DEFAULT_TOL) -> RelationReport:
    """Evaluate the angle relations (a)-(h) implied by the minimal support set.

    Cut-polytope membership, (c) and (d), is decided only on blocks of size 2
    and 3 (interval and triangle inequalities); larger blocks are reported as
    not evaluated.  Strict relations need a margin of ``tol`` in the float
    backend.
    """
    al = alpha_matrix(A)
    if al.exact:
        tol = 0
    zs = _zeros(A, mz, 0 if _is_rational(A) else tol)
    n = al.n
    supports = [frozenset(z.support) for z in zs]
    sset = set(supports)

    def ge(v, r):
        return v >= r - tol

    def gt(v, r):
        return v > r + tol

    def eq(v, r):
        return abs(v - r) <= tol

    def one(t):
        return tuple(i + 1 for i in t)

    checks = []
    for i, j in combinations(range(n), 2):
        v = al(i, j)
        if frozenset((i, j)) in sset:
            checks.append(RelationCheck("a", one((i, j)), v, eq(v, 0)))
        else:
            checks.append(RelationCheck("b", one((i, j)), v, gt(v, 0)))
    for s in supports:
        if len(s) >= 3:
            t = tuple(sorted(s))
            if len(t) == 3:
                vals = _triangle_values(al, t)
                checks.append(RelationCheck("c", one(t), min(vals), all(ge(v, -1) for v in vals)))
            else:
                checks.append(RelationCheck("c", one(t), None, None))
    inner = set()
    for s in supports:
        for k in range(2, len(s)):
            inner.update(frozenset(c) for c in combinations(sorted(s), k))
    for s in sorted(inner, key=lambda x: (len(x), sorted(x))):
        t = tuple(sorted(s))
        if len(t) == 2:
            v = al(*t)
            checks.append(RelationCheck("d", one(t), v, gt(v, 0) and gt(1, v)))
        elif len(t) == 3:
            vals = _triangle_values(al, t)
            checks.append(RelationCheck("d", one(t), min(vals), all(gt(v, -1) for v in vals)))
        else:
            checks.append(RelationCheck("d", one(t), None, None))
    for t in combinations(range(n), 3):
        v = al(t[0], t[1]) + al(t[0], t[2]) + al(t[1], t[2])
        ts = frozenset(t)
        if ts in sset:
            checks.append(RelationCheck("e", one(t), v, eq(v, 1)))
        elif not any(s <= ts for s in supports):
            checks.append(RelationCheck("f", one(t), v, gt(v, 1)))
    for s in supports:
        if len(s) == 2:
            i, j = sorted(s)
            for k in range(n):
                if k not in s:
                    v = al(i, k) + al(j, k)
                    checks.append(RelationCheck("g", one((i, j, k)), v, ge(v, 1)))
    for q in combinations(range(n), 5):
        v = sum(al(a, b) for a, b in combinations(q, 2))
        checks.append(RelationCheck("h", one(q), v, ge(v, 4)))
    return RelationReport(al, tuple(checks))

"""Minimal zeros of copositive matrices.

A zero of ``A`` is a nonzero ``u >= 0`` with ``u^T A u = 0``.  A zero is
minimal when no other zero has a strictly smaller support; minimal zeros are
determined up to scaling by their support, and a support ``I`` carries one
exactly when ``A_I`` is PSD of corank 1 with a positive kernel generator.

Matrices are either :class:`SymmetricRationalMatrix` (exact backend) or
numpy arrays (float backend, tolerance ``tol``).  Vector indices are 0-based;
:meth:`MinimalZeroSet.family` converts to the 1-based support family.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .families import SupportFamily
from .floatlin import DEFAULT_TOL, float_psd_status
from .ratlin import SymmetricRationalMatrix, as_fraction, psd_status

Matrix = Union[SymmetricRationalMatrix, np.ndarray]


class NotCopositiveEvidence(Exception):
    """The matrix has ``x^T A x < 0`` for the nonnegative ``witness``."""

    def __init__(self, witness, value):
        self.witness = tuple(witness)
        self.value = value
        super().__init__(f"not copositive: x^T A x = {value} < 0 at x = {list(self.witness)}")


class NotAZero(ValueError):
    pass


class NoMinimalZeroInside(Exception):
    pass


@dataclass(frozen=True)
class Zero:
    vector: tuple
    support: tuple[int, ...]
    minimal: bool = False

    @classmethod
    def from_vector(cls, vector: Sequence, minimal: bool = False, tol: float = 0.0) -> "Zero":
        vec = tuple(vector)
        if any(x < -tol for x in vec):
            raise ValueError("a zero must be entrywise nonnegative")
        supp = tuple(i for i, x in enumerate(vec) if x > tol)
        if not supp:
            raise ValueError("a zero must be nonzero")
        return cls(vec, supp, minimal)

    def support_1based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.support)


@dataclass(frozen=True)
class MinimalZeroSet:
    n: int
    zeros: tuple[Zero, ...]

    @property
    def supports(self) -> list[tuple[int, ...]]:
        return [z.support for z in self.zeros]

    def family(self) -> SupportFamily:
        return SupportFamily(self.n, [z.support_1based() for z in self.zeros])

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)


@dataclass(frozen=True)
class ZeroDiagnostics:
    value: object
    product: tuple
    is_zero: bool
    first_order_ok: bool
    support_orthogonality_ok: bool
    pd_identity_ok: bool | None = None
    not_copositive_evidence: tuple | None = None


def _is_rational(A) -> bool:
    return isinstance(A, SymmetricRationalMatrix)


def _dim(A) -> int:
    return A.n if _is_rational(A) else np.asarray(A).shape[0]


def _matvec(A, x):
    if _is_rational(A):
        return A.matvec(x)
    return tuple(float(v) for v in np.asarray(A, dtype=float) @ np.asarray(x, dtype=float))


def _diag(A, i):
    return A[i, i] if _is_rational(A) else float(np.asarray(A)[i, i])


def _descent_witness(A, u, prod, i):
    """Nonnegative x with x^T A x < 0, given a zero u and (Au)_i < 0."""
    aii = _diag(A, i)
    t = Fraction(1) if aii <= 0 else -prod[i] / aii
    if not _is_rational(A):
        t = float(t)
    x = list(u)
    x[i] = x[i] + t
    return tuple(x)


def _quad(A, x):
    if _is_rational(A):
        return A.quad(x)
    x = np.asarray(x, dtype=float)
    return float(x @ np.asarray(A, dtype=float) @ x)


def _lift(n, index, values):
    v = [0] * n
    for i, x in zip(index, values):
        v[i] = x
    return v


def _support_candidate(A, index, tol):
    """Kernel generator of A_I if A_I is PSD of corank 1 with a positive
    generator, else None.  Raises on nonnegative negative-curvature witnesses."""
    n = _dim(A)
    if _is_rational(A):
        st = psd_status(A.principal(index))
        if not st.psd:
            w = st.witness
            if all(x >= 0 for x in w) or all(x <= 0 for x in w):
                x = _lift(n, index, [abs(v) for v in w])
                raise NotCopositiveEvidence(x, A.quad(x))
            return None
        if st.corank != 1:
            return None
        g = st.kernel_basis[0]
        if all(x < 0 for x in g):
            g = tuple(-x for x in g)
        if all(x > 0 for x in g):
            return g
        return None
    sub = np.asarray(A, dtype=float)[np.ix_(index, index)]
    st = float_psd_status(sub, tol)
    if not st.psd:
        w = st.witness
        if np.all(w >= -tol) or np.all(w <= tol):
            x = _lift(n, index, np.abs(w))
            val = _quad(A, x)
            if val < -tol:
                raise NotCopositiveEvidence(x, val)
        return None
    if st.corank != 1:
        return None
    g = st.kernel_basis[:, 0]
    g = g / g[np.argmax(np.abs(g))]
    if np.all(g > tol):
        return tuple(float(x) for x in g)
    return None


def find_minimal_zeros(A: Matrix, tol: float = DEFAULT_TOL) -> MinimalZeroSet:
    """All minimal zeros of ``A``, one normalized representative per support.

    Index sets are scanned by increasing cardinality; strict supersets of
    supports already found are skipped.  Copositivity of ``A`` is not
    certified, but any counter-evidence met along the way is raised as
    :class:`NotCopositiveEvidence`.

    Exact backend vectors are coprime positive integers; float backend
    vectors have maximal entry 1.
    """
    rational = _is_rational(A)
    if not rational:
        A = np.asarray(A, dtype=float)
        if not np.allclose(A, A.T, atol=tol):
            raise ValueError("matrix is not symmetric")
    n = _dim(A)
    found: list[int] = []
    zeros: list[Zero] = []
    for k in range(1, n + 1):
        for index in combinations(range(n), k):
            mask = sum(1 << i for i in index)
            if any(f & mask == f for f in found):
                continue
            g = _support_candidate(A, index, tol)
            if g is None:
                continue
            u = tuple(_lift(n, index, g))
            if rational:
                u = tuple(Fraction(x) for x in u)
            prod = _matvec(A, u)
            for i in range(n):
                if prod[i] < -(0 if rational else tol):
                    x = _descent_witness(A, u, prod, i)
                    raise NotCopositiveEvidence(x, _quad(A, x))
            zeros.append(Zero(u, index, True))
            found.append(mask)
    return MinimalZeroSet(n, tuple(zeros))


def decompose_zero(A: SymmetricRationalMatrix, u) -> list[tuple[Zero, Fraction]]:
    """Write a zero ``u`` as a positive combination of minimal zeros.

    Repeatedly peels off the largest multiple of a minimal zero supported
    inside the current residual; the support shrinks at every step.
    """
    vec = u.vector if isinstance(u, Zero) else u
    vec = [as_fraction(x) for x in vec]
    if len(vec) != A.n:
        raise ValueError("dimension mismatch")
    if any(x < 0 for x in vec) or not any(vec):
        raise NotAZero("u must be nonnegative and nonzero")
    val = A.quad(vec)
    if val != 0:
        raise NotAZero(f"u^T A u = {val} != 0")
    supp = [i for i, x in enumerate(vec) if x > 0]
    local = find_minimal_zeros(A.principal(supp))
    candidates = [Zero(tuple(_lift(A.n, supp, z.vector)), tuple(supp[i] for i in z.support), True)
                  for z in local]
    if not candidates:
        raise NoMinimalZeroInside("no minimal zero inside the support of u")
    residual = list(vec)
    out: list[tuple[Zero, Fraction]] = []
    while any(residual):
        rsupp = {i for i, x in enumerate(residual) if x > 0}
        v = next((z for z in candidates if set(z.support) <= rsupp), None)
        if v is None:
            raise NoMinimalZeroInside(f"residual {residual} contains no minimal zero")
        c = min(residual[i] / v.vector[i] for i in v.support)
        residual = [r - c * x for r, x in zip(residual, v.vector)]
        if any(r < 0 for r in residual):
            raise AssertionError("negative residual")  # pragma: no cover
        out.append((v, c))
    return out


def zero_diagnostics(A: Matrix, u: Sequence, k: int | None = None, tol: float = 0.0) -> ZeroDiagnostics:
    """Evaluate the first-order zero identities for ``u`` against ``A``.

    With a distinguished index ``k`` (0-based), additionally checks
    ``A_kk = u_I^T A_I u_I`` for ``I = Supp(u) minus {k}`` after scaling
    ``u_k = 1``; this holds for zeros whose support leaves a positive
    definite block when ``k`` is removed.  Violations are flagged, never
    raised.
    """
    rational = _is_rational(A)
    if rational:
        u = tuple(as_fraction(x) for x in u)
        tol = 0
    else:
        A = np.asarray(A, dtype=float)
        u = tuple(float(x) for x in u)
    n = _dim(A)
    if len(u) != n:
        raise ValueError("dimension mismatch")
    val = _quad(A, u)
    prod = _matvec(A, u)
    supp = [i for i, x in enumerate(u) if x > tol]
    is_zero = abs(val) <= tol
    first_order = all(p >= -tol for p in prod)
    orth = all(abs(prod[i]) <= tol for i in supp)
    evidence = None
    if val < -tol:
        evidence = u
    elif is_zero and not first_order:
        i = next(i for i, p in enumerate(prod) if p < -tol)
        evidence = _descent_witness(A, u, prod, i)
    pd_ok = None
    if k is not None:
        if u[k] <= tol:
            raise ValueError("distinguished index must lie in the support")
        scaled = [x / u[k] for x in u]
        rest = [i for i in supp if i != k]
        sub = [scaled[i] for i in rest]
        if rational:
            inner = A.principal(rest).quad(sub) if rest else Fraction(0)
        else:
            inner = float(np.asarray(sub) @ A[np.ix_(rest, rest)] @ np.asarray(sub)) if rest else 0.0
        pd_ok = abs(_diag(A, k) - inner) <= tol
    return ZeroDiagnostics(val, tuple(prod), is_zero, first_order, orth, pd_ok, evidence)

"""Exact rational linear algebra on symmetric matrices.

All entries are :class:`fractions.Fraction`.  Nothing in here touches floating
point; the float eigen-backend lives in :mod:`minzero.floatlin`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # exact binary value; callers wanting decimal semantics pass strings
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class SymmetricRationalMatrix:
    """Symmetric ``n x n`` matrix, one stored entry per unordered index pair.

    ``upper`` holds the entries ``(i, j)`` with ``i <= j`` in row-major order.
    """

    n: int
    upper: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix dimension must be at least 1")
        if len(self.upper) != self.n * (self.n + 1) // 2:
            raise ValueError("wrong number of upper-triangle entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymmetricRationalMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        vals = [[as_fraction(x) for x in r] for r in rows]
        for i in range(n):
            for j in range(i + 1, n):
                if vals[i][j] != vals[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        return cls(n, tuple(vals[i][j] for i in range(n) for j in range(i, n)))

    @classmethod
    def identity(cls, n: int) -> "SymmetricRationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def _pos(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return i * self.n - i * (i - 1) // 2 + (j - i)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(ij)
        return self.upper[self._pos(i, j)]

    def rows(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def principal(self, index: Iterable[int]) -> "SymmetricRationalMatrix":
        idx = list(index)
        return SymmetricRationalMatrix.from_rows([[self[i, j] for j in idx] for i in idx])

    def matvec(self, x: Sequence) -> Vector:
        x = [as_fraction(v) for v in x]
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        return tuple(sum((self[i, j] * x[j] for j in range(self.n) if x[j]), Fraction(0))
                     for i in range(self.n))

    def quad(self, x: Sequence) -> Fraction:
        """``x^T M x`` evaluated exactly."""
        x = [as_fraction(v) for v in x]
        return sum((xi * yi for xi, yi in zip(x, self.matvec(x))), Fraction(0))

    def diagonal(self) -> Vector:
        return tuple(self[i, i] for i in range(self.n))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in r) for r in self.rows())


@dataclass(frozen=True)
class PsdStatus:
    """Outcome of :func:`psd_status`.

    ``witness`` is set exactly when the matrix is not PSD and then satisfies
    ``witness^T M witness < 0``.  For PSD matrices ``kernel_basis`` spans the
    kernel.
    """

    psd: bool
    corank: int = 0
    kernel_basis: tuple[Vector, ...] = field(default_factory=tuple)
    witness: Vector | None = None

    @property
    def positive_definite(self) -> bool:
        return self.psd and self.corank == 0


def normalize_integer(v: Sequence[Fraction]) -> Vector:
    """Scale to coprime integers with the first nonzero entry positive."""
    v = [as_fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    first = next(a for a in ints if a)
    if first < 0:
        g = -g
    return tuple(Fraction(a // g) for a in ints)


def _reduce(S: list[list[Fraction]]):
    """Symmetric pivoting on the leading diagonal entry.

    Returns ``(True, kernel)`` or ``(False, witness)`` in the coordinates of S.
    """
    k = len(S)
    if k == 0:
        return True, []
    s00 = S[0][0]
    if s00 < 0:
        return False, [Fraction(1)] + [Fraction(0)] * (k - 1)
    if s00 == 0:
        j = next((j for j in range(1, k) if S[0][j] != 0), None)
        if j is not None:
            # (t e_0 + e_j)^T S (t e_0 + e_j) = s_jj + 2 t s_0j = -1
            w = [Fraction(0)] * k
            w[0] = -(S[j][j] + 1) / (2 * S[0][j])
            w[j] = Fraction(1)
            return False, w
        ok, res = _reduce([row[1:] for row in S[1:]])
        if not ok:
            return False, [Fraction(0)] + res
        e0 = [Fraction(1)] + [Fraction(0)] * (k - 1)
        return True, [e0] + [[Fraction(0)] + v for v in res]
    r = S[0][1:]
    sub = [[S[i + 1][j + 1] - r[i] * r[j] / s00 for j in range(k - 1)] for i in range(k - 1)]
    ok, res = _reduce(sub)

    def lift(y):
        return [-sum((a * b for a, b in zip(r, y)), Fraction(0)) / s00] + list(y)

    if not ok:
        return False, lift(res)
    return True, [lift(y) for y in res]


def psd_status(M: SymmetricRationalMatrix) -> PsdStatus:
    ok, res = _reduce(M.rows())
    if not ok:
        return PsdStatus(False, witness=tuple(res))
    basis = tuple(normalize_integer(v) for v in res)
    return PsdStatus(True, corank=len(basis), kernel_basis=basis)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    A = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def kernel_basis(M: SymmetricRationalMatrix) -> list[Vector]:
    """Basis of ``ker M`` by reduced row echelon form; works for any symmetric M."""
    n = M.n
    R, pivots = _rref(M.rows(), n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(normalize_integer(v))
    return basis


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of equal-length rational vectors (Bareiss elimination)."""
    vecs = [[as_fraction(x) for x in v] for v in vectors]
    if not vecs:
        return 0
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise ValueError("vectors have different dimensions")
    A = []
    for v in vecs:
        den = lcm(*(x.denominator for x in v)) if v else 1
        A.append([int(x * den) for x in v])
    m = len(A)
    prev = 1
    r = 0
    for c in range(dim):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            A[i] = [(piv * A[i][j] - A[i][c] * A[r][j]) // prev for j in range(dim)]
        prev = piv
        r += 1
        if r == m:
            break
    return r

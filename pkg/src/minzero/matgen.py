"""Named 5x5 test matrices and a plain-text matrix format.

File format: the first line holds ``n``, then ``n`` lines of ``n``
whitespace-separated entries.  An entry is an optionally signed integer,
a fraction ``p/q`` or a decimal (optional exponent); decimals are read
exactly from their digits.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .ratlin import SymmetricRationalMatrix


class DomainError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, column: int):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {msg}")


class AsymmetryError(ValueError):
    def __init__(self, i: int, j: int, a, b):
        self.i, self.j = i, j
        super().__init__(f"entry ({i + 1},{j + 1}) = {a} differs from ({j + 1},{i + 1}) = {b}")


# cyclic neighbours carry -cos(theta_i); the other pairs cos(theta_i + theta_{i+1})
_BAND = {(0, 1): 0, (1, 2): 1, (2, 3): 2, (3, 4): 3, (0, 4): 4}
_OFF = {(0, 2): (0, 1), (1, 3): (1, 2), (2, 4): (2, 3), (0, 3): (3, 4), (1, 4): (4, 0)}


def gen_tmat(theta: Sequence[float]) -> np.ndarray:
    """The T-matrix for angles ``theta_1..theta_5 >= 0`` with sum below pi."""
    th = [float(t) for t in theta]
    if len(th) != 5:
        raise DomainError("exactly five angles are required")
    if any(t < 0 for t in th):
        raise DomainError("angles must be nonnegative")
    if sum(th) >= math.pi:
        raise DomainError(f"angle sum {sum(th)} must be strictly less than pi")
    A = np.eye(5)
    for (i, j), k in _BAND.items():
        A[i, j] = A[j, i] = -math.cos(th[k])
    for (i, j), (k, l) in _OFF.items():
        A[i, j] = A[j, i] = math.cos(th[k] + th[l])
    return A


def gen_horn() -> SymmetricRationalMatrix:
    """The Horn matrix: the T-matrix at theta = 0, kept exact."""
    rows = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    for i, j in _BAND:
        rows[i][j] = rows[j][i] = -1
    for i, j in _OFF:
        rows[i][j] = rows[j][i] = 1
    return SymmetricRationalMatrix.from_rows(rows)


_ENTRY = re.compile(r"[+-]?(\d+/\d+|\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)$")


def parse_entry(tok: str) -> Fraction:
    if not _ENTRY.match(tok):
        raise ValueError(f"malformed entry {tok!r}")
    q = Fraction(tok)
    return q


def parse_matrix(text: str, exact: bool = True):
    """Parse the matrix format; ``exact=False`` returns a float array."""
    lines = text.splitlines()
    content = [(k + 1, ln) for k, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not content:
        raise ParseError("empty input", 1, 1)
    lno, first = content[0]
    try:
        n = int(first.strip())
    except ValueError:
        raise ParseError(f"expected the dimension, got {first.strip()!r}", lno, first.index(first.strip()) + 1)
    if n < 1:
        raise ParseError("dimension must be positive", lno, 1)
    body = content[1:]
    if len(body) != n:
        at = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else lno + 1)
        raise ParseError(f"expected {n} rows, found {len(body)}", at, 1)
    rows = []
    for lno, ln in body:
        toks = list(re.finditer(r"\S+", ln))
        if len(toks) != n:
            # point at the first surplus entry, or past the end when short
            col = toks[n].start() + 1 if len(toks) > n else len(ln) + 1
            raise ParseError(f"expected {n} entries, found {len(toks)}", lno, col)
        row = []
        for m in toks:
            try:
                row.append(parse_entry(m.group()))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(str(e), lno, m.start() + 1) from None
        rows.append(row)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise AsymmetryError(i, j, rows[i][j], rows[j][i])
    if exact:
        return SymmetricRationalMatrix.from_rows(rows)
    return np.array([[float(x) for x in r] for r in rows])


def _fmt_entry(x) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize_matrix(A) -> str:
    rows = A.rows() if isinstance(A, SymmetricRationalMatrix) else np.asarray(A, dtype=float).tolist()
    return f"{len(rows)}\n" + "".join(" ".join(_fmt_entry(x) for x in r) + "\n" for r in rows)


def load_matrix(path, exact: bool = True):
    return parse_matrix(Path(path).read_text(), exact)


@dataclass(frozen=True)
class MatrixSource:
    """Where a matrix comes from: ``horn``, ``tmat`` (with five angles),
    ``file`` (path) or ``inline`` (text)."""

    kind: str
    theta: tuple[float, ...] = ()
    path: str | None = None
    text: str | None = None

    def __post_init__(self):
        if self.kind not in ("horn", "tmat", "file", "inline"):
            raise ValueError(f"unknown matrix source {self.kind!r}")
        if self.kind == "tmat":
            gen_tmat(self.theta)  # validates

    def load(self, exact: bool = True):
        if self.kind == "horn":
            return gen_horn()
        if self.kind == "tmat":
            return gen_tmat(self.theta)
        if self.kind == "file":
            return load_matrix(self.path, exact)
        return parse_matrix(self.text, exact)

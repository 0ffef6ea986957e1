"""Floating-point backend: cyclic Jacobi eigendecomposition and tolerance-based
PSD/corank decisions for matrices with transcendental entries."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9
OFFDIAG_THRESHOLD = 1e-14


def jacobi_eigh(A, threshold: float = OFFDIAG_THRESHOLD, max_sweeps: int = 100):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
    symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``threshold`` times the Frobenius norm of ``A``.
    """
    a = np.array(A, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.linalg.norm(a), 1.0)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta**2 + 1))
                c = 1 / np.sqrt(t**2 + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    w = np.diag(a).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


@dataclass(frozen=True)
class FloatPsdStatus:
    psd: bool
    corank: int
    eigenvalues: np.ndarray
    kernel_basis: np.ndarray  # columns
    witness: np.ndarray | None = None

    @property
    def positive_definite(self) -> bool:
        return self.psd and self.corank == 0


def float_psd_status(A, tol: float = DEFAULT_TOL) -> FloatPsdStatus:
    """PSD iff the smallest eigenvalue is >= -tol; corank counts |lambda| <= tol."""
    w, v = jacobi_eigh(A)
    if w[0] < -tol:
        return FloatPsdStatus(False, 0, w, np.zeros((len(w), 0)), witness=v[:, 0].copy())
    small = np.abs(w) <= tol
    return FloatPsdStatus(True, int(small.sum()), w, v[:, small].copy())

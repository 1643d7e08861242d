"""Real symmetric eigendecomposition by cyclic Jacobi rotations.

The solver uses the parallel (round-robin) ordering: each round applies
``N/2`` rotations on disjoint index pairs at once, which vectorizes well in
numpy. Iteration stops when the off-diagonal Frobenius mass drops to
``1e-12 * ||A||_F``; at most 100 sweeps are performed.

Results are put in canonical form so that the same matrix always yields the
same basis: eigenvalues descending, tied eigenvalues re-orthonormalized by
modified Gram-Schmidt in index order, and each column signed so that its
first entry larger than ``1e-12`` in magnitude is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, NumericError, ShapeError

__all__ = ["Spectrum", "eigh", "jacobi_eigh", "reconstruct"]

OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100
TIE_TOL = 1e-10
SIGN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues (descending) and the matching orthonormal eigenvectors.

    Column ``j`` of ``vectors`` is the unit eigenvector for
    ``eigenvalues[j]``. Both arrays are read-only.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.vectors.setflags(write=False)

    @property
    def order(self) -> int:
        return self.eigenvalues.shape[0]


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple:
    """Disjoint ``(p, q)`` index pairs for each round of one sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a >= n or b >= n:
                continue
            ps.append(min(a, b))
            qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigh(a, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Diagonalize a symmetric matrix; returns raw ``(eigenvalues, vectors, sweeps)``.

    No ordering or sign normalization is applied here; see :func:`eigh`.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.diag(a).copy(), v, 0
    threshold = tol * scale
    rounds = _round_robin(n)

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi iteration did not converge within {max_sweeps} sweeps",
                sweeps=max_sweeps,
            )
        for p, q in rounds:
            apq = a[p, q]
            app = a[p, p]
            aqq = a[q, q]
            nonzero = apq != 0.0
            safe_apq = np.where(nonzero, apq, 1.0)
            theta = (aqq - app) / (2.0 * safe_apq)
            big = np.abs(theta) > 1e150
            safe_theta = np.where(big, 1.0, theta)
            t = np.where(
                big,
                0.5 / np.where(big, theta, 1.0),
                np.copysign(1.0, safe_theta)
                / (np.abs(safe_theta) + np.sqrt(safe_theta * safe_theta + 1.0)),
            )
            t = np.where(nonzero, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            cols_p = a[:, p]
            cols_q = a[:, q]
            a[:, p] = cols_p * c - cols_q * s
            a[:, q] = cols_p * s + cols_q * c
            rows_p = a[p, :]
            rows_q = a[q, :]
            a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
            a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp = v[:, p]
            vq = v[:, q]
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
        a = 0.5 * (a + a.T)
        sweeps += 1
    return np.diag(a).copy(), v, sweeps


def _lapack_eigh(a):
    w, v = np.linalg.eigh(a)
    return w, v, 0


def _canonicalize(values, vectors, scale):
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order].copy()
    n = values.shape[0]

    tie = TIE_TOL * scale
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop - 1] - values[stop] <= tie:
            stop += 1
        if stop - start > 1:
            for j in range(start, stop):
                col = vectors[:, j]
                for i in range(start, j):
                    col = col - (vectors[:, i] @ col) * vectors[:, i]
                vectors[:, j] = col / np.linalg.norm(col)
        start = stop

    for j in range(n):
        col = vectors[:, j]
        first = np.flatnonzero(np.abs(col) > SIGN_TOL)
        if first.size and col[first[0]] < 0:
            vectors[:, j] = -col
    return values, vectors


def eigh(a, method: str = "jacobi") -> Spectrum:
    """Canonical eigendecomposition of a real symmetric matrix.

    Parameters
    ----------
    a : array_like
        Square, symmetric, finite matrix.
    method : {'jacobi', 'lapack'}
        ``'jacobi'`` (default) is the in-house solver; ``'lapack'`` delegates
        to :func:`numpy.linalg.eigh` and exists mainly as a cross-check.

    Raises
    ------
    ShapeError
        If ``a`` is not square.
    NumericError
        If ``a`` has non-finite entries or is not symmetric.
    ConvergenceError
        If Jacobi does not converge within the sweep cap.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    if not np.array_equal(a, a.T):
        raise NumericError("matrix is not symmetric")
    if method == "jacobi":
        values, vectors, sweeps = jacobi_eigh(a)
    elif method == "lapack":
        values, vectors, sweeps = _lapack_eigh(a)
    else:
        raise ValueError(f"unknown method {method!r}")
    values, vectors = _canonicalize(values, vectors, float(np.linalg.norm(a)))
    return Spectrum(values, vectors, sweeps)


def reconstruct(s: Spectrum, coeffs) -> np.ndarray:
    """Return ``V @ diag(coeffs) @ V.T`` as a complex matrix."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != (s.order,):
        raise ShapeError(
            f"expected {s.order} coefficients, got shape {coeffs.shape}"
        )
    v = s.vectors
    # Two real products are cheaper than one complex product with a real factor.
    real = (v * coeffs.real) @ v.T
    imag = (v * coeffs.imag) @ v.T
    return real + 1j * imag

"""Eigendecomposition-based discrete fractional Fourier transform.

``F**alpha = V diag(exp(-1j * alpha * k * pi / 2)) V.T`` where the columns of
``V`` are discrete Hermite-Gaussian vectors: eigenvectors of the
nearly tridiagonal matrix ``S`` that commutes with the DFT.

``S`` is degenerate for even ``N``, so its eigenvectors are computed
separately inside the even and odd subspaces of the index reflection
``m -> -m mod N``. Within each subspace, descending eigenvalue order gives
Hermite orders ``0, 2, 4, ...`` (even) and ``1, 3, 5, ...`` (odd). For even
``N`` the top even order is ``N`` rather than ``N - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ShapeError
from .spectra import Spectrum, eigh, reconstruct

__all__ = [
    "DfrftKernel",
    "build_s",
    "dfrft_coeffs",
    "hermite_basis",
    "build_dfrft",
    "apply_dfrft",
    "dft_matrix",
]


@dataclass(frozen=True, eq=False)
class DfrftKernel:
    order_n: int
    alpha: float
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)


def build_s(n: int) -> np.ndarray:
    """The real symmetric matrix commuting with the ``n``-point DFT."""
    if n < 3:
        raise DomainError("build_s needs n >= 3")
    omega = 2.0 * np.pi / n
    s = np.diag(2.0 * np.cos(omega * np.arange(n)))
    s[0, 0] = 2.0
    idx = np.arange(n)
    s[idx, (idx + 1) % n] = 1.0
    s[(idx + 1) % n, idx] = 1.0
    return s


def hermite_orders(n: int) -> np.ndarray:
    """Hermite index carried by each column of the DFrFT basis."""
    k = np.arange(n, dtype=np.float64)
    if n % 2 == 0:
        k[-1] = n
    return k


def dfrft_coeffs(n: int, alpha: float) -> np.ndarray:
    if n < 1:
        raise DomainError("n must be positive")
    k = hermite_orders(n)
    # Reduce the exponent modulo 4 quarter-turns before exponentiating.
    turns = np.mod(alpha * k / 4.0, 1.0)
    return np.exp(-2j * np.pi * turns)


def _parity_basis(n: int):
    """Orthogonal change of basis splitting R^n into even and odd vectors.

    Returns ``(even, odd)`` with basis vectors as columns.
    """
    h = np.sqrt(0.5)
    half = (n - 1) // 2
    even = np.zeros((n, n // 2 + 1))
    odd = np.zeros((n, half))
    even[0, 0] = 1.0
    for i in range(1, half + 1):
        even[i, i] = even[n - i, i] = h
        odd[i, i - 1] = -h
        odd[n - i, i - 1] = h
    if n % 2 == 0:
        even[n // 2, n // 2] = 1.0
    return even, odd


@lru_cache(maxsize=16)
def hermite_basis(n: int) -> Spectrum:
    """Discrete Hermite-Gaussian basis, columns ordered by Hermite index.

    The returned ``Spectrum`` carries the ``S`` eigenvalues alongside.
    """
    s = build_s(n)
    even, odd = _parity_basis(n)
    parts = []
    for basis in (even, odd):
        if basis.shape[1] == 0:
            parts.append((np.empty(0), np.empty((n, 0))))
            continue
        block = basis.T @ s @ basis
        block = 0.5 * (block + block.T)
        sub = eigh(block)
        parts.append((sub.eigenvalues, basis @ sub.vectors))
    (ev, evec), (ov, ovec) = parts

    n_odd = ov.shape[0]
    values = np.empty(n)
    vectors = np.empty((n, n))
    values[0 : 2 * n_odd : 2] = ev[:n_odd]
    vectors[:, 0 : 2 * n_odd : 2] = evec[:, :n_odd]
    values[1 : 2 * n_odd : 2] = ov
    vectors[:, 1 : 2 * n_odd : 2] = ovec
    # Remaining even vectors fill the tail; for even n the last one has order n.
    values[2 * n_odd :] = ev[n_odd:]
    vectors[:, 2 * n_odd :] = evec[:, n_odd:]
    return Spectrum(values, vectors)


def build_dfrft(n: int, alpha: float) -> DfrftKernel:
    """Build the ``n x n`` DFrFT kernel of order ``alpha``."""
    if n < 3:
        raise DomainError("the DFrFT kernel needs n >= 3")
    matrix = reconstruct(hermite_basis(n), dfrft_coeffs(n, alpha))
    return DfrftKernel(n, float(alpha), matrix)


def apply_dfrft(kernel: DfrftKernel, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (kernel.order_n,):
        raise ShapeError(f"expected length {kernel.order_n}, got shape {x.shape}")
    return kernel.matrix @ x


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT matrix with entries ``exp(-2j pi m k / n) / sqrt(n)``."""
    mk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(-2j * np.pi * mk / n) / np.sqrt(n)

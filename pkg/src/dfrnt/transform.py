"""The discrete fractional random transform.

The kernel of order ``alpha`` is ``R**alpha = V diag(d) V.T`` with ``V`` the
canonical eigenvector basis of the key's symmetric matrix ``Q`` and
``d[k] = exp(-2j pi k alpha / M)``. ``R**alpha`` is symmetric, unitary,
additive in ``alpha`` and periodic with period ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ShapeError
from .keys import TransformKey, generate_q
from .spectra import Spectrum, eigh, reconstruct

__all__ = [
    "DfrntKernel",
    "dfrnt_coeffs",
    "key_spectrum",
    "build_dfrnt",
    "transform_1d",
    "transform_2d",
]


@dataclass(frozen=True, eq=False)
class DfrntKernel:
    key_digest: int
    order_n: int
    period_m: int
    alpha: float
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)


def dfrnt_coeffs(n: int, alpha: float, m: int = 1) -> np.ndarray:
    """Eigenvalues ``exp(-2j pi k alpha / m)`` for ``k = 0 .. n-1``."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive")
    k = np.arange(n, dtype=np.float64)
    # Wrapping the phase to [0, 1) turns keeps exp() accurate for large k*alpha.
    turns = np.mod(k * (alpha / m), 1.0)
    return np.exp(-2j * np.pi * turns)


# lru_cache serializes insertion; hits are plain dict reads.
@lru_cache(maxsize=32)
def key_spectrum(key: TransformKey) -> Spectrum:
    """Eigendecomposition of the key's ``Q``, shared by every order."""
    return eigh(generate_q(key))


def build_dfrnt(key: TransformKey, alpha: float) -> DfrntKernel:
    spectrum = key_spectrum(key)
    matrix = reconstruct(spectrum, dfrnt_coeffs(key.size_n, alpha, key.period_m))
    return DfrntKernel(key.digest, key.size_n, key.period_m, float(alpha), matrix)


def transform_1d(kernel: DfrntKernel, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (kernel.order_n,):
        raise ShapeError(f"expected length {kernel.order_n}, got shape {x.shape}")
    return kernel.matrix @ x


def transform_2d(kernel: DfrntKernel, x) -> np.ndarray:
    """Apply the kernel along both axes: ``R @ x @ R.T``."""
    x = np.asarray(x, dtype=np.complex128)
    n = kernel.order_n
    if x.ndim != 2 or x.shape != (n, n):
        raise ShapeError(f"expected a {n}x{n} array, got shape {x.shape}")
    r = kernel.matrix
    return r @ x @ r.T

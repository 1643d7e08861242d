"""Image encryption with the fractional random transform.

Encryption zero-pads a grayscale image to the key's ``N x N`` and applies the
2D transform of order ``alpha``; decryption applies order ``-alpha``, keeps
the real part, crops and clamps to ``[0, 1]``. Any order that is not a
multiple of the period ``M`` encrypts; orders at half a period give a real
ciphertext.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateOrderError, DomainError, ShapeError
from .keys import TransformKey
from .transform import build_dfrnt, transform_2d

__all__ = [
    "PlainImage",
    "Ciphertext",
    "SensitivityReport",
    "encrypt",
    "decrypt",
    "mse",
    "sweep_order_sensitivity",
    "keyspace_bits",
    "is_degenerate_order",
    "is_half_period",
    "sample_image",
]

ORDER_TOL = 1e-12
REAL_MODE_IMAG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PlainImage:
    """Single-channel image with float pixels in ``[0, 1]``."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.size == 0:
            raise ShapeError(f"expected a non-empty 2D array, got shape {px.shape}")
        if not np.all(np.isfinite(px)) or px.min() < 0.0 or px.max() > 1.0:
            raise DomainError("pixels must be finite and within [0, 1]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.pixels, dtype=dtype)

    def quantized(self) -> np.ndarray:
        return np.round(self.pixels * 255.0).astype(np.uint8)

    @classmethod
    def from_uint8(cls, values) -> "PlainImage":
        return cls(np.asarray(values, dtype=np.float64) / 255.0)


@dataclass(frozen=True, eq=False)
class Ciphertext:
    payload: np.ndarray
    key_digest: int
    orig_rows: int
    orig_cols: int
    real_mode: bool = False
    alpha_hint: Optional[float] = None

    @property
    def side(self) -> int:
        return self.payload.shape[0]


@dataclass
class SensitivityReport:
    """MSE of decryption as a function of the order error ``delta_alpha``."""

    delta_alpha: np.ndarray
    mse: np.ndarray
    key_digest: int = 0
    alpha: float = 0.0
    image_id: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        d = np.asarray(self.delta_alpha, dtype=np.float64)
        e = np.asarray(self.mse, dtype=np.float64)
        order = np.argsort(d, kind="stable")
        self.delta_alpha = d[order]
        self.mse = e[order]

    def __len__(self):
        return self.delta_alpha.shape[0]

    def rows(self):
        return list(zip(self.delta_alpha.tolist(), self.mse.tolist()))

    def mse_at(self, delta: float, tol: float = 1e-9) -> float:
        hit = np.flatnonzero(np.abs(self.delta_alpha - delta) <= tol)
        if hit.size == 0:
            raise KeyError(f"no sweep point at delta_alpha={delta}")
        return float(self.mse[hit[0]])

    def plateau(self, min_abs_delta: float = 0.25) -> float:
        """Mean MSE over the points with ``|delta_alpha| >= min_abs_delta``."""
        far = np.abs(self.delta_alpha) >= min_abs_delta
        if not far.any():
            raise ValueError("sweep has no points far enough from zero")
        return float(self.mse[far].mean())

    def discrimination(self, ratio: float = 2.0, min_abs_delta: float = 0.25) -> float:
        """Smallest ``|delta_alpha|`` beyond which every point is within
        ``ratio`` of the plateau, i.e. the order resolution of the key."""
        level = self.plateau(min_abs_delta) / ratio
        absd = np.abs(self.delta_alpha)
        below = absd[self.mse < level]
        if below.size == 0:
            return 0.0
        worst = below.max()
        beyond = absd[absd > worst]
        return float(beyond.min()) if beyond.size else math.inf


def _frac_period(alpha: float, m: int) -> float:
    return float(np.mod(alpha, m))


def is_degenerate_order(alpha: float, m: int, tol: float = ORDER_TOL) -> bool:
    r = _frac_period(alpha, m)
    return r <= tol or m - r <= tol


def is_half_period(alpha: float, m: int, tol: float = ORDER_TOL) -> bool:
    return abs(_frac_period(alpha, m) - m / 2.0) <= tol


def _as_image(img) -> PlainImage:
    return img if isinstance(img, PlainImage) else PlainImage(img)


def encrypt(img, key: TransformKey, alpha: float, store_alpha: bool = False) -> Ciphertext:
    """Encrypt ``img`` with the order-``alpha`` transform of ``key``.

    ``store_alpha`` records the order in the ciphertext header; this is a
    convenience for demos and gives away part of the secret.
    """
    img = _as_image(img)
    n = key.size_n
    if max(img.rows, img.cols) > n:
        raise ShapeError(
            f"image {img.rows}x{img.cols} does not fit the key size {n}"
        )
    if is_degenerate_order(alpha, key.period_m):
        raise DegenerateOrderError(
            f"alpha={alpha} is a multiple of the period {key.period_m}; "
            "encryption would be the identity"
        )
    padded = np.zeros((n, n))
    padded[: img.rows, : img.cols] = img.pixels
    kernel = build_dfrnt(key, alpha)
    payload = transform_2d(kernel, padded)

    real_mode = is_half_period(alpha, key.period_m)
    if real_mode:
        leak = float(np.abs(payload.imag).max())
        if leak > REAL_MODE_IMAG_TOL:
            raise ArithmeticError(f"half-period ciphertext has imaginary part {leak:g}")
        payload = payload.real.astype(np.complex128)
    payload.setflags(write=False)
    return Ciphertext(
        payload=payload,
        key_digest=kernel.key_digest,
        orig_rows=img.rows,
        orig_cols=img.cols,
        real_mode=real_mode,
        alpha_hint=float(alpha) if store_alpha else None,
    )


def _decrypt_pixels(ct: Ciphertext, key: TransformKey, alpha: float) -> np.ndarray:
    if ct.payload.shape != (key.size_n, key.size_n):
        raise ShapeError(
            f"ciphertext side {ct.payload.shape[0]} does not match key size {key.size_n}"
        )
    plain = transform_2d(build_dfrnt(key, -alpha), ct.payload).real
    return np.clip(plain[: ct.orig_rows, : ct.orig_cols], 0.0, 1.0)


def decrypt(ct: Ciphertext, key: TransformKey, alpha: float) -> PlainImage:
    """Invert :func:`encrypt`. Wrong keys or orders give noise, not errors."""
    return PlainImage(_decrypt_pixels(ct, key, alpha))


def mse(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeError(f"image shapes differ: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


def image_id(img) -> str:
    return hashlib.blake2b(np.asarray(img, dtype=np.float64).tobytes(), digest_size=8).hexdigest()


def sweep_order_sensitivity(
    img,
    key: TransformKey,
    alpha: float,
    deltas: Sequence[float],
    workers: int = 1,
) -> SensitivityReport:
    """Decrypt at ``alpha + delta`` for every delta and record the MSE."""
    img = _as_image(img)
    deltas = np.asarray(deltas, dtype=np.float64)
    if not np.all(np.isfinite(deltas)):
        raise DomainError("deltas must be finite")
    ct = encrypt(img, key, alpha)

    def one(delta):
        return mse(_decrypt_pixels(ct, key, alpha + delta), img.pixels)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(one, deltas.tolist()))
    else:
        errors = [one(d) for d in deltas.tolist()]
    return SensitivityReport(
        delta_alpha=deltas,
        mse=np.array(errors),
        key_digest=key.digest,
        alpha=float(alpha),
        image_id=image_id(img),
    )


def keyspace_bits(key: TransformKey) -> int:
    """Exponent of the ``2**(N(N+1)/2)`` key-space estimate."""
    n = key.size_n
    return n * (n + 1) // 2


def sample_image(size: int = 256) -> PlainImage:
    """Deterministic synthetic grayscale test card.

    Smooth shading, a bright disc, a dark bar and a fine grating, so that
    both low and high spatial frequencies are present.
    """
    y, x = np.mgrid[0:size, 0:size] / max(size - 1, 1)
    img = 0.25 + 0.35 * x + 0.15 * np.sin(3 * np.pi * y)
    disc = (x - 0.62) ** 2 + (y - 0.38) ** 2 < 0.05
    img[disc] = 0.9
    bar = (np.abs(x - 0.3) < 0.06) & (y > 0.45) & (y < 0.9)
    img[bar] = 0.08
    grating = (x > 0.55) & (y > 0.7)
    img[grating] += 0.12 * np.sign(np.sin(40 * np.pi * x[grating]))
    return PlainImage(np.round(np.clip(img, 0.0, 1.0) * 255.0) / 255.0)

"""Transform keys and the seeded random matrices they expand into.

A key is a handful of integers. Expanding it gives the real random matrix
``P`` and its symmetric part ``Q = (P + P.T) / 2``, whose eigenvectors
define the random transform.

The only generator currently defined is SplitMix64 (``prng_id = 1``). It is
counter based, so output ``i`` of a stream seeded with ``s`` is
``mix(s + (i + 1) * GAMMA)`` and a whole matrix can be produced with
vectorized ``uint64`` arithmetic. ``P`` is filled in row-major order:

* ``Uniform01``: entry ``j`` is ``(x_j >> 11) * 2**-53``, in ``[0, 1)``.
* ``Normal``: outputs are consumed in pairs ``(x_{2i}, x_{2i+1})`` and
  turned into two standard normals by Box-Muller::

      u1 = ((x_{2i} >> 11) + 1) * 2**-53        # (0, 1], log is finite
      u2 = (x_{2i+1} >> 11) * 2**-53
      z_{2i}   = sqrt(-2 ln u1) * cos(2 pi u2)
      z_{2i+1} = sqrt(-2 ln u1) * sin(2 pi u2)

  For odd ``N*N`` the last pair's sine variate is discarded.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, UnsupportedGenerator

__all__ = [
    "Distribution",
    "TransformKey",
    "PRNG_SPLITMIX64",
    "splitmix64",
    "generate_p",
    "symmetrize",
    "generate_q",
]

PRNG_SPLITMIX64 = 1

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO_NEG_53 = 2.0 ** -53


class Distribution(enum.IntEnum):
    NORMAL = 0
    UNIFORM01 = 1

    @classmethod
    def parse(cls, name: str) -> "Distribution":
        name = name.strip().lower()
        if name == "normal":
            return cls.NORMAL
        if name in ("uniform", "uniform01"):
            return cls.UNIFORM01
        raise ValueError(f"unknown distribution {name!r}")

    @property
    def label(self) -> str:
        return "normal" if self is Distribution.NORMAL else "uniform"


@dataclass(frozen=True)
class TransformKey:
    """The reproducible secret of a random transform.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed of the generator.
    size_n : int
        Matrix dimension ``N``.
    period_m : int
        Period ``M`` of the transform in the fractional order.
    distribution : Distribution
        Law of the entries of ``P``.
    prng_id : int
        Generator identifier; only ``PRNG_SPLITMIX64`` is implemented.
    """

    seed: int
    size_n: int
    period_m: int = 1
    distribution: Distribution = Distribution.NORMAL
    prng_id: int = PRNG_SPLITMIX64

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.size_n < 1 or self.size_n >= 2**32:
            raise ValueError("size_n must be in [1, 2**32)")
        if self.period_m < 1 or self.period_m >= 2**32:
            raise ValueError("period_m must be in [1, 2**32)")
        if not 0 <= self.prng_id < 256:
            raise ValueError("prng_id must fit in one byte")

    def to_bytes(self) -> bytes:
        # Local import: codec depends on this module.
        from .codec import write_key

        return write_key(self)

    @property
    def digest(self) -> int:
        """64-bit BLAKE2b digest of the serialized key."""
        h = hashlib.blake2b(self.to_bytes(), digest_size=8)
        return int.from_bytes(h.digest(), "little")


def splitmix64(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Outputs ``start .. start + count - 1`` of the SplitMix64 stream."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + idx * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    return z


def _uniform53(x: np.ndarray) -> np.ndarray:
    return (x >> np.uint64(11)).astype(np.float64) * _TWO_NEG_53


def generate_p(key: TransformKey) -> np.ndarray:
    """Expand ``key`` into its ``N x N`` real random matrix ``P``."""
    if key.prng_id != PRNG_SPLITMIX64:
        raise UnsupportedGenerator(f"prng_id {key.prng_id} is not supported")
    n = key.size_n
    count = n * n
    if key.distribution is Distribution.UNIFORM01:
        values = _uniform53(splitmix64(key.seed, count))
    else:
        pairs = (count + 1) // 2
        raw = splitmix64(key.seed, 2 * pairs).reshape(pairs, 2)
        u1 = _uniform53(raw[:, 0]) + _TWO_NEG_53
        u2 = _uniform53(raw[:, 1])
        radius = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        values = np.empty((pairs, 2))
        values[:, 0] = radius * np.cos(theta)
        values[:, 1] = radius * np.sin(theta)
        values = values.reshape(-1)[:count]
    return values.reshape(n, n)


def symmetrize(p) -> np.ndarray:
    """Return ``(p + p.T) / 2``, symmetric bit for bit."""
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {p.shape}")
    # Addition is commutative in IEEE arithmetic, so q[l, k] == q[k, l].
    return (p + p.T) / 2.0


def generate_q(key: TransformKey) -> np.ndarray:
    return symmetrize(generate_p(key))

"""Discrete fractional random transform, its Fourier baseline, and image
encryption built on it."""

from .cipher import (
    Ciphertext,
    PlainImage,
    SensitivityReport,
    decrypt,
    encrypt,
    keyspace_bits,
    mse,
    sample_image,
    sweep_order_sensitivity,
)
from .dfrft import DfrftKernel, apply_dfrft, build_dfrft, build_s, dfrft_coeffs
from .errors import (
    ConvergenceError,
    DegenerateOrderError,
    DfrntError,
    DomainError,
    FormatError,
    NumericError,
    ShapeError,
    UnsupportedFormat,
    UnsupportedGenerator,
    UnsupportedVersion,
)
from .keys import Distribution, TransformKey, generate_p, generate_q, symmetrize
from .spectra import Spectrum, eigh, reconstruct
from .transform import DfrntKernel, build_dfrnt, dfrnt_coeffs, transform_1d, transform_2d

__version__ = "0.1.0"

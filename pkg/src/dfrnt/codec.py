"""Binary and text file formats.

All binary integers and floats are little-endian.

Key file (``DFRK``, 23 bytes)::

    offset size  field
    0      4     magic b"DFRK"
    4      1     version = 0x01
    5      1     prng_id
    6      1     distribution (0 = normal, 1 = uniform on [0, 1))
    7      4     size_n     uint32
    11     4     period_m   uint32
    15     8     seed       uint64

Ciphertext file (``DFRC``, 34-byte header + payload)::

    0      4     magic b"DFRC"
    4      1     version = 0x01
    5      1     flags (bit 0 = real mode; other bits must be 0)
    6      4     side N     uint32
    10     4     orig_rows  uint32
    14     4     orig_cols  uint32
    18     8     alpha_hint float64, NaN when absent
    26     8     key_digest uint64
    34     ...   N*N complex128 as interleaved (re, im) float64, row-major;
                 real mode stores only the N*N re values

There is no checksum: a corrupted payload byte is read back silently.

Images are binary PGM (``P5``) with maxval <= 255. Sweep reports are CSV
with header ``delta_alpha,mse`` and 17 significant digits per value.
"""

from __future__ import annotations

import math
import re
import struct

import numpy as np

from .cipher import Ciphertext, PlainImage, SensitivityReport
from .errors import DomainError, FormatError, UnsupportedFormat, UnsupportedVersion
from .keys import Distribution, TransformKey

__all__ = [
    "KEY_SIZE",
    "write_key",
    "read_key",
    "read_pgm",
    "write_pgm",
    "write_ciphertext",
    "read_ciphertext",
    "write_report",
    "read_report",
]

KEY_MAGIC = b"DFRK"
CT_MAGIC = b"DFRC"
VERSION = 1

_KEY = struct.Struct("<4sBBBIIQ")
_CT_HEADER = struct.Struct("<4sBBIIIdQ")
KEY_SIZE = _KEY.size
CT_HEADER_SIZE = _CT_HEADER.size

_FLAG_REAL = 0x01


def write_key(key: TransformKey) -> bytes:
    return _KEY.pack(
        KEY_MAGIC,
        VERSION,
        key.prng_id,
        int(key.distribution),
        key.size_n,
        key.period_m,
        key.seed,
    )


def read_key(data: bytes) -> TransformKey:
    data = bytes(data)
    if len(data) != KEY_SIZE:
        raise FormatError(f"key file must be {KEY_SIZE} bytes, got {len(data)}")
    magic, version, prng_id, dist, n, m, seed = _KEY.unpack(data)
    if magic != KEY_MAGIC:
        raise FormatError("not a key file (bad magic)")
    if version != VERSION:
        raise UnsupportedVersion(f"key file version {version} is not supported")
    if dist not in (0, 1):
        raise FormatError(f"unknown distribution byte {dist}")
    try:
        return TransformKey(seed, n, m, Distribution(dist), prng_id)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


_WS = b" \t\n\r\v\f"


def _pgm_tokens(data: bytes, count: int):
    """Read ``count`` header tokens; returns them and the offset after the
    single whitespace byte that ends the last one."""
    tokens = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and (data[i] in _WS or data[i] == ord("#")):
            if data[i] == ord("#"):
                while i < n and data[i] not in b"\r\n":
                    i += 1
            else:
                i += 1
        start = i
        while i < n and data[i] not in _WS and data[i] != ord("#"):
            i += 1
        if start == i:
            raise FormatError("truncated PGM header")
        tokens.append(data[start:i])
    if i >= n or data[i] not in _WS:
        raise FormatError("PGM header must end with a whitespace byte")
    return tokens, i + 1


def read_pgm(data: bytes) -> PlainImage:
    """Parse a binary ``P5`` graymap; pixels become ``raw / 255``."""
    data = bytes(data)
    if data[:2] != b"P5":
        raise FormatError("not a binary PGM (expected magic P5)")
    if len(data) < 3 or data[2] not in _WS:
        raise FormatError("malformed PGM magic")
    tokens, offset = _pgm_tokens(data[2:], 3)
    offset += 2
    try:
        width, height, maxval = (int(t.decode("ascii")) for t in tokens)
    except (UnicodeDecodeError, ValueError):
        raise FormatError("non-numeric PGM header field") from None
    if width < 1 or height < 1:
        raise FormatError("PGM dimensions must be positive")
    if not 0 < maxval < 65536:
        raise FormatError(f"invalid PGM maxval {maxval}")
    if maxval > 255:
        raise UnsupportedFormat("16-bit PGM files are not supported")
    size = width * height
    raster = data[offset : offset + size]
    if len(raster) < size:
        raise FormatError("truncated PGM raster")
    raw = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    if raw.max() > maxval:
        raise FormatError("PGM sample exceeds maxval")
    return PlainImage.from_uint8(raw)


def write_pgm(img) -> bytes:
    px = np.asarray(img, dtype=np.float64)
    if px.ndim != 2 or px.size == 0:
        raise DomainError("expected a non-empty 2D image")
    if not np.all(np.isfinite(px)) or px.min() < 0.0 or px.max() > 1.0:
        raise DomainError("pixels must be finite and within [0, 1]")
    rows, cols = px.shape
    header = f"P5\n{cols} {rows}\n255\n".encode("ascii")
    return header + np.round(px * 255.0).astype(np.uint8).tobytes()


def write_ciphertext(ct: Ciphertext) -> bytes:
    n = ct.side
    flags = _FLAG_REAL if ct.real_mode else 0
    hint = math.nan if ct.alpha_hint is None else float(ct.alpha_hint)
    header = _CT_HEADER.pack(
        CT_MAGIC, VERSION, flags, n, ct.orig_rows, ct.orig_cols, hint, ct.key_digest
    )
    payload = np.ascontiguousarray(ct.payload, dtype=np.complex128)
    if ct.real_mode:
        body = np.ascontiguousarray(payload.real).astype("<f8").tobytes()
    else:
        body = payload.astype("<c16").tobytes()
    return header + body


def read_ciphertext(data: bytes) -> Ciphertext:
    data = bytes(data)
    if len(data) < CT_HEADER_SIZE:
        raise FormatError("truncated ciphertext header")
    magic, version, flags, n, rows, cols, hint, digest = _CT_HEADER.unpack_from(data)
    if magic != CT_MAGIC:
        raise FormatError("not a ciphertext file (bad magic)")
    if version != VERSION:
        raise UnsupportedVersion(f"ciphertext version {version} is not supported")
    if flags & ~_FLAG_REAL:
        raise FormatError(f"unknown ciphertext flags 0x{flags:02x}")
    if n < 1 or not (1 <= rows <= n and 1 <= cols <= n):
        raise FormatError("inconsistent ciphertext dimensions")
    real_mode = bool(flags & _FLAG_REAL)
    expected = n * n * (8 if real_mode else 16)
    body = data[CT_HEADER_SIZE:]
    if len(body) != expected:
        raise FormatError(
            f"ciphertext payload has {len(body)} bytes, expected {expected}"
        )
    if real_mode:
        payload = np.frombuffer(body, dtype="<f8").astype(np.complex128)
    else:
        payload = np.frombuffer(body, dtype="<c16").astype(np.complex128)
    payload = payload.reshape(n, n)
    payload.setflags(write=False)
    return Ciphertext(
        payload=payload,
        key_digest=digest,
        orig_rows=rows,
        orig_cols=cols,
        real_mode=real_mode,
        alpha_hint=None if math.isnan(hint) else hint,
    )


REPORT_HEADER = "delta_alpha,mse"


def write_report(report: SensitivityReport) -> str:
    lines = [REPORT_HEADER]
    lines += [f"{d:.17g},{e:.17g}" for d, e in report.rows()]
    return "\n".join(lines) + "\n"


_FLOAT = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$|^[+-]?(inf|nan)$", re.I)


def read_report(text: str) -> SensitivityReport:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != REPORT_HEADER:
        raise FormatError(f"report must start with header {REPORT_HEADER!r}")
    deltas, errors = [], []
    for ln in lines[1:]:
        fields = ln.split(",")
        if len(fields) != 2 or not all(_FLOAT.match(f) for f in fields):
            raise FormatError(f"bad report row {ln!r}")
        deltas.append(float(fields[0]))
        errors.append(float(fields[1]))
    return SensitivityReport(np.array(deltas), np.array(errors))

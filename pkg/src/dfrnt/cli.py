"""Command-line interface.

Exit codes: 0 success, 1 I/O or format error, 2 usage error, 3 a property
check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import codec
from .cipher import decrypt, encrypt, keyspace_bits, mse, sweep_order_sensitivity
from .dfrft import apply_dfrft, build_dfrft
from .errors import DfrntError
from .keys import Distribution, TransformKey
from .properties import check_properties, rect_signal
from .transform import build_dfrnt, transform_1d

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_PROPERTY = 3


class InputError(Exception):
    """Unparseable flag value; reported with exit code 1."""


def parse_float_list(text: str) -> list:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"cannot parse number list {text!r}") from None
    if not values or not all(np.isfinite(values)):
        raise InputError(f"bad number list {text!r}")
    return values


def parse_range(text: str) -> np.ndarray:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    if ":" not in text:
        return np.array(parse_float_list(text))
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"range must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise InputError(f"cannot parse range {text!r}") from None
    if not (np.isfinite([start, stop, step]).all() and step > 0 and stop >= start):
        raise InputError(f"empty or invalid range {text!r}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    # Rounding puts grid points such as 0.0 exactly on their decimal value.
    return np.round(start + step * np.arange(count), 12)


def parse_window(text: str):
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise InputError(f"window must be lo:hi, got {text!r}") from None
    return lo, hi


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _read_key(path) -> TransformKey:
    return codec.read_key(Path(path).read_bytes())


def cmd_keygen(args) -> int:
    key = TransformKey(args.seed, args.size, args.period, Distribution.parse(args.dist))
    Path(args.out).write_bytes(codec.write_key(key))
    bits = keyspace_bits(key)
    print(f"wrote {args.out}: N={key.size_n} M={key.period_m} dist={key.distribution.label}")
    print(f"keyspace: 2^{bits} ({bits} bits)")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    key = _read_key(args.key)
    img = codec.read_pgm(Path(args.input).read_bytes())
    ct = encrypt(img, key, args.alpha, store_alpha=args.store_alpha)
    Path(args.out).write_bytes(codec.write_ciphertext(ct))
    mode = "real" if ct.real_mode else "complex"
    print(f"wrote {args.out}: {ct.side}x{ct.side} {mode} ciphertext")
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = _read_key(args.key)
    ct = codec.read_ciphertext(Path(args.input).read_bytes())
    img = decrypt(ct, key, args.alpha)
    Path(args.out).write_bytes(codec.write_pgm(img))
    print(f"wrote {args.out}: {img.rows}x{img.cols}")
    if args.reference:
        ref = codec.read_pgm(Path(args.reference).read_bytes())
        print(f"mse={mse(img, ref):.17g}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    key = _read_key(args.key)
    deltas = parse_range(args.deltas)
    img = codec.read_pgm(Path(args.input).read_bytes())
    report = sweep_order_sensitivity(img, key, args.alpha, deltas, workers=args.workers)
    out = Path(args.out)
    out.write_text(codec.write_report(report))
    best = int(np.argmin(report.mse))
    print(f"wrote {out}: {len(report)} points")
    print(f"min mse={report.mse[best]:.6g} at delta_alpha={report.delta_alpha[best]:g}")
    far = np.abs(report.delta_alpha) >= 0.25
    if far.any():
        print(f"plateau mse={report.plateau():.6g}")
        print(f"|delta_alpha|_min (within 2x of plateau)={report.discrimination():g}")
    if args.plot:
        from .plotting import plot_sweep

        fig_path = out.with_suffix(".png")
        plot_sweep(fig_path, report, title=f"alpha={args.alpha:g}, {key.distribution.label} key")
        print(f"wrote {fig_path}")
    return EXIT_OK


def cmd_demo1d(args) -> int:
    orders = parse_float_list(args.orders)
    lo, hi = parse_window(args.window)
    if not 0 <= lo < hi <= args.n:
        raise InputError(f"window {lo}:{hi} outside 0:{args.n}")
    x = rect_signal(args.n, lo, hi)
    if args.kind == "dfrft":
        outputs = {a: apply_dfrft(build_dfrft(args.n, a), x) for a in orders}
        label = "DFrFT"
    else:
        if args.seed is None:
            raise InputError("--seed is required for --kind dfrnt")
        key = TransformKey(args.seed, args.n, args.period, Distribution.parse(args.dist))
        outputs = {a: transform_1d(build_dfrnt(key, a), x) for a in orders}
        label = f"DFRNT, {key.distribution.label} key"
    for a, out in outputs.items():
        path = Path(f"{args.out}_a{a:g}.csv")
        lines = ["index,amplitude,phase"]
        lines += [
            f"{i},{amp:.17g},{ph:.17g}"
            for i, (amp, ph) in enumerate(zip(np.abs(out), np.angle(out)))
        ]
        path.write_text("\n".join(lines) + "\n")
        print(f"wrote {path}")
    if args.plot:
        from .plotting import plot_demo1d

        fig_path = Path(f"{args.out}.png")
        plot_demo1d(fig_path, outputs, title=f"{label}, rect [{lo},{hi})")
        print(f"wrote {fig_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    key = _read_key(args.key)
    alphas = parse_float_list(args.alphas)
    results = check_properties(key, alphas)
    width = max(len(r.name) for r in results)
    print(f"{'property':<{width}}  {'error':>10}  {'tol':>7}  result")
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {r.error:10.3e}  {r.tolerance:7.0e}  {status}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfrnt", description="Discrete fractional random transform toolkit."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="write a key file")
    p.add_argument("--size", type=_positive, required=True)
    p.add_argument("--dist", choices=["normal", "uniform"], default="normal")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--period", type=_positive, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a PGM image")
    p.add_argument("--key", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--store-alpha", action="store_true",
                   help="record alpha in the ciphertext header (weakens secrecy)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext to PGM")
    p.add_argument("--key", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--reference", help="original PGM; prints the MSE against it")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("sweep", help="MSE of decryption against order error")
    p.add_argument("--key", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--deltas", default="-0.5:0.5:0.002")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--plot", action="store_true", help="also render OUT with .png suffix")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("demo1d", help="rect-window transform data")
    p.add_argument("--kind", choices=["dfrft", "dfrnt"], default="dfrnt")
    p.add_argument("--dist", choices=["normal", "uniform"], default="normal")
    p.add_argument("--n", type=_positive, default=100)
    p.add_argument("--orders", default="0.25,0.5,0.75,1.0")
    p.add_argument("--seed", type=_seed)
    p.add_argument("--period", type=_positive, default=1)
    p.add_argument("--window", default="40:60", help="half-open support lo:hi")
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--plot", action="store_true", help="also render PREFIX.png")
    p.set_defaults(func=cmd_demo1d)

    p = sub.add_parser("verify", help="check the kernel properties of a key")
    p.add_argument("--key", required=True)
    p.add_argument("--alphas", default="0.25,0.3,0.5,0.75,1.0")
    p.set_defaults(func=cmd_verify)
    return parser


_LIST_FLAGS = ("--deltas", "--alphas", "--orders")


def _join_list_flags(argv):
    """Bind list flags to their value so ``--deltas -0.5:0.5:0.01`` parses."""
    out = []
    it = iter(argv)
    for token in it:
        if token in _LIST_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_list_flags(argv))
    try:
        return args.func(args)
    except (DfrntError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

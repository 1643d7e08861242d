import re

import numpy as np
import pytest

from dfrnt import codec, properties
from dfrnt.cipher import PlainImage
from dfrnt.cli import main, parse_range


def gradient(n=64):
    y, x = np.mgrid[0:n, 0:n]
    return PlainImage(np.round((x + y) / (2 * (n - 1)) * 255) / 255)


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_keygen_prints_keyspace(workdir, capsys):
    code, out, _ = run(capsys, "keygen", "--size", 256, "--seed", 1, "--out", "k.dfrk")
    assert code == 0
    assert "32896 bits" in out
    assert len((workdir / "k.dfrk").read_bytes()) == codec.KEY_SIZE


@pytest.mark.parametrize(
    "argv",
    [
        ["keygen", "--size", "8", "--out", "k"],
        ["keygen", "--size", "0", "--seed", "1", "--out", "k"],
        ["keygen", "--size", "8", "--seed", "-3", "--out", "k"],
        ["keygen", "--size", "8", "--seed", "1", "--dist", "cauchy", "--out", "k"],
        [],
    ],
)
def test_usage_errors(workdir, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_encrypt_decrypt_round_trip(workdir, capsys):
    (workdir / "img.pgm").write_bytes(codec.write_pgm(gradient()))
    run(capsys, "keygen", "--size", 64, "--seed", 9, "--dist", "uniform", "--out", "k.dfrk")
    code, out, _ = run(capsys, "encrypt", "--key", "k.dfrk", "--alpha", 0.8,
                       "--in", "img.pgm", "--out", "ct.dfrc")
    assert code == 0 and "complex" in out
    code, out, _ = run(capsys, "decrypt", "--key", "k.dfrk", "--alpha", 0.8, "--in", "ct.dfrc",
                       "--out", "dec.pgm", "--reference", "img.pgm")
    assert code == 0
    assert float(re.search(r"mse=(\S+)", out).group(1)) <= 1e-12
    assert (workdir / "dec.pgm").read_bytes() == (workdir / "img.pgm").read_bytes()


def test_encrypt_zero_order_fails(workdir, capsys):
    (workdir / "img.pgm").write_bytes(codec.write_pgm(gradient(8)))
    run(capsys, "keygen", "--size", 8, "--seed", 1, "--out", "k.dfrk")
    code, _, err = run(capsys, "encrypt", "--key", "k.dfrk", "--alpha", 0,
                       "--in", "img.pgm", "--out", "ct.dfrc")
    assert code == 1 and "identity" in err


def test_wrong_key_decrypts_to_noise(workdir, capsys):
    (workdir / "img.pgm").write_bytes(codec.write_pgm(gradient(32)))
    run(capsys, "keygen", "--size", 32, "--seed", 1, "--out", "k1")
    run(capsys, "keygen", "--size", 32, "--seed", 2, "--out", "k2")
    run(capsys, "encrypt", "--key", "k1", "--alpha", 0.5, "--in", "img.pgm", "--out", "ct")
    code, out, _ = run(capsys, "decrypt", "--key", "k2", "--alpha", 0.5, "--in", "ct",
                       "--out", "bad.pgm", "--reference", "img.pgm")
    assert code == 0
    assert float(re.search(r"mse=(\S+)", out).group(1)) > 1e-3


def test_missing_and_corrupt_files(workdir, capsys):
    code, _, err = run(capsys, "verify", "--key", "nope.dfrk")
    assert code == 1
    (workdir / "bad.dfrk").write_bytes(b"DFRK\x01garbage")
    code, _, err = run(capsys, "verify", "--key", "bad.dfrk")
    assert code == 1 and "error" in err


def test_parse_range():
    grid = parse_range("-0.5:0.5:0.002")
    assert len(grid) == 501 and grid[0] == -0.5 and grid[-1] == 0.5
    assert 0.0 in grid.tolist()
    assert parse_range("0.1,0.2").tolist() == [0.1, 0.2]


def test_sweep_command(workdir, capsys):
    (workdir / "img.pgm").write_bytes(codec.write_pgm(gradient(32)))
    run(capsys, "keygen", "--size", 32, "--seed", 4, "--out", "k")
    code, out, _ = run(capsys, "sweep", "--key", "k", "--alpha", 0.5, "--in", "img.pgm",
                       "--deltas", "-0.5:0.5:0.05", "--out", "rep.csv", "--plot")
    assert code == 0
    report = codec.read_report((workdir / "rep.csv").read_text())
    assert len(report) == 21
    assert report.delta_alpha[int(np.argmin(report.mse))] == 0.0
    assert (workdir / "rep.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert "plateau" in out
    code, _, _ = run(capsys, "sweep", "--key", "k", "--alpha", 0.5, "--in", "img.pgm",
                     "--deltas", "0:x:1", "--out", "r2.csv")
    assert code == 1


def read_demo(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return data[:, 1] * np.exp(1j * data[:, 2]), data


def test_demo1d_dfrnt(workdir, capsys):
    code, _, _ = run(capsys, "demo1d", "--kind", "dfrnt", "--seed", 3, "--out", "d")
    assert code == 0
    x = np.zeros(100)
    x[40:60] = 1
    out1, raw = read_demo(workdir / "d_a1.csv")
    np.testing.assert_array_equal(raw[:, 0], np.arange(100))
    np.testing.assert_allclose(raw[:, 1], x, atol=1e-9)
    _, half = read_demo(workdir / "d_a0.5.csv")
    assert np.max(np.abs(half[:, 1] * np.sin(half[:, 2]))) <= 1e-9
    _, q1 = read_demo(workdir / "d_a0.25.csv")
    _, q3 = read_demo(workdir / "d_a0.75.csv")
    np.testing.assert_allclose(q1[:, 1], q3[:, 1], atol=1e-9)


def test_demo1d_requires_seed_and_valid_orders(workdir, capsys):
    assert run(capsys, "demo1d", "--kind", "dfrnt", "--out", "d")[0] == 1
    assert run(capsys, "demo1d", "--kind", "dfrft", "--orders", "a,b", "--out", "d")[0] == 1
    assert run(capsys, "demo1d", "--kind", "dfrft", "--window", "90:120", "--out", "d")[0] == 1


def test_demo1d_dfrft_matches_fft(workdir, capsys):
    code, _, _ = run(capsys, "demo1d", "--kind", "dfrft", "--orders", "1.0",
                     "--window", "30:41", "--n", 64, "--out", "f")
    assert code == 0
    x = np.zeros(64)
    x[30:41] = 1
    _, raw = read_demo(workdir / "f_a1.csv")
    np.testing.assert_allclose(raw[:, 1], np.abs(np.fft.fft(x)) / 8, atol=1e-7)


def test_outputs_are_reproducible(workdir, capsys):
    for tag in ("a", "b"):
        run(capsys, "demo1d", "--kind", "dfrnt", "--dist", "uniform", "--seed", 8,
            "--out", tag, "--plot")
        run(capsys, "keygen", "--size", 16, "--seed", 8, "--out", f"{tag}.dfrk")
    for suffix in ("_a0.25.csv", "_a1.csv", ".png", ".dfrk"):
        assert (workdir / f"a{suffix}").read_bytes() == (workdir / f"b{suffix}").read_bytes()


def test_verify_passes(workdir, capsys):
    run(capsys, "keygen", "--size", 16, "--seed", 2, "--out", "k")
    code, out, _ = run(capsys, "verify", "--key", "k")
    assert code == 0
    assert out.count("pass") == len(properties.TOLERANCES)


def test_verify_period_four(workdir, capsys):
    run(capsys, "keygen", "--size", 16, "--seed", 2, "--period", 4, "--dist", "uniform", "--out", "k")
    code, out, _ = run(capsys, "verify", "--key", "k", "--alphas", "0.5,1,2.5")
    assert code == 0
    assert re.search(r"multiplicity\s+\S+\s+\S+\s+pass", out)


def test_verify_failure_exit_code(workdir, capsys, monkeypatch):
    run(capsys, "keygen", "--size", 8, "--seed", 2, "--out", "k")
    monkeypatch.setitem(properties.TOLERANCES, "unitarity", 0.0)
    code, out, _ = run(capsys, "verify", "--key", "k")
    assert code == 3 and "FAIL" in out


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "dfrnt", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "keygen" in res.stdout

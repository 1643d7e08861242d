import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dfrnt.errors import ShapeError, UnsupportedGenerator
from dfrnt.keys import (
    Distribution,
    TransformKey,
    generate_p,
    generate_q,
    splitmix64,
    symmetrize,
)

MASK = (1 << 64) - 1


def splitmix64_scalar(seed, count):
    """Textbook sequential SplitMix64 with Python integers."""
    out = []
    state = seed
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        out.append(z ^ (z >> 31))
    return out


def test_splitmix64_reference_vector():
    # Published first outputs for seed 0.
    assert splitmix64(0, 3).tolist() == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


@given(st.integers(0, MASK), st.integers(1, 50))
def test_splitmix64_matches_sequential(seed, count):
    assert splitmix64(seed, count).tolist() == splitmix64_scalar(seed, count)


def test_splitmix64_offset_stream():
    full = splitmix64(99, 10)
    assert np.array_equal(splitmix64(99, 4, start=6), full[6:])


def test_generate_p_deterministic():
    key = TransformKey(7, 2, distribution=Distribution.UNIFORM01)
    a = generate_p(key)
    b = generate_p(TransformKey(7, 2, distribution=Distribution.UNIFORM01))
    assert a.tobytes() == b.tobytes()


def test_uniform_values_follow_documented_mapping():
    key = TransformKey(7, 3, distribution=Distribution.UNIFORM01)
    raw = splitmix64_scalar(7, 9)
    expected = np.array([(x >> 11) * 2.0**-53 for x in raw]).reshape(3, 3)
    p = generate_p(key)
    assert np.array_equal(p, expected)
    assert np.all((p >= 0) & (p < 1))


def test_normal_values_follow_box_muller_pairing():
    key = TransformKey(11, 3, distribution=Distribution.NORMAL)
    raw = splitmix64_scalar(11, 10)
    expected = []
    for i in range(0, 10, 2):
        u1 = ((raw[i] >> 11) + 1) * 2.0**-53
        u2 = (raw[i + 1] >> 11) * 2.0**-53
        r = np.sqrt(-2 * np.log(u1))
        expected += [r * np.cos(2 * np.pi * u2), r * np.sin(2 * np.pi * u2)]
    np.testing.assert_allclose(generate_p(key).ravel(), expected[:9], rtol=0, atol=1e-15)


def test_normal_moments():
    p = generate_p(TransformKey(3, 200, distribution=Distribution.NORMAL))
    assert abs(p.mean()) < 0.02
    assert abs(p.std() - 1.0) < 0.02


def test_uniform_moments():
    p = generate_p(TransformKey(3, 200, distribution=Distribution.UNIFORM01))
    assert abs(p.mean() - 0.5) < 0.01
    assert abs(p.var() - 1 / 12) < 0.005


def test_seed_changes_matrix():
    a = generate_p(TransformKey(7, 2))
    b = generate_p(TransformKey(8, 2))
    assert np.any(a != b)


def test_distinct_seeds_give_distinct_q():
    for s in range(100):
        for dist in Distribution:
            q1 = generate_q(TransformKey(2 * s, 8, distribution=dist))
            q2 = generate_q(TransformKey(2 * s + 1, 8, distribution=dist))
            assert np.any(q1 != q2)


def test_unsupported_generator():
    with pytest.raises(UnsupportedGenerator):
        generate_p(TransformKey(1, 4, prng_id=2))


@pytest.mark.parametrize(
    "kwargs",
    [dict(seed=-1, size_n=2), dict(seed=2**64, size_n=2), dict(seed=0, size_n=0),
     dict(seed=0, size_n=2, period_m=0), dict(seed=0, size_n=2, prng_id=256)],
)
def test_invalid_key_fields(kwargs):
    with pytest.raises(ValueError):
        TransformKey(**kwargs)


def test_symmetrize_examples():
    assert np.array_equal(symmetrize([[1, 2], [4, 3]]), [[1, 3], [3, 3]])
    s = np.array([[1.0, 5.0], [5.0, -2.0]])
    assert np.array_equal(symmetrize(s), s)


def test_symmetrize_rejects_non_square():
    with pytest.raises(ShapeError):
        symmetrize(np.zeros((2, 3)))


@settings(max_examples=50)
@given(st.integers(0, MASK), st.integers(1, 12), st.sampled_from(list(Distribution)))
def test_q_exactly_symmetric(seed, n, dist):
    q = generate_q(TransformKey(seed, n, distribution=dist))
    assert np.array_equal(q, q.T)
    assert np.all(q - q.T == 0)


def test_digest_depends_on_every_field():
    base = TransformKey(1, 4, 1, Distribution.NORMAL)
    others = [
        TransformKey(2, 4, 1, Distribution.NORMAL),
        TransformKey(1, 5, 1, Distribution.NORMAL),
        TransformKey(1, 4, 2, Distribution.NORMAL),
        TransformKey(1, 4, 1, Distribution.UNIFORM01),
    ]
    assert len({base.digest, *(k.digest for k in others)}) == 5
    assert 0 <= base.digest < 2**64

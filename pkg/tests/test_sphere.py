import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from sobolev_sphere.sphere import (
    SeedSpec,
    UnitSample,
    gram_cosines,
    load_sample,
    random_rotation,
    sample_uniform_sphere,
)


def test_unit_norms():
    x = sample_uniform_sphere(3, 3, SeedSpec(1))
    assert x.points.shape == (3, 3)
    np.testing.assert_allclose(np.linalg.norm(x.points, axis=1), 1.0, atol=1e-12)


def test_first_and_second_moments():
    n = 10_000
    x = sample_uniform_sphere(n, 3, SeedSpec(7)).points
    assert np.all(np.abs(x.mean(axis=0)) < 4 / np.sqrt(n))
    assert abs(np.mean(x[:, 0] ** 2) - 1 / 3) < 0.02


def test_first_coordinate_uniform_on_interval():
    # Archimedes: for d = 3 each coordinate is Unif(-1, 1)
    x = sample_uniform_sphere(10_000, 3, SeedSpec(8)).points
    ks = stats.kstest(x[:, 0], stats.uniform(loc=-1, scale=2).cdf)
    assert ks.statistic < 0.02


def test_seed_determinism():
    a = sample_uniform_sphere(50, 4, SeedSpec(3, 11))
    b = sample_uniform_sphere(50, 4, SeedSpec(3, 11))
    c = sample_uniform_sphere(50, 4, SeedSpec(3, 12))
    assert a.points.tobytes() == b.points.tobytes()
    assert not np.array_equal(a.points, c.points)


def test_streams_independent_of_creation_order():
    first = [SeedSpec(5, i).generator().random() for i in range(5)]
    second = [SeedSpec(5, i).generator().random() for i in reversed(range(5))]
    assert first == second[::-1]


@pytest.mark.parametrize("n,d", [(0, 3), (5, 1), (2.5, 3)])
def test_bad_arguments(n, d):
    with pytest.raises(ValueError):
        sample_uniform_sphere(n, d, SeedSpec(0))


def test_gram_examples():
    same = UnitSample([[1, 0, 0], [1, 0, 0]])
    np.testing.assert_array_equal(gram_cosines(same), np.ones((2, 2)))
    anti = UnitSample([[0, 1, 0], [0, -1, 0]])
    assert gram_cosines(anti)[0, 1] == -1
    ortho = UnitSample([[1, 0, 0], [0, 1, 0]])
    assert gram_cosines(ortho)[0, 1] == 0


def test_gram_clamped_and_symmetric(rng):
    x = rng.standard_normal((200, 3))
    x /= np.linalg.norm(x, axis=1)[:, None]
    x[1] = x[0] * (1 + 1e-9)  # norm slightly above 1
    G = gram_cosines(UnitSample(x))
    assert np.all(np.abs(G) <= 1)
    np.testing.assert_array_equal(G, G.T)
    np.testing.assert_array_equal(np.diag(G), 1.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 7))
def test_gram_rotation_equivariance(seed, d):
    x = sample_uniform_sphere(20, d, SeedSpec(seed))
    Q = random_rotation(d, SeedSpec(seed, 1))
    np.testing.assert_allclose(gram_cosines(x.rotate(Q)), gram_cosines(x), atol=1e-10)


def test_strict_ingest_rejects_non_unit_rows():
    with pytest.raises(ValueError, match="norm"):
        UnitSample([[1.0, 0.0], [0.5, 0.5]])
    ok = UnitSample([[1.0 + 5e-9, 0.0]])
    assert ok.size_n == 1


def test_lenient_ingest_renormalizes():
    x = UnitSample([[3.0, 4.0]], renormalize=True)
    np.testing.assert_allclose(x.points, [[0.6, 0.8]])


def test_invariants():
    with pytest.raises(ValueError):
        UnitSample(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        UnitSample([[1.0]])
    x = UnitSample([[0.0, 1.0]])
    with pytest.raises(ValueError):
        x.points[0, 0] = 1.0  # read-only


def test_load_sample(tmp_path):
    f = tmp_path / "obs.txt"
    f.write_text("# header\n1 0 0\n0,1,0\n\n0\t0\t1\n")
    x = load_sample(f)
    assert (x.size_n, x.dim_d) == (3, 3)
    f.write_text("2 0\n0 3\n")
    with pytest.raises(ValueError):
        load_sample(f)
    assert load_sample(f, renormalize=True).size_n == 2


def test_load_sample_ragged(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1 0 0\n0 1\n")
    with pytest.raises(ValueError, match="bad.txt:2"):
        load_sample(f)

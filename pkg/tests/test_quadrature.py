import numpy as np
import pytest
from hypothesis import given, strategies as st

from subord_lab.errors import ArgumentError
from subord_lab.quadrature import (Estimate, QuadSpec, blockwise_sum, composite_gauss_legendre,
                                   gauss_legendre, map_blocks, philox, replicate_stats,
                                   richardson_first_order, sphere_points, tree_sum)


@pytest.mark.parametrize("kw", [dict(mc_samples=999), dict(shell_etas=(1e-2, 1e-2)),
                                dict(shell_etas=(1e-3, 1e-2)), dict(rel_tol=0.0),
                                dict(level_epsilons=()), dict(replicates=1)])
def test_quadspec_validation(kw):
    with pytest.raises(ArgumentError):
        QuadSpec(seed=0, **kw)


@given(st.lists(st.floats(-1e6, 1e6), min_size=0, max_size=300))
def test_tree_sum_close_to_fsum(xs):
    import math
    assert tree_sum(np.array(xs)) == pytest.approx(math.fsum(xs), abs=1e-6)


def test_tree_sum_complex():
    v = np.arange(10) + 1j * np.arange(10)
    assert tree_sum(v) == complex(45, 45)


def test_blockwise_sum_independent_of_workers():
    x = philox(3).standard_normal(50_000)
    fn = lambda a, b: np.sin(x[a:b]) * 1e3
    assert blockwise_sum(fn, x.size, 1) == blockwise_sum(fn, x.size, 4)
    np.testing.assert_array_equal(map_blocks(fn, x.size, 1), map_blocks(fn, x.size, 3))


def test_sphere_points_unit_and_deterministic():
    a = sphere_points(3, 1000, 5, 0)
    assert a.shape == (1024, 3)
    np.testing.assert_allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-14)
    np.testing.assert_array_equal(a, sphere_points(3, 1000, 5, 0))
    assert not np.array_equal(a, sphere_points(3, 1000, 5, 1))
    assert not a.flags.writeable
    # first moments vanish, second moment is 1/N per coordinate
    assert np.abs(a.mean(axis=0)).max() < 1e-2
    np.testing.assert_allclose((np.abs(a) ** 2).mean(axis=0), 1 / 3, atol=3e-3)


def test_gauss_legendre_exact_polynomial():
    x, w = gauss_legendre(5, 0.0, 2.0)
    assert np.sum(w * x**9) == pytest.approx(2.0**10 / 10)
    x, w = composite_gauss_legendre([0, 0.5, 0.5, 1.0], 4)
    assert np.sum(w * x**3) == pytest.approx(0.25)


def test_replicate_stats_and_richardson():
    m, s = replicate_stats([1.0, 2.0, 3.0])
    assert m == 2.0 and s == pytest.approx(1 / np.sqrt(3))
    # f(eta) = 2 + 3 eta is extrapolated exactly
    assert richardson_first_order([0.1, 0.05], [2.3, 2.15]) == pytest.approx(2.0)


def test_estimate_as_dict_complex():
    d = Estimate(1 + 2j, 0.1).as_dict()
    assert d["value"] == [1.0, 2.0]

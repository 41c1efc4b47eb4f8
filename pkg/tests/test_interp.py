import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from subord_lab.errors import ArgumentError, DegenerateSequenceError
from subord_lab.interp import (PointSequence, correspondence_check, dual_system, gram_matrix,
                               interpolation_constant, kernel_norm, lift_sequence,
                               pivoted_cholesky_inverse)
from subord_lab.spaces import Bergman, Hardy, kernel


def test_two_point_hardy_disc():
    seq = PointSequence([0.0, 0.6], Hardy(1))
    g = gram_matrix(seq).gram
    assert g[0, 1].real == pytest.approx(0.8, abs=1e-15)
    # lambda_min = 1 - 0.8 = 0.2
    assert interpolation_constant(seq) == pytest.approx(math.sqrt(5), rel=1e-13)
    ds = dual_system(seq)
    assert ds.constant == pytest.approx(1 / math.sqrt(1 - 0.64), rel=1e-13)


def test_single_point():
    seq = PointSequence([0.3], Hardy(1))
    assert interpolation_constant(seq) == pytest.approx(1.0)
    assert dual_system(seq).constant == pytest.approx(1.0)


def test_sequence_validation():
    with pytest.raises(ArgumentError):
        PointSequence([0.3, 0.3], Hardy(1))
    with pytest.raises(ArgumentError):
        PointSequence([1.0], Hardy(1))
    with pytest.raises(ArgumentError):
        PointSequence(np.zeros((2, 3)), Hardy(2))
    with pytest.raises(ArgumentError):
        interpolation_constant(PointSequence([0.3], Hardy(1)), p=3)


def test_degenerate_sequence_raises():
    seq = PointSequence([0.1, 0.1 + 1e-9], Hardy(1))
    with pytest.raises(DegenerateSequenceError):
        interpolation_constant(seq)
    with pytest.raises(DegenerateSequenceError):
        dual_system(seq)


def test_dual_system_biorthogonal():
    pts = np.array([0.1, 0.5j, -0.7, 0.3 - 0.4j])
    seq = PointSequence(pts, Bergman(1, 1))
    G = gram_matrix(seq).gram
    ds = dual_system(seq)
    # <rho_a, e_c> = sum_j C_aj <e_j, e_c> = (C G^T)_{ac}
    np.testing.assert_allclose(ds.coefficients @ G.T, np.eye(len(pts)), atol=1e-10)
    np.testing.assert_allclose(pivoted_cholesky_inverse(G) @ G, np.eye(len(pts)), atol=1e-10)


def test_kernel_norm_p2_and_general():
    sp = Hardy(1)
    a = 0.5
    assert kernel_norm(sp, a) == pytest.approx(math.sqrt(kernel(sp, [a], [a]).real / 1), rel=1e-12)
    # K(., 0) is the constant 1/M, whose L^p norm is M^(1/p - 1)
    for q in (1.0, 1.5, 3.0):
        assert kernel_norm(sp, 0.0, q) == pytest.approx((2 * math.pi) ** (1 / q - 1), rel=1e-12)
    with pytest.raises(ArgumentError):
        kernel_norm(sp, a, 0.5)


def test_lift_sequence():
    seq = PointSequence([0.2, -0.4j], Bergman(1, 1))
    up = lift_sequence(seq, 2)
    assert up.space.dim == 3 and len(up) == 2
    assert np.all(up.points[:, 1:] == 0)


@pytest.mark.parametrize("n,k", [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)])
def test_correspondence(n, k):
    rng = np.random.Generator(np.random.Philox(key=[n, k]))
    g = rng.standard_normal((6, 2 * n))
    z = g[:, :n] + 1j * g[:, n:]
    z *= (rng.uniform(0.1, 0.9, 6) / np.linalg.norm(z, axis=1))[:, None]
    rep = correspondence_check(PointSequence(z, Bergman(n, k - 1)))
    assert rep["gram_max_abs_diff"] < 1e-12
    assert rep["dual_const_diff"] < 1e-12 * max(1.0, rep["dual_const"])
    assert rep["interp_const_diff"] < 1e-12 * max(1.0, rep["interp_const"])
    assert rep["kernel_norm_ratio_dev"] < 1e-12


def test_correspondence_rejects_hardy():
    with pytest.raises(ArgumentError):
        correspondence_check(PointSequence([0.1], Hardy(1)))


@given(st.lists(st.floats(-0.9, 0.9), min_size=2, max_size=5, unique=True))
def test_interp_constant_at_least_one(xs):
    xs = np.array(xs)
    if np.min(np.abs(xs[:, None] - xs[None, :]) + np.eye(len(xs))) < 0.05:
        return
    seq = PointSequence(xs, Hardy(1))
    assert interpolation_constant(seq) >= 1 - 1e-12
    assert dual_system(seq).constant >= 1 - 1e-12

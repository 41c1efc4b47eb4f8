import math

import numpy as np
import pytest

from subord_lab.blaschke import (ZeroSet, blaschke_pairing, class_separation, fiber_form_integral,
                                 lifted_zero_blaschke)
from subord_lab.errors import ArgumentError
from subord_lab.quadrature import QuadSpec
from subord_lab.spaces import volume_unit_ball


def test_zero_set_validation():
    with pytest.raises(ArgumentError):
        ZeroSet([0.1, 0.2], [1])
    with pytest.raises(ArgumentError):
        ZeroSet([1.0], [1])
    with pytest.raises(ArgumentError):
        ZeroSet([0.5], [0])
    assert len(ZeroSet.simple([0.1, 0.2j])) == 2


def test_pairing_examples():
    X = ZeroSet([0.5, 0.0], [2, 1])
    assert blaschke_pairing(X, 1) == pytest.approx(2 * 0.75 + 1)
    assert blaschke_pairing(X, 2, beta=lambda z: np.full(z.shape, 2.0)) == pytest.approx(2 * (2 * 0.75**2 + 1))
    with pytest.raises(ArgumentError):
        blaschke_pairing(X, 0)


@pytest.mark.parametrize("k", range(1, 7))
def test_fiber_closed_form(k):
    for t in (0.01, 0.5, 1.0):
        rep = fiber_form_integral(k, t)
        assert rep["value"] == pytest.approx(volume_unit_ball(k) * t**k * (2 * k + 1) / (k + 1), rel=1e-12)
        assert rep["within_bound"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fiber_mc_matches_closed(k):
    q = QuadSpec(seed=4, mc_samples=2**16)
    mc = fiber_form_integral(k, 0.3, quad=q, mode="mc")
    exact = fiber_form_integral(k, 0.3)["value"]
    assert mc["value"] == pytest.approx(exact, rel=1e-3)
    assert mc["within_bound"]


def test_fiber_mc_needs_quad():
    with pytest.raises(ArgumentError):
        fiber_form_integral(1, 0.5, mode="mc")
    with pytest.raises(ArgumentError):
        fiber_form_integral(1, 0.5, beta=lambda w: 1.0)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_lifted_ratio(k):
    rng = np.random.Generator(np.random.Philox(key=[7, k]))
    for _ in range(5):
        m = int(rng.integers(1, 30))
        z = np.sqrt(rng.uniform(0, 0.99, m)) * np.exp(2j * np.pi * rng.uniform(size=m))
        X = ZeroSet(z, rng.integers(1, 4, m))
        rep = lifted_zero_blaschke(X, k)
        assert rep["expected_ratio"] == pytest.approx(volume_unit_ball(k) / (k + 1))
        assert rep["rel_dev"] < 1e-12


def test_class_separation():
    rep = class_separation()
    assert rep[1]["verdict"] == "divergent"
    assert rep[2]["verdict"] == "convergent"
    # s = 1: each decade adds about 2 log 10
    assert rep[1]["increments"][-1] == pytest.approx(2 * math.log(10), rel=1e-2)
    assert rep[2]["partial_sums"][-1] < 4

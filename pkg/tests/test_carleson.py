import math

import numpy as np
import pytest

from subord_lab.carleson import (DiscreteMeasure, collar_grid, embedding_constant_estimate,
                                 geometric_bergman_carleson_constant, geometric_carleson_constant,
                                 geometric_constant, kernel_test_family, lift_equivalence_check,
                                 lift_measure, shortcut_constant)
from subord_lab.domain import unit_ball, unit_disc
from subord_lab.errors import ArgumentError, DomainError
from subord_lab.functions import Polynomial
from subord_lab.polydisc import PolydiscFamily
from subord_lab.quadrature import QuadSpec
from subord_lab.spaces import bergman_mass

Q = QuadSpec(seed=3, mc_samples=2**16)
DISC = PolydiscFamily(unit_disc())


def test_measure_validation():
    with pytest.raises(ArgumentError):
        DiscreteMeasure([0.1], [-1.0])
    with pytest.raises(ArgumentError):
        DiscreteMeasure([0.1, 0.2], [1.0])
    with pytest.raises(DomainError):
        geometric_carleson_constant(DiscreteMeasure([1.5], [1.0]), DISC)


def test_lift_measure():
    mu = DiscreteMeasure([0.1, 0.5j, -0.3], [1.0, 2.0, 0.5])
    lifted = lift_measure(mu, 2)
    assert len(lifted) == len(mu)
    assert lifted.total_mass == mu.total_mass
    assert np.all(lifted.points[:, 1:] == 0)


@pytest.mark.parametrize("dom,a0", [(unit_disc(), [0.9]), (unit_ball(2), [0.9, 0.0])])
@pytest.mark.parametrize("k", [1, 2])
def test_shortcut_single_atom(dom, a0, k):
    n = dom.complex_dim
    d = 1 - np.linalg.norm(a0)
    mu = DiscreteMeasure([a0], [d ** (n + k)])
    fam = PolydiscFamily(dom)
    assert shortcut_constant(mu, fam, k, centers=np.array([a0]))["constant"] == pytest.approx(1.0)
    c = shortcut_constant(mu, fam, k)["constant"]
    # a0 in P_a(2) forces delta(a0) <= delta(a) + 2|r(a)| <= 5 delta(a)
    assert 1.0 <= c <= 5.0 ** (n + k)


def test_shortcut_detects_heavy_atom():
    mu = DiscreteMeasure([1 - 1e-3], [1.0])
    assert shortcut_constant(mu, DISC, 1)["constant"] >= 1e6


def test_weighted_volume_is_bergman_carleson():
    consts = []
    for m in (8, 16, 32):
        rho = (np.arange(m) + 0.5) / m
        th = 2 * np.pi * np.arange(4 * m) / (4 * m)
        pts = (rho[:, None] * np.exp(1j * th)[None, :]).ravel()
        cell = (2 * np.pi / (4 * m)) * (1 / m) * np.repeat(rho, 4 * m)
        mu = DiscreteMeasure(pts, cell)
        consts.append(geometric_bergman_carleson_constant(mu, DISC, 1, quad=Q)["constant"])
    assert max(consts) < 10


def test_homogeneity_degree_one():
    mu = DiscreteMeasure([0.5, 0.95j], [0.1, 0.01])
    for variant in ("carleson", "bergman", "shortcut"):
        a = geometric_constant(mu, DISC, variant, 1, quad=Q)["constant"]
        b = geometric_constant(mu.scaled(7.5), DISC, variant, 1, quad=Q)["constant"]
        assert b == pytest.approx(7.5 * a, rel=1e-12)


def test_empty_centres_rejected():
    with pytest.raises(ArgumentError):
        geometric_carleson_constant(DiscreteMeasure([0.5], [1.0]), DISC, centers=np.zeros((0, 1)))


def test_collar_grid_inside():
    g = collar_grid(unit_ball(2), levels=5, n_dirs=16)
    assert g.shape == (80, 2)
    assert np.all(np.linalg.norm(g, axis=1) < 1)


def test_lift_equivalence_single_atom():
    mu = DiscreteMeasure([0.0], [1.0])
    rep = lift_equivalence_check(mu, 1, DISC, Q)
    assert np.isfinite(rep["base"]["constant"]) and np.isfinite(rep["lifted"]["constant"])
    assert 1 / 64 <= rep["ratio"] <= 64
    scaled = lift_equivalence_check(mu.scaled(3.0), 1, DISC, Q)
    assert scaled["ratio"] == pytest.approx(rep["ratio"], rel=1e-12)


def test_lift_equivalence_heavy_atom():
    rep = lift_equivalence_check(DiscreteMeasure([1 - 1e-3], [1.0]), 1, DISC, Q)
    assert not rep["base_carleson"] and not rep["lifted_carleson"] and rep["agree"]


def test_embedding_constant_atom_at_origin():
    mu = DiscreteMeasure([0.0], [1.0])
    rep = embedding_constant_estimate(mu, 2, 1, unit_disc(), [Polynomial.constant(1.0, 1)], quad=Q)
    # A_{k-1} with k = 1 is the unweighted space, so the quotient is 1 / m_0(D)
    assert rep["estimate"] == pytest.approx(1 / bergman_mass(1, 0), rel=1e-3)
    rep = embedding_constant_estimate(mu, 2, 2, unit_disc(), [Polynomial.constant(1.0, 1)], quad=Q)
    assert rep["estimate"] == pytest.approx(2 / math.pi**3, rel=1e-3)


def test_embedding_bounded_for_carleson_and_growing_otherwise():
    k = 1
    light = DiscreteMeasure([1 - 2.0**-j for j in range(1, 12)], [(2.0**-j) ** 2 for j in range(1, 12)])
    heavy = DiscreteMeasure([1 - 2.0**-j for j in range(1, 12)], [2.0**-j for j in range(1, 12)])
    e_light = embedding_constant_estimate(light, 2, k, unit_disc())["estimate"]
    e_heavy = embedding_constant_estimate(heavy, 2, k, unit_disc())["estimate"]
    g_light = geometric_bergman_carleson_constant(light, DISC, k, quad=Q)["constant"]
    assert e_light <= 10 * g_light
    assert e_heavy > 50 * e_light


def test_kernel_test_family_contents():
    mu = DiscreteMeasure([0.3, 0.5j], [1.0, 1.0])
    fam = kernel_test_family(mu, 1, 1, n_random=4)
    assert len(fam) == 1 + 2 + 4

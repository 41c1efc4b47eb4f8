import numpy as np
import pytest
from hypothesis import given, strategies as st

from subord_lab.domain import (
    boundary_distance, complex_ellipsoid, distance_equivalence_constants, eval_r, grad_norm, grad_r,
    in_collar, lift_domain, lift_point, normal_projection, parse_domain, restrict_point,
    sample_interior, unit_ball, unit_disc,
)
from subord_lab.errors import ArgumentError, DomainError

ELL = complex_ellipsoid((1, 2))


def test_eval_r_examples():
    assert eval_r(unit_ball(2), [0, 0]) == -1.0
    assert eval_r(lift_domain(unit_disc(), 1), [0.6, 0.5j]) == pytest.approx(-0.39, abs=1e-15)
    assert eval_r(ELL, [0, 1]) == 0.0


def test_eval_r_dimension_mismatch():
    with pytest.raises(ArgumentError):
        eval_r(unit_ball(2), [0.1, 0.2, 0.3])


def test_grad_examples():
    g = grad_r(unit_disc(), [0.5])
    np.testing.assert_allclose(g, [1.0, 0.0])
    assert grad_norm(unit_disc(), [0.5]) == pytest.approx(1.0)
    z = np.array([0.6, 0.8j])
    assert grad_norm(unit_ball(2), z) == pytest.approx(2.0)
    for rho in (0.3, 0.7, 0.95):
        assert grad_norm(ELL, [0, rho]) == pytest.approx(4 * rho**3, rel=1e-14)


def test_boundary_distance_examples():
    assert boundary_distance(unit_ball(2), [0.6, 0]) == pytest.approx(0.4)
    assert boundary_distance(unit_disc(), [0]) == 1.0
    assert boundary_distance(lift_domain(unit_disc(), 1), [0.6, 0]) == pytest.approx(0.4)
    with pytest.raises(DomainError):
        boundary_distance(unit_disc(), [1.0])


def test_ellipsoid_distance_against_axis():
    # along the second axis the nearest boundary point of |z1|^2+|z2|^4<1 is (0, 1)
    assert boundary_distance(ELL, [0, 0.9]) == pytest.approx(0.1, abs=1e-10)


def test_lift_domain_examples():
    assert lift_domain(unit_disc(), 2) == unit_ball(3)
    assert lift_domain(unit_ball(2), 1) == unit_ball(3)
    L = lift_domain(ELL, 1)
    assert tuple(L.exponents) == (1, 2, 1) and L.complex_dim == 3
    assert not L.is_ball


def test_ellipsoid_all_ones_is_ball():
    assert complex_ellipsoid((1, 1)).is_ball
    assert boundary_distance(complex_ellipsoid((1, 1)), [0.3, 0.4]) == pytest.approx(0.5)


def test_lift_restrict_points():
    np.testing.assert_array_equal(lift_point([0.3 + 0.1j], 1), [0.3 + 0.1j, 0])
    np.testing.assert_array_equal(restrict_point([0.3, 0], 1), [0.3])
    with pytest.raises(ArgumentError):
        restrict_point([0.3, 0.1], 1)


def test_normal_projection_examples():
    np.testing.assert_allclose(normal_projection(unit_disc(), [0.5]), [1.0])
    np.testing.assert_allclose(normal_projection(unit_ball(2), [0.3, 0.4]), [0.6, 0.8])
    p = normal_projection(ELL, [0, 0.9])
    np.testing.assert_allclose(p, [0, 1.0], atol=1e-10)
    assert abs(eval_r(ELL, p)) < 1e-10
    with pytest.raises(DomainError):
        normal_projection(unit_ball(2), [0, 0])


@pytest.mark.parametrize("text,dim", [("disc", 1), ("ball:2", 2), ("ellipsoid:2:1,2", 2),
                                      ("lift(ball:1,2)", 3), ("lift(lift(disc,1),1)", 3)])
def test_parse_domain(text, dim):
    d = parse_domain(text)
    assert d.complex_dim == dim
    assert parse_domain(d.descriptor) == d


@pytest.mark.parametrize("text", ["", "ball", "ball:x", "ellipsoid:2:1", "lift(ball:1)", "cube:2"])
def test_parse_domain_rejects(text):
    with pytest.raises(ArgumentError):
        parse_domain(text)


@pytest.mark.parametrize("dom", [unit_disc(), unit_ball(3), ELL, complex_ellipsoid((1, 3, 2))])
def test_distance_equivalence(dom):
    c1, c2 = distance_equivalence_constants(dom, 10_000, seed=1)
    assert 0 < c1 <= c2 < np.inf


def test_grad_nonvanishing_on_boundary(rng):
    for dom in (unit_ball(2), ELL):
        z = sample_interior(dom, 500, rng)
        b = normal_projection(dom, z[np.linalg.norm(z, axis=1) > 0.1])
        assert np.all(np.asarray(grad_norm(dom, b)) > 1e-9)


def test_lift_associativity(rng):
    z = sample_interior(unit_ball(5), 200, rng)
    for base in (unit_disc(), ELL):
        a = lift_domain(lift_domain(base, 1), 2)
        b = lift_domain(base, 3)
        pts = z[:, : a.complex_dim] if a.complex_dim <= 5 else None
        np.testing.assert_array_equal(eval_r(a, pts), eval_r(b, pts))


@given(st.floats(-0.7, 0.7), st.floats(-0.7, 0.7))
def test_lift_then_r_matches_base(x, y):
    z = np.array([complex(x, y)])
    assert eval_r(lift_domain(unit_disc(), 2), lift_point(z, 2)) == eval_r(unit_disc(), z)


def test_sample_interior_deterministic_and_inside():
    a = sample_interior(ELL, 100, np.random.Generator(np.random.Philox(key=[5, 0])))
    b = sample_interior(ELL, 100, np.random.Generator(np.random.Philox(key=[5, 0])))
    np.testing.assert_array_equal(a, b)
    assert np.all(np.asarray(eval_r(ELL, a)) < 0)


def test_collar():
    assert in_collar(unit_disc(), [0.9])
    assert not in_collar(unit_disc(), [0.5])

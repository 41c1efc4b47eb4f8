"""Atomic measures and geometric Carleson constants.

A constant is the largest ratio mu(P_a(2)) / window(a) over a finite set of
centres a, where window(a) is the boundary measure of P_a(2) (Carleson),
its m_{k-1} volume (Bergman-Carleson) or delta(a)^(n+k) (shortcut for
strictly pseudoconvex domains).  The default centres are the atoms
themselves plus a dyadic grid in the boundary collar.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import Domain, _r, as_points, boundary_distance, lift_domain, lift_point
from .errors import ArgumentError, DomainError, SingularityError
from .functions import KernelPower
from .measures import bergman_norm, level_radius
from .polydisc import PolydiscFamily, window_surface_measure, window_weighted_volume
from .quadrature import Estimate, QuadSpec, sphere_points
from .spaces import Bergman

VARIANTS = ("carleson", "bergman", "shortcut")
DEFAULT_THRESHOLD = 1e3


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finite positive measure sum_i mass_i delta_{point_i}."""

    points: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim == 1:
            pts = pts[:, None]
        m = np.asarray(self.masses, dtype=float).ravel()
        if pts.shape[0] != m.size or m.size == 0:
            raise ArgumentError("need one positive mass per atom and at least one atom")
        if not (np.all(np.isfinite(m)) and np.all(m > 0)):
            raise ArgumentError("masses must be positive and finite")
        if not np.all(np.isfinite(pts)):
            raise ArgumentError("atom coordinates must be finite")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "masses", m)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def __len__(self):
        return self.masses.size

    def scaled(self, factor: float) -> DiscreteMeasure:
        if factor <= 0:
            raise ArgumentError("scale factor must be positive")
        return DiscreteMeasure(self.points, self.masses * factor)

    def mass_in(self, window) -> float:
        return float(np.sum(self.masses[window.contains(self.points)]))

    def require_interior(self, domain: Domain) -> None:
        as_points(domain, self.points)
        if np.any(_r(domain.exps, self.points) >= 0):
            raise DomainError("atoms must lie inside the domain")


def lift_measure(mu: DiscreteMeasure, k: int = 1) -> DiscreteMeasure:
    """mu (x) delta_0: atoms (z, 0) with unchanged masses."""
    if k < 1:
        raise ArgumentError("k must be >= 1")
    return DiscreteMeasure(lift_point(mu.points, k), mu.masses.copy())


def collar_grid(domain: Domain, levels: int = 10, n_dirs: int = 64, seed: int = 0) -> np.ndarray:
    """Centres at relative depths 2^-2, ..., 2^-(levels+1) along fixed directions."""
    N = domain.complex_dim
    if N == 1:
        u = np.exp(2j * np.pi * np.arange(n_dirs) / n_dirs)[:, None]
    else:
        u = np.array(sphere_points(N, n_dirs, seed, 0))
    R = level_radius(domain, u, 0.0)
    depths = 2.0 ** -np.arange(2, levels + 2)
    return np.concatenate([(R * (1 - d))[:, None] * u for d in depths])


def _slice_perturbations(base_points: np.ndarray, base: Domain, k: int,
                         factors=(0.5, 0.9)) -> np.ndarray:
    depth = np.sqrt(np.maximum(-_r(base.exps, base_points), 0.0))
    out = [lift_point(base_points, k)]
    for s in factors:
        p = lift_point(base_points, k)
        p[:, base.complex_dim] = s * depth
        out.append(p)
    return np.concatenate(out)


def default_centers(mu: DiscreteMeasure, domain: Domain, levels: int = 10, n_dirs: int = 64) -> np.ndarray:
    return np.concatenate([mu.points, collar_grid(domain, levels, n_dirs)])


def _window_measure(variant: str, family: PolydiscFamily, P, a, k, quad, stream):
    dom = family.domain
    if variant == "carleson":
        return window_surface_measure(dom, window=P, quad=quad, stream=stream)
    if variant == "bergman":
        return window_weighted_volume(dom, k, window=P, quad=quad, stream=stream)
    delta = float(boundary_distance(dom, a))
    return Estimate(delta ** (dom.complex_dim + k), 0.0, 0, [], {"method": "shortcut"})


def geometric_constant(mu: DiscreteMeasure, family: PolydiscFamily, variant: str = "carleson",
                       k: int = 1, centers=None, quad: QuadSpec | None = None, t: float = 2.0) -> dict:
    """sup over centres of mu(P_a(t)) / window(a) for the chosen variant."""
    if variant not in VARIANTS:
        raise ArgumentError(f"variant must be one of {VARIANTS}")
    dom = family.domain
    mu.require_interior(dom)
    centers = default_centers(mu, dom) if centers is None else as_points(dom, centers)
    centers = np.asarray(centers).reshape(-1, dom.complex_dim)
    if centers.shape[0] == 0:
        raise ArgumentError("empty centre set")
    quad = quad or QuadSpec(seed=0, mc_samples=2**16)
    best, best_a, flags, rows = -np.inf, None, set(), []
    for i, (a, P) in enumerate(zip(centers, family.polydiscs(centers, t))):
        mass = mu.mass_in(P)
        if mass == 0:
            continue
        est = _window_measure(variant, family, P, a, k, quad, i)
        flags.update(est.flags)
        if est.value <= 0:
            flags.add("empty_window")
            continue
        ratio = mass / est.value
        rows.append({"center": a, "mass": mass, "window": est.value, "ratio": ratio})
        if ratio > best:
            best, best_a = ratio, a
    return {"variant": variant, "k": k, "constant": float(best) if rows else 0.0,
            "worst_center": best_a, "n_centers": int(centers.shape[0]),
            "n_charged": len(rows), "flags": sorted(flags), "rows": rows}


def geometric_carleson_constant(mu, family, centers=None, quad=None) -> dict:
    return geometric_constant(mu, family, "carleson", 1, centers, quad)


def geometric_bergman_carleson_constant(mu, family, k: int, centers=None, quad=None) -> dict:
    return geometric_constant(mu, family, "bergman", k, centers, quad)


def shortcut_constant(mu, family, k: int, centers=None) -> dict:
    return geometric_constant(mu, family, "shortcut", k, centers)


def lift_equivalence_check(mu: DiscreteMeasure, k: int, base_family: PolydiscFamily | None = None,
                           quad: QuadSpec | None = None, centers=None,
                           threshold: float = DEFAULT_THRESHOLD) -> dict:
    """Bergman-Carleson constant of mu on the base against the Carleson
    constant of its lift on the lifted domain."""
    if base_family is None:
        raise ArgumentError("a polydisc family on the base domain is required")
    base = base_family.domain
    lifted = PolydiscFamily(lift_domain(base, k), base_family.rule, base_family.delta0,
                            base_family.collar)
    base_centers = default_centers(mu, base) if centers is None else as_points(base, centers)
    base_centers = np.asarray(base_centers).reshape(-1, base.complex_dim)
    lifted_centers = _slice_perturbations(base_centers, base, k)
    lifted_centers = lifted_centers[_r(lifted.domain.exps, lifted_centers) < 0]
    b = geometric_bergman_carleson_constant(mu, base_family, k, base_centers, quad)
    c = geometric_carleson_constant(lift_measure(mu, k), lifted, lifted_centers, quad)
    ratio = c["constant"] / b["constant"] if b["constant"] > 0 else float("nan")
    return {"k": k, "base": b, "lifted": c, "ratio": ratio,
            "base_carleson": b["constant"] <= threshold,
            "lifted_carleson": c["constant"] <= threshold,
            "agree": (b["constant"] <= threshold) == (c["constant"] <= threshold),
            "threshold": threshold, "flags": sorted(set(b["flags"]) | set(c["flags"]))}


def kernel_test_family(mu: DiscreteMeasure, n: int, k: int, n_random: int = 16, seed: int = 0,
                       powers=(1.0,)):
    """Constant 1 and kernel powers (1 - <z, a>)^(-s (n+k)) at atoms and seeded points."""
    from .kernels import random_ball_pairs

    anchors = [np.asarray(p) for p in mu.points]
    anchors += [z for z, _ in random_ball_pairs(n, n_random, seed, 0.99)]
    fam = [KernelPower(np.zeros(n), 0.0)]
    for a in anchors:
        for s in powers:
            fam.append(KernelPower(a, s * (n + k)))
    return fam


def embedding_constant_estimate(mu: DiscreteMeasure, p: float, k: int, domain: Domain,
                                test_family=None, quad: QuadSpec | None = None) -> dict:
    """max over test functions of int |f|^p dmu / ||f||^p_{A^p_{k-1}} (a lower bound)."""
    if k < 1 or p < 1:
        raise ArgumentError("need k >= 1 and p >= 1")
    mu.require_interior(domain)
    n = domain.complex_dim
    if test_family is None:
        if not domain.is_ball:
            raise ArgumentError("default kernel test family needs a ball")
        test_family = kernel_test_family(mu, n, k)
    if not test_family:
        raise ArgumentError("empty test family")
    space = Bergman(n, k - 1)
    best, best_f, notices = -np.inf, None, []
    for f in test_family:
        try:
            num = float(np.sum(mu.masses * np.abs(f(mu.points)) ** p))
            if isinstance(f, KernelPower) and domain.is_ball:
                norm_p = f.norm_p(space, p) ** p
            else:
                if quad is None:
                    raise ArgumentError("quadrature norms need a QuadSpec")
                norm_p = bergman_norm(f, p, k - 1, domain, quad).value ** p
        except (SingularityError, ArgumentError, FloatingPointError) as exc:
            notices.append(f"{f.descriptor}: {exc}")
            continue
        ratio = num / norm_p
        if ratio > best:
            best, best_f = ratio, f.descriptor
    return {"estimate": float(best), "argmax": best_f, "p": p, "k": k,
            "n_functions": len(test_family), "notices": notices}

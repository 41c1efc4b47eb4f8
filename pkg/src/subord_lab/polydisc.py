"""Boundary-adapted polydiscs, good-family and homogeneity checks, window measures.

A window P_a(t) is the polydisc centred at a with orthonormal frame
(L_1, ..., L_N) and radii t |r(a)|^(1/m_j).  Near the boundary L_1 is the
complex normal at the normal projection of a; deeper inside the frame is the
coordinate frame with radii t delta(a) and t delta(a)^(1/2).

Window measures on the ball use a semi-analytic formula in the normal frame:
with y the tangential coordinates, the sphere fibres over |y| < 1 as circles
and d sigma = d theta dm(y), so only the angular measure of each circle
inside the first disc needs integrating.  Other windows fall back on Monte
Carlo in the polydisc.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .domain import (COLLAR_FRACTION, Domain, _cgrad, _r, as_points, boundary_distance,
                     complex_ellipsoid, lift_domain, normal_projection, sample_interior)
from .errors import ArgumentError, DomainError
from .quadrature import Estimate, QuadSpec, gauss_legendre, philox, replicate_stats
from .spaces import volume_unit_ball

RULES = ("minimal", "mcneal")
MIN_HITS = 200
_GL_NODES = 40


@dataclass(frozen=True, eq=False)
class Polydisc:
    """Polydisc {center + sum zeta_j L_j : |zeta_j| < R_j}; frame columns are L_j."""

    center: np.ndarray
    frame: np.ndarray
    radii: np.ndarray
    multitype: tuple = ()
    normal_frame: bool = False

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def volume(self) -> float:
        return float(np.prod(math.pi * self.radii**2))

    def coords(self, x) -> np.ndarray:
        """Frame coordinates zeta_j = <x - center, L_j>."""
        x = np.asarray(x, dtype=complex)
        return (x - self.center) @ self.frame.conj()

    def contains(self, x) -> np.ndarray:
        return np.all(np.abs(self.coords(x)) < self.radii, axis=-1)

    def point(self, zeta) -> np.ndarray:
        return self.center + np.asarray(zeta, dtype=complex) @ self.frame.T

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform points of the polydisc."""
        rad = self.radii * np.sqrt(rng.random((n, self.dim)))
        ang = np.exp(2j * np.pi * rng.random((n, self.dim)))
        return self.point(rad * ang)

    def torus(self, per_axis: int) -> np.ndarray:
        """Grid on the distinguished boundary |zeta_j| = R_j."""
        th = np.exp(2j * np.pi * np.arange(per_axis) / per_axis)
        grid = np.array(list(itertools.product(th, repeat=self.dim)))
        return self.point(grid * self.radii)

    def within(self, other: Polydisc) -> bool:
        """Exact containment self (closure) inside other (closure)."""
        shift = np.abs(other.coords(self.center))
        mix = np.abs(self.frame.T @ other.frame.conj())  # |<L_i^self, L_j^other>|
        reach = shift + self.radii @ mix
        return bool(np.all(reach <= other.radii * (1 + 1e-12)))


def polydisc_in_ball(P: Polydisc) -> bool:
    """Closure of P inside the closed unit ball: sum (|<a, L_j>| + R_j)^2 <= 1."""
    c = np.abs(P.center @ P.frame.conj())
    return bool(np.sum((c + P.radii) ** 2) <= 1.0 + 1e-14)


def _complement(L1: np.ndarray, exps: np.ndarray):
    """Gram-Schmidt completion of L1 with coordinate axes; returns frame, used axes."""
    N = L1.size
    drop = int(np.argmax(np.abs(L1)))
    cols, axes = [L1], []
    for i in range(N):
        if i == drop:
            continue
        v = np.zeros(N, dtype=complex)
        v[i] = 1.0
        for c in cols:
            v = v - np.vdot(c, v) * c
        v /= np.linalg.norm(v)
        cols.append(v)
        axes.append(i)
    return np.stack(cols, axis=1), axes


@dataclass(frozen=True, eq=False)
class PolydiscFamily:
    """The assignment a -> P_a(t) on a model domain.

    ``rule='minimal'`` uses multitype (1, 2, ..., 2); ``rule='mcneal'`` gives
    the tangent direction generated from axis i the multitype 2 m_i.
    """

    domain: Domain
    rule: str = "minimal"
    delta0: float = 0.2
    collar: float = COLLAR_FRACTION
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.rule not in RULES:
            raise ArgumentError(f"rule must be one of {RULES}")
        if self.delta0 <= 0:
            raise ArgumentError("delta0 must be positive")

    @property
    def max_multitype(self) -> int:
        return 2 if self.rule == "minimal" else int(2 * self.domain.exps.max())

    def polydiscs(self, a, t: float) -> list[Polydisc]:
        """P_a(t) for a batch of interior points a (shape (M, N))."""
        if t <= 0:
            raise ArgumentError("t must be positive")
        dom = self.domain
        a = as_points(dom, a).reshape(-1, dom.complex_dim)
        r = _r(dom.exps, a)
        if np.any(r >= 0):
            raise DomainError("polydisc centres must be interior points")
        delta = np.atleast_1d(boundary_distance(dom, a))
        near = delta < self.collar * dom.inradius
        out: list[Polydisc | None] = [None] * len(a)
        N = dom.complex_dim
        if np.any(near):
            feet = normal_projection(dom, a[near])
            feet = feet.reshape(-1, N)
            for idx, foot in zip(np.flatnonzero(near), feet):
                g = _cgrad(dom.exps, foot)
                L1 = g / np.linalg.norm(g)
                frame, axes = _complement(L1, dom.exps)
                if self.rule == "minimal":
                    m = (1,) + (2,) * (N - 1)
                else:
                    m = (1,) + tuple(int(2 * dom.exps[i]) for i in axes)
                radii = t * np.abs(r[idx]) ** (1.0 / np.array(m, dtype=float))
                out[idx] = Polydisc(a[idx].copy(), frame, radii, m, True)
        eye = np.eye(N, dtype=complex)
        for idx in np.flatnonzero(~near):
            m = (1,) + (2,) * (N - 1)
            radii = t * np.array([delta[idx]] + [math.sqrt(delta[idx])] * (N - 1))
            out[idx] = Polydisc(a[idx].copy(), eye, radii, m, False)
        return out

    def polydisc(self, a, t: float) -> Polydisc:
        return self.polydiscs(a, t)[0]


def polydisc(family: PolydiscFamily, a, t: float) -> Polydisc:
    return family.polydisc(a, t)


def polydisc_in_domain(P: Polydisc, domain: Domain, per_axis: int | None = None) -> tuple[bool, float]:
    """Containment of P in the domain and the largest r over its closure.

    Exact for balls.  Otherwise r is convex, so its maximum over the closed
    polydisc sits on the distinguished boundary, which is checked on a grid.
    """
    if domain.is_ball:
        c = np.abs(P.center @ P.frame.conj())
        excess = float(np.sum((c + P.radii) ** 2) - 1.0)
        return excess < 0, excess
    if per_axis is None:
        per_axis = max(8, int(round(4096 ** (1.0 / P.dim))))
    excess = float(np.max(_r(domain.exps, P.torus(per_axis))))
    return excess < 0, excess


def good_family_check(family: PolydiscFamily, delta0: float | None = None,
                      n_samples: int = 10_000, seed: int = 0) -> dict:
    """Test P_a(delta0) inside the domain at seeded interior points."""
    delta0 = family.delta0 if delta0 is None else float(delta0)
    if delta0 <= 0:
        raise ArgumentError("delta0 must be positive")
    dom = family.domain
    pts = sample_interior(dom, n_samples, philox(seed, 0x600D))
    worst, worst_pt, first_bad, n_bad = -np.inf, None, None, 0
    for a, P in zip(pts, family.polydiscs(pts, delta0)):
        ok, excess = polydisc_in_domain(P, dom)
        if excess > worst:
            worst, worst_pt = excess, a
        if not ok:
            n_bad += 1
            if first_bad is None:
                first_bad = a
    return {"ok": n_bad == 0, "delta0": delta0, "n_samples": int(n_samples),
            "violations": n_bad, "first_violation": first_bad,
            "worst_point": worst_pt, "worst_excess": float(worst)}


# ----------------------------------------------------------------------------
# window measures


def _graded_rule(breaks, n: int = _GL_NODES):
    """Composite Gauss-Legendre with a smoothstep map on each piece.

    The map has zero derivative at both ends of every piece, which tames the
    square-root behaviour of arccos where a circle becomes tangent to a disc.
    """
    breaks = np.unique(np.asarray(breaks, dtype=float))
    s, w = gauss_legendre(n)
    xs, ws = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= 0:
            continue
        xs.append(a + (b - a) * (3 * s**2 - 2 * s**3))
        ws.append((b - a) * 6 * s * (1 - s) * w)
    if not xs:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(xs), np.concatenate(ws)


def _arc(rho, A: float, R1: float):
    """Angular measure of {theta : |rho e^(i theta) - A| < R1}."""
    rho = np.asarray(rho, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = (rho**2 + A**2 - R1**2) / (2 * rho * A)
    c = np.where(rho > 0, c, np.where(A < R1, -np.inf, np.inf))
    return 2.0 * np.arccos(np.clip(c, -1.0, 1.0))


def _tail_density(x, widths):
    """Density of sum of independent uniforms on [0, w_j] times prod w_j."""
    d = len(widths)
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for J in itertools.product((0, 1), repeat=d):
        shift = sum(w for w, j in zip(widths, J) if j)
        sign = -1.0 if sum(J) % 2 else 1.0
        y = x - shift
        term = np.where(y > 0, np.maximum(y, 0) ** (d - 1), 0.0) if d > 1 else (y > 0).astype(float)
        out += sign * term
    return out / math.factorial(d - 1)


def _tail_breaks(widths, upper: float):
    pts = {0.0, upper}
    for J in itertools.product((0, 1), repeat=len(widths)):
        s = sum(w for w, j in zip(widths, J) if j)
        if 0 < s < upper:
            pts.add(s)
    return sorted(pts)


def _arc_breaks(A: float, R1: float, upper_rho: float):
    return sorted({0.0, upper_rho} | {v for v in (abs(A - R1), A + R1) if 0 < v < upper_rho})


def _ball_window_surface(P: Polydisc) -> float:
    A = float(np.linalg.norm(P.center))
    R1 = float(P.radii[0])
    d = P.dim - 1
    if d == 0:
        return float(_arc(1.0, A, R1))
    widths = [float(R) ** 2 for R in P.radii[1:]]
    upper = min(1.0, sum(widths))
    brk = set(_tail_breaks(widths, upper))
    brk |= {1.0 - v**2 for v in _arc_breaks(A, R1, 1.0) if 0 < 1.0 - v**2 < upper}
    x, w = _graded_rule(sorted(brk))
    vals = _arc(np.sqrt(np.clip(1.0 - x, 0, None)), A, R1) * _tail_density(x, widths)
    return float(math.pi**d * np.dot(vals, w))


def _weight(k: int, s):
    """dm_k / dm as a function of s = -r."""
    if k == 0:
        return np.ones_like(s)
    return (k + 1) * volume_unit_ball(k + 1) * np.clip(s, 0, None) ** k


def _inner_volume(rho: float, A: float, R1: float, k: int) -> float:
    """int_0^rho weight(rho^2 - u^2) arc(u) u du."""
    u, w = _graded_rule(_arc_breaks(A, R1, rho))
    return float(np.dot(_weight(k, rho**2 - u**2) * _arc(u, A, R1) * u, w))


def _ball_window_volume(P: Polydisc, k: int) -> float:
    A = float(np.linalg.norm(P.center))
    R1 = float(P.radii[0])
    d = P.dim - 1
    if d == 0:
        return _inner_volume(1.0, A, R1, k)
    widths = [float(R) ** 2 for R in P.radii[1:]]
    upper = min(1.0, sum(widths))
    brk = set(_tail_breaks(widths, upper))
    brk |= {1.0 - v**2 for v in _arc_breaks(A, R1, 1.0) if 0 < 1.0 - v**2 < upper}
    x, w = _graded_rule(sorted(brk))
    inner = np.array([_inner_volume(math.sqrt(max(1.0 - xi, 0.0)), A, R1, k) for xi in x])
    return float(math.pi**d * np.dot(inner * _tail_density(x, widths), w))


def _semi_analytic(P: Polydisc, domain: Domain) -> bool:
    if not (domain.is_ball and P.normal_frame):
        return False
    a = P.center
    na = np.linalg.norm(a)
    return na > 0 and abs(abs(np.vdot(P.frame[:, 0], a)) - na) < 1e-12 * max(na, 1.0)


def _mc_rng(quad: QuadSpec, stream: int):
    return philox(quad.seed, (0xC0FFEE << 20) + stream)


def _star_window(domain: Domain, window: Polydisc, quad: QuadSpec, k: int | None) -> Estimate:
    """Large windows: integrate the indicator of P over the whole boundary / domain."""
    from .measures import level_set_integral, volume_integral

    def indicator(x):
        return window.contains(x).astype(float)

    if k is None:
        est = level_set_integral(domain, indicator, 0.0, quad)
        total = est.details["area"]
    else:
        est = volume_integral(domain, indicator, quad, k - 1)
        total = volume_integral(domain, lambda x: np.ones(x.shape[:-1]), quad, k - 1).value
    hits = int(round(est.n_evals * est.value / total)) if total > 0 else 0
    flags = [f for f in est.flags if f != "rel_tol_not_met"]
    if hits < MIN_HITS:
        flags.append("inconclusive_low_hits")
    return Estimate(est.value, est.stderr, est.n_evals, flags,
                    {"method": "boundary-parametrisation" if k is None else "star-volume",
                     "hits": hits})


def _resolve(domain, a, t, family, window):
    if window is None:
        family = family or PolydiscFamily(domain)
        window = family.polydisc(a, t)
    return window


def window_surface_measure(domain: Domain, a=None, quad: QuadSpec | None = None, t: float = 2.0,
                           family: PolydiscFamily | None = None, window: Polydisc | None = None,
                           stream: int = 0) -> Estimate:
    """Surface measure of the boundary inside the window P_a(t)."""
    window = _resolve(domain, a, t, family, window)
    if _semi_analytic(window, domain):
        return Estimate(_ball_window_surface(window), 0.0, 0, [], {"method": "semi-analytic"})
    if quad is None:
        raise ArgumentError("a QuadSpec is required for Monte Carlo windows")
    if not window.normal_frame:
        return _star_window(domain, window, quad, None)
    # small collar window: shells {-eta <= r < 0} sampled inside P, Richardson in eta
    exps = domain.exps
    g0 = 2.0 * np.linalg.norm(_cgrad(exps, normal_projection(domain, window.center)))
    eta = 0.05 * float(window.radii[0]) * float(g0)
    n_rep = quad.replicates
    per = max(quad.mc_samples // n_rep, 1000)
    rng = _mc_rng(quad, stream)
    reps, hits = [], 0
    for _ in range(n_rep):
        x = window.sample(per, rng)
        r = _r(exps, x)
        grad = 2.0 * np.linalg.norm(_cgrad(exps, x), axis=-1)
        s1 = (r >= -eta) & (r < 0)
        s2 = (r >= -eta / 2) & (r < 0)
        hits += int(np.count_nonzero(s2))
        m1 = window.volume * float(np.mean(grad * s1)) / eta
        m2 = window.volume * float(np.mean(grad * s2)) / (eta / 2)
        reps.append(2 * m2 - m1)
    value, err = replicate_stats(reps)
    flags = [] if hits >= MIN_HITS else ["inconclusive_low_hits"]
    return Estimate(max(value, 0.0), err, n_rep * per, flags,
                    {"method": "shell-monte-carlo", "hits": hits, "eta": eta})


def window_weighted_volume(domain: Domain, k: int, a=None, quad: QuadSpec | None = None, t: float = 2.0,
                           family: PolydiscFamily | None = None, window: Polydisc | None = None,
                           stream: int = 0) -> Estimate:
    """m_{k-1} measure of domain & P_a(t) (k is the lift dimension, k >= 1)."""
    if k < 1:
        raise ArgumentError("k must be >= 1")
    window = _resolve(domain, a, t, family, window)
    if _semi_analytic(window, domain):
        return Estimate(_ball_window_volume(window, k - 1), 0.0, 0, [], {"method": "semi-analytic"})
    if quad is None:
        raise ArgumentError("a QuadSpec is required for Monte Carlo windows")
    if not window.normal_frame:
        return _star_window(domain, window, quad, k)
    exps = domain.exps
    n_rep = quad.replicates
    per = max(quad.mc_samples // n_rep, 1000)
    rng = _mc_rng(quad, stream)
    reps, hits = [], 0
    for _ in range(n_rep):
        x = window.sample(per, rng)
        r = _r(exps, x)
        inside = r < 0
        hits += int(np.count_nonzero(inside))
        reps.append(window.volume * float(np.mean(np.where(inside, _weight(k - 1, -r), 0.0))))
    value, err = replicate_stats(reps)
    flags = [] if hits >= MIN_HITS else ["inconclusive_low_hits"]
    return Estimate(value, err, n_rep * per, flags, {"method": "monte-carlo", "hits": hits})


# ----------------------------------------------------------------------------
# homogeneity hypothesis on lifted domains


def _slice_centres(base: Domain, k: int, n: int, seed: int):
    """Points (z, w) of the lifted domain whose radius-2 windows meet w = 0."""
    rng = philox(seed, 0x4867)
    z = sample_interior(base, n, rng)
    depth = -_r(base.exps, z)
    g = rng.standard_normal((n, 2 * k))
    v = g[:, 0::2] + 1j * g[:, 1::2]
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    s = rng.random(n)
    w = (s * np.sqrt(depth))[:, None] * v
    return np.concatenate([z, w], axis=1)


def hg_check(lift_family: PolydiscFamily, t_candidate: float, n_samples: int = 1000,
             seed: int = 0, fiber_dim: int = 1, quad: QuadSpec | None = None) -> dict:
    """Check P~_b(t) contains P~_a(2) for a slice point b, and the window-measure ratio.

    Samples a of the lifted domain whose window P~_a(2) contains the slice
    point (z, 0); that point is taken as b.  Reports the fraction of
    containments and the largest surface-measure ratio among them.
    """
    dom = lift_family.domain
    N = dom.complex_dim
    k = int(fiber_dim)
    if not 1 <= k < N:
        raise ArgumentError("fiber_dim must be between 1 and the dimension - 1")
    base_exps = dom.exps[: N - k]
    if np.any(dom.exps[N - k:] != 1):
        raise ArgumentError("family domain is not a lift with the given fibre dimension")
    base = complex_ellipsoid(base_exps)
    quad = quad or QuadSpec(seed=seed, mc_samples=2**16)
    pts = _slice_centres(base, k, n_samples, seed)
    n_valid, n_ok, ratios, worst = 0, 0, [], None
    flags = []
    wins = lift_family.polydiscs(pts, 2.0)
    for a, Pa in zip(pts, wins):
        b = a.copy()
        b[N - k:] = 0
        if not Pa.contains(b):
            continue
        n_valid += 1
        Pb = lift_family.polydisc(b, t_candidate)
        if not Pa.within(Pb):
            continue
        n_ok += 1
        sa = window_surface_measure(dom, window=Pa, quad=quad, stream=n_valid)
        sb = window_surface_measure(dom, window=Pb, quad=quad, stream=n_valid + (1 << 30))
        flags.extend(sa.flags + sb.flags)
        if sa.value > 0:
            ratio = sb.value / sa.value
            if not ratios or ratio > max(ratios):
                worst = a
            ratios.append(ratio)
    if n_valid == 0:
        flags.append("inconclusive_no_valid_samples")
    return {"t": float(t_candidate), "n_samples": int(n_samples), "n_valid": n_valid,
            "ok_fraction": n_ok / n_valid if n_valid else 0.0,
            "C_hat": max(ratios) if ratios else float("nan"),
            "worst_point": worst, "flags": sorted(set(flags))}


def hg_scan(lift_family: PolydiscFamily, ts, n_samples: int = 1000, seed: int = 0,
            fiber_dim: int = 1, quad: QuadSpec | None = None) -> dict:
    """Run :func:`hg_check` over candidate t values; report the smallest fully passing one."""
    reports = [hg_check(lift_family, t, n_samples, seed, fiber_dim, quad) for t in sorted(ts)]
    passing = [r["t"] for r in reports if r["n_valid"] and r["ok_fraction"] == 1.0]
    return {"reports": reports, "smallest_passing_t": passing[0] if passing else None}


def lifted_family(family: PolydiscFamily, k: int) -> PolydiscFamily:
    return PolydiscFamily(lift_domain(family.domain, k), family.rule, family.delta0, family.collar)

"""Blaschke-type sums for zero sets in the disc and their lifts.

For a zero set X in the disc the pairing with a weight (-r)^s reduces to
the atomic sum  sum_j mult_j (1 - |a_j|^2)^s beta(a_j)  (the normalising
constant of the integration current is set to 1).  Lifting u(z, w) = u(z)
to the ball of C^(1+k) turns each zero a into the fibre disc
{|w|^2 < 1 - |a|^2}, over which the weight integrates to
v_k (1 - |a|^2)^(k+1) / (k+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .quadrature import QuadSpec, gauss_legendre, replicate_stats, sphere_points, tree_sum
from .spaces import volume_unit_ball


@dataclass(frozen=True, eq=False)
class ZeroSet:
    points: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        mult = np.asarray(self.multiplicities).ravel()
        if pts.size != mult.size:
            raise ArgumentError("one multiplicity per zero required")
        if np.any(np.abs(pts) >= 1):
            raise ArgumentError("zeros must lie in the open unit disc")
        if np.any(mult < 1) or np.any(mult != np.round(mult)):
            raise ArgumentError("multiplicities must be positive integers")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "multiplicities", mult.astype(int))

    @classmethod
    def simple(cls, points) -> ZeroSet:
        pts = np.asarray(points, dtype=complex).ravel()
        return cls(pts, np.ones(pts.size, dtype=int))

    def __len__(self):
        return self.points.size


def blaschke_pairing(X: ZeroSet, s: float, beta=None) -> float:
    """sum_j mult_j (1 - |a_j|^2)^s beta(a_j)."""
    if s <= 0:
        raise ArgumentError("exponent s must be positive")
    w = (1.0 - np.abs(X.points) ** 2) ** s * X.multiplicities
    if beta is not None:
        w = w * np.asarray(beta(X.points), dtype=float)
    return tree_sum(w)


def fiber_form_integral(k: int, t: float, beta=None, quad: QuadSpec | None = None,
                        mode: str = "closed") -> dict:
    """int over {|w|^2 < t} in C^k of (1 + |w|^2 / t) beta(w) dm(w).

    ``mode='closed'`` (beta = 1) gives v_k t^k (2k+1)/(k+1); ``mode='mc'``
    uses randomised QMC on the fibre ball for a general beta.  The value is
    compared with the bound 2 v_k sup|beta| t^k.
    """
    if k < 1 or t <= 0:
        raise ArgumentError("need k >= 1 and t > 0")
    vk = volume_unit_ball(k)
    if mode == "closed":
        if beta is not None:
            raise ArgumentError("closed mode is for beta = 1; use mode='mc'")
        value, err, sup = vk * t**k * (2 * k + 1) / (k + 1), 0.0, 1.0
    elif mode == "mc":
        if quad is None:
            raise ArgumentError("mc mode needs a QuadSpec")
        n = max(quad.mc_samples // quad.replicates, 2)
        reps, sup = [], 0.0
        for rep in range(quad.replicates):
            # dropping one complex coordinate of uniform points on S^(2k+1)
            # leaves uniform points of the unit ball of C^k
            w = math.sqrt(t) * sphere_points(k + 1, n, quad.seed, rep)[:, :k]
            b = np.ones(len(w)) if beta is None else np.asarray(beta(w), dtype=float)
            sup = max(sup, float(np.max(np.abs(b))))
            vals = (1.0 + np.sum(np.abs(w) ** 2, axis=-1) / t) * b
            reps.append(vk * t**k * tree_sum(vals) / len(vals))
        value, err = replicate_stats(reps)
    else:
        raise ArgumentError("mode must be 'closed' or 'mc'")
    bound = 2.0 * vk * sup * t**k
    return {"k": k, "t": t, "mode": mode, "value": value, "stderr": err,
            "bound": bound, "within_bound": bool(value <= bound),
            "normalized": value / (vk * t**k)}


def _fiber_mass(k: int, s: np.ndarray, nodes: int = 16) -> np.ndarray:
    """int_{|w|^2 < s} (s - |w|^2) dm(w) in C^k by radial Gauss-Legendre."""
    s = np.asarray(s, dtype=float)
    rho, w = gauss_legendre(nodes, 0.0, np.sqrt(s))
    shell = 2 * k * volume_unit_ball(k)  # |S^(2k-1)|
    return shell * np.sum((s[..., None] - rho**2) * rho ** (2 * k - 1) * w, axis=-1)


def lifted_zero_blaschke(X: ZeroSet, k: int) -> dict:
    """Blaschke mass of the lifted zero set against the base pairing with s = k + 1."""
    if k < 1:
        raise ArgumentError("k must be >= 1")
    depth = 1.0 - np.abs(X.points) ** 2
    lifted = tree_sum(_fiber_mass(k, depth) * X.multiplicities)
    base = blaschke_pairing(X, k + 1)
    expected = volume_unit_ball(k) / (k + 1)
    ratio = lifted / base
    return {"k": k, "lifted_sum": lifted, "base_sum": base, "ratio": ratio,
            "expected_ratio": expected, "rel_dev": abs(ratio / expected - 1.0)}


def class_separation(J_values=(10, 100, 1000, 10_000), exponents=(1, 2)) -> dict:
    """Partial sums over a_j = 1 - 1/j for the given exponents.

    A sum whose growth per decade does not shrink is reported divergent; one
    whose growth per decade falls by at least a factor 2 is convergent.
    """
    J_values = sorted(int(J) for J in J_values)
    out = {}
    for s in exponents:
        sums = []
        for J in J_values:
            a = 1.0 - 1.0 / np.arange(1, J + 1)
            sums.append(blaschke_pairing(ZeroSet.simple(a), s))
        inc = np.diff(sums)
        shrink = inc[1:] / inc[:-1] if len(inc) > 1 else np.array([])
        if len(shrink) and np.all(shrink > 0.5):
            verdict = "divergent"
        elif len(shrink) and np.all(shrink <= 0.5):
            verdict = "convergent"
        else:
            verdict = "undecided"
        out[s] = {"J": J_values, "partial_sums": sums, "increments": inc.tolist(),
                  "verdict": verdict}
    return out

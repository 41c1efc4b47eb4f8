"""Szego and weighted Bergman kernels of the unit ball, and the identity
relating the weighted Bergman kernel of B^n to the Szego kernel of B^(n+k).

Both kernels are c_space^-1 (1 - <z, a>)^(-exponent); the constants come
from :mod:`subord_lab.spaces`, where closed forms are cross-checked against
radial Beta integrals.
"""
from __future__ import annotations

import numpy as np

from .domain import lift_point
from .errors import ArgumentError, SingularityError
from .quadrature import philox
from .spaces import Bergman, Hardy, kernel, sphere_area


def _check_ball_points(z, N: int, closed: bool = False) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    if z.shape[-1] != N:
        raise ArgumentError(f"points must have {N} coordinates")
    nz = np.linalg.norm(z, axis=-1)
    if np.any(nz > 1.0 if closed else nz >= 1.0):
        raise ArgumentError("point outside the " + ("closed" if closed else "open") + " unit ball")
    return z


def _out(v):
    v = np.asarray(v)
    return complex(v) if v.ndim == 0 else v


def szego_ball(N: int, z, zeta, normalization: str = "coarea"):
    """Szego kernel of H^2(B^N): (N-1)!/(2 pi^N) (1 - <z, zeta>)^(-N) for coarea sigma."""
    z = _check_ball_points(z, N)
    zeta = _check_ball_points(zeta, N, closed=True)
    return _out(kernel(Hardy(N, normalization), z, zeta))


def bergman_ball_weighted(n: int, k: int, z, a):
    """Kernel of A^2_k(B^n): (1/m_k(B^n)) (1 - <z, a>)^(-(n+k+1))."""
    z = _check_ball_points(z, n)
    a = _check_ball_points(a, n)
    return _out(kernel(Bergman(n, k), z, a))


def kernel_norm_sq(space, a) -> float:
    """||K(., a)||^2 = K(a, a)."""
    a = _check_ball_points(a, space.dim)
    val = kernel(space, a, a)
    return float(np.real(val)) if np.ndim(val) == 0 else np.real(val)


def identity_constant(n: int, k: int, normalization: str = "coarea") -> float:
    """Constant c with B_{k-1}(z, a) = c S((z,0), (a,0)) on B^n inside B^(n+k).

    Both kernels carry the exponent n + k, so c is the mass ratio
    sigma(S^(2(n+k)-1)) / m_{k-1}(B^n): 2 for k >= 2 and 2 pi for k = 1
    under coarea sigma, a quarter of that under the reciprocal weighting.
    """
    if n < 1 or k < 1:
        raise ArgumentError("need n >= 1 and k >= 1")
    return sphere_area(n + k, normalization) / Bergman(n, k - 1).mass


def random_ball_pairs(n: int, count: int, seed: int, max_radius: float = 0.95):
    """Seeded pairs (z, a) in the ball of radius ``max_radius`` of C^n."""
    rng = philox(seed, 0xB411)

    def draw():
        g = rng.standard_normal((count, 2 * n))
        u = g[:, 0::2] + 1j * g[:, 1::2]
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        rad = max_radius * rng.random(count) ** (1.0 / (2 * n))
        return u * rad[:, None]

    return list(zip(draw(), draw()))


def kernel_identity_check(n: int, k: int, samples, normalization: str = "coarea") -> dict:
    """Ratios B_{k-1}(z, a) / S~((z,0), (a,0)) over sample pairs.

    Reports the fitted constant ``c_hat``, the maximal relative deviation
    from it, and the constant obtained under the other sigma convention.
    """
    if n < 1 or k < 1:
        raise ArgumentError("need n >= 1 and k >= 1")
    other = "reciprocal" if normalization == "coarea" else "coarea"
    rows, skipped = [], []
    for z, a in samples:
        z = np.asarray(z, dtype=complex).reshape(n)
        a = np.asarray(a, dtype=complex).reshape(n)
        try:
            B = bergman_ball_weighted(n, k - 1, z, a)
            S = szego_ball(n + k, lift_point(z, k), lift_point(a, k), normalization)
            S_alt = szego_ball(n + k, lift_point(z, k), lift_point(a, k), other)
        except (SingularityError, ArgumentError) as exc:
            skipped.append({"z": z.tolist(), "a": a.tolist(), "reason": str(exc)})
            continue
        rows.append({"z": z, "a": a, "B": B, "S": S, "ratio": B / S, "ratio_alt": B / S_alt})
    if not rows:
        raise ArgumentError("no usable sample pairs")
    ratios = np.array([r["ratio"] for r in rows])
    alt = np.array([r["ratio_alt"] for r in rows])
    c_hat = float(np.mean(ratios.real))
    c_alt = float(np.mean(alt.real))
    return {
        "n": n, "k": k, "normalization": normalization,
        "c_hat": c_hat,
        "c_expected": identity_constant(n, k, normalization),
        "max_rel_dev": float(np.max(np.abs(ratios - c_hat)) / abs(c_hat)),
        "alternate": {"normalization": other, "c_hat": c_alt,
                      "max_rel_dev": float(np.max(np.abs(alt - c_alt)) / abs(c_alt))},
        "rows": rows, "skipped": skipped,
    }


def kernel_norm_ratio(n: int, k: int, points) -> dict:
    """||b_{k-1,a}|| / ||k_(a,0)|| over points a of B^n (constant sqrt(c(k)))."""
    pts = _check_ball_points(points, n)
    pts = pts.reshape(-1, n)
    b = kernel_norm_sq(Bergman(n, k - 1), pts)
    s = kernel_norm_sq(Hardy(n + k), lift_point(pts, k))
    ratio = np.sqrt(b / s)
    mid = float(np.mean(ratio))
    return {"ratios": ratio, "mean": mid,
            "max_rel_dev": float(np.max(np.abs(ratio - mid)) / mid),
            "expected": float(np.sqrt(identity_constant(n, k)))}

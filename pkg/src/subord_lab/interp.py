"""Finite interpolating-sequence diagnostics in H^2 and A^2_k of the ball.

Everything is expressed through the normalised Gram matrix
G_ij = <e_j, e_i> with e_a = K(., a) / ||K(., a)||.  The minimal-norm dual
family has coefficient matrix (G^T)^(-1), so its largest norm is
sqrt(max diag G^(-1)); the minimal-norm interpolation operator from l^2 has
norm 1 / sqrt(lambda_min(G)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, solve_triangular

from .domain import lift_point
from .errors import ArgumentError, DegenerateSequenceError
from .functions import KernelPower
from .kernels import kernel_norm_sq
from .spaces import Bergman, Hardy, power_kernel

COND_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class PointSequence:
    """Distinct points of the unit ball paired with a reproducing-kernel space."""

    points: np.ndarray
    space: Hardy | Bergman

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim == 1:
            pts = pts[:, None] if self.space.dim == 1 else pts[None, :]
        if pts.ndim != 2 or pts.shape[1] != self.space.dim or pts.shape[0] == 0:
            raise ArgumentError(f"points must form an (M, {self.space.dim}) array with M >= 1")
        if np.any(np.linalg.norm(pts, axis=1) >= 1):
            raise ArgumentError("points must lie in the open unit ball")
        if len(pts) > 1:
            diff = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
            np.fill_diagonal(diff, np.inf)
            if np.min(diff) == 0:
                raise ArgumentError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]

    def drop(self, index: int) -> PointSequence:
        return PointSequence(np.delete(self.points, index, axis=0), self.space)


@dataclass(frozen=True, eq=False)
class GramData:
    gram: np.ndarray
    eig_min: float
    eig_max: float
    cond: float


def kernel_norm(space, a, p_prime: float = 2.0) -> float:
    """||K(., a)||_{p'}; exact for every p' via the hypergeometric series."""
    if p_prime == 2:
        return float(np.sqrt(kernel_norm_sq(space, a)))
    if p_prime < 1:
        raise ArgumentError("p' must be >= 1")
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    kp = KernelPower(a, space.exponent, 1.0 / space.mass)
    return kp.norm_p(space, p_prime)


def gram_matrix(seq: PointSequence) -> GramData:
    """Normalised Gram matrix and its spectral diagnostics."""
    pts = seq.points
    # the mass constant cancels after normalising; leaving it out keeps the
    # Gram of a lifted sequence bit-for-bit equal to the base one
    K = power_kernel(pts[:, None, :], pts[None, :, :], seq.space.exponent, 1.0)
    d = np.sqrt(np.real(np.diag(K)))
    G = K / np.outer(d, d)
    G = 0.5 * (G + G.conj().T)
    np.fill_diagonal(G, 1.0)
    ev = np.linalg.eigvalsh(G)
    lo, hi = float(ev[0]), float(ev[-1])
    cond = hi / lo if lo > 0 else np.inf
    return GramData(G, lo, hi, cond)


def _checked(data: GramData) -> None:
    if not data.cond < COND_LIMIT:
        raise DegenerateSequenceError(
            f"Gram condition number {data.cond:.3g} exceeds {COND_LIMIT:.0e}")


def pivoted_cholesky_inverse(G: np.ndarray) -> np.ndarray:
    """Inverse of a Hermitian positive definite matrix via pivoted Cholesky."""
    n = G.shape[0]
    U, piv, rank, info = lapack.zpstrf(np.asarray(G, dtype=complex), lower=0)
    if info < 0 or rank < n:
        raise DegenerateSequenceError(f"Gram matrix numerically singular (rank {rank} < {n})")
    U = np.triu(U)
    perm = piv - 1
    Uinv = solve_triangular(U, np.eye(n, dtype=complex), lower=False)
    inv_perm = Uinv @ Uinv.conj().T  # inverse of G[perm][:, perm]
    out = np.empty_like(inv_perm)
    out[np.ix_(perm, perm)] = inv_perm
    return out


@dataclass(frozen=True, eq=False)
class DualSystem:
    coefficients: np.ndarray  # row a holds the coordinates of rho_a in the normalised kernels
    norms: np.ndarray
    constant: float


def dual_system(seq: PointSequence, p: float = 2) -> DualSystem:
    """Minimal-norm biorthogonal family <rho_a, k_c> = delta_ac ||k_c||."""
    if p != 2:
        raise ArgumentError("dual systems are computed for p = 2 only")
    data = gram_matrix(seq)
    _checked(data)
    Ginv = pivoted_cholesky_inverse(data.gram)
    C = Ginv.T
    norms = np.sqrt(np.real(np.diag(Ginv)))
    return DualSystem(C, norms, float(np.max(norms)))


def interpolation_constant(seq: PointSequence, p: float = 2) -> float:
    """Norm of the minimal-norm interpolation map l^2 -> space."""
    if p != 2:
        raise ArgumentError("interpolation constants are computed for p = 2 only")
    data = gram_matrix(seq)
    _checked(data)
    return float(1.0 / np.sqrt(data.eig_min))


def lift_sequence(seq: PointSequence, k: int) -> PointSequence:
    """Lift each point to (a, 0) and pass to H^2 of the ball of C^(n+k)."""
    if k < 1:
        raise ArgumentError("k must be >= 1")
    return PointSequence(lift_point(seq.points, k), Hardy(seq.space.dim + k))


def correspondence_check(seq: PointSequence) -> dict:
    """Compare a sequence in A^2_{k-1}(B^n) with its lift in H^2(B^(n+k))."""
    if not isinstance(seq.space, Bergman):
        raise ArgumentError("correspondence_check expects a Bergman-space sequence")
    k = seq.space.k + 1
    lifted = lift_sequence(seq, k)
    g0, g1 = gram_matrix(seq), gram_matrix(lifted)
    d0, d1 = dual_system(seq), dual_system(lifted)
    i0, i1 = interpolation_constant(seq), interpolation_constant(lifted)
    nb = np.sqrt(kernel_norm_sq(seq.space, seq.points))
    nh = np.sqrt(kernel_norm_sq(lifted.space, lifted.points))
    ratio = np.atleast_1d(nb / nh)
    return {
        "n": seq.space.dim, "k": k, "size": len(seq),
        "gram_max_abs_diff": float(np.max(np.abs(g0.gram - g1.gram))),
        "gram_cond": g0.cond, "gram_cond_lifted": g1.cond,
        "dual_const": d0.constant, "dual_const_lifted": d1.constant,
        "dual_const_diff": abs(d0.constant - d1.constant),
        "interp_const": i0, "interp_const_lifted": i1,
        "interp_const_diff": abs(i0 - i1),
        "kernel_norm_ratio": float(ratio[0]),
        "kernel_norm_ratio_dev": float(np.max(np.abs(ratio / ratio[0] - 1.0))),
    }

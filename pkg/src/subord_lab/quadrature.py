"""Deterministic quadrature plumbing.

Randomness always comes from counter-based Philox streams keyed by
``(seed, stream)``, and every sum goes through :func:`tree_sum`, a pairwise
reduction over fixed-size blocks.  Block boundaries depend only on the
number of terms, so evaluating blocks on any number of worker threads gives
bit-identical results.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import qmc
from scipy.special import ndtri

from .errors import ArgumentError

BLOCK = 4096
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature / Monte Carlo configuration.

    ``mc_samples`` is the total integrand-evaluation budget of one estimate,
    split over ``replicates`` independently scrambled point sets whose spread
    gives the standard error.
    """

    seed: int
    mc_samples: int = 2**18
    shell_etas: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3)
    level_epsilons: tuple[float, ...] = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    rel_tol: float = 2e-3
    radial_nodes: int = 32
    replicates: int = 8
    workers: int = 1

    def __post_init__(self):
        if self.mc_samples < 1000:
            raise ArgumentError("mc_samples must be >= 10^3")
        etas = tuple(float(e) for e in self.shell_etas)
        if not etas or any(e <= 0 for e in etas):
            raise ArgumentError("shell_etas must be positive")
        if any(b >= a for a, b in zip(etas, etas[1:])):
            raise ArgumentError("shell_etas must be strictly decreasing")
        if not self.level_epsilons or any(e <= 0 for e in self.level_epsilons):
            raise ArgumentError("level_epsilons must be positive")
        if self.rel_tol <= 0:
            raise ArgumentError("rel_tol must be > 0")
        if self.replicates < 2 or self.radial_nodes < 2 or self.workers < 1:
            raise ArgumentError("replicates, radial_nodes >= 2 and workers >= 1 required")
        object.__setattr__(self, "shell_etas", etas)
        object.__setattr__(self, "level_epsilons", tuple(float(e) for e in self.level_epsilons))


@dataclass
class Estimate:
    """A quadrature result with its standard error and warning flags."""

    value: float | complex
    stderr: float = 0.0
    n_evals: int = 0
    flags: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def inconclusive(self) -> bool:
        return bool(self.flags)

    def as_dict(self) -> dict:
        value = self.value
        if isinstance(value, complex):
            value = [value.real, value.imag]
        return {"value": value, "stderr": self.stderr, "n_evals": self.n_evals,
                "flags": list(self.flags), "details": dict(self.details)}


def philox(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator for the (seed, stream) pair."""
    return np.random.Generator(np.random.Philox(key=[seed & _MASK64, stream & _MASK64]))


def tree_sum(values: np.ndarray):
    """Pairwise sum with a fixed reduction tree (order-independent of threads)."""
    v = np.asarray(values)
    if np.iscomplexobj(v):
        return complex(tree_sum(v.real), tree_sum(v.imag))
    v = v.astype(float).ravel()
    if v.size == 0:
        return 0.0
    nblocks = -(-v.size // BLOCK)
    partial = np.array([np.add.reduce(v[i * BLOCK:(i + 1) * BLOCK]) for i in range(nblocks)])
    return _pairwise(partial)


def _pairwise(partial: np.ndarray) -> float:
    while partial.size > 1:
        if partial.size % 2:
            partial = np.append(partial, 0.0)
        partial = partial[0::2] + partial[1::2]
    return float(partial[0])


def blockwise_sum(fn, n: int, workers: int = 1) -> float:
    """Sum ``fn(start, stop)`` (each returning a vector) over fixed blocks.

    ``fn`` must be a pure function of its block bounds; blocks may then be
    evaluated concurrently without changing a single bit of the result.
    """
    bounds = [(i, min(i + BLOCK, n)) for i in range(0, n, BLOCK)]

    def one(b):
        return float(np.add.reduce(np.asarray(fn(*b), dtype=float).ravel()))

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            partial = list(ex.map(one, bounds))
    else:
        partial = [one(b) for b in bounds]
    return _pairwise(np.asarray(partial)) if partial else 0.0


def map_blocks(fn, n: int, workers: int = 1) -> np.ndarray:
    """Concatenate ``fn(start, stop)`` over fixed blocks, in block order."""
    bounds = [(i, min(i + BLOCK, n)) for i in range(0, n, BLOCK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda b: fn(*b), bounds))
    else:
        parts = [fn(*b) for b in bounds]
    return np.concatenate(parts) if parts else np.zeros(0)


def sphere_points(N: int, n: int, seed: int, replicate: int) -> np.ndarray:
    """Randomised QMC points on the unit sphere S^(2N-1) of C^N.

    Scrambled Sobol points pushed through the Gaussian quantile and
    normalised; ``n`` is rounded up to a power of two.  The returned array
    is cached and read-only.
    """
    return _sphere_points(int(N), int(n), int(seed), int(replicate))


@lru_cache(maxsize=128)
def _sphere_points(N: int, n: int, seed: int, replicate: int) -> np.ndarray:
    m = max(int(np.ceil(np.log2(max(n, 2)))), 1)
    scramble_seed = int(philox(seed, 0x5EED0000 + replicate).integers(1 << 62))
    eng = qmc.Sobol(d=2 * N, scramble=True, seed=scramble_seed)
    u = eng.random_base2(m)
    g = ndtri(np.clip(u, 1e-16, 1 - 1e-16))
    z = g[:, 0::2] + 1j * g[:, 1::2]
    z /= np.linalg.norm(z, axis=-1, keepdims=True)
    z.flags.writeable = False
    return z


def gauss_legendre(n: int, a=0.0, b=1.0):
    """Gauss-Legendre nodes/weights mapped to [a, b] (broadcasts over a, b)."""
    x, w = np.polynomial.legendre.leggauss(n)
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def composite_gauss_legendre(breaks, n: int = 24):
    """Nodes/weights of a composite rule over consecutive sorted breakpoints."""
    breaks = np.unique(np.asarray(breaks, dtype=float))
    xs, ws = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b > a:
            x, w = gauss_legendre(n, a, b)
            xs.append(x)
            ws.append(w)
    if not xs:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(xs), np.concatenate(ws)


def replicate_stats(values):
    """Mean and standard error over independent replicates."""
    v = np.asarray(values)
    if np.iscomplexobj(v):
        mr, sr = replicate_stats(v.real)
        mi, si = replicate_stats(v.imag)
        return complex(mr, mi), float(np.hypot(sr, si))
    v = v.astype(float)
    mean = _pairwise(v.copy()) / v.size if v.size > 1 else float(v[0])
    if v.size < 2:
        return mean, 0.0
    return mean, float(np.std(v, ddof=1) / np.sqrt(v.size))


def richardson_first_order(etas, values) -> float:
    """Two-point extrapolation to eta -> 0 of a first-order sequence."""
    e1, e2 = etas[-2], etas[-1]
    s1, s2 = values[-2], values[-1]
    return (e1 * s2 - e2 * s1) / (e1 - e2)

"""Corona data, polynomial Bezout cofactors and lift/restrict transport.

Solutions on the lifted ball come only from polynomial Bezout identities
sum_j F_j G_j = F; restricting to the slice w = 0 gives a solution on the
base whose Bergman norms are controlled by the Hardy norms upstairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy as sp

from .domain import Domain, as_points, sample_interior, unit_ball
from .errors import ArgumentError, NoBezoutError, NumericError, RejectedInputError
from .functions import HoloFunction, Polynomial
from .kernels import identity_constant
from .quadrature import philox
from .spaces import Bergman, Hardy

_Z = sp.Symbol("z")


@dataclass(frozen=True, eq=False)
class CoronaData:
    generators: tuple
    delta: float
    f: HoloFunction | None = None

    def __post_init__(self):
        if len(self.generators) < 2:
            raise ArgumentError("corona data need at least two generators")
        if not self.delta > 0:
            raise ArgumentError("delta must be positive")
        object.__setattr__(self, "generators", tuple(self.generators))


def corona_data_check(data: CoronaData, domain: Domain, n_samples: int = 10_000, seed: int = 0) -> dict:
    """Smallest sum_j |g_j| over seeded (collar-biased) interior points."""
    pts = sample_interior(domain, n_samples, philox(seed, 0xC0A))
    pts = np.concatenate([np.zeros((1, domain.complex_dim), dtype=complex), pts])
    total = np.zeros(len(pts))
    for g in data.generators:
        v = np.abs(g(pts))
        if not np.all(np.isfinite(v)):
            bad = pts[~np.isfinite(v)][0]
            raise NumericError(f"generator {g.descriptor} not finite at {bad!r}")
        total += v
    i = int(np.argmin(total))
    return {"min_sum": float(total[i]), "argmin": pts[i], "delta": data.delta,
            "ok": bool(total[i] >= data.delta), "n_samples": int(len(pts))}


def parse_polynomial(text: str) -> Polynomial:
    """One-variable polynomial in z from an expression string."""
    try:
        expr = sp.sympify(text, locals={"z": _Z, "I": sp.I})
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise ArgumentError(f"cannot parse polynomial {text!r}: {exc}") from None
    if expr.free_symbols - {_Z}:
        raise ArgumentError(f"polynomial {text!r} may only use the variable z")
    try:
        return Polynomial.from_sympy(expr, [_Z])
    except sp.PolynomialError as exc:
        raise ArgumentError(f"{text!r} is not a polynomial: {exc}") from None


def _to_sympy(p: Polynomial):
    if p.dim != 1:
        raise ArgumentError("Bezout cofactors are computed for one-variable polynomials")
    terms = 0
    for (j,), c in p.coeffs.items():
        re = sp.nsimplify(c.real, rational=True)
        im = sp.nsimplify(c.imag, rational=True)
        terms += (re + sp.I * im) * _Z**j
    return sp.Poly(terms, _Z, domain="QQ_I")


def _from_sympy(poly) -> Polynomial:
    return Polynomial({m: complex(sp.N(c, 17)) for m, c in poly.terms()} or {(0,): 0.0}, 1)


def bezout_polynomial(*generators: Polynomial) -> tuple[Polynomial, ...]:
    """Cofactors a_j with sum_j a_j g_j = 1 by iterated extended Euclid."""
    if len(generators) < 2:
        raise ArgumentError("need at least two generators")
    polys = [_to_sympy(g) for g in generators]
    cof = [sp.Poly(1, _Z, domain="QQ_I")] + [sp.Poly(0, _Z, domain="QQ_I")] * (len(polys) - 1)
    h = polys[0]
    for j in range(1, len(polys)):
        s, t, h_new = h.gcdex(polys[j])
        cof = [c * s for c in cof]
        cof[j] = t
        h = h_new
    if h.degree() != 0 or h.is_zero:
        raise NoBezoutError(f"generators share a common zero (gcd {h.as_expr()})")
    lead = h.LC()
    cof = [c.quo_ground(lead) for c in cof]
    return tuple(_from_sympy(c) for c in cof)


def base_grid(n: int = 200, radius: float = 0.95) -> np.ndarray:
    """Polar grid of n points in the disc (10 radii)."""
    n_r = 10
    n_a = max(n // n_r, 1)
    r = radius * (np.arange(1, n_r + 1) / n_r)
    th = 2 * np.pi * np.arange(n_a) / n_a
    return (r[:, None] * np.exp(1j * th)[None, :]).reshape(-1, 1)


def lifted_bezout(generators, f: Polynomial, k: int, twist: Polynomial | None = None):
    """Lifted data F_j = f a_j (plus an optional fibre twist), G_j, F on B^(1+k).

    With two generators a twist q adds w_1 q G_2 to F_1 and subtracts
    w_1 q G_1 from F_2, which leaves sum F_j G_j unchanged.
    """
    a = bezout_polynomial(*generators)
    G = [g.lift(k) for g in generators]
    F = [(f * aj).lift(k) for aj in a]
    if twist is not None:
        if len(generators) != 2:
            raise ArgumentError("fibre twist is defined for two generators")
        if twist.dim != 1 + k:
            raise ArgumentError("twist must live on the lifted ball")
        w1 = Polynomial.monomial((0, 1) + (0,) * (k - 1))
        F = [F[0] + w1 * twist * G[1], F[1] - w1 * twist * G[0]]
    return F, G, f.lift(k)


def corona_transport(F_list, G_list, F_target: Polynomial, f_target: Polynomial, k: int,
                     grid=None, lifted_grid=None, tol: float = 1e-10, seed: int = 0) -> dict:
    """Restrict a lifted Bezout solution to the slice and check it downstairs."""
    if len(F_list) != len(G_list) or len(F_list) < 2:
        raise ArgumentError("need matching lists of at least two F_j and G_j")
    N = F_target.dim
    n = N - k
    if n < 1:
        raise ArgumentError("k must be smaller than the lifted dimension")
    if lifted_grid is None:
        lifted_grid = sample_interior(unit_ball(N), 200, philox(seed, 0x7A5))
    lifted_grid = np.asarray(lifted_grid, dtype=complex).reshape(-1, N)
    up = sum(Fj(lifted_grid) * Gj(lifted_grid) for Fj, Gj in zip(F_list, G_list)) - F_target(lifted_grid)
    res_up = float(np.max(np.abs(up)))
    if not res_up < tol:
        raise RejectedInputError(f"lifted identity residual {res_up:.3g} exceeds {tol:g}")
    grid = base_grid() if grid is None else as_points(unit_ball(n), grid).reshape(-1, n)
    f_list = [Fj.restrict(k) for Fj in F_list]
    g_list = [Gj.restrict(k) for Gj in G_list]
    down = sum(fj(grid) * gj(grid) for fj, gj in zip(f_list, g_list)) - f_target(grid)
    res_down = float(np.max(np.abs(down)))
    bound = 1.0 / math.sqrt(identity_constant(n, k))
    ratios = []
    for fj, Fj in zip(f_list, F_list):
        nf = math.sqrt(fj.norm_sq(Bergman(n, k - 1)))
        nF = math.sqrt(Fj.norm_sq(Hardy(N)))
        ratios.append(nf / nF if nF > 0 else 0.0)
    return {"k": k, "residual_lifted": res_up, "residual_base": res_down,
            "n_grid": int(len(grid)), "n_lifted_grid": int(len(lifted_grid)),
            "norm_ratios": ratios, "ratio_bound": bound,
            "ok": bool(res_down <= res_up + 1e-14)
            and all(r <= bound * (1 + 1e-6) for r in ratios),
            "cofactors": [fj.descriptor for fj in f_list]}

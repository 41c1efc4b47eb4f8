"""Holomorphic test functions: generic evaluators, polynomials, kernel powers."""
from __future__ import annotations

import math
from collections import defaultdict

import numpy as np
from scipy.special import hyp2f1

from .errors import ArgumentError, UnsupportedError
from .spaces import monomial_norm_sq, power_kernel


class HoloFunction:
    """A holomorphic function on a domain of C^dim, vectorised over points.

    ``func`` maps a complex array of shape (..., dim) to shape (...).
    Holomorphy is asserted by the caller.
    """

    def __init__(self, func, dim: int, descriptor: str = "f", meta: dict | None = None):
        self.func = func
        self.dim = int(dim)
        self.descriptor = descriptor
        self.meta = dict(meta or {})

    def _check(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.ndim == 0:
            z = z.reshape(1)
        if z.shape[-1] != self.dim:
            raise ArgumentError(f"{self.descriptor}: expected points of dimension {self.dim}")
        return z

    def __call__(self, z):
        return self.func(self._check(z))

    def lift(self, k: int) -> HoloFunction:
        """F(z, w) := f(z) on C^(dim + k)."""
        n = self.dim
        return HoloFunction(lambda zw: self.func(zw[..., :n]), n + k,
                            f"lift({self.descriptor},{k})", self.meta)

    def restrict(self, k: int) -> HoloFunction:
        """f(z) := F(z, 0) on C^(dim - k)."""
        if not 0 < k < self.dim:
            raise ArgumentError(f"cannot restrict {k} coordinates of C^{self.dim}")

        def f(z):
            pad = np.zeros(z.shape[:-1] + (k,), dtype=complex)
            return self.func(np.concatenate([z, pad], axis=-1))

        return HoloFunction(f, self.dim - k, f"restrict({self.descriptor},{k})", self.meta)

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor!r}, dim={self.dim})"


def _fmt_coeff(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return f"({c.real!r}{c.imag:+}j)"


class Polynomial(HoloFunction):
    """Multivariate polynomial sum_alpha c_alpha z^alpha."""

    def __init__(self, coeffs: dict, dim: int):
        clean: dict[tuple[int, ...], complex] = {}
        for alpha, c in coeffs.items():
            alpha = tuple(int(a) for a in np.atleast_1d(alpha))
            if len(alpha) != dim or any(a < 0 for a in alpha):
                raise ArgumentError(f"multi-index {alpha} invalid in dimension {dim}")
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        self.coeffs = {a: c for a, c in sorted(clean.items()) if c != 0}
        super().__init__(self._evaluate, dim, self._describe(dim), {"kind": "polynomial"})

    # construction helpers
    @classmethod
    def monomial(cls, alpha, coeff=1.0) -> Polynomial:
        alpha = tuple(int(a) for a in np.atleast_1d(alpha))
        return cls({alpha: coeff}, len(alpha))

    @classmethod
    def constant(cls, c, dim: int = 1) -> Polynomial:
        return cls({(0,) * dim: c}, dim)

    @classmethod
    def univariate(cls, coeffs) -> Polynomial:
        """From ascending coefficients [c_0, c_1, ...] in one variable."""
        return cls({(j,): c for j, c in enumerate(coeffs)}, 1)

    @classmethod
    def from_sympy(cls, expr, symbols) -> Polynomial:
        import sympy as sp

        poly = sp.Poly(sp.expand(expr), *symbols)
        return cls({m: complex(sp.N(c, 17)) for m, c in poly.terms()}, len(symbols))

    def _describe(self, dim: int) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for alpha, c in self.coeffs.items():
            mono = "*".join(f"z{j + 1}^{a}" if a > 1 else f"z{j + 1}"
                            for j, a in enumerate(alpha) if a)
            terms.append(_fmt_coeff(c) + ("*" + mono if mono else ""))
        return " + ".join(terms)

    def _evaluate(self, z: np.ndarray) -> np.ndarray:
        out = np.zeros(z.shape[:-1], dtype=complex)
        for alpha, c in self.coeffs.items():
            term = np.full(z.shape[:-1], c, dtype=complex)
            for j, a in enumerate(alpha):
                if a:
                    term = term * z[..., j] ** a
            out = out + term
        return out

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=0)

    def lift(self, k: int) -> Polynomial:
        return Polynomial({a + (0,) * k: c for a, c in self.coeffs.items()}, self.dim + k)

    def restrict(self, k: int) -> Polynomial:
        if not 0 < k < self.dim:
            raise ArgumentError(f"cannot restrict {k} coordinates of C^{self.dim}")
        n = self.dim - k
        return Polynomial({a[:n]: c for a, c in self.coeffs.items() if not any(a[n:])}, n)

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise ArgumentError("polynomials live in different dimensions")
            return other
        return Polynomial.constant(other, self.dim)

    def __add__(self, other):
        other = self._coerce(other)
        acc = defaultdict(complex, self.coeffs)
        for a, c in other.coeffs.items():
            acc[a] += c
        return Polynomial(acc, self.dim)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({a: -c for a, c in self.coeffs.items()}, self.dim)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict = defaultdict(complex)
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                acc[tuple(x + y for x, y in zip(a, b))] += c * d
        return Polynomial(acc, self.dim)

    __rmul__ = __mul__

    def norm_sq(self, space) -> float:
        """Exact squared norm in a ball space (monomials are orthogonal)."""
        if space.dim != self.dim:
            raise ArgumentError(f"{space.label} does not match polynomial dimension {self.dim}")
        return math.fsum(abs(c) ** 2 * monomial_norm_sq(space, a) for a, c in self.coeffs.items())


class KernelPower(HoloFunction):
    """constant * (1 - <z, a>)^(-gamma) for a point a of the open unit ball."""

    def __init__(self, a, gamma: float, constant: float = 1.0):
        self.a = np.atleast_1d(np.asarray(a, dtype=complex))
        if np.linalg.norm(self.a) >= 1:
            raise ArgumentError("kernel centre must lie in the open unit ball")
        self.gamma = float(gamma)
        self.constant = float(constant)
        super().__init__(lambda z: power_kernel(z, self.a, self.gamma, self.constant),
                         self.a.size, f"{self.constant!r}*(1-<z,a>)^-{self.gamma!r}",
                         {"kind": "kernel_power"})

    def lift(self, k: int) -> KernelPower:
        return KernelPower(np.concatenate([self.a, np.zeros(k, dtype=complex)]),
                           self.gamma, self.constant)

    def norm_sq(self, space) -> float:
        """||f||^2 = constant^2 * M0 * 2F1(gamma, gamma; c; |a|^2)."""
        if space.dim != self.dim:
            raise ArgumentError(f"{space.label} does not match kernel dimension {self.dim}")
        x = float(np.vdot(self.a, self.a).real)
        val = hyp2f1(self.gamma, self.gamma, space.exponent, x)
        if not np.isfinite(val):
            raise UnsupportedError("hypergeometric evaluation overflowed")
        return self.constant**2 * space.mass * float(val)

    def norm_p(self, space, p: float) -> float:
        """L^p norm, using |f|^p = |f^(p/2)|^2 with f^(p/2) again a kernel power."""
        half = KernelPower(self.a, self.gamma * p / 2.0, abs(self.constant) ** (p / 2.0))
        return half.norm_sq(space) ** (1.0 / p)


def kernel_power_series_norm_sq(a, gamma: float, space, tol: float = 1e-16) -> float:
    """Oracle for :meth:`KernelPower.norm_sq` by direct monomial expansion."""
    x = float(np.vdot(a, a).real)
    total, j = 0.0, 0
    log_coef = 0.0  # log((gamma)_j / j!)
    while True:
        term = math.exp(2 * log_coef) * x**j * monomial_norm_sq(space, (j,))
        total += term
        if j > 10 and term < tol * total:
            return total
        log_coef += math.log((gamma + j) / (j + 1))
        j += 1
        if j > 200_000:
            raise ArgumentError("series did not converge")

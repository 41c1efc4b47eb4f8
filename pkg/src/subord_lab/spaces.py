"""Hilbert spaces of holomorphic functions on model balls.

``Hardy(N)`` is H^2 of the unit ball of C^N with boundary measure sigma;
``Bergman(n, k)`` is A^2_k of the unit ball of C^n with dm_k, where
dm_0 = dm and dm_k = (k+1) v_{k+1} (1 - |z|^2)^k dm for k >= 1 (note the
jump between k = 0 and k = 1: no factor v_1 at k = 0).

Both spaces have orthogonal monomials with

    ||z^alpha||^2 = M0 * alpha! * Gamma(c) / Gamma(c + |alpha|)

where M0 is the total mass and c = N (Hardy) or n + k + 1 (Bergman); the
reproducing kernel is therefore (1/M0) (1 - <z, a>)^(-c).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import ArgumentError, SingularityError

NORMALIZATIONS = ("coarea", "reciprocal")


def volume_unit_ball(k: int) -> float:
    """Volume pi^k / k! of the unit ball of C^k (1 for k = 0)."""
    if k < 0:
        raise ArgumentError("k must be >= 0")
    return math.pi**k / math.factorial(k)


def _sphere_area_closed(N: int) -> float:
    return 2.0 * math.pi**N / math.factorial(N - 1)


def _bergman_mass_closed(n: int, k: int) -> float:
    if k == 0:
        return math.pi**n / math.factorial(n)
    return math.pi ** (n + k + 1) / math.factorial(n + k)


def _bergman_mass_beta(n: int, k: int) -> float:
    """m_k(B^n) as (weight constant) * |S^(2n-1)| * int_0^1 rho^(2n-1)(1-rho^2)^k."""
    area = 2 * n * volume_unit_ball(n)
    radial, _ = integrate.quad(lambda t: t ** (2 * n - 1) * (1 - t * t) ** k, 0.0, 1.0,
                               epsabs=0, epsrel=1e-13, limit=200)
    weight = 1.0 if k == 0 else (k + 1) * volume_unit_ball(k + 1)
    return weight * area * radial


def _sphere_area_shell(N: int) -> float:
    """|S^(2N-1)| as the derivative of the ball volume v_N rho^(2N) at rho = 1."""
    return 2 * N * volume_unit_ball(N)


@lru_cache(maxsize=None)
def bergman_mass(n: int, k: int) -> float:
    """m_k(B^n), checked against an independent radial Beta integral."""
    if n < 1 or k < 0:
        raise ArgumentError("need n >= 1 and k >= 0")
    closed = _bergman_mass_closed(n, k)
    beta = _bergman_mass_beta(n, k)
    if abs(closed - beta) > 1e-12 * closed:
        raise AssertionError(f"m_{k}(B^{n}) closed form {closed} != Beta integral {beta}")
    return closed


@lru_cache(maxsize=None)
def sphere_area(N: int, normalization: str = "coarea") -> float:
    """Total boundary mass of B^N; ``reciprocal`` weights by 1/|grad r| (1/4 of sigma)."""
    if N < 1:
        raise ArgumentError("N must be >= 1")
    if normalization not in NORMALIZATIONS:
        raise ArgumentError(f"unknown normalization {normalization!r}")
    closed = _sphere_area_closed(N)
    if abs(closed - _sphere_area_shell(N)) > 1e-12 * closed:
        raise AssertionError("sphere area closed form mismatch")
    # |grad r| = 2 on the sphere: coarea weight 2 vs reciprocal weight 1/2
    return closed if normalization == "coarea" else closed / 4.0


@dataclass(frozen=True)
class Hardy:
    dim: int
    normalization: str = "coarea"

    def __post_init__(self):
        if self.dim < 1:
            raise ArgumentError("Hardy space dimension must be >= 1")
        if self.normalization not in NORMALIZATIONS:
            raise ArgumentError(f"unknown normalization {self.normalization!r}")

    @property
    def mass(self) -> float:
        return sphere_area(self.dim, self.normalization)

    @property
    def exponent(self) -> int:
        return self.dim

    @property
    def label(self) -> str:
        return f"H2(B^{self.dim})" + ("" if self.normalization == "coarea" else "[reciprocal]")


@dataclass(frozen=True)
class Bergman:
    dim: int
    k: int = 0

    def __post_init__(self):
        if self.dim < 1 or self.k < 0:
            raise ArgumentError("Bergman space needs dim >= 1 and k >= 0")

    @property
    def mass(self) -> float:
        return bergman_mass(self.dim, self.k)

    @property
    def exponent(self) -> int:
        return self.dim + self.k + 1

    @property
    def label(self) -> str:
        return f"A2_{self.k}(B^{self.dim})"


def monomial_norm_sq(space, alpha) -> float:
    """||z^alpha||^2 in ``space`` (exact up to rounding)."""
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    if len(alpha) > space.dim or any(a < 0 for a in alpha):
        raise ArgumentError(f"multi-index {alpha} invalid for {space.label}")
    c = space.exponent
    num = math.prod(math.factorial(a) for a in alpha) * math.factorial(c - 1)
    return space.mass * float(Fraction(num, math.factorial(c - 1 + sum(alpha))))


def inner(z, a) -> np.ndarray:
    """Hermitian product <z, a> = sum z_j conj(a_j) over the last axis."""
    z = np.asarray(z, dtype=complex)
    a = np.asarray(a, dtype=complex)
    # written out so that inner(a, z) is exactly conj(inner(z, a))
    re = np.sum(z.real * a.real + z.imag * a.imag, axis=-1)
    im = np.sum(z.imag * a.real - z.real * a.imag, axis=-1)
    return re + 1j * im


def power_kernel(z, a, exponent: float, constant: float) -> np.ndarray:
    """constant * (1 - <z, a>)^(-exponent) on the principal branch.

    For |<z, a>| < 1 the base has positive real part, so no branch cut is
    ever crossed.
    """
    base = 1.0 - inner(z, a)
    if np.any(np.abs(base) < 1e-14):
        raise SingularityError("kernel evaluated at <z, a> = 1")
    if float(exponent) == int(exponent) and exponent >= 0:
        # square-and-multiply commutes exactly with conjugation, so K(a, z)
        # is bit-for-bit the conjugate of K(z, a)
        return constant / _int_power(base, int(exponent))
    return constant * np.exp(-exponent * np.log(base))


def _int_power(x: np.ndarray, e: int) -> np.ndarray:
    out = np.ones_like(x)
    while e:
        if e & 1:
            out = out * x
        x = x * x
        e >>= 1
    return out


def kernel(space, z, a) -> np.ndarray:
    """Reproducing kernel K(z, a) = (1/M0) (1 - <z, a>)^(-c), vectorised."""
    return power_kernel(z, a, space.exponent, 1.0 / space.mass)

"""Model domains, their defining functions, and the lift construction.

Every supported domain is a complex ellipsoid

    Omega = { z in C^N : sum_j |z_j|^(2 m_j) - 1 < 0 },   m_1 = 1,

which covers the unit disc (N = 1), the unit ball (all m_j = 1) and the
lift of any of them: adding k fibre coordinates w with defining function
r(z) + |w|^2 appends k exponents equal to 1.  Points are complex numpy
arrays whose last axis is the ambient complex dimension; every function
here is vectorised over the leading axes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DomainError

#: Points with boundary distance below ``COLLAR_FRACTION * inradius`` use the
#: boundary-adapted polydisc rule; the rest use the axis-parallel fallback.
COLLAR_FRACTION = 0.25

#: Bisection steps for ray/boundary intersections (interval <= 2 sqrt(N)).
_BISECT_STEPS = 60


@dataclass(frozen=True, eq=False)
class Domain:
    """A model domain.

    ``kind`` is one of ``"disc"``, ``"ball"``, ``"ellipsoid"`` or ``"lift"``;
    the geometry is entirely determined by ``exponents``.  A lift keeps a
    reference to its base so that points can be restricted back to the slice
    ``w = 0``.  Equality is geometric: ``lift(ball:1, 2) == ball:3``.
    """

    kind: str
    exponents: tuple[int, ...]
    base: Domain | None = None
    fiber_dim: int = 0

    def __post_init__(self):
        if self.kind not in ("disc", "ball", "ellipsoid", "lift"):
            raise ArgumentError(f"unknown domain kind {self.kind!r}")
        if not self.exponents:
            raise ArgumentError("a domain needs at least one coordinate")
        if any(int(m) != m or m < 1 for m in self.exponents):
            raise ArgumentError(f"exponents must be integers >= 1, got {self.exponents}")
        if self.exponents[0] != 1:
            raise ArgumentError("the first exponent must be 1")
        if self.kind == "lift":
            if self.base is None or self.fiber_dim < 1:
                raise ArgumentError("a lift needs a base domain and fiber_dim >= 1")
            if self.exponents != self.base.exponents + (1,) * self.fiber_dim:
                raise ArgumentError("lift exponents inconsistent with base")

    @property
    def complex_dim(self) -> int:
        return len(self.exponents)

    @property
    def real_dim(self) -> int:
        return 2 * len(self.exponents)

    @property
    def is_ball(self) -> bool:
        return all(m == 1 for m in self.exponents)

    @property
    def inradius(self) -> float:
        # sum |z_j|^(2m_j) <= sum |z_j|^2 on the closed polydisc, so the
        # largest ball about 0 inside every model ellipsoid has radius 1.
        return 1.0

    @property
    def descriptor(self) -> str:
        if self.kind == "disc":
            return "disc"
        if self.kind == "ball":
            return f"ball:{self.complex_dim}"
        if self.kind == "ellipsoid":
            return f"ellipsoid:{self.complex_dim}:" + ",".join(map(str, self.exponents))
        return f"lift({self.base.descriptor},{self.fiber_dim})"

    @property
    def exps(self) -> np.ndarray:
        return np.asarray(self.exponents, dtype=float)

    def __eq__(self, other):
        if not isinstance(other, Domain):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"Domain({self.descriptor!r})"


def unit_disc() -> Domain:
    return Domain("disc", (1,))


def unit_ball(n: int) -> Domain:
    if n < 1:
        raise ArgumentError("ball dimension must be >= 1")
    return Domain("ball", (1,) * n)


def complex_ellipsoid(exponents) -> Domain:
    return Domain("ellipsoid", tuple(int(m) for m in exponents))


def lift_domain(domain: Domain, k: int) -> Domain:
    """Return the lift ``{(z, w) : r(z) + |w|^2 < 0}`` with ``w`` in C^k."""
    if k < 1:
        raise ArgumentError("lift dimension k must be >= 1")
    return Domain("lift", domain.exponents + (1,) * k, base=domain, fiber_dim=k)


_ELLIPSOID_RE = re.compile(r"^ellipsoid:(\d+):([\d,\s]+)$")


def parse_domain(text: str) -> Domain:
    """Parse descriptors such as ``disc``, ``ball:2``, ``ellipsoid:2:1,2``,
    ``lift(ball:1,2)`` (lifts may nest)."""
    s = text.strip().replace(" ", "")
    if s == "disc":
        return unit_disc()
    if s.startswith("lift(") and s.endswith(")"):
        inner = s[5:-1]
        cut = inner.rfind(",")
        if cut < 0:
            raise ArgumentError(f"lift descriptor needs ',k': {text!r}")
        try:
            k = int(inner[cut + 1:])
        except ValueError:
            raise ArgumentError(f"bad lift dimension in {text!r}") from None
        return lift_domain(parse_domain(inner[:cut]), k)
    if s.startswith("ball:"):
        try:
            return unit_ball(int(s[5:]))
        except ValueError:
            raise ArgumentError(f"bad ball dimension in {text!r}") from None
    m = _ELLIPSOID_RE.match(s)
    if m:
        n = int(m.group(1))
        exps = tuple(int(e) for e in m.group(2).split(",") if e)
        if len(exps) != n:
            raise ArgumentError(f"ellipsoid:{n} needs {n} exponents, got {len(exps)}")
        return complex_ellipsoid(exps)
    raise ArgumentError(f"unparsable domain descriptor {text!r}")


# ----------------------------------------------------------------------------
# point handling


def as_points(domain: Domain, z) -> np.ndarray:
    """Coerce ``z`` to a complex array whose last axis has length N."""
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != domain.complex_dim:
        raise ArgumentError(
            f"point dimension {arr.shape[-1]} does not match domain {domain.descriptor}"
        )
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("point coordinates must be finite")
    return arr


def _scalar_or_array(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def _r(exps: np.ndarray, z: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(z) ** (2.0 * exps), axis=-1) - 1.0


def _cgrad(exps: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Complex gradient d r / d conj(z_j) = m_j |z_j|^(2 m_j - 2) z_j."""
    return exps * np.abs(z) ** (2.0 * exps - 2.0) * z


def eval_r(domain: Domain, z):
    """Defining function r(z); negative exactly on the interior."""
    return _scalar_or_array(_r(domain.exps, as_points(domain, z)))


def complex_gradient(domain: Domain, z) -> np.ndarray:
    return _cgrad(domain.exps, as_points(domain, z))


def grad_r(domain: Domain, z) -> np.ndarray:
    """Euclidean gradient of r as a real function on R^(2N).

    Components are interleaved ``(dr/dx_1, dr/dy_1, dr/dx_2, ...)``.
    """
    c = 2.0 * complex_gradient(domain, z)
    out = np.empty(c.shape[:-1] + (2 * c.shape[-1],))
    out[..., 0::2] = c.real
    out[..., 1::2] = c.imag
    return out


def grad_norm(domain: Domain, z):
    return _scalar_or_array(2.0 * np.linalg.norm(complex_gradient(domain, z), axis=-1))


def lift_point(z, k: int) -> np.ndarray:
    """Append k zero fibre coordinates: z -> (z, 0)."""
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    if k < 0:
        raise ArgumentError("k must be non-negative")
    pad = np.zeros(z.shape[:-1] + (k,), dtype=complex)
    return np.concatenate([z, pad], axis=-1)


def restrict_point(zw, k: int) -> np.ndarray:
    """Strip k fibre coordinates; the fibre part must vanish."""
    zw = np.asarray(zw, dtype=complex)
    if zw.ndim == 0:
        zw = zw.reshape(1)
    if k < 0 or k >= zw.shape[-1]:
        raise ArgumentError(f"cannot strip {k} coordinates from dimension {zw.shape[-1]}")
    if k and np.any(zw[..., -k:] != 0):
        raise ArgumentError("restriction is only defined on the slice w = 0")
    return zw[..., : zw.shape[-1] - k].copy()


# ----------------------------------------------------------------------------
# boundary geometry


def ray_exit(domain: Domain, x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Distance t > 0 with r(x + t u) = 0 for interior x and unit u.

    Model domains are convex, so each ray leaves exactly once; bisection on
    [0, 2 sqrt(N)] (the domain sits inside the closed unit polydisc).
    """
    exps = domain.exps
    x = np.asarray(x, dtype=complex)
    u = np.asarray(u, dtype=complex)
    lo = np.zeros(np.broadcast_shapes(x.shape, u.shape)[:-1])
    hi = np.full_like(lo, 2.0 * np.sqrt(domain.complex_dim) + 1.0)
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        inside = _r(exps, x + mid[..., None] * u) < 0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return 0.5 * (lo + hi)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _foot_points(domain: Domain, x: np.ndarray, iterations: int = 80):
    """Nearest boundary points for interior points x of an ellipsoid.

    Starts from the shortest exit among the outward gradient ray and the
    4N coordinate rays, then iterates u <- normal(exit(x, u)).  On a convex
    domain the tangent plane at the exit point is supporting, so each step
    can only shorten the exit distance; the fixed point is a foot of the
    perpendicular.
    """
    exps = domain.exps
    n = domain.complex_dim
    shape = x.shape[:-1]
    dirs = []
    g = _cgrad(exps, x)
    gn = np.linalg.norm(g, axis=-1, keepdims=True)
    basis = np.eye(n, dtype=complex)
    fallback = np.broadcast_to(basis[0], x.shape)
    dirs.append(np.where(gn > 1e-300, g / np.where(gn > 0, gn, 1.0), fallback))
    for j in range(n):
        for ph in (1.0, -1.0, 1.0j, -1.0j):
            dirs.append(np.broadcast_to(ph * basis[j], x.shape))
    best_t = np.full(shape, np.inf)
    best_u = np.zeros_like(x)
    for u in dirs:
        t = ray_exit(domain, x, u)
        better = t < best_t
        best_t = np.where(better, t, best_t)
        best_u = np.where(better[..., None], u, best_u)
    u = best_u
    for _ in range(iterations):
        y = x + best_t[..., None] * u
        cand = _unit(_cgrad(exps, y))
        t = ray_exit(domain, x, cand)
        better = t < best_t
        if not np.any(better & (best_t - t > 1e-15)):
            break
        best_t = np.where(better, t, best_t)
        u = np.where(better[..., None], cand, u)
    return x + best_t[..., None] * u, best_t


def _require_interior(domain: Domain, z: np.ndarray) -> None:
    r = _r(domain.exps, z)
    if np.any(r >= 0):
        bad = np.asarray(z)[np.asarray(r >= 0)] if np.ndim(r) else z
        raise DomainError(f"point(s) not interior to {domain.descriptor}: {bad!r}")


def boundary_distance(domain: Domain, z):
    """Euclidean distance to the complement.

    Exact (1 - |z|) for balls; for ellipsoids the nearest boundary point is
    located by ray bisection to 1e-12 and normal iteration.
    """
    z = as_points(domain, z)
    _require_interior(domain, z)
    if domain.is_ball:
        return _scalar_or_array(1.0 - np.linalg.norm(z, axis=-1))
    _, d = _foot_points(domain, z)
    return _scalar_or_array(d)


def normal_projection(domain: Domain, z) -> np.ndarray:
    """Normal projection onto the boundary (z / |z| on balls)."""
    z = as_points(domain, z)
    if domain.is_ball:
        nz = np.linalg.norm(z, axis=-1, keepdims=True)
        if np.any(nz == 0):
            raise DomainError("normal projection undefined at the centre of a ball")
        return z / nz
    r = _r(domain.exps, z)
    if np.any(r > 0):
        raise DomainError("normal projection requires points of the closed domain")
    if np.any(np.linalg.norm(_cgrad(domain.exps, z), axis=-1) == 0):
        raise DomainError("normal projection undefined where grad r vanishes")
    out = z.copy()
    interior = r < 0
    if np.any(interior):
        foot, _ = _foot_points(domain, z[interior] if z.ndim > 1 else z)
        if z.ndim > 1:
            out[interior] = foot
        else:
            out = foot
    return out


def in_collar(domain: Domain, z) -> np.ndarray:
    """True where the boundary-adapted (normal frame) rule applies."""
    d = np.asarray(boundary_distance(domain, z))
    return d < COLLAR_FRACTION * domain.inradius


# ----------------------------------------------------------------------------
# sampling


def sample_interior(domain: Domain, n: int, rng: np.random.Generator,
                    collar_bias: float = 0.5, min_depth: float = 1e-4) -> np.ndarray:
    """Seeded interior points, a fraction ``collar_bias`` of them log-uniform
    in relative depth down to ``min_depth`` and the rest volume-uniform."""
    N = domain.complex_dim
    g = rng.standard_normal((n, 2 * N))
    u = _unit(g[:, 0::2] + 1j * g[:, 1::2])
    R = np.ones(n) if domain.is_ball else ray_exit(domain, np.zeros_like(u), u)
    near = rng.random(n) < collar_bias
    depth = np.where(
        near,
        min_depth ** rng.random(n),
        1.0 - rng.random(n) ** (1.0 / (2 * N)),
    )
    depth = np.clip(depth, min_depth, 1.0)
    return (R * (1.0 - depth))[:, None] * u


def distance_equivalence_constants(domain: Domain, n_samples: int = 10_000,
                                   seed: int = 0) -> tuple[float, float]:
    """Empirical (c1, c2) with c1 (-r) <= dist(z, complement) <= c2 (-r)."""
    rng = np.random.Generator(np.random.Philox(key=[seed, 0xD15]))
    z = sample_interior(domain, n_samples, rng)
    d = np.asarray(boundary_distance(domain, z))
    ratio = d / -_r(domain.exps, z)
    return float(ratio.min()), float(ratio.max())

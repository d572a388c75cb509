"""Closed-form manifolds: Euclidean space, the unit sphere and the hyperboloid.

Points are numpy arrays in ambient coordinates and every method broadcasts over
leading batch axes, so ``exp(p, v)`` accepts ``p`` of shape ``(n,)`` or ``(k, n)``.
The chart-metric manifold lives in :mod:`radial_lab.chart`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from .errors import ConfigError, CutLocus, InvalidPoint

POINT_TOL = 1e-9
CUT_LOCUS_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class TangentVec:
    """A tangent vector ``vec`` attached at ``base`` (both ambient/chart coordinates)."""

    base: np.ndarray
    vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", np.asarray(self.base, dtype=float))
        object.__setattr__(self, "vec", np.asarray(self.vec, dtype=float))


def _as_points(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _norm(v):
    return np.sqrt(np.sum(v * v, axis=-1))


@dataclass(frozen=True)
class Manifold:
    """Common interface. Subclasses implement the closed-form geometry."""

    dim: int
    point_tol: float = field(default=POINT_TOL, compare=False)

    kind: ClassVar[str] = ""
    # Distance beyond which minimizing geodesics stop being unique.
    cut_locus_distance: ClassVar[float] = math.inf

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ConfigError(f"dimension must be a positive integer, got {self.dim!r}")

    @property
    def ambient_dim(self) -> int:
        return self.dim

    @property
    def spec(self) -> str:
        return f"{self.kind}:{self.dim}"

    def __str__(self):
        return self.spec

    # -- validation -----------------------------------------------------

    def validate(self, x) -> np.ndarray:
        x = _as_points(x)
        if x.shape[-1:] != (self.ambient_dim,):
            raise InvalidPoint(
                f"{self.spec} points have {self.ambient_dim} coordinates, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise InvalidPoint("point has non-finite coordinates")
        bad = ~self._on_manifold(x)
        if np.any(bad):
            raise InvalidPoint(f"not a point of {self.spec}: {x[bad][0] if x.ndim > 1 else x}")
        return x

    def validate_tangent(self, v: TangentVec) -> TangentVec:
        self.validate(v.base)
        if v.vec.shape != v.base.shape:
            raise InvalidPoint(f"tangent shape {v.vec.shape} does not match base {v.base.shape}")
        if not np.all(np.abs(self._tangency_residual(v.base, v.vec)) <= self.point_tol):
            raise InvalidPoint(f"vector is not tangent to {self.spec} at its base")
        return v

    def _on_manifold(self, x):
        return np.ones(x.shape[:-1], dtype=bool)

    def _tangency_residual(self, p, v):
        return np.zeros(p.shape[:-1])

    # -- geometry -------------------------------------------------------

    def inner(self, p, u, v):
        return np.sum(u * v, axis=-1)

    def norm(self, p, v):
        return np.sqrt(np.maximum(self.inner(p, v, v), 0.0))

    def project_tangent(self, p, w):
        return w

    def exp(self, p, v):
        raise NotImplementedError

    def log(self, p, x):
        raise NotImplementedError

    def dist(self, p, x):
        raise NotImplementedError

    def cut_locus_mask(self, p, x):
        """True where the minimizing geodesic from ``p`` to ``x`` is not unique."""
        shape = np.broadcast_shapes(np.shape(p)[:-1], np.shape(x)[:-1])
        return np.zeros(shape, dtype=bool)

    def geodesic_points(self, x, y, ts):
        """Minimizing geodesic from ``x`` to ``y`` evaluated on parameters ``ts``.

        Returns shape ``batch + (len(ts), ambient_dim)``.
        """
        x = _as_points(x)
        ts = np.asarray(ts, dtype=float)
        v = self.log(x, _as_points(y))
        return self.exp(x[..., None, :], ts[:, None] * v[..., None, :])

    # -- sampling -------------------------------------------------------

    def random_point(self, rng: np.random.Generator, size=None):
        raise NotImplementedError

    def random_direction(self, rng, p):
        """Unit tangent vector(s) at ``p`` with isotropic distribution."""
        p = _as_points(p)
        w = self.project_tangent(p, rng.standard_normal(p.shape))
        n = self.norm(p, w)[..., None]
        return w / np.where(n > 0, n, 1.0)

    def random_tangent(self, rng, p, max_norm):
        """Tangent vector(s) at ``p`` with length uniform in ``[0, max_norm]``."""
        p = _as_points(p)
        r = rng.uniform(0.0, 1.0, size=p.shape[:-1]) * max_norm
        return np.asarray(r)[..., None] * self.random_direction(rng, p)


@dataclass(frozen=True)
class Euclidean(Manifold):
    kind: ClassVar[str] = "euclidean"

    def exp(self, p, v):
        return _as_points(p) + _as_points(v)

    def log(self, p, x):
        return _as_points(x) - _as_points(p)

    def dist(self, p, x):
        return _norm(_as_points(x) - _as_points(p))

    def random_point(self, rng, size=None):
        shape = (self.dim,) if size is None else (size, self.dim)
        return rng.standard_normal(shape)


@dataclass(frozen=True)
class Sphere(Manifold):
    """Unit sphere embedded in ``R^(dim+1)``."""

    kind: ClassVar[str] = "sphere"
    cut_locus_distance: ClassVar[float] = math.pi

    @property
    def ambient_dim(self):
        return self.dim + 1

    def _on_manifold(self, x):
        return np.abs(_norm(x) - 1.0) <= self.point_tol

    def _tangency_residual(self, p, v):
        return np.sum(p * v, axis=-1)

    def project_tangent(self, p, w):
        return w - np.sum(p * w, axis=-1, keepdims=True) * p

    def exp(self, p, v):
        p, v = _as_points(p), _as_points(v)
        theta = _norm(v)[..., None]
        safe = np.where(theta > 0, theta, 1.0)
        x = np.cos(theta) * p + np.where(theta > 0, np.sin(theta) / safe, 1.0) * v
        return x / _norm(x)[..., None]

    def dist(self, p, x):
        # Chord form is accurate at both ends of [0, pi] and symmetric in (p, x).
        p, x = _as_points(p), _as_points(x)
        return 2.0 * np.arctan2(_norm(x - p), _norm(x + p))

    def cut_locus_mask(self, p, x):
        return self.dist(p, x) > math.pi - CUT_LOCUS_TOL

    def log(self, p, x):
        p, x = _as_points(p), _as_points(x)
        if np.any(self.cut_locus_mask(p, x)):
            raise CutLocus("antipodal points: the minimizing geodesic is not unique")
        theta = self.dist(p, x)[..., None]
        u = x - np.sum(p * x, axis=-1, keepdims=True) * p
        s = _norm(u)[..., None]
        return np.where(s > 0, theta / np.where(s > 0, s, 1.0), 0.0) * u

    def random_point(self, rng, size=None):
        shape = (self.ambient_dim,) if size is None else (size, self.ambient_dim)
        x = rng.standard_normal(shape)
        return x / _norm(x)[..., None]


def minkowski(u, v):
    return np.sum(u[..., :-1] * v[..., :-1], axis=-1) - u[..., -1] * v[..., -1]


@dataclass(frozen=True)
class Hyperbolic(Manifold):
    """Hyperboloid ``<x, x>_L = -1``, ``x[-1] > 0`` in Minkowski space ``R^(dim,1)``."""

    kind: ClassVar[str] = "hyperbolic"

    @property
    def ambient_dim(self):
        return self.dim + 1

    @property
    def origin(self):
        o = np.zeros(self.ambient_dim)
        o[-1] = 1.0
        return o

    def _on_manifold(self, x):
        return (np.abs(minkowski(x, x) + 1.0) <= self.point_tol) & (x[..., -1] > 0)

    def _tangency_residual(self, p, v):
        return minkowski(p, v)

    def inner(self, p, u, v):
        return minkowski(u, v)

    def project_tangent(self, p, w):
        return w + minkowski(p, w)[..., None] * p

    def exp(self, p, v):
        p, v = _as_points(p), _as_points(v)
        r = np.sqrt(np.maximum(minkowski(v, v), 0.0))[..., None]
        safe = np.where(r > 0, r, 1.0)
        return np.cosh(r) * p + np.where(r > 0, np.sinh(r) / safe, 1.0) * v

    def log(self, p, x):
        p, x = _as_points(p), _as_points(x)
        u = x + minkowski(p, x)[..., None] * p
        s = np.sqrt(np.maximum(minkowski(u, u), 0.0))[..., None]
        r = np.arcsinh(s)
        return np.where(s > 0, r / np.where(s > 0, s, 1.0), 0.0) * u

    def dist(self, p, x):
        p, x = _as_points(p), _as_points(x)
        d = x - p
        return 2.0 * np.arcsinh(0.5 * np.sqrt(np.maximum(minkowski(d, d), 0.0)))

    def random_point(self, rng, size=None, spread=2.0):
        base = self.origin if size is None else np.tile(self.origin, (size, 1))
        return self.exp(base, self.random_tangent(rng, base, spread))


_KINDS = {cls.kind: cls for cls in (Euclidean, Sphere, Hyperbolic)}


def parse_manifold(text: str) -> Manifold:
    """Parse ``euclidean:<n>``, ``sphere:<n>``, ``hyperbolic:<n>`` or ``chart:sphere2``."""
    kind, sep, arg = text.strip().partition(":")
    if not sep:
        raise ConfigError(f"manifold must look like 'kind:arg', got {text!r}")
    if kind == "chart":
        from .chart import chart_manifold

        return chart_manifold(arg)
    if kind not in _KINDS:
        raise ConfigError(f"unknown manifold kind {kind!r}")
    try:
        n = int(arg)
    except ValueError:
        raise ConfigError(f"bad dimension in manifold {text!r}") from None
    return _KINDS[kind](n)


# Validating wrappers; the methods above skip input checks.


def exp_map(m: Manifold, v: TangentVec) -> np.ndarray:
    m.validate_tangent(v)
    return m.exp(v.base, v.vec)


def log_map(m: Manifold, p, x) -> TangentVec:
    p, x = m.validate(p), m.validate(x)
    return TangentVec(p, m.log(p, x))


def dist(m: Manifold, p, x):
    return m.dist(m.validate(p), m.validate(x))


def geodesic_point(m: Manifold, x, y, t):
    """Point at parameter ``t`` of the minimizing geodesic from ``x`` to ``y``."""
    x, y = m.validate(x), m.validate(y)
    return m.exp(x, np.asarray(t, dtype=float) * m.log(x, y))

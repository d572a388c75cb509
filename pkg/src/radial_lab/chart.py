"""Manifolds given by a metric in one coordinate chart.

Geodesics solve ``x'' + Gamma(x)(x', x') = 0`` with a fixed-step classical RK4
scheme; the logarithm is recovered by shooting (damped Newton on the endpoint
residual, Jacobian from the variational equations integrated alongside).

Chart callables work on *component-first* arrays: a batch of points is ``x`` of
shape ``(n, ...)`` with ``x[i]`` the i-th coordinate, the metric is
``(n, n, ...)`` and Christoffel symbols are ``Gamma[k, i, j, ...]``. The
:class:`ChartManifold` methods take the usual batch-first arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Optional, Sequence

import numpy as np

from .errors import ChartSingularity, ConfigError, IntegrationDiverged, InvalidPoint, ShootingNoConverge
from .manifolds import Manifold, TangentVec

STEPS_PER_UNIT = 256
FD_STEP = 1e-5
CHART_TOL = 1e-6
SINGULAR_BAND = 1e-3
NEWTON_TOL = 1e-10


def _cf(a):
    return np.moveaxis(np.asarray(a, dtype=float), -1, 0)


def _bf(a):
    return np.moveaxis(a, 0, -1)


@dataclass(frozen=True, eq=False)
class ChartMetric:
    """Metric coefficients on a coordinate box.

    ``christoffel`` may be omitted, in which case it is built from central
    differences of ``metric`` with step ``fd_step``. ``accel(x, v)`` is
    ``-Gamma(x)(v, v)`` and ``accel_jacobian(x, v)`` returns
    ``(a, da/dx, da/dv)``; both fall back to the Christoffel symbols.
    ``singular`` flags coordinates inside the exclusion band, ``periods`` marks
    periodic coordinates and ``domain`` is the ``(lower, upper)`` sampling box.
    """

    name: str
    dim: int
    metric: Callable[[np.ndarray], np.ndarray]
    christoffel: Optional[Callable[[np.ndarray], np.ndarray]] = None
    accel: Optional[Callable] = None
    accel_jacobian: Optional[Callable] = None
    singular: Optional[Callable[[np.ndarray], np.ndarray]] = None
    periods: Sequence[Optional[float]] = ()
    domain: Optional[tuple] = None
    fd_step: float = FD_STEP

    def gamma(self, x):
        if self.christoffel is not None:
            return self.christoffel(x)
        return christoffel_from_metric(self.metric, x, self.fd_step)

    def geodesic_accel(self, x, v):
        if self.accel is not None:
            return self.accel(x, v)
        return -np.einsum("kij...,i...,j...->k...", self.gamma(x), v, v)

    def geodesic_accel_jacobian(self, x, v):
        if self.accel_jacobian is not None:
            return self.accel_jacobian(x, v)
        gam = self.gamma(x)
        a = -np.einsum("kij...,i...,j...->k...", gam, v, v)
        av = -2.0 * np.einsum("kij...,i...->kj...", gam, v)
        n = x.shape[0]
        ax = np.empty((n, n) + x.shape[1:])
        for l in range(n):
            e = np.zeros((n,) + (1,) * (x.ndim - 1))
            e[l] = self.fd_step
            ax[:, l] = (self.geodesic_accel(x + e, v) - self.geodesic_accel(x - e, v)) / (2 * self.fd_step)
        return a, ax, av


def christoffel_from_metric(metric, x, h=FD_STEP):
    """Christoffel symbols of the second kind via central differences of ``metric``."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    g = metric(x)
    dg = np.empty((n,) + g.shape)  # dg[l, i, j] = d_l g_ij
    for l in range(n):
        e = np.zeros((n,) + (1,) * (x.ndim - 1))
        e[l] = h
        dg[l] = (metric(x + e) - metric(x - e)) / (2 * h)
    ginv = _cf(_cf(np.linalg.inv(_bf(_bf(g)))))
    # first kind: Gamma_{l,ij} = (d_i g_jl + d_j g_il - d_l g_ij) / 2
    first = 0.5 * (np.einsum("ijl...->lij...", dg) + np.einsum("jil...->lij...", dg) - dg)
    return np.einsum("kl...,lij...->kij...", ginv, first)


# -- the round 2-sphere in colatitude/longitude (theta, phi) -------------------


def _sphere_metric(x):
    s = np.sin(x[0])
    one, zero = np.ones_like(s), np.zeros_like(s)
    return np.array([[one, zero], [zero, s * s]])


def _sphere_christoffel(x):
    s, c = np.sin(x[0]), np.cos(x[0])
    gam = np.zeros((2, 2, 2) + s.shape)
    gam[0, 1, 1] = -s * c
    gam[1, 0, 1] = gam[1, 1, 0] = c / s
    return gam


def _sphere_accel(x, v):
    s, c = np.sin(x[0]), np.cos(x[0])
    return np.array([s * c * v[1] * v[1], -2.0 * c / s * v[0] * v[1]])


def _sphere_accel_jacobian(x, v):
    s, c = np.sin(x[0]), np.cos(x[0])
    cot = c / s
    dth, dph = v[0], v[1]
    zero = np.zeros_like(s)
    a = np.array([s * c * dph * dph, -2.0 * cot * dth * dph])
    ax = np.array([[(c * c - s * s) * dph * dph, zero],
                   [2.0 * dth * dph / (s * s), zero]])
    av = np.array([[zero, 2.0 * s * c * dph],
                   [-2.0 * cot * dph, -2.0 * cot * dth]])
    return a, ax, av


def _sphere_singular(x, band=SINGULAR_BAND):
    return (x[0] < band) | (x[0] > math.pi - band)


SPHERE2 = ChartMetric(
    name="sphere2",
    dim=2,
    metric=_sphere_metric,
    christoffel=_sphere_christoffel,
    accel=_sphere_accel,
    accel_jacobian=_sphere_accel_jacobian,
    singular=_sphere_singular,
    periods=(None, 2 * math.pi),
    domain=((0.3, -math.pi), (math.pi - 0.3, math.pi)),
)

CHARTS = {"sphere2": SPHERE2}


def chart_to_embedded(x):
    """(theta, phi) -> unit vector in R^3."""
    x = np.asarray(x, dtype=float)
    th, ph = x[..., 0], x[..., 1]
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)


def embedded_to_chart(y):
    y = np.asarray(y, dtype=float)
    th = np.arctan2(np.hypot(y[..., 0], y[..., 1]), y[..., 2])
    return np.stack([th, np.arctan2(y[..., 1], y[..., 0])], axis=-1)


def chart_tangent_to_embedded(x, v):
    """Push a (theta, phi) velocity forward to R^3."""
    x, v = np.asarray(x, dtype=float), np.asarray(v, dtype=float)
    th, ph = x[..., 0], x[..., 1]
    e_th = np.stack([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)], axis=-1)
    e_ph = np.stack([-np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), np.zeros_like(th)], axis=-1)
    return v[..., 0:1] * e_th + v[..., 1:2] * e_ph


def embedded_tangent_to_chart(y, w):
    """Pull an R^3 tangent vector at ``y`` back to (theta, phi) components."""
    x = embedded_to_chart(y)
    th, ph = x[..., 0], x[..., 1]
    w = np.asarray(w, dtype=float)
    e_th = np.stack([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)], axis=-1)
    e_ph = np.stack([-np.sin(ph), np.cos(ph), np.zeros_like(th)], axis=-1)
    return np.stack([np.sum(w * e_th, axis=-1), np.sum(w * e_ph, axis=-1) / np.sin(th)], axis=-1)


# -- the manifold --------------------------------------------------------------


@dataclass(frozen=True)
class ChartManifold(Manifold):
    chart: ChartMetric = field(default=SPHERE2, compare=False)
    steps_per_unit: int = STEPS_PER_UNIT
    chart_tol: float = CHART_TOL
    max_newton: int = 50

    kind: ClassVar[str] = "chart"

    @property
    def spec(self):
        return f"chart:{self.chart.name}"

    def _on_manifold(self, x):
        if self.chart.singular is None:
            return np.ones(x.shape[:-1], dtype=bool)
        return ~self.chart.singular(_cf(x))

    def inner(self, p, u, v):
        g = self.chart.metric(_cf(p))
        return np.einsum("i...,ij...,j...->...", _cf(u), g, _cf(v))

    def wrap(self, d):
        """Reduce coordinate differences on periodic axes to [-P/2, P/2)."""
        d = np.array(d, dtype=float)
        for i, period in enumerate(self.chart.periods):
            if period:
                d[..., i] = (d[..., i] + period / 2) % period - period / 2
        return d

    def _check(self, x, *rest):
        if self.chart.singular is not None and np.any(self.chart.singular(x)):
            raise ChartSingularity(f"geodesic entered the excluded band of chart {self.chart.name}")
        for a in (x,) + rest:
            if not np.all(np.isfinite(a)):
                raise IntegrationDiverged("non-finite state during geodesic integration")

    def flow(self, p, v, t=1.0):
        """Integrate from ``p`` with velocity ``v`` up to parameter ``t``; returns ``(x, x')``."""
        p, v = np.broadcast_arrays(_cf(p), _cf(v))
        x, u = p.copy(), v.copy()
        steps = max(1, math.ceil(self.steps_per_unit * abs(t)))
        h = t / steps
        accel = self.chart.geodesic_accel
        for _ in range(steps):
            k1x, k1u = u, accel(x, u)
            k2x = u + 0.5 * h * k1u
            k2u = accel(x + 0.5 * h * k1x, k2x)
            k3x = u + 0.5 * h * k2u
            k3u = accel(x + 0.5 * h * k2x, k3x)
            k4x = u + h * k3u
            k4u = accel(x + h * k3x, k4x)
            x = x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
            u = u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
            self._check(x, u)
        return _bf(x), _bf(u)

    def flow_jacobian(self, p, v):
        """Endpoint ``x(1)`` and its Jacobian ``dx(1)/dv`` (component-first in and out).

        The variational equations ``J'' = A_x J + A_v J'`` ride along in the same
        RK4 steps, reusing the acceleration evaluations of the base geodesic.
        """
        n = p.shape[0]
        x, u = p.copy(), v.copy()
        jx = np.zeros((n, n) + p.shape[1:])
        ju = np.zeros_like(jx)
        for i in range(n):
            ju[i, i] = 1.0
        h = 1.0 / max(1, self.steps_per_unit)
        f = self.chart.geodesic_accel_jacobian

        def rhs(y, w, jy, jw):
            a, ax, av = f(y, w)
            return w, a, jw, np.einsum("ij...,jk...->ik...", ax, jy) + np.einsum("ij...,jk...->ik...", av, jw)

        for _ in range(max(1, self.steps_per_unit)):
            k1 = rhs(x, u, jx, ju)
            k2 = rhs(*(s + 0.5 * h * k for s, k in zip((x, u, jx, ju), k1)))
            k3 = rhs(*(s + 0.5 * h * k for s, k in zip((x, u, jx, ju), k2)))
            k4 = rhs(*(s + h * k for s, k in zip((x, u, jx, ju), k3)))
            x, u, jx, ju = (s + h / 6.0 * (a + 2 * b + 2 * c + d)
                            for s, a, b, c, d in zip((x, u, jx, ju), k1, k2, k3, k4))
            self._check(x, jx)
        return x, jx

    def exp(self, p, v):
        return self.flow(p, v, 1.0)[0]

    def log(self, p, x):
        return self.shoot(p, x)

    def dist(self, p, x):
        return self.norm(p, self.log(p, x))

    def shoot(self, p, x):
        """Initial velocity at ``p`` whose unit-time geodesic ends at ``x``.

        Damped Newton: a step that fails to reduce the endpoint residual is
        halved on the next pass instead of being trusted.
        """
        p, x = np.asarray(p, dtype=float), np.asarray(x, dtype=float)
        shape = np.broadcast_shapes(p.shape, x.shape)
        n = shape[-1]
        p = np.broadcast_to(p, shape).reshape(-1, n).T.copy()
        x = np.broadcast_to(x, shape).reshape(-1, n).T
        d = self.wrap(x.T - p.T).T
        target = p + d
        # second-order Taylor guess: x(1) ~ p + v + a(p, v) / 2
        v = d - 0.5 * self.chart.geodesic_accel(p, d)
        best_err = np.full(p.shape[1], np.inf)
        best_v = v.copy()
        step = np.zeros_like(v)
        active = np.any(d != 0, axis=0)
        best_err[~active] = 0.0
        best_v[:, ~active] = 0.0
        for _ in range(self.max_newton):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            va = v[:, idx]
            end, jac = self.flow_jacobian(p[:, idx], va)
            res = end - target[:, idx]
            err = np.max(np.abs(res), axis=0)
            improved = err < best_err[idx]
            best_err[idx[improved]] = err[improved]
            best_v[:, idx[improved]] = va[:, improved]
            new_step = np.zeros_like(va)
            if np.any(improved):
                jb = np.moveaxis(jac[:, :, improved], -1, 0)
                new_step[:, improved] = -np.linalg.solve(jb, res[:, improved].T[..., None])[..., 0].T
            stuck = ~improved
            new_step[:, stuck] = 0.5 * step[:, idx[stuck]]
            v[:, idx] = np.where(improved, va, best_v[:, idx]) + new_step
            step[:, idx] = new_step
            finished = (best_err[idx] <= NEWTON_TOL) | (np.max(np.abs(new_step), axis=0) < 1e-15)
            active[idx[finished]] = False
        if np.any(best_err > self.chart_tol):
            raise ShootingNoConverge(
                f"shooting residual {float(np.max(best_err)):.3g} above {self.chart_tol:g}")
        return best_v.T.reshape(shape)

    def random_point(self, rng, size=None):
        if self.chart.domain is None:
            raise NotImplementedError(f"chart {self.chart.name} has no sampling domain")
        lo, hi = (np.asarray(b, dtype=float) for b in self.chart.domain)
        shape = (self.dim,) if size is None else (size, self.dim)
        return rng.uniform(lo, hi, size=shape)


def chart_manifold(name: str, **kwargs) -> ChartManifold:
    if name not in CHARTS:
        raise ConfigError(f"unknown chart {name!r}; available: {sorted(CHARTS)}")
    chart = CHARTS[name]
    return ChartManifold(chart.dim, chart=chart, **kwargs)


def integrate_geodesic(m: ChartManifold, v: TangentVec, t: float) -> np.ndarray:
    """Chart point at parameter ``t`` of the geodesic with initial velocity ``v``."""
    if not isinstance(m, ChartManifold):
        raise InvalidPoint("integrate_geodesic needs a chart manifold")
    m.validate(v.base)
    return m.flow(v.base, v.vec, t)[0]


def shoot_log(m: ChartManifold, p, x) -> TangentVec:
    if not isinstance(m, ChartManifold):
        raise InvalidPoint("shoot_log needs a chart manifold")
    p, x = m.validate(p), m.validate(x)
    return TangentVec(p, m.shoot(p, x))

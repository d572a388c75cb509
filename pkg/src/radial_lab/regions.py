"""Subsets of a manifold given by a membership oracle and a seeded sampler.

The oracle is expressed as a *violation*: how far a point lies outside the
region (zero inside). A point is a member when its violation is at most the
region's boundary tolerance ``delta``, so points that land within rounding
error of an analytic boundary still count as inside.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConfigError, SamplerExhausted
from .manifolds import Euclidean, Manifold, Sphere
from .pointio import read_points

DELTA = 1e-7
KINDS = ("ball", "cap", "hemisphere", "halfspace", "finite_set", "union", "intersection", "custom")


@dataclass(frozen=True, eq=False)
class Region:
    manifold: Manifold
    kind: str
    violation: Callable[[np.ndarray], np.ndarray]
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    delta: float = DELTA
    children: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown region kind {self.kind!r}")

    def excess(self, points) -> np.ndarray:
        """Violation for a batch ``(..., n)`` of points."""
        points = np.asarray(points, dtype=float)
        flat = points.reshape(-1, points.shape[-1])
        return np.asarray(self.violation(flat), dtype=float).reshape(points.shape[:-1])

    def contains(self, points) -> np.ndarray:
        return self.excess(points) <= self.delta

    def sample(self, rng: np.random.Generator, k: int) -> np.ndarray:
        return np.asarray(self.sampler(rng, int(k)), dtype=float).reshape(int(k), self.manifold.ambient_dim)

    def __str__(self):
        return self.label or self.kind


# -- distance from points to a geodesic segment -----------------------------------


def _sphere_segment_distance(qs, x, y):
    length = float(2.0 * np.arctan2(np.linalg.norm(y - x), np.linalg.norm(y + x)))
    if length == 0.0:
        return 2.0 * np.arctan2(np.linalg.norm(qs - x, axis=-1), np.linalg.norm(qs + x, axis=-1))
    e = y - np.dot(x, y) * x
    e /= np.linalg.norm(e)
    a, b = qs @ x, qs @ e
    rho = np.hypot(a, b)
    perp = np.linalg.norm(qs - a[:, None] * x - b[:, None] * e, axis=-1)
    psi = np.arctan2(b, a)
    on_arc = (psi >= 0.0) & (psi <= length)
    to_circle = np.arctan2(perp, rho)
    dx = 2.0 * np.arctan2(np.linalg.norm(qs - x, axis=-1), np.linalg.norm(qs + x, axis=-1))
    dy = 2.0 * np.arctan2(np.linalg.norm(qs - y, axis=-1), np.linalg.norm(qs + y, axis=-1))
    return np.where(on_arc, to_circle, np.minimum(dx, dy))


def _euclidean_segment_distance(qs, x, y):
    d = y - x
    dd = float(d @ d)
    t = np.zeros(len(qs)) if dd == 0 else np.clip((qs - x) @ d / dd, 0.0, 1.0)
    return np.linalg.norm(qs - (x + t[:, None] * d), axis=-1)


def geodesic_distance_profile(m: Manifold, qs, x, y, t_steps=65, refine=True):
    """Distance from each of ``qs`` to the minimizing geodesic segment from ``x`` to ``y``.

    The segment is sampled on a uniform grid of ``t_steps`` parameters; with
    ``refine`` the best grid bracket of each point is polished by bounded
    scalar minimization so the result is the distance to the continuous curve.
    """
    qs = np.atleast_2d(np.asarray(qs, dtype=float))
    ts = np.linspace(0.0, 1.0, t_steps)
    v = m.log(x, y)
    curve = m.exp(x, ts[:, None] * v)
    d = m.dist(qs[:, None, :], curve[None, :, :])
    best = np.argmin(d, axis=1)
    out = d[np.arange(len(qs)), best]
    if not refine or t_steps < 2:
        return out
    for i, q in enumerate(qs):
        lo, hi = ts[max(best[i] - 1, 0)], ts[min(best[i] + 1, t_steps - 1)]

        def sq(t, q=q):
            return float(m.dist(q, m.exp(x, t * v))) ** 2

        res = minimize_scalar(sq, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        out[i] = min(out[i], math.sqrt(max(res.fun, 0.0)))
    return out


def segment_distance(m: Manifold, qs, x, y, t_steps=65):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    qs = np.atleast_2d(np.asarray(qs, dtype=float))
    if isinstance(m, Sphere):
        return _sphere_segment_distance(qs, x, y)
    if isinstance(m, Euclidean):
        return _euclidean_segment_distance(qs, x, y)
    return geodesic_distance_profile(m, qs, x, y, t_steps)


# -- constructors -------------------------------------------------------------------


def _tangent_ball_sampler(m: Manifold, center, radius):
    center = np.asarray(center, dtype=float)

    def sample(rng, k):
        base = np.broadcast_to(center, (k, center.size))
        u = m.random_direction(rng, base)
        r = radius * rng.uniform(0.0, 1.0, size=k) ** (1.0 / m.dim)
        return m.exp(base, r[:, None] * u)

    return sample


def ball(m: Manifold, center, radius: float, delta=DELTA, kind="ball") -> Region:
    """Closed geodesic ball ``dist(center, x) <= radius``."""
    center = m.validate(center)
    if radius <= 0:
        raise ConfigError("ball radius must be positive")

    def violation(pts):
        return np.maximum(m.dist(center, pts) - radius, 0.0)

    return Region(m, kind, violation, _tangent_ball_sampler(m, center, radius), delta,
                  label=f"{kind}({_fmt(center)}; {radius:g})")


def cap(m: Manifold, center, radius: float, delta=DELTA) -> Region:
    if not isinstance(m, Sphere):
        raise ConfigError("cap regions live on a sphere")
    return ball(m, center, radius, delta, kind="cap")


def hemisphere(m: Manifold, pole, delta=DELTA) -> Region:
    """Open hemisphere centered at ``pole``; the boundary counts as inside within ``delta``."""
    if not isinstance(m, Sphere):
        raise ConfigError("hemisphere regions live on a sphere")
    pole = m.validate(pole)

    def violation(pts):
        return np.maximum(m.dist(pole, pts) - math.pi / 2, 0.0)

    return Region(m, "hemisphere", violation, _tangent_ball_sampler(m, pole, math.pi / 2), delta,
                  label=f"hemisphere({_fmt(pole)})")


def halfspace(m: Manifold, normal, offset: float, delta=DELTA) -> Region:
    """Euclidean half-space ``<normal, x> <= offset``."""
    if not isinstance(m, Euclidean):
        raise ConfigError("halfspace regions live in Euclidean space")
    normal = np.asarray(normal, dtype=float)
    nn = float(np.linalg.norm(normal))
    if normal.shape != (m.dim,) or nn == 0:
        raise ConfigError("halfspace normal must be a nonzero vector of the ambient dimension")
    unit = normal / nn
    foot = offset / nn * unit

    def violation(pts):
        return np.maximum(pts @ unit - offset / nn, 0.0)

    def sample(rng, k):
        g = foot + rng.standard_normal((k, m.dim))
        over = g @ unit - offset / nn
        return g - 2.0 * np.maximum(over, 0.0)[:, None] * unit

    return Region(m, "halfspace", violation, sample, delta, label=f"halfspace({_fmt(normal)}; {offset:g})")


def finite_set(m: Manifold, points, delta=DELTA) -> Region:
    pts = m.validate(np.atleast_2d(np.asarray(points, dtype=float)))
    if len(pts) == 0:
        raise ConfigError("finite set must be nonempty")

    def violation(q):
        return np.min(m.dist(q[:, None, :], pts[None, :, :]), axis=1)

    def sample(rng, k):
        return pts[rng.integers(0, len(pts), size=k)]

    return Region(m, "finite_set", violation, sample, delta, label=f"points[{len(pts)}]")


def geodesic_arc(m: Manifold, x, y, delta=DELTA) -> Region:
    """The minimizing geodesic segment from ``x`` to ``y`` as a point set."""
    x, y = m.validate(x), m.validate(y)
    v = m.log(x, y)

    def violation(q):
        return segment_distance(m, q, x, y)

    def sample(rng, k):
        return m.exp(x, rng.uniform(0.0, 1.0, size=k)[:, None] * v)

    return Region(m, "custom", violation, sample, delta, label=f"arc({_fmt(x)} -> {_fmt(y)})")


def union(*regions: Region, delta=None) -> Region:
    """Pointwise ``or`` of the children; samples pick a child uniformly, then sample it."""
    m = _common_manifold(regions)
    delta = min(r.delta for r in regions) if delta is None else delta

    def violation(pts):
        return np.min([r.violation(pts) for r in regions], axis=0)

    def sample(rng, k):
        which = rng.integers(0, len(regions), size=k)
        out = np.empty((k, m.ambient_dim))
        for i, r in enumerate(regions):
            sel = which == i
            if np.any(sel):
                out[sel] = r.sample(rng, int(sel.sum()))
        return out

    return Region(m, "union", violation, sample, delta, tuple(regions),
                  label="union(" + ", ".join(map(str, regions)) + ")")


def intersection(*regions: Region, delta=None, max_rounds=200) -> Region:
    """Pointwise ``and`` of the children; samples by rejection from the first child."""
    m = _common_manifold(regions)
    delta = min(r.delta for r in regions) if delta is None else delta

    def violation(pts):
        return np.max([r.violation(pts) for r in regions], axis=0)

    def sample(rng, k):
        got = []
        need = k
        for _ in range(max_rounds):
            cand = regions[0].sample(rng, max(4 * need, 16))
            keep = cand[violation(cand) <= delta][:need]
            got.append(keep)
            need -= len(keep)
            if need == 0:
                return np.concatenate(got)
        raise SamplerExhausted(f"intersection sampler found too few members after {max_rounds} rounds")

    return Region(m, "intersection", violation, sample, delta, tuple(regions),
                  label="intersect(" + ", ".join(map(str, regions)) + ")")


def custom(m: Manifold, violation, sampler, label="custom", delta=DELTA) -> Region:
    return Region(m, "custom", violation, sampler, delta, label=label)


def _common_manifold(regions):
    if not regions:
        raise ConfigError("union/intersection need at least one region")
    m = regions[0].manifold
    if any(r.manifold != m for r in regions):
        raise ConfigError("all regions must live on the same manifold")
    return m


def _fmt(x):
    return " ".join(f"{c:.6g}" for c in np.ravel(x))


# -- region mini-language -----------------------------------------------------

_CALL = re.compile(r"^\s*(union|intersect|intersection)\s*\((.*)\)\s*$", re.S)


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ConfigError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ConfigError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _numbers(tokens, count, what):
    if len(tokens) != count:
        raise ConfigError(f"{what} expects {count} numbers, got {len(tokens)}")
    try:
        return np.array([float(t) for t in tokens])
    except ValueError:
        raise ConfigError(f"{what}: non-numeric argument in {' '.join(tokens)!r}") from None


def parse_region(text: str, m: Manifold, base_dir: Optional[Path] = None, delta=DELTA) -> Region:
    """Build a region from its text description.

    ``ball <center> <radius>``, ``cap <center> <radius>``, ``hemisphere <pole>``,
    ``halfspace <normal> <offset>``, ``points <file>``, ``arc <x> <y>``,
    ``union(...)`` and ``intersect(...)`` with comma-separated children.
    """
    call = _CALL.match(text)
    if call:
        children = [parse_region(c, m, base_dir, delta) for c in _split_top(call.group(2))]
        if call.group(1) == "union":
            return union(*children)
        return intersection(*children)
    tokens = text.split()
    if not tokens:
        raise ConfigError("empty region description")
    head, args = tokens[0], tokens[1:]
    n = m.ambient_dim
    if head in ("ball", "cap"):
        vals = _numbers(args, n + 1, head)
        return (ball if head == "ball" else cap)(m, vals[:n], vals[n], delta)
    if head == "hemisphere":
        return hemisphere(m, _numbers(args, n, head), delta)
    if head == "halfspace":
        vals = _numbers(args, n + 1, head)
        return halfspace(m, vals[:n], vals[n], delta)
    if head == "arc":
        vals = _numbers(args, 2 * n, head)
        return geodesic_arc(m, vals[:n], vals[n:], delta)
    if head == "points":
        if len(args) != 1:
            raise ConfigError("points expects one file path")
        path = Path(args[0])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return finite_set(m, read_points(path), delta)
    raise ConfigError(f"unknown region kind {head!r}")

"""Direction functions and the lambda-radial contraction toward a base point.

A direction function picks, for each target ``x``, one initial velocity at the
base ``p`` whose geodesic reaches ``x`` at parameter 1. The contraction then
moves ``x`` to the point at parameter ``lam`` of that geodesic. On Euclidean
space this is the affine map ``lam * x + (1 - lam) * p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigError, GeometryError, InvalidPoint, MissingOverride
from .manifolds import Manifold, TangentVec

OVERRIDE_TOL = 1e-6
MATCH_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DirectionPolicy:
    """Rule choosing one element of the set of geodesic initial velocities from p to x.

    ``canonical`` uses the logarithm map and refuses cut-locus targets.
    ``table`` looks targets up in ``overrides`` (pairs of target point and
    velocity at the base); with ``fallback=True`` unlisted targets use the
    canonical rule instead of raising :class:`MissingOverride`.
    """

    mode: str = "canonical"
    overrides: Sequence[tuple] = ()
    fallback: bool = False

    def __post_init__(self):
        if self.mode not in ("canonical", "table"):
            raise ConfigError(f"unknown direction policy mode {self.mode!r}")
        if self.mode == "canonical" and self.overrides:
            raise ConfigError("canonical policy takes no overrides")
        entries = tuple((np.asarray(x, dtype=float), np.asarray(v, dtype=float))
                        for x, v in self.overrides)
        object.__setattr__(self, "overrides", entries)

    @classmethod
    def table(cls, overrides, fallback=False):
        return cls("table", tuple(overrides), fallback)

    def lookup(self, x):
        for target, vec in self.overrides:
            if target.shape == x.shape and np.max(np.abs(target - x)) <= MATCH_TOL:
                return vec
        return None


CANONICAL = DirectionPolicy()


@dataclass(frozen=True, eq=False)
class ContractionMap:
    """``x -> gamma_px(lam)`` for the geodesic selected by ``policy``."""

    manifold: Manifold
    base: np.ndarray
    lam: float
    policy: DirectionPolicy = field(default=CANONICAL)

    def __post_init__(self):
        if not 0.0 < self.lam <= 1.0:
            raise ConfigError(f"contraction factor must lie in (0, 1], got {self.lam}")
        object.__setattr__(self, "base", self.manifold.validate(self.base))
        m = self.manifold
        for target, vec in self.policy.overrides:
            m.validate(target)
            m.validate_tangent(TangentVec(self.base, vec))
            reached = m.exp(self.base, vec)
            if np.max(np.abs(reached - target)) > OVERRIDE_TOL:
                raise InvalidPoint(f"override velocity does not reach its target {target}")

    def with_lambda(self, lam) -> "ContractionMap":
        return ContractionMap(self.manifold, self.base, lam, self.policy)

    def direction(self, x) -> TangentVec:
        x = self.manifold.validate(x)
        if self.policy.mode == "table":
            vec = self.policy.lookup(x)
            if vec is not None:
                return TangentVec(self.base, vec)
            if not self.policy.fallback:
                raise MissingOverride(f"no direction override for {x}")
        return TangentVec(self.base, self.manifold.log(self.base, x))

    def directions(self, xs):
        """Velocities at the base for a batch ``(k, n)`` of targets.

        Errors carry the index of the first offending element.
        """
        xs = self.manifold.validate(np.atleast_2d(xs))
        if self.policy.mode == "canonical":
            try:
                return self.manifold.log(self.base, xs)
            except GeometryError:
                pass  # locate the culprit one element at a time below
        out = np.empty_like(xs)
        for i, x in enumerate(xs):
            try:
                out[i] = self.direction(x).vec
            except GeometryError as err:
                raise err.with_index(i)
        return out

    def contract_point(self, x):
        return self.manifold.exp(self.base, self.lam * self.direction(x).vec)

    def contract_many(self, xs):
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        if len(xs) == 0:
            return xs.reshape(0, self.manifold.ambient_dim)
        return self.manifold.exp(self.base, self.lam * self.directions(xs))


def direction(c: ContractionMap, x) -> TangentVec:
    return c.direction(x)


def contract_point(c: ContractionMap, x):
    return c.contract_point(x)


def contract_set(c: ContractionMap, points) -> list:
    """Elementwise contraction preserving order; errors name the first failing index."""
    points = list(points)
    if not points:
        return []
    return list(c.contract_many(np.asarray(points, dtype=float)))


def contract_curve(c: ContractionMap, curve) -> list:
    """Pointwise contraction of a sampled curve, sample order preserved."""
    return contract_set(c, curve)

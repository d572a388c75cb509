"""Bundled scenes: the concrete sets and base points the experiments run on."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import regions as R
from .manifolds import Euclidean, Manifold, Sphere

NORTH = np.array([0.0, 0.0, 1.0])
EQ_X = np.array([1.0, 0.0, 0.0])
EQ_Y = np.array([0.0, 1.0, 0.0])
LOW_COLATITUDE = 2 * math.pi / 3


@dataclass(frozen=True, eq=False)
class Scene:
    name: str
    claim: str
    manifold: Manifold
    region: R.Region
    p: np.ndarray


def colatitude_point(colat, lon=0.0):
    return np.array([math.sin(colat) * math.cos(lon), math.sin(colat) * math.sin(lon), math.cos(colat)])


def equator_arc_with_pole() -> Scene:
    S = Sphere(2)
    region = R.union(R.geodesic_arc(S, EQ_X, EQ_Y), R.finite_set(S, [NORTH]))
    return Scene("arc-with-pole", "an equator arc together with the pole is not p^lambda-convex for any lambda",
                 S, region, NORTH)


def hemisphere_two_points() -> Scene:
    S = Sphere(2)
    lower = [colatitude_point(LOW_COLATITUDE, 0.0), colatitude_point(LOW_COLATITUDE, math.pi / 2)]
    region = R.union(R.hemisphere(S, NORTH), R.finite_set(S, lower))
    return Scene("hemisphere-two-points",
                 "an open hemisphere plus two lower points is disconnected yet p^lambda-convex for some lambda",
                 S, region, NORTH)


def finite_set_scene() -> Scene:
    E = Euclidean(2)
    pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
    return Scene("finite-set", "a finite set of more than two points is not p^lambda-convex",
                 E, R.finite_set(E, pts), np.zeros(2))


def ball_with_outlier() -> Scene:
    E = Euclidean(2)
    region = R.union(R.ball(E, [0.0, 0.0], 1.0), R.finite_set(E, [[3.0, 0.0]]))
    return Scene("ball-outlier", "an interior base point admits a contraction threshold (here 1/3)",
                 E, region, np.zeros(2))


def euclidean_ball() -> Scene:
    E = Euclidean(2)
    return Scene("euclidean-ball", "a convex ball is totally p-convex about its points",
                 E, R.ball(E, [0.0, 0.0], 1.0), np.zeros(2))


def polar_cap(radius=math.pi / 4) -> Scene:
    S = Sphere(2)
    return Scene("polar-cap", "a geodesically convex cap is totally p-convex about its points",
                 S, R.cap(S, NORTH, radius), NORTH)


SCENES = {
    "arc-with-pole": equator_arc_with_pole,
    "hemisphere-two-points": hemisphere_two_points,
    "finite-set": finite_set_scene,
    "ball-outlier": ball_with_outlier,
    "euclidean-ball": euclidean_ball,
    "polar-cap": polar_cap,
}


def equator_arc_curves(lam=0.5, samples=33):
    """Equator arc, its contraction toward the north pole, and the geodesic joining the contracted ends."""
    from .contraction import ContractionMap, contract_curve

    S = Sphere(2)
    ts = np.linspace(0.0, 1.0, samples)
    arc = S.geodesic_points(EQ_X, EQ_Y, ts)
    contracted = np.array(contract_curve(ContractionMap(S, NORTH, lam), arc))
    comparison = S.geodesic_points(contracted[0], contracted[-1], ts)
    return arc, contracted, comparison


def latitude_gap(lam) -> float:
    """Angular gap between the contracted arc's midpoint and the great circle through its ends.

    Closed form: the contracted ends sit at colatitude ``lam * pi / 2``; the
    midpoint of the latitude circle is compared with the plane of the great
    circle through the ends.
    """
    a = lam * math.pi / 2
    s, c = math.sin(a), math.cos(a)
    mid = np.array([s / math.sqrt(2), s / math.sqrt(2), c])
    normal = np.cross([s, 0.0, c], [0.0, s, c])
    normal /= np.linalg.norm(normal)
    return math.asin(min(1.0, abs(float(mid @ normal))))

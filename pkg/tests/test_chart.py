import math

import numpy as np
import pytest

from radial_lab.chart import (SPHERE2, ChartManifold, ChartMetric, chart_manifold, chart_tangent_to_embedded,
                              chart_to_embedded, christoffel_from_metric, embedded_tangent_to_chart,
                              embedded_to_chart, integrate_geodesic, shoot_log)
from radial_lab.errors import ChartSingularity, InvalidPoint, ShootingNoConverge
from radial_lab.manifolds import Euclidean, Sphere, TangentVec

M = chart_manifold("sphere2")
S2 = Sphere(2)
EQ = np.array([math.pi / 2, 0.0])


def test_equator_is_a_geodesic():
    out = integrate_geodesic(M, TangentVec(EQ, np.array([0.0, 1.0])), math.pi / 4)
    assert np.allclose(out, [math.pi / 2, math.pi / 4], atol=1e-12)


def test_meridian_is_a_geodesic():
    out = integrate_geodesic(M, TangentVec(EQ, np.array([1.0, 0.0])), 0.3)
    assert np.allclose(out, [math.pi / 2 + 0.3, 0.0], atol=1e-12)


def test_latitude_start_matches_closed_form():
    p, v = np.array([math.pi / 4, 0.0]), np.array([0.0, 1.0])
    out = integrate_geodesic(M, TangentVec(p, v), 0.5)
    ref = S2.exp(chart_to_embedded(p), chart_tangent_to_embedded(p, 0.5 * v))
    assert np.max(np.abs(chart_to_embedded(out) - ref)) < 1e-6


def test_shoot_along_equator():
    v = shoot_log(M, EQ, [math.pi / 2, math.pi / 4]).vec
    assert np.allclose(v, [0.0, math.pi / 4], atol=1e-9)


def test_shoot_same_point_is_zero():
    assert np.array_equal(shoot_log(M, EQ, EQ).vec, np.zeros(2))


def test_shoot_meridian_has_length_quarter_pi():
    v = shoot_log(M, EQ, [math.pi / 4, 0.0]).vec
    assert np.allclose(v, [-math.pi / 4, 0.0], atol=1e-9)
    assert M.norm(EQ, v) == pytest.approx(math.pi / 4, abs=1e-9)


def test_shoot_across_the_seam():
    p, x = np.array([1.2, math.pi - 0.1]), np.array([1.3, -math.pi + 0.1])
    v = shoot_log(M, p, x).vec
    ref = embedded_tangent_to_chart(chart_to_embedded(p), S2.log(chart_to_embedded(p), chart_to_embedded(x)))
    assert np.max(np.abs(v - ref)) < 1e-6


def test_chart_matches_closed_form_in_batch():
    rng = np.random.default_rng(5)
    p = M.random_point(rng, 300)
    v = M.random_tangent(rng, p, 1.0) * 0.25
    x = M.exp(p, v)
    e_p = chart_to_embedded(p)
    ref = S2.exp(e_p, chart_tangent_to_embedded(p, v))
    assert np.max(np.abs(chart_to_embedded(x) - ref)) < 1e-6
    assert np.max(np.abs(M.log(p, x) - v)) < 1e-6


def test_conversions_round_trip():
    rng = np.random.default_rng(1)
    x = M.random_point(rng, 50)
    assert np.allclose(embedded_to_chart(chart_to_embedded(x)), x)
    w = rng.standard_normal((50, 2))
    assert np.allclose(embedded_tangent_to_chart(chart_to_embedded(x), chart_tangent_to_embedded(x, w)), w)


def test_chart_metric_norm_matches_embedding():
    p, v = np.array([0.7, 0.2]), np.array([0.3, -0.4])
    assert M.norm(p, v) == pytest.approx(np.linalg.norm(chart_tangent_to_embedded(p, v)))


def test_pole_band_is_rejected():
    with pytest.raises(InvalidPoint):
        M.validate([1e-4, 0.0])
    with pytest.raises(ChartSingularity):
        integrate_geodesic(M, TangentVec(np.array([0.1, 0.0]), np.array([-1.0, 0.0])), 1.0)


def test_shooting_gives_up_with_too_few_iterations():
    m = chart_manifold("sphere2", max_newton=1)
    with pytest.raises(ShootingNoConverge):
        m.shoot(np.array([0.6, 0.0]), np.array([1.4, 2.0]))


def test_finite_difference_christoffel_matches_analytic():
    x = np.array([[0.4, 1.1, 2.0], [0.0, 0.5, -1.0]])
    fd = christoffel_from_metric(SPHERE2.metric, x)
    assert np.max(np.abs(fd - SPHERE2.christoffel(x))) < 1e-8


def test_generic_metric_path_agrees_with_closed_form():
    generic = ChartManifold(2, chart=ChartMetric("sphere-fd", 2, SPHERE2.metric, singular=SPHERE2.singular,
                                                 periods=SPHERE2.periods, domain=SPHERE2.domain))
    p, v = np.array([1.0, 0.3]), np.array([0.4, 0.5])
    assert np.max(np.abs(generic.exp(p, v) - M.exp(p, v))) < 1e-7
    assert np.max(np.abs(generic.log(p, M.exp(p, v)) - v)) < 1e-6


def test_flat_metric_gives_straight_lines():
    flat = ChartManifold(2, chart=ChartMetric("flat", 2, lambda x: np.multiply.outer(np.eye(2), np.ones(x.shape[1:]))))
    assert np.allclose(flat.exp(np.zeros(2), np.array([1.5, -2.0])), [1.5, -2.0])


def test_wrong_manifold_kind():
    with pytest.raises(InvalidPoint):
        integrate_geodesic(Euclidean(2), TangentVec(np.zeros(2), np.ones(2)), 1.0)

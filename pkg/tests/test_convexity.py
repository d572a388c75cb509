import math

import numpy as np
import pytest

from radial_lab import regions as R
from radial_lab import scenes
from radial_lab.contraction import CANONICAL, ContractionMap
from radial_lab.convexity import (HOLDS, REFUTED, all_hold, contraction_threshold, default_grid,
                                  geodesic_deviation, inner_convex_set, is_geodesically_convex,
                                  is_p_lambda_convex, is_star_shaped, is_totally_p_convex, probe_interior)
from radial_lab.errors import CutLocus, NotInterior
from radial_lab.manifolds import Euclidean, Sphere, geodesic_point

S2, E2 = Sphere(2), Euclidean(2)
NORTH = scenes.NORTH


def _slerp(a, b, t):
    # independent great-circle interpolation for the brute-force oracle
    omega = math.acos(max(-1.0, min(1.0, float(a @ b))))
    if omega < 1e-15:
        return a
    return (math.sin((1 - t) * omega) * a + math.sin(t * omega) * b) / math.sin(omega)


def assert_witness_replays(region, report):
    w = report.witness
    assert report.verdict == REFUTED and w is not None
    replay = geodesic_point(region.manifold, w.start, w.end, w.t)
    assert np.max(np.abs(replay - w.point)) < 1e-9
    assert region.excess(w.point[None])[0] > region.delta


def test_cap_is_geodesically_convex_and_brute_force_agrees():
    cap = R.cap(S2, NORTH, math.pi / 4)
    assert is_geodesically_convex(cap, 200, 33).verdict == HOLDS
    # dense pair grid on the boundary circle and the center
    ring = [scenes.colatitude_point(math.pi / 4, lon) for lon in np.linspace(0, 2 * math.pi, 24, endpoint=False)]
    pts = ring + [NORTH]
    worst = max(math.acos(min(1.0, float(_slerp(a, b, t) @ NORTH)))
                for a in pts for b in pts for t in np.linspace(0, 1, 33))
    assert worst <= math.pi / 4 + 1e-12


def test_three_point_set_is_not_convex():
    region = R.finite_set(E2, [[0, 0], [1, 0], [0, 1]])
    assert_witness_replays(region, is_geodesically_convex(region))


def test_ball_is_convex():
    assert is_geodesically_convex(R.ball(E2, [0, 0], 1.0)).holds


def test_hemisphere_scene_examples():
    sc = scenes.hemisphere_two_points()
    assert is_p_lambda_convex(sc.region, ContractionMap(S2, NORTH, 0.5)).holds
    rep = is_p_lambda_convex(sc.region, ContractionMap(S2, NORTH, 0.95))
    assert_witness_replays(sc.region, rep)


def test_finite_set_with_base_refuted_below_one():
    region = R.finite_set(E2, [[0, 0], [2, 0], [0, 2], [1, 3]])
    for lam in (0.2, 0.5, 0.9):
        assert_witness_replays(region, is_p_lambda_convex(region, ContractionMap(E2, [0, 0], lam)))


def test_arc_with_pole_refuted_everywhere():
    sc = scenes.equator_arc_with_pole()
    rep = is_p_lambda_convex(sc.region, ContractionMap(S2, NORTH, 0.5))
    assert_witness_replays(sc.region, rep)
    reports = is_totally_p_convex(sc.region, NORTH, CANONICAL, [0.25, 0.5, 0.75, 1.0])
    assert [r.verdict for r in reports] == [REFUTED] * 4


def test_totally_p_convex_cap():
    cap = R.cap(S2, NORTH, math.pi / 4)
    reports = is_totally_p_convex(cap, NORTH, CANONICAL, [k / 10 for k in range(1, 11)])
    assert all_hold(reports) and len(reports) == 10


def test_totally_p_convex_grid_validation():
    cap = R.cap(S2, NORTH, 0.5)
    for grid in ([], [0.5, 0.2], [0.0, 0.5], [1.5]):
        with pytest.raises(ValueError):
            is_totally_p_convex(cap, NORTH, CANONICAL, grid)


@pytest.mark.parametrize("name", ["arc-with-pole", "hemisphere-two-points", "finite-set", "ball-outlier", "polar-cap"])
def test_lambda_one_matches_geodesic_convexity(name):
    sc = scenes.SCENES[name]()
    a = is_p_lambda_convex(sc.region, ContractionMap(sc.manifold, sc.p, 1.0), 100, 33, 9)
    b = is_geodesically_convex(sc.region, 100, 33, 9)
    assert a.verdict == b.verdict
    assert a.pairs_checked == b.pairs_checked


@pytest.mark.parametrize("name,lam", [("polar-cap", 0.5), ("euclidean-ball", 0.7),
                                      ("hemisphere-two-points", 0.6), ("ball-outlier", 0.3)])
def test_powers_of_lambda_keep_holding(name, lam):
    sc = scenes.SCENES[name]()
    c = ContractionMap(sc.manifold, sc.p, lam)
    assert is_p_lambda_convex(sc.region, c).holds
    for k in (2, 3):
        assert is_p_lambda_convex(sc.region, c.with_lambda(lam ** k)).holds


def test_intersection_of_concentric_caps():
    caps = [R.cap(S2, NORTH, r) for r in (0.5, 0.9, 1.2)]
    c = ContractionMap(S2, scenes.colatitude_point(0.2, 1.0), 0.5)
    assert all(is_p_lambda_convex(a, c).holds for a in caps)
    assert is_p_lambda_convex(R.intersection(*caps), c).holds


def test_star_shaped():
    sc = scenes.equator_arc_with_pole()
    rep = is_star_shaped(sc.region, NORTH)
    assert rep.verdict == REFUTED
    assert sc.region.excess(rep.witness.point[None])[0] > sc.region.delta
    assert is_star_shaped(R.ball(E2, [0, 0], 1.0), [0, 0]).holds
    assert is_star_shaped(R.cap(S2, NORTH, 1.0), NORTH).holds


def test_deviation_examples():
    arc = S2.geodesic_points(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.linspace(0, 1, 257))
    assert geodesic_deviation(S2, arc, 1024) < 2e-3
    _, contracted, _ = scenes.equator_arc_curves(0.5)
    dev = geodesic_deviation(S2, contracted)
    assert dev > 0.1
    assert abs(dev - 0.17) < 0.01
    seg = E2.geodesic_points(np.array([1.0, 0]), np.array([0, 1.0]), np.linspace(0, 1, 33))
    assert geodesic_deviation(E2, ContractionMap(E2, [0, 0], 0.5).contract_many(seg)) < 1e-9


def test_latitude_gap_oracle():
    # midpoint (1/2, 1/2, sqrt(2)/2) against the normalized chord midpoint
    a, b = np.array([math.sqrt(0.5), 0, math.sqrt(0.5)]), np.array([0, math.sqrt(0.5), math.sqrt(0.5)])
    chord_mid = (a + b) / np.linalg.norm(a + b)
    lat_mid = np.array([0.5, 0.5, math.sqrt(0.5)])
    direct = math.acos(float(chord_mid @ lat_mid))
    assert scenes.latitude_gap(0.5) == pytest.approx(direct, abs=1e-12)
    assert direct == pytest.approx(0.17, abs=0.01)


def test_deviation_soundness_and_reversal():
    rng = np.random.default_rng(4)
    for m, t_steps in ((S2, 65), (Euclidean(3), 33), (S2, 17)):
        x, y = m.random_point(rng, 2)
        if m.cut_locus_mask(x, y):
            continue
        curve = m.geodesic_points(x, y, np.linspace(0, 1, 40))
        assert geodesic_deviation(m, curve, t_steps) < 2 * m.dist(x, y) / t_steps
        wiggly = curve + 0.01 * np.sin(np.arange(40))[:, None] * rng.standard_normal(curve.shape[-1])
        wiggly[[0, -1]] = curve[[0, -1]]
        if m.kind == "sphere":
            wiggly /= np.linalg.norm(wiggly, axis=1, keepdims=True)
        fwd = geodesic_deviation(m, wiggly, t_steps)
        assert abs(fwd - geodesic_deviation(m, wiggly[::-1], t_steps)) < 1e-9


def test_deviation_rejects_cut_locus_endpoints():
    with pytest.raises(CutLocus):
        geodesic_deviation(S2, [NORTH, [1, 0, 0], -NORTH])


def test_threshold_examples():
    sc = scenes.ball_with_outlier()
    fine = [k / 100 for k in range(1, 101)]
    rep = contraction_threshold(sc.region, sc.p, CANONICAL, fine, n_pairs=100)
    assert abs(rep.zeta_hat - 1 / 3) <= 0.01 + 1e-12
    assert all(v == HOLDS for lam, v in zip(rep.lambda_grid, rep.verdicts) if lam <= rep.zeta_hat)

    assert contraction_threshold(R.ball(E2, [0, 0], 1.0), [0, 0]).zeta_hat == 1.0

    hemi = scenes.hemisphere_two_points()
    assert abs(contraction_threshold(hemi.region, NORTH).zeta_hat - 0.75) <= 0.05 + 1e-12


def test_threshold_requires_interior_base():
    with pytest.raises(NotInterior):
        contraction_threshold(R.ball(E2, [0, 0], 1.0), [1.0, 0.0])
    with pytest.raises(NotInterior):
        probe_interior(R.finite_set(E2, [[0, 0]]), [0, 0])


def test_threshold_none_when_smallest_fails():
    sc = scenes.ball_with_outlier()
    rep = contraction_threshold(sc.region, sc.p, CANONICAL, [0.5, 0.9])
    assert rep.zeta_hat is None


def test_inner_set_examples():
    c = ContractionMap(E2, [0, 0], 0.5)
    out = np.array(inner_convex_set([[2, 0], [0, 2]], c, 9))
    assert len(out) == 2 + 7
    assert np.allclose(out[:2], [[1, 0], [0, 1]])
    assert np.allclose(out.sum(axis=1), 1.0)
    assert np.allclose(inner_convex_set([[0.0, 0.0]], c), [[0.0, 0.0]])


def test_inner_set_of_hemisphere_samples():
    hemi = R.hemisphere(S2, NORTH)
    pts = hemi.sample(np.random.default_rng(42), 20)
    c = ContractionMap(S2, NORTH, 0.5)
    out = np.array(inner_convex_set(pts, c))
    colat = np.arccos(np.clip(out[:, 2], -1, 1))
    assert np.max(colat) < math.pi / 2
    assert np.max(colat[:20]) < math.pi / 4
    # geodesics between sampled members of the set stay within it
    assert is_geodesically_convex(R.finite_set(S2, out[:20]), 50, 9).verdict == REFUTED
    sub = out[np.random.default_rng(0).choice(len(out), 40, replace=False)]
    for a in sub[:10]:
        for b in sub[10:20]:
            mid = geodesic_point(S2, a, b, 0.5)
            assert math.acos(min(1.0, mid[2])) < math.pi / 2


def test_inner_set_cut_locus_names_the_pair():
    c = ContractionMap(S2, NORTH, 1.0)
    with pytest.raises(CutLocus) as info:
        inner_convex_set([[1, 0, 0], [0, 1, 0], [-1, 0, 0]], c)
    assert info.value.index == (0, 2)


def test_reports_are_seeded_and_serializable():
    sc = scenes.hemisphere_two_points()
    c = ContractionMap(S2, NORTH, 0.9)
    a, b = is_p_lambda_convex(sc.region, c, seed=3), is_p_lambda_convex(sc.region, c, seed=3)
    assert a.to_dict() == b.to_dict()
    d = a.to_dict()
    assert set(d) >= {"verdict", "witness", "pairs_checked", "t_grid_size", "lambda", "seed"}
    assert default_grid()[0] == 0.05 and default_grid()[-1] == 1.0

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from radial_lab.contraction import (CANONICAL, ContractionMap, DirectionPolicy, contract_curve, contract_point,
                                    contract_set, direction)
from radial_lab.errors import ConfigError, CutLocus, InvalidPoint, MissingOverride
from radial_lab.manifolds import Euclidean, Hyperbolic, Sphere

S2, E2 = Sphere(2), Euclidean(2)
NORTH = np.array([0.0, 0.0, 1.0])
R = math.sqrt(0.5)


def test_direction_examples():
    assert np.allclose(direction(ContractionMap(E2, [0, 0], 0.5), [2, 4]).vec, [2, 4])
    assert np.allclose(direction(ContractionMap(S2, NORTH, 0.5), [1, 0, 0]).vec, [math.pi / 2, 0, 0])


def test_table_override_at_the_antipode():
    policy = DirectionPolicy.table([(-NORTH, [math.pi, 0, 0])])
    c = ContractionMap(S2, NORTH, 0.5, policy)
    assert np.allclose(direction(c, -NORTH).vec, [math.pi, 0, 0])
    assert np.allclose(contract_point(c, -NORTH), [1, 0, 0], atol=1e-12)


def test_table_without_fallback_requires_an_entry():
    c = ContractionMap(S2, NORTH, 0.5, DirectionPolicy.table([]))
    with pytest.raises(MissingOverride):
        direction(c, [1, 0, 0])
    lenient = ContractionMap(S2, NORTH, 0.5, DirectionPolicy.table([], fallback=True))
    assert np.allclose(direction(lenient, [1, 0, 0]).vec, [math.pi / 2, 0, 0])


def test_override_must_reach_its_target():
    with pytest.raises(InvalidPoint):
        ContractionMap(S2, NORTH, 0.5, DirectionPolicy.table([(-NORTH, [1.0, 0, 0])]))


def test_canonical_refuses_the_cut_locus():
    with pytest.raises(CutLocus):
        direction(ContractionMap(S2, NORTH, 0.5), -NORTH)


def test_lambda_range():
    for lam in (0.0, -0.5, 1.5):
        with pytest.raises(ConfigError):
            ContractionMap(E2, [0, 0], lam)
    with pytest.raises(ConfigError):
        DirectionPolicy("nearest")


def test_contract_point_examples():
    assert np.allclose(contract_point(ContractionMap(E2, [0, 0], 0.5), [2, 0]), [1, 0])
    assert np.allclose(contract_point(ContractionMap(S2, NORTH, 0.5), [1, 0, 0]), [R, 0, R], atol=1e-12)


def test_contract_set_examples():
    out = contract_set(ContractionMap(E2, [0, 0], 0.5), [(2, 0), (0, 2)])
    assert np.allclose(out, [(1, 0), (0, 1)])
    assert contract_set(ContractionMap(E2, [0, 0], 0.5), []) == []
    out = contract_set(ContractionMap(S2, NORTH, 0.5), [(1, 0, 0), (0, 1, 0)])
    assert np.allclose(out, [(R, 0, R), (0, R, R)], atol=1e-12)


def test_contract_set_reports_the_failing_index():
    c = ContractionMap(S2, NORTH, 0.5)
    with pytest.raises(CutLocus) as info:
        contract_set(c, [(1, 0, 0), (0, 1, 0), (0, 0, -1)])
    assert info.value.index == 2


def test_contract_curve_examples():
    ts = np.linspace(0, 1, 9)
    seg = E2.geodesic_points(np.zeros(2), np.array([2.0, 2.0]), ts)
    out = contract_curve(ContractionMap(E2, [0, 0], 0.5), seg)
    assert np.allclose(out, E2.geodesic_points(np.zeros(2), np.array([1.0, 1.0]), ts))

    arc = S2.geodesic_points(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.linspace(0, 1, 33))
    out = np.array(contract_curve(ContractionMap(S2, NORTH, 0.5), arc))
    assert out.shape == (33, 3)
    assert np.max(np.abs(out[:, 2] - R)) < 1e-12

    x = np.array([0.0, 1.0, 0.0])
    c = ContractionMap(S2, NORTH, 0.3)
    assert np.allclose(contract_curve(c, [x])[0], contract_point(c, x))


def test_fixed_point_and_identity():
    rng = np.random.default_rng(3)
    for m in (S2, Euclidean(3), Hyperbolic(2)):
        p, x = m.random_point(rng, 2)
        for lam in (0.1, 0.5, 1.0):
            assert np.max(np.abs(contract_point(ContractionMap(m, p, lam), p) - p)) < 1e-9
        assert np.max(np.abs(contract_point(ContractionMap(m, p, 1.0), x) - x)) < 1e-9


seeds = st.integers(0, 2**32 - 1)
lams = st.floats(0.01, 1.0)


@settings(max_examples=80, deadline=None)
@given(seeds, lams, st.sampled_from([Euclidean(3), S2, Sphere(3), Hyperbolic(2)]))
def test_radial_scaling(seed, lam, m):
    rng = np.random.default_rng(seed)
    p, x = m.random_point(rng, 2)
    assume(not m.cut_locus_mask(p, x))
    d = m.dist(p, x)
    assume(d > 1e-6)
    y = contract_point(ContractionMap(m, p, lam), x)
    assert m.dist(p, y) == pytest.approx(lam * d, rel=1e-6)


@settings(max_examples=80, deadline=None)
@given(seeds, lams, lams, st.sampled_from([Euclidean(2), S2, Hyperbolic(3)]))
def test_composition(seed, lam, beta, m):
    rng = np.random.default_rng(seed)
    p, x = m.random_point(rng, 2)
    assume(not m.cut_locus_mask(p, x))
    c = ContractionMap(m, p, lam)
    twice = c.contract_point(c.with_lambda(beta).contract_point(x))
    once = c.with_lambda(lam * beta).contract_point(x)
    assert np.max(np.abs(twice - once)) < 1e-6


@settings(max_examples=80, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=6, max_size=6), lams)
def test_euclidean_closed_form(coords, lam):
    p, x = np.array(coords[:3]), np.array(coords[3:])
    out = contract_point(ContractionMap(Euclidean(3), p, lam), x)
    assert np.max(np.abs(out - (lam * x + (1 - lam) * p))) < 1e-12 * max(1.0, np.max(np.abs(coords)))


def test_canonical_singleton():
    assert CANONICAL.mode == "canonical" and CANONICAL.overrides == ()

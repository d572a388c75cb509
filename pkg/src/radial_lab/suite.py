"""Named experiments with pass/fail thresholds, and the full verification suite.

Each experiment returns :class:`ItemResult` records; JSON output is a pure
function of the config (wall times are kept out unless explicitly requested).
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import regions as R
from . import scenes
from .chart import (ChartManifold, chart_manifold, chart_tangent_to_embedded, chart_to_embedded,
                    embedded_tangent_to_chart, integrate_geodesic, shoot_log)
from .contraction import CANONICAL, ContractionMap
from .convexity import (N_PAIRS, T_STEPS, all_hold, contraction_threshold, default_grid,
                        geodesic_deviation, is_p_lambda_convex, is_star_shaped, is_totally_p_convex,
                        probe_interior)
from .errors import GeometryError
from .manifolds import Euclidean, Hyperbolic, Manifold, Sphere, TangentVec, parse_manifold
from .svg import sphere_view

PASS, FAIL, REPORT_ONLY = "pass", "fail", "report-only"

THRESHOLDS = {
    "round_trip_closed_form": 1e-9,
    "round_trip_chart": 1e-6,
    "chart_vs_closed_form": 1e-6,
    "composition": 1e-6,
    "radial_scaling_rel": 1e-6,
    "collinearity": 1e-9,
    "arc_min_deviation": 0.1,
    "arc_gap": 0.17,
    "arc_gap_tol": 0.01,
    "geodesic_deviation_max": 2e-3,
    "euclidean_control": 1e-9,
    "witness_replay": 1e-9,
}

# lengths of sampled tangent vectors for kinds without a finite cut locus
FREE_RADIUS = {"euclidean": 10.0, "hyperbolic": 3.0}
CHART_HORIZON = math.pi / 2
CHART_POLE_MARGIN = 0.2
KERNEL_MANIFOLDS = ("euclidean:3", "sphere:2", "hyperbolic:2", "chart:sphere2")


@dataclass
class ExperimentConfig:
    manifold: str = "sphere:2"
    regions: list = field(default_factory=list)
    p: Optional[list] = None
    lam: float = 0.5
    lambda_grid: list = field(default_factory=default_grid)
    seed: int = 42
    n_pairs: int = N_PAIRS
    t_steps: int = T_STEPS
    out: Optional[str] = None
    fmt: str = "json"
    n_round_trip: int = 10_000
    n_composition: int = 1_000
    n_chart: int = 1_000
    timings: bool = False

    @property
    def grid_step(self):
        g = sorted(self.lambda_grid)
        return max(np.diff([0.0] + g)) if g else 1.0


@dataclass
class ItemResult:
    name: str
    status: str
    claim: str = ""
    metrics: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self, timings=False):
        d = {"status": self.status, "claim": self.claim, "metrics": _clean(self.metrics),
             "counts": _clean(self.counts)}
        if self.details:
            d["details"] = _clean(self.details)
        if timings:
            d["wall_time"] = round(self.wall_time, 3)
        return d


@dataclass
class SuiteResult:
    items: dict = field(default_factory=dict)
    seed: int = 42

    def add(self, item: ItemResult):
        self.items[item.name] = item

    def merge(self, other: "SuiteResult"):
        self.items.update(other.items)

    @property
    def passed(self) -> bool:
        return all(it.status != FAIL for it in self.items.values())

    def to_dict(self, timings=False):
        return {"seed": int(self.seed), "passed": self.passed,
                "items": {k: v.to_dict(timings) for k, v in self.items.items()}}

    def to_json(self, timings=False) -> str:
        return dumps(self.to_dict(timings))


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if hasattr(obj, "to_dict"):
        return _clean(obj.to_dict())
    return obj


def _timed(name, claim, fn: Callable[[], ItemResult]) -> ItemResult:
    t0 = time.perf_counter()
    try:
        item = fn()
    except GeometryError as err:
        item = ItemResult(name, FAIL, details={"error": f"{type(err).__name__}: {err}"})
    item.name, item.claim = name, claim
    item.wall_time = time.perf_counter() - t0
    return item


def _status(ok):
    return PASS if ok else FAIL


# -- sampling helpers ------------------------------------------------------------


def tangent_radius(m: Manifold, p):
    """Largest tangent length sampled at ``p``: 0.9 of the cut-locus distance or horizon."""
    p = np.asarray(p, dtype=float)
    if isinstance(m, ChartManifold):
        th = p[..., 0]
        to_pole = np.minimum(th, math.pi - th) - CHART_POLE_MARGIN
        return 0.9 * np.clip(np.minimum(CHART_HORIZON, to_pole), 0.0, None)
    if math.isfinite(m.cut_locus_distance):
        return np.full(p.shape[:-1], 0.9 * m.cut_locus_distance)
    return np.full(p.shape[:-1], 0.9 * FREE_RADIUS[m.kind])


def sample_point_tangent(m: Manifold, rng, k):
    p = m.random_point(rng, k)
    v = m.random_tangent(rng, p, 1.0) * tangent_radius(m, p)[:, None]
    return p, v


# -- kernel items ----------------------------------------------------------------------


def round_trip_item(config: ExperimentConfig) -> ItemResult:
    metrics, ok = {}, True
    for spec in KERNEL_MANIFOLDS:
        m = parse_manifold(spec)
        rng = np.random.default_rng([config.seed, KERNEL_MANIFOLDS.index(spec)])
        p, v = sample_point_tangent(m, rng, config.n_round_trip)
        x = m.exp(p, v)
        back = m.log(p, x)
        err = float(np.max(np.abs(back - v)))
        # chart distance is the norm of the shot log; reuse it instead of shooting twice
        d = m.norm(p, back) if isinstance(m, ChartManifold) else m.dist(p, x)
        iso = float(np.max(np.abs(d - m.norm(p, v))))
        tol = THRESHOLDS["round_trip_chart" if m.kind == "chart" else "round_trip_closed_form"]
        metrics[spec] = {"max_log_exp_error": err, "max_isometry_error": iso, "tolerance": tol}
        ok &= err <= tol and iso <= tol
    return ItemResult("", _status(ok), metrics=metrics, counts={"samples_per_kind": config.n_round_trip})


def chart_vs_closed_form_item(config: ExperimentConfig) -> ItemResult:
    m = chart_manifold("sphere2")
    S = Sphere(2)
    rng = np.random.default_rng([config.seed, 101])
    p, v = sample_point_tangent(m, rng, config.n_chart)
    t = rng.uniform(0.0, 1.0, size=config.n_chart)
    xs = integrate_geodesic(m, TangentVec(p, t[:, None] * v), 1.0)
    e_p = chart_to_embedded(p)
    ref = S.exp(e_p, chart_tangent_to_embedded(p, t[:, None] * v))
    exp_err = float(np.max(np.abs(chart_to_embedded(xs) - ref)))
    shot = shoot_log(m, p, xs).vec
    ref_log = embedded_tangent_to_chart(e_p, S.log(e_p, ref))
    log_err = float(np.max(np.abs(shot - ref_log)))
    tol = THRESHOLDS["chart_vs_closed_form"]
    return ItemResult("", _status(exp_err <= tol and log_err <= tol),
                      metrics={"max_exp_error": exp_err, "max_log_error": log_err, "tolerance": tol},
                      counts={"samples": config.n_chart})


def _composition_samples(m, rng, k):
    if isinstance(m, Sphere):
        p, x = m.random_point(rng, k), m.random_point(rng, k)
    else:
        p, v = sample_point_tangent(m, rng, k)
        x = m.exp(p, v)
    lam = 1.0 - rng.uniform(0.0, 1.0, size=k)
    beta = 1.0 - rng.uniform(0.0, 1.0, size=k)
    return p, x, lam, beta


def composition_and_scaling(config: ExperimentConfig):
    """Both items share one sample set per manifold kind."""
    comp, scal = {}, {}
    ok_c = ok_s = True
    skipped_total = 0
    for spec in KERNEL_MANIFOLDS:
        m = parse_manifold(spec)
        rng = np.random.default_rng([config.seed, 200 + KERNEL_MANIFOLDS.index(spec)])
        p, x, lam, beta = _composition_samples(m, rng, config.n_composition)
        keep = ~np.asarray(m.cut_locus_mask(p, x), dtype=bool)
        skipped = int((~keep).sum())
        skipped_total += skipped
        p, x, lam, beta = p[keep], x[keep], lam[keep], beta[keep]
        v = m.log(p, x)
        inner = m.exp(p, beta[:, None] * v)
        twice = m.exp(p, lam[:, None] * m.log(p, inner))
        once = m.exp(p, (lam * beta)[:, None] * v)
        err = float(np.max(np.abs(twice - once)))
        comp[spec] = {"max_coordinate_error": err, "skipped_cut_locus": skipped}
        ok_c &= err <= THRESHOLDS["composition"]

        d = m.dist(p, x)
        d_lam = m.dist(p, m.exp(p, lam[:, None] * v))
        nz = d > 1e-12
        rel = np.abs(d_lam[nz] - lam[nz] * d[nz]) / (lam[nz] * d[nz])
        rel_max = float(np.max(rel)) if rel.size else 0.0
        scal[spec] = {"max_relative_error": rel_max}
        ok_s &= rel_max <= THRESHOLDS["radial_scaling_rel"]
    comp_item = ItemResult("", _status(ok_c), metrics=comp,
                           counts={"samples_per_kind": config.n_composition, "skipped": skipped_total})
    scal_item = ItemResult("", _status(ok_s), metrics=scal,
                           counts={"samples_per_kind": config.n_composition})
    return comp_item, scal_item


def collinearity_residual(points) -> float:
    """Max distance of ``points`` from the line through the first and last one."""
    points = np.asarray(points, dtype=float)
    a, b = points[0], points[-1]
    d = b - a
    nd = np.linalg.norm(d)
    if nd == 0:
        return float(np.max(np.linalg.norm(points - a, axis=1)))
    rel = points - a
    along = rel @ d / nd
    return float(np.max(np.linalg.norm(rel - along[:, None] * d / nd, axis=1)))


def euclidean_invariance_item(config: ExperimentConfig, n_segments=200, samples=33) -> ItemResult:
    rng = np.random.default_rng([config.seed, 300])
    worst = 0.0
    for dim in (2, 3):
        E = Euclidean(dim)
        ts = np.linspace(0.0, 1.0, samples)
        for _ in range(n_segments):
            a, b, p = rng.uniform(-5, 5, size=(3, dim))
            lam = 1.0 - rng.uniform()
            seg = E.geodesic_points(a, b, ts)
            worst = max(worst, collinearity_residual(ContractionMap(E, p, lam).contract_many(seg)))
    return ItemResult("", _status(worst < THRESHOLDS["collinearity"]),
                      metrics={"max_collinearity_residual": worst},
                      counts={"segments": 2 * n_segments, "samples_per_segment": samples})


# -- the sphere counterexample ---------------------------------------------------------------


def run_counterexample_sphere(config: ExperimentConfig, lam: Optional[float] = None):
    """Contract the equator arc toward the pole and measure how far it is from a geodesic.

    Returns ``(SuiteResult, csv_text, svg_text)``.
    """
    lam = 0.5 if lam is None else lam
    t0 = time.perf_counter()
    S = Sphere(2)
    arc, contracted, comparison = scenes.equator_arc_curves(lam)
    deviation = geodesic_deviation(S, contracted, config.t_steps)
    gap = scenes.latitude_gap(lam)

    E = Euclidean(2)
    seg = E.geodesic_points(np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.linspace(0, 1, 33))
    control = geodesic_deviation(E, ContractionMap(E, np.zeros(2), lam).contract_many(seg), config.t_steps)

    geo_tol = THRESHOLDS["geodesic_deviation_max"]
    matches_gap = abs(deviation - gap) <= THRESHOLDS["arc_gap_tol"]
    ok = matches_gap and control < THRESHOLDS["euclidean_control"]
    if lam == 0.5:
        ok &= deviation > THRESHOLDS["arc_min_deviation"]
        ok &= abs(gap - THRESHOLDS["arc_gap"]) <= THRESHOLDS["arc_gap_tol"]
    if lam < 1:
        ok &= deviation > geo_tol
    else:
        ok &= deviation < geo_tol
    item = ItemResult(
        "equator_arc_counterexample", _status(ok),
        "contracting an equator arc toward the pole does not give a geodesic",
        metrics={"lambda": lam, "deviation": deviation, "closed_form_gap": gap,
                 "euclidean_control_deviation": control, "t_steps": config.t_steps,
                 "is_geodesic": deviation < geo_tol},
        counts={"curve_samples": len(arc)},
        wall_time=time.perf_counter() - t0,
    )
    result = SuiteResult(seed=config.seed)
    result.add(item)
    rows = [("equator_arc", arc), ("contracted", contracted), ("comparison_geodesic", comparison)]
    return result, points_csv(rows), sphere_view(
        [(f"equator arc", arc), (f"contraction, lambda={lam:g}", contracted),
         ("geodesic between contracted ends", comparison)],
        title=f"deviation {deviation:.6f} rad")


def points_csv(labelled) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = np.asarray(labelled[0][1]).shape[-1] if labelled else 0
    names = ["x", "y", "z"] if n == 3 else [f"x{i}" for i in range(n)]
    w.writerow(names + ["label"])
    for label, pts in labelled:
        for q in np.asarray(pts, dtype=float):
            w.writerow([format(float(c), ".17g") for c in q] + [label])
    return buf.getvalue()


# -- scene items ------------------------------------------------------------------------------


def replay_witness(region: R.Region, c: Optional[ContractionMap], report) -> bool:
    """Recompute a refutation from its witness alone."""
    w = report.witness
    if w is None:
        return False
    m = region.manifold
    tol = THRESHOLDS["witness_replay"]
    if c is not None:
        start, end = c.contract_point(w.x), c.contract_point(w.y)
        if np.max(np.abs(start - w.start)) > tol or np.max(np.abs(end - w.end)) > tol:
            return False
    point = m.exp(w.start, w.t * m.log(w.start, w.end))
    if np.max(np.abs(point - w.point)) > tol:
        return False
    return bool(region.excess(w.point[None])[0] > region.delta)


def arc_with_pole_item(config: ExperimentConfig) -> ItemResult:
    sc = scenes.equator_arc_with_pole()
    base = ContractionMap(sc.manifold, sc.p, 1.0)
    verdicts, replays = {}, {}
    ok = True
    for lam in config.lambda_grid:
        c = base.with_lambda(lam)
        rep = is_p_lambda_convex(sc.region, c, config.n_pairs, config.t_steps, config.seed)
        verdicts[f"{lam:g}"] = rep.verdict
        replays[f"{lam:g}"] = replay_witness(sc.region, c, rep)
        ok &= (not rep.holds) and replays[f"{lam:g}"]
    star = is_star_shaped(sc.region, sc.p, CANONICAL, config.n_pairs, config.t_steps, config.seed)
    return ItemResult("", _status(ok),
                      metrics={"p_lambda_verdicts": verdicts, "witness_replayed": replays,
                               "star_shaped_verdict": star.verdict,
                               "star_shaped_status": REPORT_ONLY},
                      counts={"lambdas": len(config.lambda_grid), "pairs": config.n_pairs},
                      details={"star_shaped_report": star.to_dict()})


def hemisphere_item(config: ExperimentConfig) -> ItemResult:
    sc = scenes.hemisphere_two_points()
    c = ContractionMap(sc.manifold, sc.p, 0.5)
    at_half = is_p_lambda_convex(sc.region, c, config.n_pairs, config.t_steps, config.seed)
    at_095 = is_p_lambda_convex(sc.region, c.with_lambda(0.95), config.n_pairs, config.t_steps, config.seed)
    thr = contraction_threshold(sc.region, sc.p, CANONICAL, config.lambda_grid, config.n_pairs,
                                config.t_steps, config.seed)
    zeta_ok = thr.zeta_hat is not None and abs(thr.zeta_hat - 0.75) <= config.grid_step + 1e-12
    ok = at_half.holds and not at_095.holds and replay_witness(sc.region, c.with_lambda(0.95), at_095) and zeta_ok
    return ItemResult("", _status(ok),
                      metrics={"verdict_lambda_0.5": at_half.verdict, "verdict_lambda_0.95": at_095.verdict,
                               "zeta_hat": thr.zeta_hat, "zeta_expected": 0.75, "grid_step": config.grid_step},
                      counts={"pairs": config.n_pairs, "lambdas": len(thr.lambda_grid)},
                      details={"threshold_verdicts": thr.verdicts})


def euclidean_threshold_item(config: ExperimentConfig) -> ItemResult:
    sc = scenes.ball_with_outlier()
    thr = contraction_threshold(sc.region, sc.p, CANONICAL, config.lambda_grid, config.n_pairs,
                                config.t_steps, config.seed)
    ok = thr.zeta_hat is not None and abs(thr.zeta_hat - 1 / 3) <= config.grid_step + 1e-12
    return ItemResult("", _status(ok),
                      metrics={"zeta_hat": thr.zeta_hat, "zeta_expected": 1 / 3, "grid_step": config.grid_step},
                      counts={"pairs": config.n_pairs, "lambdas": len(thr.lambda_grid)},
                      details={"threshold_verdicts": thr.verdicts})


def finite_set_item(config: ExperimentConfig) -> ItemResult:
    sc = scenes.finite_set_scene()
    base = ContractionMap(sc.manifold, sc.p, 1.0)
    verdicts = {}
    ok = True
    for lam in config.lambda_grid:
        c = base.with_lambda(lam)
        rep = is_p_lambda_convex(sc.region, c, config.n_pairs, config.t_steps, config.seed)
        verdicts[f"{lam:g}"] = rep.verdict
        if lam < 1:
            ok &= (not rep.holds) and replay_witness(sc.region, c, rep)
    return ItemResult("", _status(ok), metrics={"p_lambda_verdicts": verdicts},
                      counts={"lambdas": len(config.lambda_grid), "pairs": config.n_pairs})


# -- closure and threshold items ---------------------------------------------------------------------


def _interior_bases(sc: scenes.Scene, k, seed):
    rng = np.random.default_rng(seed)
    bases = []
    for _ in range(100):
        for q in sc.region.sample(rng, k):
            try:
                probe_interior(sc.region, q, seed=seed)
            except GeometryError:
                continue
            bases.append(q)
            if len(bases) == k:
                return bases
    raise GeometryError(f"could not find {k} interior points of {sc.name}")


def totally_convex_item(config: ExperimentConfig, n_bases=5) -> ItemResult:
    verdicts, ok = {}, True
    for sc in (scenes.euclidean_ball(), scenes.polar_cap()):
        per = []
        for p in _interior_bases(sc, n_bases, config.seed):
            reps = is_totally_p_convex(sc.region, p, CANONICAL, config.lambda_grid, config.n_pairs,
                                       config.t_steps, config.seed)
            per.append(all_hold(reps))
        verdicts[sc.name] = per
        ok &= all(per)
    return ItemResult("", _status(ok), metrics={"totally_p_convex": verdicts},
                      counts={"base_points_per_scene": n_bases, "lambdas": len(config.lambda_grid)})


def _families():
    S, E = Sphere(2), Euclidean(2)
    north = scenes.NORTH
    near = scenes.colatitude_point(0.2, 0.7)
    concentric_caps = [R.cap(S, north, r) for r in (math.pi / 4, math.pi / 3, 5 * math.pi / 12)]
    lens = [R.cap(S, scenes.colatitude_point(0.3, 0.0), 0.6), R.cap(S, scenes.colatitude_point(0.3, math.pi), 0.6)]
    balls = [R.ball(E, [0.0, 0.0], r) for r in (1.0, 2.0, 3.0)]
    return [("concentric-caps", concentric_caps, near),
            ("lens-caps", lens, north),
            ("concentric-balls", balls, np.array([0.3, 0.1]))]


def intersection_item(config: ExperimentConfig, lams=(0.25, 0.5, 0.75, 1.0)) -> ItemResult:
    out, ok = {}, True
    for name, family, p in _families():
        m = family[0].manifold
        inter = R.intersection(*family)
        for lam in lams:
            c = ContractionMap(m, p, lam)
            members = [is_p_lambda_convex(A, c, config.n_pairs, config.t_steps, config.seed).holds
                       for A in family]
            both = is_p_lambda_convex(inter, c, config.n_pairs, config.t_steps, config.seed).holds
            out[f"{name}@{lam:g}"] = {"members_hold": all(members), "intersection_holds": both}
            ok &= (not all(members)) or both
    return ItemResult("", _status(ok), metrics=out, counts={"families": 3, "lambdas": len(lams)})


def iterated_item(config: ExperimentConfig, powers=(2, 3)) -> ItemResult:
    cases = [(scenes.polar_cap(), 0.5), (scenes.euclidean_ball(), 0.5),
             (scenes.hemisphere_two_points(), 0.5), (scenes.ball_with_outlier(), 0.3)]
    out, ok = {}, True
    for sc, lam in cases:
        c = ContractionMap(sc.manifold, sc.p, lam)
        base = is_p_lambda_convex(sc.region, c, config.n_pairs, config.t_steps, config.seed).holds
        row = {f"{lam:g}": base}
        for k in powers:
            holds = is_p_lambda_convex(sc.region, c.with_lambda(lam ** k), config.n_pairs,
                                       config.t_steps, config.seed).holds
            row[f"{lam:g}^{k}"] = holds
            ok &= (not base) or holds
        ok &= base
        out[sc.name] = row
    return ItemResult("", _status(ok), metrics=out, counts={"scenes": len(cases)})


# -- suites ---------------------------------------------------------------------------------


CLAIMS = {
    "kernel_round_trip": "log inverts exp below the cut-locus distance",
    "chart_vs_closed_form": "chart geodesics of d theta^2 + sin^2 theta d phi^2 agree with great circles",
    "composition_identity": "contracting by beta then lambda equals contracting by lambda*beta",
    "radial_scaling": "contraction scales the distance to the base point by lambda",
    "euclidean_segment_invariance": "Euclidean contraction maps segments to segments",
    "arc_with_pole": "an equator arc together with the pole is not p^lambda-convex for any lambda",
    "hemisphere_two_points": "an open hemisphere plus two lower points is p^lambda-convex for some lambda",
    "euclidean_threshold": "an interior base point admits a contraction threshold zeta",
    "finite_set": "a finite set of more than two points is not p^lambda-convex",
    "convex_totally_p_convex": "geodesically convex sets are totally p-convex about each member",
    "intersection_closure": "intersections of p^lambda-convex sets are p^lambda-convex",
    "iterated_contraction": "p^lambda-convex sets are p^(lambda^n)-convex",
}


def run_kernel_suite(config: ExperimentConfig) -> SuiteResult:
    res = SuiteResult(seed=config.seed)
    res.add(_timed("kernel_round_trip", CLAIMS["kernel_round_trip"], lambda: round_trip_item(config)))
    res.add(_timed("chart_vs_closed_form", CLAIMS["chart_vs_closed_form"], lambda: chart_vs_closed_form_item(config)))
    res.add(_timed("euclidean_segment_invariance", CLAIMS["euclidean_segment_invariance"],
                   lambda: euclidean_invariance_item(config)))
    return res


def run_proposition_suite(config: ExperimentConfig) -> SuiteResult:
    """Composition, iterated contraction, intersection, convex-implies-totally-convex, thresholds."""
    res = SuiteResult(seed=config.seed)
    t0 = time.perf_counter()
    try:
        comp, scal = composition_and_scaling(config)
    except GeometryError as err:
        comp = ItemResult("", FAIL, details={"error": str(err)})
        scal = ItemResult("", FAIL, details={"error": str(err)})
    for name, item in (("composition_identity", comp), ("radial_scaling", scal)):
        item.name, item.claim, item.wall_time = name, CLAIMS[name], time.perf_counter() - t0
        res.add(item)
    res.add(_timed("iterated_contraction", CLAIMS["iterated_contraction"], lambda: iterated_item(config)))
    res.add(_timed("intersection_closure", CLAIMS["intersection_closure"], lambda: intersection_item(config)))
    res.add(_timed("convex_totally_p_convex", CLAIMS["convex_totally_p_convex"], lambda: totally_convex_item(config)))
    res.add(_timed("hemisphere_two_points", CLAIMS["hemisphere_two_points"], lambda: hemisphere_item(config)))
    res.add(_timed("euclidean_threshold", CLAIMS["euclidean_threshold"], lambda: euclidean_threshold_item(config)))
    return res


def run_scene_suite(config: ExperimentConfig) -> SuiteResult:
    res = SuiteResult(seed=config.seed)
    res.add(_timed("arc_with_pole", CLAIMS["arc_with_pole"], lambda: arc_with_pole_item(config)))
    res.add(_timed("finite_set", CLAIMS["finite_set"], lambda: finite_set_item(config)))
    return res


def run_verify(config: ExperimentConfig) -> SuiteResult:
    res = SuiteResult(seed=config.seed)
    res.merge(run_kernel_suite(config))
    res.merge(run_counterexample_sphere(config)[0])
    res.merge(run_scene_suite(config))
    res.merge(run_proposition_suite(config))
    return res

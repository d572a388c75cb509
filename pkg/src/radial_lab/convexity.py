"""Sampling-based convexity predicates.

Every predicate is a semi-decision: it draws member pairs from the region's
seeded sampler, walks the relevant geodesic on a uniform parameter grid and
either finds a grid point outside the region (``refuted``, with a replayable
witness) or reports ``holds_on_samples``. Pairs whose geodesic is not unique
are redrawn and counted rather than treated as failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .contraction import CANONICAL, ContractionMap, DirectionPolicy
from .errors import GeometryError, NotInterior, SamplerExhausted
from .manifolds import Manifold
from .regions import Region, geodesic_distance_profile

HOLDS = "holds_on_samples"
REFUTED = "refuted"

N_PAIRS = 200
T_STEPS = 65
SEED = 42
RESAMPLE_CAP = 50
PROBE_RADIUS = 1e-3
N_PROBES = 64


def default_grid(k=20):
    return [i / k for i in range(1, k + 1)]


def _listify(x):
    return None if x is None else np.asarray(x, dtype=float).tolist()


@dataclass
class Witness:
    """A failing grid point: ``point`` lies on the checked geodesic at parameter ``t``.

    ``x``/``y`` are the sampled members; ``start``/``end`` are the endpoints of
    the geodesic actually walked (their contractions, for p^lambda checks).
    """

    x: np.ndarray
    y: np.ndarray
    t: float
    point: np.ndarray
    start: np.ndarray
    end: np.ndarray
    excess: float

    def to_dict(self):
        return {"x": _listify(self.x), "y": _listify(self.y), "t": float(self.t),
                "point": _listify(self.point), "start": _listify(self.start),
                "end": _listify(self.end), "excess": float(self.excess)}


@dataclass
class ConvexityReport:
    verdict: str
    witness: Optional[Witness]
    pairs_checked: int
    t_grid_size: int
    lam: Optional[float]
    seed: int
    predicate: str = ""
    resampled: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "pairs_checked": int(self.pairs_checked),
            "t_grid_size": int(self.t_grid_size),
            "lambda": None if self.lam is None else float(self.lam),
            "seed": int(self.seed),
            "predicate": self.predicate,
            "resampled": int(self.resampled),
        }


@dataclass
class ThresholdReport:
    zeta_hat: Optional[float]
    lambda_grid: list
    verdicts: list
    reports: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {"zeta_hat": self.zeta_hat, "lambda_grid": [float(x) for x in self.lambda_grid],
                "verdicts": list(self.verdicts), "reports": [r.to_dict() for r in self.reports]}


# -- shared machinery ------------------------------------------------------------


def _draw_pairs(region: Region, rng, n_pairs, image):
    """Draw member pairs whose images under ``image`` are joined by a unique geodesic."""
    m = region.manifold
    xs, ys, xi, yi = [], [], [], []
    need, resampled = n_pairs, 0
    while need > 0:
        x = region.sample(rng, need)
        y = region.sample(rng, need)
        cx, cy = image(x), image(y)
        ok = ~np.asarray(m.cut_locus_mask(cx, cy), dtype=bool).reshape(need)
        resampled += int(need - ok.sum())
        if resampled > RESAMPLE_CAP * n_pairs:
            raise SamplerExhausted(f"too many cut-locus pairs drawn from {region}")
        xs.append(x[ok]), ys.append(y[ok]), xi.append(cx[ok]), yi.append(cy[ok])
        need -= int(ok.sum())
    return (np.concatenate(xs), np.concatenate(ys), np.concatenate(xi), np.concatenate(yi), resampled)


def _first_failure(region: Region, curves):
    """Index (pair, t) of the first grid point outside ``region``, or None."""
    excess = region.excess(curves)
    bad = excess > region.delta
    rows = np.flatnonzero(bad.any(axis=1))
    if rows.size == 0:
        return None
    i = int(rows[0])
    j = int(np.flatnonzero(bad[i])[0])
    return i, j, float(excess[i, j])


def _walk_pairs(region, xs, ys, starts, ends, ts, lam, seed, predicate, resampled):
    m = region.manifold
    curves = m.geodesic_points(starts, ends, ts)
    hit = _first_failure(region, curves)
    if hit is None:
        return ConvexityReport(HOLDS, None, len(xs), len(ts), lam, seed, predicate, resampled)
    i, j, excess = hit
    witness = Witness(xs[i], ys[i], float(ts[j]), curves[i, j], starts[i], ends[i], excess)
    return ConvexityReport(REFUTED, witness, i + 1, len(ts), lam, seed, predicate, resampled)


def _policy_map(m, p, policy, lam=1.0):
    return ContractionMap(m, p, lam, policy or CANONICAL)


# -- predicates ----------------------------------------------------------------------


def is_geodesically_convex(A: Region, n_pairs=N_PAIRS, t_steps=T_STEPS, seed=SEED) -> ConvexityReport:
    """Check that minimizing geodesics between sampled member pairs stay in ``A``."""
    rng = np.random.default_rng(seed)
    xs, ys, _, _, resampled = _draw_pairs(A, rng, n_pairs, lambda x: x)
    ts = np.linspace(0.0, 1.0, t_steps)
    return _walk_pairs(A, xs, ys, xs, ys, ts, None, seed, "geodesic_convex", resampled)


def is_p_lambda_convex(A: Region, c: ContractionMap, n_pairs=N_PAIRS, t_steps=T_STEPS,
                       seed=SEED) -> ConvexityReport:
    """Check the geodesic between the contractions of each sampled pair stays in ``A``.

    Sampled points at the base point's cut locus raise :class:`CutLocus` with
    the sample index attached.
    """
    rng = np.random.default_rng(seed)
    xs, ys, cx, cy, resampled = _draw_pairs(A, rng, n_pairs, c.contract_many)
    ts = np.linspace(0.0, 1.0, t_steps)
    return _walk_pairs(A, xs, ys, cx, cy, ts, c.lam, seed, "p_lambda_convex", resampled)


def is_totally_p_convex(A: Region, p, policy: Optional[DirectionPolicy] = None,
                        lambda_grid: Sequence[float] = None, n_pairs=N_PAIRS, t_steps=T_STEPS,
                        seed=SEED) -> list:
    """One :func:`is_p_lambda_convex` report per grid value; the set holds iff all do."""
    grid = default_grid() if lambda_grid is None else list(lambda_grid)
    if not grid or any(not 0 < lam <= 1 for lam in grid) or grid != sorted(grid):
        raise ValueError("lambda grid must be a nonempty sorted subset of (0, 1]")
    c = _policy_map(A.manifold, p, policy)
    return [is_p_lambda_convex(A, c.with_lambda(lam), n_pairs, t_steps, seed) for lam in grid]


def all_hold(reports) -> bool:
    return all(r.holds for r in reports)


def is_star_shaped(A: Region, p, policy: Optional[DirectionPolicy] = None, n_points=N_PAIRS,
                   t_steps=T_STEPS, seed=SEED) -> ConvexityReport:
    """Check the geodesic from ``p`` to each sampled member (chosen by ``policy``) stays in ``A``."""
    m = A.manifold
    c = _policy_map(m, p, policy)
    rng = np.random.default_rng(seed)
    xs = A.sample(rng, n_points)
    vs = c.directions(xs)
    ts = np.linspace(0.0, 1.0, t_steps)
    curves = m.exp(c.base, ts[None, :, None] * vs[:, None, :])
    hit = _first_failure(A, curves)
    if hit is None:
        return ConvexityReport(HOLDS, None, n_points, t_steps, None, seed, "star_shaped")
    i, j, excess = hit
    witness = Witness(c.base, xs[i], float(ts[j]), curves[i, j], c.base, xs[i], excess)
    return ConvexityReport(REFUTED, witness, i + 1, t_steps, None, seed, "star_shaped")


def geodesic_deviation(m: Manifold, curve, t_steps=T_STEPS) -> float:
    """Largest distance from a curve sample to the geodesic joining the curve's endpoints.

    Each sample is matched to its nearest point on a ``t_steps`` grid of the
    geodesic, then polished within the neighbouring grid cells.
    """
    curve = m.validate(np.asarray(curve, dtype=float))
    if len(curve) < 2:
        raise ValueError("deviation needs at least two curve samples")
    x, y = curve[0], curve[-1]
    if np.any(m.cut_locus_mask(x, y)):
        m.log(x, y)  # raises CutLocus
    return float(np.max(geodesic_distance_profile(m, curve, x, y, t_steps)))


def probe_interior(A: Region, p, radius=PROBE_RADIUS, n_probes=N_PROBES, seed=SEED):
    """Raise :class:`NotInterior` unless ``A`` contains probes at ``radius`` around ``p``."""
    m = A.manifold
    p = m.validate(p)
    basis = m.project_tangent(p, np.eye(m.ambient_dim))
    norms = m.norm(p, basis)
    basis = basis[norms > 1e-12] / norms[norms > 1e-12, None]
    rng = np.random.default_rng(seed)
    random = m.random_direction(rng, np.broadcast_to(p, (n_probes, p.size)))
    dirs = np.concatenate([basis, -basis, random])
    probes = m.exp(np.broadcast_to(p, dirs.shape), radius * dirs)
    if not np.all(A.contains(probes)) or not np.all(A.contains(p[None])):
        raise NotInterior(f"the ball of radius {radius:g} about {p} leaves {A}")


def contraction_threshold(A: Region, p, policy: Optional[DirectionPolicy] = None,
                          lambda_grid: Sequence[float] = None, n_pairs=N_PAIRS,
                          t_steps=T_STEPS, seed=SEED, probe_radius=PROBE_RADIUS) -> ThresholdReport:
    """Estimate the largest zeta with ``A`` p^lambda-convex for every grid lambda <= zeta.

    The grid is scanned from the top down; ``zeta_hat`` is the upper end of the
    longest passing run that starts at the smallest grid value (``None`` if even
    that one fails).
    """
    probe_interior(A, p, probe_radius, seed=seed)
    grid = sorted(default_grid() if lambda_grid is None else lambda_grid)
    c = _policy_map(A.manifold, p, policy)
    reports = [is_p_lambda_convex(A, c.with_lambda(lam), n_pairs, t_steps, seed)
               for lam in reversed(grid)][::-1]
    zeta = None
    for lam, rep in zip(grid, reports):
        if not rep.holds:
            break
        zeta = lam
    return ThresholdReport(zeta, grid, [r.verdict for r in reports], reports)


def inner_convex_set(A, c: ContractionMap, t_steps=T_STEPS) -> list:
    """Union of sampled geodesics between the contractions of all pairs of ``A``.

    ``A`` is a finite point list; the result lists each contracted point and the
    interior grid samples of every pairwise geodesic.
    """
    m = c.manifold
    pts = np.atleast_2d(np.asarray(A, dtype=float)) if len(A) else np.empty((0, m.ambient_dim))
    images = c.contract_many(pts) if len(pts) else pts
    out = [images[i] for i in range(len(images))]
    ts = np.linspace(0.0, 1.0, t_steps)[1:-1]
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if m.cut_locus_mask(images[i], images[j]):
                try:
                    m.log(images[i], images[j])
                except GeometryError as err:
                    err.args = (f"{err} (pair {i}, {j})",)
                    err.index = (i, j)
                    raise
            out.extend(m.geodesic_points(images[i], images[j], ts))
    return out

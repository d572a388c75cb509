"""Command-line front end: ``radial-lab <command> [options]``.

Exit codes: 0 when every requested check passes, 1 when a check fails or a
geometric error stops the run, 2 for malformed options or config files.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import scenes
from . import suite as S
from .contraction import CANONICAL, ContractionMap
from .convexity import (HOLDS, REFUTED, all_hold, contraction_threshold, default_grid,
                        geodesic_deviation, inner_convex_set, is_geodesically_convex,
                        is_p_lambda_convex, is_star_shaped, is_totally_p_convex)
from .errors import ConfigError, GeometryError
from .manifolds import Sphere, parse_manifold
from .pointio import format_points, read_points, write_atomic
from .regions import parse_region
from .svg import sphere_view

PREDICATES = ("geodesic", "p-lambda", "totally-p", "star-shaped")
SCENE_NAMES = ("example1", "example2", "hemisphere-two-points", "finite-set")
# expected verdict of each single-lambda scene run
SCENE_EXPECT = {
    "example2": lambda lam: REFUTED,
    "hemisphere-two-points": lambda lam: HOLDS if lam <= 0.75 + 1e-12 else REFUTED,
    "finite-set": lambda lam: REFUTED if lam < 1 else HOLDS,
}
SCENE_BUILDERS = {
    "example2": scenes.equator_arc_with_pole,
    "hemisphere-two-points": scenes.hemisphere_two_points,
    "finite-set": scenes.finite_set_scene,
}
SCENE_ITEMS = {
    "example2": ("arc_with_pole", S.arc_with_pole_item),
    "hemisphere-two-points": ("hemisphere_two_points", S.hemisphere_item),
    "finite-set": ("finite_set", S.finite_set_item),
}

# option name -> (type, is a list) for config-file values
CONFIG_KEYS = {
    "manifold": (str, False), "p": (float, True), "point": (float, True),
    "points": (str, False), "curve": (str, False), "region": (str, False),
    "predicate": (str, False), "seed": (int, False), "pairs": (int, False),
    "t_steps": (int, False), "lambda": (float, False), "grid": (str, True),
    "out": (str, False), "format": (str, False),
}
DEFAULTS = {"manifold": "sphere:2", "predicate": "p-lambda", "seed": S.ExperimentConfig.seed,
            "pairs": S.ExperimentConfig.n_pairs, "t_steps": S.ExperimentConfig.t_steps}


# -- parsing --------------------------------------------------------------------------------


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; keys use the long option names."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from None
    out = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        kind, is_list = CONFIG_KEYS[key]
        try:
            if is_list:
                out[key] = [kind(tok) for tok in re.split(r"[,\s]+", value) if tok]
            else:
                out[key] = kind(value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return out


def parse_grid(tokens) -> list:
    """``N`` means ``k/N`` for k = 1..N; anything else is an explicit list of lambdas."""
    if tokens is None:
        return default_grid()
    tokens = [t for tok in tokens for t in str(tok).replace(",", " ").split()]
    if len(tokens) == 1 and tokens[0].isdigit():
        n = int(tokens[0])
        if n < 1:
            raise ConfigError("--grid N needs N >= 1")
        return default_grid(n)
    try:
        grid = sorted(float(t) for t in tokens)
    except ValueError:
        raise ConfigError(f"bad --grid value {' '.join(tokens)!r}") from None
    if not grid or any(not 0 < g <= 1 for g in grid):
        raise ConfigError("--grid values must lie in (0, 1]")
    return grid


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="flat key = value file supplying option defaults")
    common.add_argument("--manifold", help="euclidean:N, sphere:N, hyperbolic:N or chart:sphere2")
    common.add_argument("--p", nargs="+", type=float, help="base point coordinates")
    common.add_argument("--seed", type=int)
    common.add_argument("--pairs", type=int, help="sampled pairs per predicate run")
    common.add_argument("--t-steps", type=int, help="geodesic grid size")
    common.add_argument("--lambda", dest="lam", type=float, help="contraction factor in (0, 1]")
    common.add_argument("--grid", nargs="+", help="N for {k/N}, or an explicit lambda list")
    common.add_argument("--out", help="write here (atomically) instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "svg"))

    parser = _Parser(prog="radial-lab", description="Radial contraction and p^lambda-convexity experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("contract", parents=[common], help="contract a point, point file or curve")
    src = c.add_mutually_exclusive_group()
    src.add_argument("--point", nargs="+", type=float)
    src.add_argument("--points", help="point file, one point per line")
    src.add_argument("--curve", help="point file holding an ordered curve")

    k = sub.add_parser("check", parents=[common], help="run a convexity predicate on a region")
    k.add_argument("--region", help="region spec, e.g. 'cap 0 0 1 0.7'")
    k.add_argument("--predicate", choices=PREDICATES)

    d = sub.add_parser("deviation", parents=[common], help="distance of a curve from its chord geodesic")
    d.add_argument("--curve")

    t = sub.add_parser("threshold", parents=[common], help="estimate the contraction threshold")
    t.add_argument("--region")

    i = sub.add_parser("inner-set", parents=[common], help="geodesics between contracted points")
    i.add_argument("--points")

    v = sub.add_parser("verify", parents=[common], help="run every experiment")
    v.add_argument("--timings", action="store_true", help="include wall times in the report")

    s = sub.add_parser("scene", parents=[common], help="run a bundled scene")
    s.add_argument("name", choices=SCENE_NAMES)
    return parser


def resolve(args) -> argparse.Namespace:
    """Fill unset options from ``--config`` and then from built-in defaults."""
    fromfile = read_config(args.config) if args.config else {}
    for key, value in fromfile.items():
        attr = "lam" if key == "lambda" else key
        if getattr(args, attr, None) is None and hasattr(args, attr):
            setattr(args, attr, value)
    for key, value in DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)
    if args.pairs < 1 or args.t_steps < 2:
        raise ConfigError("--pairs must be >= 1 and --t-steps >= 2")
    args.lambda_grid = parse_grid(args.grid)
    args.m = parse_manifold(args.manifold)
    return args


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ConfigError(f"{args.command} needs --{name.replace('_', '-')}")


def _base(args):
    _require(args, "p")
    return np.asarray(args.p, dtype=float)


def _region(args):
    _require(args, "region")
    return parse_region(args.region, args.m, Path.cwd())


def _config(args) -> S.ExperimentConfig:
    return S.ExperimentConfig(manifold=args.manifold, p=args.p,
                              lam=0.5 if args.lam is None else args.lam,
                              lambda_grid=args.lambda_grid, seed=args.seed, n_pairs=args.pairs,
                              t_steps=args.t_steps, out=args.out, fmt=args.format or "json",
                              timings=getattr(args, "timings", False))


# -- output ------------------------------------------------------------------------------------


def _emit(args, text: str):
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_points(args, labelled):
    """Plain point lines by default; CSV, JSON or SVG (sphere:2 only) on request."""
    fmt = args.format
    if fmt is None:
        _emit(args, "".join(format_points(pts) for _, pts in labelled))
    elif fmt == "csv":
        _emit(args, S.points_csv(labelled))
    elif fmt == "json":
        _emit(args, S.dumps({label: np.asarray(pts) for label, pts in labelled}))
    else:
        _emit(args, _svg(args, labelled))


def _svg(args, labelled, title=""):
    if not isinstance(args.m, Sphere) or args.m.dim != 2:
        raise ConfigError("svg output needs --manifold sphere:2")
    return sphere_view([(label, pts) for label, pts in labelled if len(pts)], title=title)


def _json_only(args):
    if args.format not in (None, "json"):
        raise ConfigError(f"{args.command} writes json only")


# -- commands ------------------------------------------------------------------------------------


def cmd_contract(args) -> int:
    _require(args, "lam")
    c = ContractionMap(args.m, _base(args), args.lam, CANONICAL)
    if args.point is not None:
        pts, label = np.asarray([args.point], dtype=float), "point"
    elif args.points or args.curve:
        pts, label = read_points(args.points or args.curve), "curve" if args.curve else "points"
    else:
        raise ConfigError("contract needs --point, --points or --curve")
    out = c.contract_many(pts) if len(pts) else pts
    if args.format in ("svg", "csv", "json"):
        _emit_points(args, [(label, pts), (f"contracted {label}", out)])
    else:
        _emit_points(args, [("contracted", out)])
    return 0


def _predicate_report(args, region):
    n, t, seed = args.pairs, args.t_steps, args.seed
    if args.predicate == "geodesic":
        rep = is_geodesically_convex(region, n, t, seed)
        return rep.to_dict(), rep.holds
    p = _base(args)
    if args.predicate == "star-shaped":
        rep = is_star_shaped(region, p, CANONICAL, n, t, seed)
        return rep.to_dict(), rep.holds
    if args.predicate == "totally-p":
        reps = is_totally_p_convex(region, p, CANONICAL, args.lambda_grid, n, t, seed)
        return {"holds": all_hold(reps), "reports": [r.to_dict() for r in reps]}, all_hold(reps)
    _require(args, "lam")
    rep = is_p_lambda_convex(region, ContractionMap(args.m, p, args.lam), n, t, seed)
    return rep.to_dict(), rep.holds


def cmd_check(args) -> int:
    _json_only(args)
    report, ok = _predicate_report(args, _region(args))
    _emit(args, S.dumps(report))
    return 0 if ok else 1


def cmd_deviation(args) -> int:
    _require(args, "curve")
    curve = read_points(args.curve)
    dev = geodesic_deviation(args.m, curve, args.t_steps)
    if args.format == "svg":
        chord = args.m.geodesic_points(curve[0], curve[-1], np.linspace(0, 1, args.t_steps))
        _emit(args, _svg(args, [("curve", curve), ("geodesic between endpoints", chord)],
                         f"deviation {dev:.6f}"))
    else:
        _json_only(args)
        _emit(args, S.dumps({"deviation": dev, "t_steps": args.t_steps, "samples": len(curve)}))
    return 0


def cmd_threshold(args) -> int:
    _json_only(args)
    rep = contraction_threshold(_region(args), _base(args), CANONICAL, args.lambda_grid,
                                args.pairs, args.t_steps, args.seed)
    _emit(args, S.dumps(rep.to_dict()))
    return 0 if rep.zeta_hat is not None else 1


def cmd_inner_set(args) -> int:
    _require(args, "points", "lam")
    pts = read_points(args.points)
    c = ContractionMap(args.m, _base(args), args.lam)
    out = np.asarray(inner_convex_set(pts, c, args.t_steps)).reshape(-1, args.m.ambient_dim)
    if args.format in ("csv", "json", "svg"):
        _emit_points(args, [("points", pts), ("inner set", out)])
    else:
        _emit_points(args, [("inner set", out)])
    return 0


def cmd_verify(args) -> int:
    _json_only(args)
    result = S.run_verify(_config(args))
    _emit(args, result.to_json(args.timings))
    return 0 if result.passed else 1


def cmd_scene(args) -> int:
    config = _config(args)
    if args.name == "example1":
        result, csv_text, svg_text = S.run_counterexample_sphere(config, args.lam)
        fmt = args.format or "json"
        _emit(args, {"json": result.to_json(config.timings), "csv": csv_text, "svg": svg_text}[fmt])
        return 0 if result.passed else 1
    _json_only(args)
    if args.lam is None:
        name, item_fn = SCENE_ITEMS[args.name]
        result = S.SuiteResult(seed=args.seed)
        result.add(S._timed(name, S.CLAIMS[name], lambda: item_fn(config)))
        _emit(args, result.to_json())
        return 0 if result.passed else 1
    sc = SCENE_BUILDERS[args.name]()
    rep = is_p_lambda_convex(sc.region, ContractionMap(sc.manifold, sc.p, args.lam),
                             args.pairs, args.t_steps, args.seed)
    expected = SCENE_EXPECT[args.name](args.lam)
    out = {"scene": sc.name, "claim": sc.claim, "expected_verdict": expected,
           "p_lambda_report": rep.to_dict()}
    if args.name == "example2":
        star = is_star_shaped(sc.region, sc.p, CANONICAL, args.pairs, args.t_steps, args.seed)
        out["star_shaped_report"] = star.to_dict()
    _emit(args, S.dumps(out))
    return 0 if rep.verdict == expected else 1


COMMANDS = {
    "contract": cmd_contract, "check": cmd_check, "deviation": cmd_deviation,
    "threshold": cmd_threshold, "inner-set": cmd_inner_set, "verify": cmd_verify,
    "scene": cmd_scene,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = resolve(parser.parse_args(argv))
        return COMMANDS[args.command](args)
    except GeometryError as err:
        print(f"radial-lab: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    except (ConfigError, ValueError) as err:
        print(f"radial-lab: error: {err}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_main())

"""Radial contraction maps and p^lambda-convexity checks on Riemannian manifolds."""

from .contraction import CANONICAL, ContractionMap, DirectionPolicy, contract_curve, contract_point, contract_set, direction
from .convexity import (ConvexityReport, ThresholdReport, Witness, contraction_threshold, geodesic_deviation,
                        inner_convex_set, is_geodesically_convex, is_p_lambda_convex, is_star_shaped,
                        is_totally_p_convex)
from .errors import (ChartSingularity, ConfigError, CutLocus, GeometryError, IntegrationDiverged, InvalidPoint,
                     MissingOverride, NotInterior, SamplerExhausted, ShootingNoConverge)
from .manifolds import Euclidean, Hyperbolic, Manifold, Sphere, TangentVec, dist, exp_map, geodesic_point, log_map, parse_manifold
from .regions import Region, parse_region

__version__ = "0.1.0"

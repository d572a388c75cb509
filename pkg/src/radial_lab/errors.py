"""Exception hierarchy shared by the kernel, contraction and convexity layers."""


class GeometryError(Exception):
    """Base class. ``index`` is set when the failure belongs to one element of a batch."""

    index = None

    def with_index(self, index):
        self.index = index
        return self


class InvalidPoint(GeometryError, ValueError):
    pass


class CutLocus(GeometryError):
    """The minimizing geodesic between two points is not unique."""


class IntegrationDiverged(GeometryError):
    pass


class ChartSingularity(IntegrationDiverged):
    """A chart trajectory entered the excluded band around a coordinate singularity."""


class ShootingNoConverge(GeometryError):
    pass


class MissingOverride(GeometryError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SamplerExhausted(GeometryError):
    pass


class NotInterior(GeometryError):
    pass


class ConfigError(ValueError):
    """Malformed manifold, region or experiment configuration."""

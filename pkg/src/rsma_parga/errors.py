"""Exception hierarchy shared across the simulator."""


class RsmaError(Exception):
    """Base class for all simulator errors."""


class DimensionError(RsmaError):
    """Vector dimensions do not match."""


class ScenarioError(RsmaError):
    """Scenario parameters are inconsistent or unsupported."""


class ConfigError(RsmaError):
    """A scenario/config file could not be parsed."""


class PrecodingError(RsmaError):
    """ZF precoding is infeasible (no null space left)."""


class DegenerateChannelError(RsmaError):
    """A channel is zero or collinear with the interferers' span."""


class GridTooLargeError(RsmaError):
    """The brute-force grid exceeds the configured point cap."""

    def __init__(self, count, cap):
        super().__init__(f"grid has {count} points, cap is {cap}")
        self.count = count
        self.cap = cap


class InternalError(RsmaError):
    """Invariant violated inside the package; signals a bug."""

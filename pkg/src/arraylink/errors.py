"""Exception types shared across the simulator.

Two families matter to callers: configuration problems (bad geometry,
malformed config files, values outside the model's stated range) and
numerical degeneracies discovered while evaluating an otherwise valid
setup (all-zero patterns, beamwidth searches that never cross the
half-power level). The CLI maps the first family to exit code 2 and the
second to exit code 3.
"""


class SimulationError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(SimulationError):
    """A caller-supplied value violates the model's input contract."""


class InvalidGeometryError(ConfigurationError):
    """Array geometry is unusable: non-positive counts or spacings."""


class InvalidResolutionError(ConfigurationError):
    """Angular resolution does not tile the sphere into whole cells."""


class OutOfModelRangeError(ConfigurationError):
    """Input is outside the validated range of the propagation model."""


class InvalidConfigError(ConfigurationError):
    """A config file or config mapping failed schema validation."""

    def __init__(self, message, field_errors=None):
        super().__init__(message)
        # list of (json_path, message) pairs for field-level diagnostics
        self.field_errors = list(field_errors or [])


class GridMismatchError(ConfigurationError):
    """Two patterns do not share the same angular grid."""


class NumericalDegeneracyError(SimulationError):
    """A valid-looking configuration produced a degenerate result."""


class DegeneratePatternError(NumericalDegeneracyError):
    """Pattern radiates zero total power; normalization is undefined."""


class NoBeamwidthError(NumericalDegeneracyError):
    """A principal-plane cut never drops to the half-power level."""


class UndefinedProjectionError(NumericalDegeneracyError):
    """Angular separation is undefined because a user sits at nadir."""

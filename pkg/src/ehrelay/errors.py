"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter violates its domain (negative power, rate out of range, ...)."""


class DegenerateConfigError(ParameterError):
    """A configuration with no transmission time or no power share.

    Raised by per-draw operations that would otherwise divide by zero
    (e.g. the relay transmit power at rho = 1).  The probability-level
    layers map these configurations to an outage probability of 1 instead
    of propagating the error, so optimizers always see a finite value.
    """


class InternalConsistencyError(RuntimeError):
    """A computed probability left [0, 1] by more than floating-point noise."""

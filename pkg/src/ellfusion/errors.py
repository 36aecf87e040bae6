"""Exception hierarchy shared by every layer of the package."""


class EllFusionError(Exception):
    """Base class for all errors raised by ellfusion."""


class DomainError(EllFusionError, ValueError):
    """A parameter lies outside the region where a quantity is defined."""


class ArgumentError(EllFusionError, ValueError):
    """Malformed argument: wrong shape, bad index, bad parity."""


class PoleError(EllFusionError, ZeroDivisionError):
    """Evaluation hit (numerically) a zero of a denominator."""

    def __init__(self, message, argument=None):
        super().__init__(message)
        self.argument = argument


class AdmissibilityError(ArgumentError):
    """No admissible intermediate height exists for a fusion sum."""


class ConsistencyError(EllFusionError, RuntimeError):
    """Two independent constructions of the same object disagree."""


class SamplingError(EllFusionError, RuntimeError):
    """The guarded sampling window could not produce a point."""

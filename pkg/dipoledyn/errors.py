"""Exception hierarchy shared by every dipoledyn module."""


class DipoleDynError(Exception):
    """Root of all errors raised by the library."""


class DomainError(DipoleDynError, ValueError):
    """A physical input lies outside the domain of a formula."""


class ContractError(DipoleDynError, ValueError):
    """A pre-condition on shapes, tags or schedules was violated."""


class BasisMismatchError(ContractError):
    """Two values carry different basis tags."""


class NoSolutionError(DipoleDynError):
    """An inverse solve found no root inside its bracket."""


class IntegrationError(DipoleDynError, RuntimeError):
    """The integrator could not advance; `time` is where it stopped."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class ConfigError(DipoleDynError, ValueError):
    """Bad or unknown configuration keys."""


class ValidityWarning(UserWarning):
    """Parameters outside the regime where the scheme is expected to work."""

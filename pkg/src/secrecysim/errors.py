"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConfigError(ValueError):
    """A scenario file or configuration object failed validation.

    ``location`` is a human-readable pointer (``file:line`` plus key path)
    when one is known.
    """

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class EstimationError(RuntimeError):
    """A Monte Carlo estimator could not produce a result."""

"""Exception hierarchy shared by the engine, the Monte-Carlo oracles and the CLI."""


class SecrelayError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SecrelayError, ValueError):
    """An argument lies outside the domain of a numerical kernel."""


class ConvergenceError(SecrelayError, ArithmeticError):
    """An iterative evaluation did not converge within its budget."""


class PreconditionError(SecrelayError, ValueError):
    """A configuration does not satisfy the assumptions of an evaluation path."""


class ConsistencyError(SecrelayError, ArithmeticError):
    """A raw probability fell outside [0, 1] by more than the rounding tolerance."""


class ConfigError(SecrelayError, ValueError):
    """A configuration file could not be parsed or failed validation.

    ``problems`` holds one human-readable line per violated rule so that a
    single run reports every issue at once.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))

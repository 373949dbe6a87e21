"""Exception hierarchy shared by every module of the package."""


class BenfordWalkError(Exception):
    """Base class for all package errors."""


class DomainError(BenfordWalkError, ValueError):
    """An argument lies outside the domain of an operation."""


class PrecisionError(DomainError):
    """Double precision cannot represent the requested result faithfully."""


class CapacityError(BenfordWalkError):
    """A stream or computation was asked for more than it can deliver."""


class UnsupportedFamilyError(BenfordWalkError, TypeError):
    """An operation was applied to a generator family it does not cover."""


class ConfigError(BenfordWalkError, ValueError):
    """A scenario document is malformed or violates a constraint.

    ``key`` names the offending scenario key (dotted path) when known.
    """

    def __init__(self, message, key=None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)

# Core/errors.py
from __future__ import annotations

from Core import constants


class GraphMatchError(Exception):
    """Base class; every subclass maps to one CLI exit code."""

    exit_code: int = constants.EXIT_UNEXPECTED

    def to_dict(self) -> dict:
        return {
            "schema_version": constants.SCHEMA_VERSION,
            "error": type(self).__name__,
            "exit_code": self.exit_code,
            "message": str(self),
        }


class ParameterDomainError(GraphMatchError, ValueError):
    exit_code = constants.EXIT_PARAMETER


class UndefinedRatioError(ParameterDomainError):
    """A posterior ratio needs every edge probability to be positive."""


class DivisionDomainError(ParameterDomainError):
    pass


class CapacityError(GraphMatchError):
    exit_code = constants.EXIT_CAPACITY


class ModeError(GraphMatchError):
    exit_code = constants.EXIT_MODE


class InfeasibleCompletionError(GraphMatchError):
    exit_code = constants.EXIT_INFEASIBLE


class ConfigurationError(GraphMatchError):
    exit_code = constants.EXIT_CONFIGURATION


class ShapeError(GraphMatchError, ValueError):
    exit_code = constants.EXIT_INPUT


class AssignmentInputError(ShapeError):
    pass


class MatchingError(GraphMatchError, ValueError):
    exit_code = constants.EXIT_INPUT


class VertexIndexError(GraphMatchError, IndexError):
    exit_code = constants.EXIT_INPUT


class StorageError(GraphMatchError, OSError):
    exit_code = constants.EXIT_STORAGE


class VerificationFailure(GraphMatchError):
    exit_code = constants.EXIT_VERIFICATION


class DocumentError(GraphMatchError, ValueError):
    """A JSON document that does not parse into its schema."""

    exit_code = constants.EXIT_INPUT

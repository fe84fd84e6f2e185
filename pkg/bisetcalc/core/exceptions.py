"""Custom exceptions for bisetcalc."""

from enum import Enum
from typing import Any


class ErrorCode(Enum):
    """Error code enumeration for categorized error handling.

    Categories:
    - E1xxx: Algebraic validation errors (a table or cell breaks an axiom)
    - E2xxx: Configuration errors
    - E3xxx: Compatibility errors (operands do not fit together)
    - E4xxx: Computation errors
    - E5xxx: Input errors (parsing, fixtures, files)
    """

    # Algebraic validation errors (E1xxx)
    NOT_ASSOCIATIVE = "E1001"
    NO_IDENTITY = "E1002"
    NO_INVERSE = "E1003"
    NOT_NORMAL = "E1004"
    NOT_INJECTIVE = "E1005"
    NOT_A_HOMOMORPHISM = "E1006"
    INVALID_ACTION = "E1007"
    NOT_EQUIVARIANT = "E1008"
    INVALID_CELL = "E1009"
    INVALID_TWO_CELL = "E1010"
    ORDER_EXCEEDED = "E1011"
    INVALID_TABLE = "E1012"

    # Configuration errors (E2xxx)
    CONFIG_INVALID_VALUE = "E2002"
    CONFIG_MISSING_REQUIRED = "E2003"

    # Compatibility errors (E3xxx)
    GROUP_MISMATCH = "E3001"
    CELL_MISMATCH = "E3002"
    BASE_MISMATCH = "E3003"
    TYPE_MISMATCH = "E3004"
    NOT_A_FACTORIZATION = "E3005"

    # Computation errors (E4xxx)
    DEGREE_UNBOUNDED = "E4001"
    SEARCH_EXHAUSTED = "E4002"

    # Input errors (E5xxx)
    PARSE_ERROR = "E5001"
    UNKNOWN_GROUP = "E5002"
    FILE_NOT_FOUND = "E5003"


class BisetCalcError(Exception):
    """Base exception class for all bisetcalc errors.

    Provides error code, context information, and cause exception support
    so that every failure carries a witness that can be re-checked.
    """

    default_code: ErrorCode | None = None

    def __init__(
        self,
        message: str,
        error_code: ErrorCode | None = None,
        context: dict[str, Any] | None = None,
        cause: Exception | None = None,
    ):
        """Initialize BisetCalcError.

        Args:
            message: Human-readable error message
            error_code: Optional ErrorCode; falls back to the class default
            context: Optional dictionary with witness data
            cause: Optional original exception that caused this error
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.default_code
        self.context = context or {}
        self.cause = cause

    def to_dict(self) -> dict[str, Any]:
        """Serialize exception to dictionary.

        Returns:
            Dictionary containing error type, message, code, context, and cause
        """
        result: dict[str, Any] = {
            "type": self.__class__.__name__,
            "message": self.message,
        }
        if self.error_code:
            result["code"] = self.error_code.value
        if self.context:
            result["context"] = self.context
        if self.cause:
            result["cause"] = str(self.cause)
        return result

    def __str__(self) -> str:
        """Format as '[ERROR_CODE] message' when error_code exists."""
        if self.error_code:
            return f"[{self.error_code.value}] {self.message}"
        return self.message


class ConfigurationError(BisetCalcError):
    """Raised when there's a configuration issue."""

    default_code = ErrorCode.CONFIG_INVALID_VALUE


class ValidationError(BisetCalcError):
    """Raised when a structure fails one of its axioms.

    Supports optional field and value parameters for detailed context.
    """

    default_code = ErrorCode.INVALID_TABLE

    def __init__(
        self,
        message: str,
        error_code: ErrorCode | None = None,
        context: dict[str, Any] | None = None,
        cause: Exception | None = None,
        field: str | None = None,
        value: Any = None,
    ):
        """Initialize ValidationError.

        Args:
            message: Human-readable error message
            error_code: Optional ErrorCode enum value
            context: Optional dictionary with additional context
            cause: Optional original exception
            field: Optional field name that failed validation
            value: Optional value that failed validation (truncated to 100 chars)
        """
        ctx = context.copy() if context else {}
        if field is not None:
            ctx["field"] = field
        if value is not None:
            str_value = str(value)
            ctx["value"] = str_value[:100] if len(str_value) > 100 else str_value

        super().__init__(message, error_code, ctx, cause)
        self.field = field
        self.value = value


class NotAssociative(ValidationError):
    """Raised when a multiplication table has a non-associative triple."""

    default_code = ErrorCode.NOT_ASSOCIATIVE


class NoIdentity(ValidationError):
    """Raised when element 0 is not a two-sided identity."""

    default_code = ErrorCode.NO_IDENTITY


class NoInverse(ValidationError):
    """Raised when an element lacks a two-sided inverse."""

    default_code = ErrorCode.NO_INVERSE


class NotNormal(ValidationError):
    """Raised when a quotient is requested by a non-normal subgroup."""

    default_code = ErrorCode.NOT_NORMAL


class NotInjective(ValidationError):
    """Raised when induction is requested along a non-injective hom."""

    default_code = ErrorCode.NOT_INJECTIVE


class NotAHomomorphism(ValidationError):
    default_code = ErrorCode.NOT_A_HOMOMORPHISM


class InvalidAction(ValidationError):
    default_code = ErrorCode.INVALID_ACTION


class NotEquivariant(ValidationError):
    default_code = ErrorCode.NOT_EQUIVARIANT


class InvalidCell(ValidationError):
    """Raised when a 1-cell breaks the equivariance or cocycle axiom."""

    default_code = ErrorCode.INVALID_CELL


class InvalidTwoCell(ValidationError):
    default_code = ErrorCode.INVALID_TWO_CELL


class OrderExceeded(ValidationError):
    default_code = ErrorCode.ORDER_EXCEEDED


class MismatchError(BisetCalcError):
    """Raised when operands do not fit together."""

    default_code = ErrorCode.TYPE_MISMATCH


class GroupMismatch(MismatchError):
    default_code = ErrorCode.GROUP_MISMATCH


class CellMismatch(MismatchError):
    default_code = ErrorCode.CELL_MISMATCH


class BaseMismatch(MismatchError):
    """Raised when a slice object sits over the wrong 0-cell."""

    default_code = ErrorCode.BASE_MISMATCH


class TypeMismatch(MismatchError):
    default_code = ErrorCode.TYPE_MISMATCH


class NotAFactorization(MismatchError):
    """Raised when alternative factorization data does not factor the cell."""

    default_code = ErrorCode.NOT_A_FACTORIZATION


class ComputationError(BisetCalcError):
    """Raised when a bounded computation gives up."""

    default_code = ErrorCode.SEARCH_EXHAUSTED


class DegreeUnbounded(ComputationError):
    """Raised when iterated differences do not vanish within the degree cap."""

    default_code = ErrorCode.DEGREE_UNBOUNDED


class InputError(BisetCalcError):
    default_code = ErrorCode.PARSE_ERROR


class ParseError(InputError):
    """Raised when a JSON document does not match its schema."""

    default_code = ErrorCode.PARSE_ERROR


class UnknownGroup(InputError):
    default_code = ErrorCode.UNKNOWN_GROUP


class FixtureNotFound(InputError):
    default_code = ErrorCode.FILE_NOT_FOUND

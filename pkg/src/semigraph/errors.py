"""Exception hierarchy and the integer status convention.

Every error carries a negative ``code``; warnings carry a positive one and
success is ``0``.  Library calls raise; :class:`Status` is the value form used
by :func:`semigraph.graph.check_graph` and by the command-line runner.
"""

from __future__ import annotations

from dataclasses import dataclass

MSG_LEN = 256


class GraphBLASError(Exception):
    """Base class for all library errors."""

    code = -1


class InvalidValue(GraphBLASError):
    code = -2


class IndexOutOfBounds(GraphBLASError):
    code = -3


class DimensionMismatch(GraphBLASError):
    code = -4


class DomainMismatch(GraphBLASError):
    code = -5


class AliasingError(GraphBLASError):
    """An input container was also passed as the output."""

    code = -6


class InvalidMatrix(GraphBLASError):
    code = -7


class DuplicateEntry(GraphBLASError):
    code = -8


class LengthMismatch(GraphBLASError):
    code = -9


class InvalidGraph(GraphBLASError):
    code = -100


class PreconditionViolated(GraphBLASError):
    code = -101


class MissingProperty(PreconditionViolated):
    """A cached graph property needed by an Advanced-mode call is absent."""

    code = -102


class SourceOutOfRange(GraphBLASError):
    code = -103


class EmptyBatch(GraphBLASError):
    code = -104


class NonPositiveDamping(GraphBLASError):
    code = -105


class NonPositiveDelta(GraphBLASError):
    code = -106


class NonPositiveWeight(GraphBLASError):
    code = -107


class IoFailure(GraphBLASError):
    code = -200


class ParseError(IoFailure):
    code = -201

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BadMagic(IoFailure):
    code = -202


class UnsupportedVersion(IoFailure):
    code = -203


class TruncatedStream(IoFailure):
    code = -204


class NoValue(LookupError):
    """Requested entry is absent.  Warning-class: positive status code."""

    code = 1


@dataclass(frozen=True)
class Status:
    code: int = 0
    message: str = ""

    def __post_init__(self):
        if len(self.message) > MSG_LEN:
            object.__setattr__(self, "message", self.message[:MSG_LEN])

    @property
    def ok(self) -> bool:
        return self.code == 0

    @property
    def is_error(self) -> bool:
        return self.code < 0

    @property
    def is_warning(self) -> bool:
        return self.code > 0

    @classmethod
    def from_exception(cls, exc: BaseException) -> "Status":
        code = getattr(exc, "code", GraphBLASError.code)
        return cls(code, f"{type(exc).__name__}: {exc}")

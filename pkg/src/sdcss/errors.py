"""Exception hierarchy shared by all sdcss modules."""

from __future__ import annotations


class SdcssError(Exception):
    """Base class for every error raised by this package."""


# gf2
class DimensionError(SdcssError, ValueError):
    """Operand lengths or shapes do not agree."""


class NoSolutionError(SdcssError):
    """A linear system over GF(2) is inconsistent."""


class ContainmentError(SdcssError):
    """A subspace is not contained in the expected superspace."""


# code model
class InvalidCodeError(SdcssError, ValueError):
    """Input does not describe a valid self-dual CSS code."""


class NotSelfDualError(InvalidCodeError):
    pass


class DegenerateCodeError(InvalidCodeError):
    """The code encodes no logical qubits (k = 0)."""


class ParameterError(SdcssError, ValueError):
    pass


class UnknownCodeError(SdcssError, KeyError):
    pass


class TooLargeError(SdcssError):
    """An exhaustive computation was refused because the input is too big."""


# basis / phase
class UnsupportedCodeError(SdcssError):
    """The code has no compatible symplectic basis.

    The existence verdict that triggered the refusal is kept on ``verdict``.
    """

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class MergeError(SdcssError, ValueError):
    pass


class BasisConstructionError(SdcssError, AssertionError):
    pass


class InconsistentBasisError(SdcssError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(SdcssError, ValueError):
    pass


# concatenation
class UnsupportedLevelError(UnsupportedCodeError):
    def __init__(self, message: str, level: int, verdict=None):
        super().__init__(message, verdict)
        self.level = level


class UnsupportedShapeError(SdcssError, ValueError):
    pass


class IncompatibleSupportError(SdcssError, ValueError):
    pass


# file formats
class ParseError(SdcssError, ValueError):
    """A code, basis or concatenation file could not be parsed.

    ``problems`` holds ``(line_number, message)`` tuples, 1-based.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        text = "; ".join(f"line {ln}: {msg}" for ln, msg in self.problems)
        super().__init__(text or "parse error")

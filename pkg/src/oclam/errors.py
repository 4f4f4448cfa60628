"""Exception types shared across the package."""
from __future__ import annotations


class OclamError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OclamError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 expected: set[str] | frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        loc = f"{line}:{column}: " if line is not None else ""
        exp = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{loc}{message}{exp}")


class SemiringMismatch(OclamError):
    pass


class TypeCheckError(OclamError):
    """A typing failure. ``kind`` is one of the names in ``KINDS``."""

    KINDS = frozenset({
        "UnboundVar", "LinearReuse", "LinearUnused", "BranchUsageMismatch", "Mismatch",
        "BangUnderLinear", "NotAFunction", "NotATensor", "NotAWith", "NotAPlus",
        "NotABang", "NotOne", "NotZero",
    })

    def __init__(self, kind: str, path: tuple[int, ...], message: str,
                 expected=None, found=None):
        assert kind in self.KINDS, kind
        self.kind = kind
        self.path = tuple(path)
        self.expected = expected
        self.found = found
        super().__init__(f"{kind} at {list(self.path)}: {message}")


class InvalidSite(OclamError):
    pass


class FuelExhausted(OclamError):
    def __init__(self, term, steps: int):
        self.term = term
        self.steps = steps
        super().__init__(f"fuel exhausted after {steps} steps")


class NotNormal(OclamError):
    pass


class NotClosed(OclamError):
    pass


class NotVectorType(OclamError):
    pass


class DimensionMismatch(OclamError):
    pass


class ShapeError(OclamError):
    pass


class Unsupported(OclamError):
    pass


class GiveUp(OclamError):
    """The generator could not build a term for the request."""

"""Exception types shared across the package."""

from __future__ import annotations


class EdgeColorError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EdgeColorError):
    """Malformed graph or coloring file. Carries the 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


class EmptySet(EdgeColorError):
    """A vertex set operation received an empty set."""


class StaleChain(EdgeColorError):
    """A chain was used after the coloring changed underneath it."""


class BoundaryColorPresent(EdgeColorError):
    """swap_outside was asked to exchange a color that sits on the boundary."""

    def __init__(self, color: int) -> None:
        super().__init__(f"color {color} appears on the boundary")
        self.color = color


class ImproperColoring(EdgeColorError):
    """An assignment would give two edges at one vertex the same color."""


class NotClosed(EdgeColorError):
    """A series extension was requested on a tree that is not closed."""


class InvalidCertificate(EdgeColorError):
    """A density certificate failed the edge-count check."""


class TooLarge(EdgeColorError):
    """Instance exceeds the size limit of an exhaustive oracle."""


class EngineInvariantViolation(EdgeColorError):
    """The engine reached a state its correctness argument rules out.

    This is never a legitimate outcome. ``dump`` holds whatever context the
    raising site could collect (trace tail, measure history, ...).
    """

    def __init__(self, message: str, dump: dict | None = None) -> None:
        super().__init__(message)
        self.dump = dump or {}


class Infeasible(EdgeColorError):
    """No proper k-coloring exists; raised when escalation is disabled."""

    def __init__(self, k: int, certificate) -> None:
        super().__init__(f"no proper {k}-edge-coloring exists")
        self.k = k
        self.certificate = certificate

"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HypartError(Exception):
    """Base class for all errors raised by this package."""


class MalformedEdge(HypartError, ValueError):
    pass


class OutOfRange(HypartError, ValueError):
    pass


class MalformedBlock(HypartError, ValueError):
    pass


class ConfigError(HypartError, ValueError):
    pass


class CoverGap(HypartError):
    """An edge of the target hypergraph contains no member of the cover."""

    def __init__(self, edge):
        super().__init__(f"edge {edge} contains no cover member")
        self.edge = edge


class NotIndependent(HypartError, ValueError):
    def __init__(self, edge):
        super().__init__(f"vertex set is not independent: edge {edge} lies inside it")
        self.edge = edge


class BudgetExceeded(HypartError):
    """Search stopped before exhausting its space.

    ``best`` carries whatever the search had found so far (may be None).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ParseError(HypartError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class VerificationError(HypartError):
    """A produced partition failed verification."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report

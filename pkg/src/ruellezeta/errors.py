"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class RuelleZetaError(Exception):
    """Base class for every error raised by this package."""


class SingularBaseChange(RuelleZetaError, ValueError):
    """Two families of vectors are not bases of the same space."""


class BadDegree(RuelleZetaError, ValueError):
    pass


class NotAcyclic(RuelleZetaError, ValueError):
    pass


class ZeroRatio(RuelleZetaError, ZeroDivisionError):
    pass


class NotUnimodular(RuelleZetaError, ValueError):
    pass


class DegenerateOrbits(RuelleZetaError, ValueError):
    """``det(A^m - 1) = 0``: the periodic points of period ``m`` are not isolated."""

    def __init__(self, period: int):
        super().__init__(f"det(A^{period} - 1) = 0: degenerate orbits at period {period}")
        self.period = period


class SignInstability(RuelleZetaError, ValueError):
    """Iterate signs are not constant along some primitive orbit."""

    def __init__(self, period: int, multiple: int):
        super().__init__(
            f"sign of det(1 - A^{multiple}) differs from the sign at period {period}; "
            "compare against the Lefschetz series instead"
        )
        self.period = period
        self.multiple = multiple


class InvalidSpectrum(RuelleZetaError, ValueError):
    pass


class ZeroEigenvalue(RuelleZetaError, ValueError):
    pass


class ParseError(RuelleZetaError, ValueError):
    """Malformed system description document."""


class ValidationError(RuelleZetaError, ValueError):
    """Well-formed document describing an inadmissible system."""

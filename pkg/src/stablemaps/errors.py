"""Exception hierarchy shared by all subpackages."""

from __future__ import annotations


class StableMapsError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedParameters(StableMapsError, ValueError):
    pass


class DegreeMismatch(StableMapsError, ValueError):
    pass


class SingularSystem(StableMapsError, ArithmeticError):
    pass


class UnknownCurve(StableMapsError, KeyError):
    pass


class BadParameters(StableMapsError, ValueError):
    pass


class DimensionMismatch(StableMapsError, ValueError):
    pass


class NotEffective(StableMapsError, ValueError):
    pass


class UnknownCone(StableMapsError, KeyError):
    pass


class NonTerminating(StableMapsError, RuntimeError):
    pass


class WrongDegree(StableMapsError, ValueError):
    pass


class NonUnitLeadingTerm(StableMapsError, ValueError):
    pass


class PresentationError(StableMapsError, ValueError):
    """Malformed or inconsistent ring presentation."""


class DuplicatePoints(StableMapsError, ValueError):
    pass


class DegeneratePivot(StableMapsError, ArithmeticError):
    """A dual-number pivot had zero constant part; the point draw is not generic."""


class RankDeficit(StableMapsError, ArithmeticError):
    """A kernel or restricted kernel has smaller rank than expected."""


class RetriesExhausted(StableMapsError, RuntimeError):
    pass

"""Exception hierarchy shared by all modules."""


class CarpetError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpec(CarpetError):
    """The carpet description violates a structural rule."""


class DimensionMismatch(CarpetError):
    """Two vectors that must have equal length do not."""


class DomainError(CarpetError):
    """A query point lies outside the supported interval."""


class UniformFibres(CarpetError):
    """Operation requires non-uniform vertical fibres."""


class ThetaOutOfRange(CarpetError):
    """theta lies outside the interval the operation supports."""


class UOutOfRange(CarpetError):
    """Mixing weight outside [0, 1]."""


class SearchFailed(CarpetError):
    """Parameter search found no strictly improving point."""


class RegimeError(CarpetError):
    """The two-scale counting regime does not apply."""


class RegimeMismatch(CarpetError):
    """Window length inconsistent with the requested scale pair."""


class WordTooShort(CarpetError):
    """Symbolic word shorter than the measure's base level."""


class InvalidMeasure(CarpetError):
    """Measure vectors are not constant within columns."""

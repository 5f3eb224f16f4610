"""Exception hierarchy shared by every tropicon module."""


class TropiconError(Exception):
    """Base class for all library errors."""


class KindMismatch(TropiconError, ValueError):
    """Operands belong to different semifields (max-plus vs min-plus)."""


class DimensionMismatch(TropiconError, ValueError):
    pass


class DomainError(TropiconError, ValueError):
    """A value lies outside the space an operation accepts (e.g. Top in K^n)."""


class InversionOfZeroOrTop(TropiconError, ZeroDivisionError):
    pass


class ProjectionUndefined(TropiconError):
    """The point shares no support with the set, so nu_C(y) is the zero."""


class PointIsMember(TropiconError):
    pass


class PointInModule(TropiconError):
    pass


class SeparationFailed(TropiconError):
    """Perturbation search exhausted its step cap, or a built hyperplane failed its own check."""


class PointOnEpigraph(TropiconError):
    pass


class MuMismatch(TropiconError):
    """Epigraph separation produced unequal coefficients on the value coordinate."""


class SchemaError(TropiconError, ValueError):
    """An input document does not match the expected JSON layout."""

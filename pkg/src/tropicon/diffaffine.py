"""
Residuated differences of affine functions,

    u(x) = (<w', x> (+) d') (-) (<w'', x> (+) d''),

their one-dimensional shapes and their level sets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DimensionMismatch, DomainError, KindMismatch
from .semifield import Scalar, SemifieldKind, bottom, lres, ominus, oplus, otimes
from .separation import AffineHyperplane, KbarHyperplane
from .vectors import Vector, vdot, voplus, vscale

__all__ = [
    "DiffAffine",
    "ShapeCase",
    "Shape1D",
    "evaluate",
    "classify_1d",
    "level_hyperplane",
]


@dataclass(frozen=True)
class DiffAffine:
    w_prime: Vector
    d_prime: Scalar
    w_second: Vector
    d_second: Scalar

    def __post_init__(self):
        if len(self.w_prime) != len(self.w_second):
            raise DimensionMismatch("the two affine forms have different dimensions")
        kinds = {self.w_prime.kind, self.w_second.kind, self.d_prime.kind, self.d_second.kind}
        if len(kinds) != 1:
            raise KindMismatch("coefficients mix semifields")
        if not (self.w_prime.in_kn and self.w_second.in_kn and self.d_prime.in_k and self.d_second.in_k):
            raise DomainError("difference-of-affine coefficients must lie in K")

    @property
    def n(self) -> int:
        return len(self.w_prime)

    @property
    def kind(self) -> SemifieldKind:
        return self.w_prime.kind

    @classmethod
    def from_hyperplane(cls, H: KbarHyperplane) -> "DiffAffine":
        """The function vanishing exactly on H (given H's normalized orientation)."""
        return cls(H.w_prime, H.d_prime, H.w_second, H.d_second)

    def scaled(self, alpha: Scalar) -> "DiffAffine":
        """``alpha * u``, obtained by scaling all four coefficient groups."""
        return DiffAffine(vscale(self.w_prime, alpha), otimes(self.d_prime, alpha),
                          vscale(self.w_second, alpha), otimes(self.d_second, alpha))

    def __call__(self, x: Vector) -> Scalar:
        return evaluate(self, x)


def evaluate(u: DiffAffine, x: Vector) -> Scalar:
    if len(x) != u.n:
        raise DimensionMismatch(f"point has dimension {len(x)}, function expects {u.n}")
    a = oplus(vdot(u.w_prime, x), u.d_prime)
    b = oplus(vdot(u.w_second, x), u.d_second)
    return ominus(a, b)


class ShapeCase(enum.Enum):
    IDENTICALLY_BOTTOM = "identically-bottom"
    RAY_RIGHT = "ray-right"
    PLATEAU = "plateau"
    AFFINE = "affine"


@dataclass(frozen=True)
class Shape1D:
    """Closed-form description of ``y = (a x (+) b) (-) (c x (+) d)`` on K.

    * ``RAY_RIGHT``: zero for ``x <= threshold``, ``slope * x`` beyond it.
    * ``PLATEAU``: ``height`` for ``x < threshold``, zero from it on.
    * ``AFFINE``: ``slope * x (+) height`` everywhere.

    At a threshold both non-affine shapes take the zero value.
    """

    case: ShapeCase
    slope: Scalar | None = None
    height: Scalar | None = None
    threshold: Scalar | None = None

    def value(self, x: Scalar) -> Scalar:
        if self.case is ShapeCase.IDENTICALLY_BOTTOM:
            return bottom(x.kind)
        if self.case is ShapeCase.RAY_RIGHT:
            return bottom(x.kind) if x <= self.threshold else otimes(self.slope, x)
        if self.case is ShapeCase.PLATEAU:
            return self.height if x < self.threshold else bottom(x.kind)
        return oplus(otimes(self.slope, x), self.height)


def classify_1d(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Shape1D:
    """Shape of ``(a x (+) b) (-) (c x (+) d)`` from the comparisons a vs c and b vs d.

    Thresholds come from evaluating the residuated difference: the ray starts
    after ``a \\ d`` (= d - a) and the plateau ends at ``c \\ b`` (= b - c).
    """
    for s in (a, b, c, d):
        if s.is_top:
            raise DomainError("shape parameters must lie in K")
    if a <= c and b <= d:
        return Shape1D(ShapeCase.IDENTICALLY_BOTTOM)
    if a > c and b <= d:
        return Shape1D(ShapeCase.RAY_RIGHT, slope=a, threshold=lres(a, d))
    if a <= c and b > d:
        return Shape1D(ShapeCase.PLATEAU, height=b, threshold=lres(c, b))
    return Shape1D(ShapeCase.AFFINE, slope=a, height=b)


def level_hyperplane(u: DiffAffine, t: Scalar) -> AffineHyperplane:
    """The lower level set ``{x : u(x) <= t}`` as a normalized affine hyperplane.

    ``u(x) <= t`` iff ``<w', x> (+) d' <= <w'', x> (+) (d'' (+) t)``, written
    as the equation ``<w' (+) w'', x> (+) (d' (+) d'' (+) t) = <w'', x> (+) (d'' (+) t)``.
    """
    if t.is_top:
        raise DomainError("level must lie in K")
    low = oplus(u.d_second, t)
    return AffineHyperplane(voplus(u.w_prime, u.w_second), oplus(u.d_prime, low), u.w_second, low)

"""Finite-dimensional vectors over the completed semifield."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, DomainError, KindMismatch
from .semifield import (
    MAX_PLUS,
    Scalar,
    SemifieldKind,
    bottom,
    dual,
    lres,
    meet,
    one,
    oplus,
    otimes,
    scalar,
    top,
)

__all__ = [
    "Vector",
    "vector",
    "zero_vector",
    "unit_vector",
    "vdot",
    "vlres",
    "vdual",
    "support",
    "vcomb",
    "voplus",
    "vscale",
    "require_kn",
]


class Vector:
    """Immutable tuple of Scalars sharing one semifield.

    ``x <= y`` is the coordinatewise natural order (a partial order, so
    ``not x <= y`` does not imply ``y <= x``).
    """

    __slots__ = ("entries", "kind")

    def __init__(self, entries: Iterable[Scalar], kind: SemifieldKind | None = None):
        entries = tuple(entries)
        if not entries:
            raise DimensionMismatch("vectors must have at least one coordinate")
        if kind is None:
            kind = entries[0].kind
        for e in entries:
            if not isinstance(e, Scalar):
                raise TypeError(f"vector entries must be Scalar, got {e!r}")
            if e.kind is not kind:
                raise KindMismatch("vector entries mix semifields")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    def __reduce__(self):
        return (Vector, (self.entries, self.kind))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.entries)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Vector(self.entries[i], self.kind)
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.kind is other.kind and self.entries == other.entries

    def __hash__(self):
        return hash((self.entries, self.kind))

    def __le__(self, other: "Vector") -> bool:
        _check(self, other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def __ge__(self, other: "Vector") -> bool:
        return other.__le__(self)

    @property
    def in_kn(self) -> bool:
        """True when no entry is the top element."""
        return all(e.in_k for e in self.entries)

    @property
    def is_zero(self) -> bool:
        return all(e.is_bottom for e in self.entries)

    def extend(self, *tail: Scalar) -> "Vector":
        return Vector(self.entries + tuple(tail), self.kind)

    def pick(self, indices: Sequence[int]) -> "Vector":
        return Vector((self.entries[i] for i in indices), self.kind)

    def __repr__(self):
        body = ", ".join(str(e) for e in self.entries)
        suffix = "" if self.kind is MAX_PLUS else f", {self.kind.value}"
        return f"Vector(({body}){suffix})"


def vector(values: Iterable, kind: SemifieldKind = MAX_PLUS) -> Vector:
    """Parse user-facing numbers/strings (see :func:`scalar`) into a Vector."""
    return Vector((scalar(v, kind) for v in values), kind)


def zero_vector(n: int, kind: SemifieldKind = MAX_PLUS) -> Vector:
    return Vector((bottom(kind),) * n, kind)


def unit_vector(n: int, i: int, kind: SemifieldKind = MAX_PLUS) -> Vector:
    """The vector with the unit at index ``i`` (0-based) and zeros elsewhere."""
    return Vector((one(kind) if j == i else bottom(kind) for j in range(n)), kind)


def _check(x: Vector, y: Vector) -> None:
    if len(x) != len(y):
        raise DimensionMismatch(f"dimension {len(x)} vs {len(y)}")
    if x.kind is not y.kind:
        raise KindMismatch(f"mixing {x.kind.value} and {y.kind.value} vectors")


def require_kn(x: Vector, what: str = "vector") -> Vector:
    if not x.in_kn:
        raise DomainError(f"{what} must lie in K^n (no top entries): {x!r}")
    return x


def vdot(y: Vector, x: Vector) -> Scalar:
    """Pairing <y, x> = (+)_i y_i (x) x_i."""
    _check(y, x)
    acc = bottom(x.kind)
    for a, b in zip(y.entries, x.entries):
        acc = oplus(acc, otimes(a, b))
    return acc


def vlres(x: Vector, y: Vector) -> Scalar:
    """``x \\ y`` = inf_i x_i \\ y_i; the top element when x is the zero vector."""
    _check(x, y)
    acc = top(x.kind)
    for a, b in zip(x.entries, y.entries):
        acc = meet(acc, lres(a, b))
    return acc


def vdual(x: Vector) -> Vector:
    return Vector((dual(e) for e in x.entries), x.kind)


def support(x: Vector) -> frozenset[int]:
    """0-based indices of the non-zero coordinates."""
    return frozenset(i for i, e in enumerate(x.entries) if not e.is_bottom)


def vscale(x: Vector, lam: Scalar) -> Vector:
    """Right action x (x) lam, coordinatewise."""
    return Vector((otimes(e, lam) for e in x.entries), x.kind)


def voplus(x: Vector, y: Vector) -> Vector:
    _check(x, y)
    return Vector((oplus(a, b) for a, b in zip(x.entries, y.entries)), x.kind)


def vcomb(points: Sequence[Vector], weights: Sequence[Scalar]) -> Vector:
    """Linear combination (+)_l points[l] (x) weights[l]."""
    if len(points) != len(weights):
        raise DimensionMismatch(f"{len(points)} points but {len(weights)} weights")
    if not points:
        raise DimensionMismatch("empty combination has no dimension")
    acc = zero_vector(len(points[0]), points[0].kind)
    for p, w in zip(points, weights):
        if w.is_top:
            raise DomainError("combination weights must lie in K")
        acc = voplus(acc, vscale(p, w))
    return acc

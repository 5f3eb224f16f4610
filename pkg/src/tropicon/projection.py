"""
Projectors onto finitely generated semimodules and convex sets.

For a finite generator list the suprema over the whole set reduce to
suprema over generators: any convex combination ``v = (+) g_l a_l`` with
``(+) a_l = 1`` satisfies ``v \\ y ^ 1 <= (+)_l (g_l \\ y ^ 1)`` and
``v (v \\ y ^ 1) <= (+)_l g_l (g_l \\ y ^ 1)``, so both ``nu_C`` and
``Q_C`` are attained on generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, KindMismatch, ProjectionUndefined
from .semifield import Scalar, SemifieldKind, bottom, inv, meet, one, oplus
from .vectors import Vector, require_kn, vlres, voplus, vscale, zero_vector

__all__ = [
    "ConvexSet",
    "ModuleBasis",
    "ProjectionResult",
    "project_module",
    "project_convex",
    "in_down",
    "in_up",
    "member",
    "proj_point",
]


def _validate(generators: Sequence[Vector]) -> tuple[tuple[Vector, ...], int, SemifieldKind]:
    gens = tuple(generators)
    if not gens:
        raise ValueError("a generator list must be nonempty")
    n, kind = len(gens[0]), gens[0].kind
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch("generators have different dimensions")
        if g.kind is not kind:
            raise KindMismatch("generators mix semifields")
        require_kn(g, "generator")
    return gens, n, kind


@dataclass(frozen=True)
class ModuleBasis:
    """Generating family of the semimodule of all linear combinations."""

    generators: tuple[Vector, ...]

    def __init__(self, generators: Sequence[Vector]):
        gens, _, _ = _validate(generators)
        object.__setattr__(self, "generators", gens)

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def kind(self) -> SemifieldKind:
        return self.generators[0].kind


@dataclass(frozen=True)
class ConvexSet:
    """Convex hull of finitely many points: combinations with weights summing to the unit."""

    generators: tuple[Vector, ...]

    def __init__(self, generators: Sequence[Vector]):
        gens, _, _ = _validate(generators)
        object.__setattr__(self, "generators", gens)

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def kind(self) -> SemifieldKind:
        return self.generators[0].kind


@dataclass(frozen=True)
class ProjectionResult:
    q: Vector
    nu: Scalar


def _check_point(gens, y: Vector) -> None:
    if len(y) != len(gens[0]):
        raise DimensionMismatch(f"point has dimension {len(y)}, set has {len(gens[0])}")
    if y.kind is not gens[0].kind:
        raise KindMismatch("point and set use different semifields")


def project_module(W: ModuleBasis, x: Vector) -> Vector:
    """P_V(x) = (+)_w w (w \\ x): the largest module element below x."""
    _check_point(W.generators, x)
    require_kn(x, "point")
    acc = zero_vector(len(x), x.kind)
    for w in W.generators:
        acc = voplus(acc, vscale(w, vlres(w, x)))
    return acc


def project_convex(C: ConvexSet, y: Vector) -> ProjectionResult:
    """Return ``Q_C(y)`` (projection onto the shadow of C) and ``nu_C(y)``."""
    _check_point(C.generators, y)
    require_kn(y, "point")
    unit = one(y.kind)
    nu = bottom(y.kind)
    q = zero_vector(len(y), y.kind)
    for g in C.generators:
        c = meet(vlres(g, y), unit)
        nu = oplus(nu, c)
        q = voplus(q, vscale(g, c))
    return ProjectionResult(q, nu)


def in_down(C: ConvexSet, z: Vector) -> bool:
    """Membership in the shadow Down(C) = {x lam : x in C, lam <= 1}."""
    return project_convex(C, z).q == z


def in_up(C: ConvexSet, z: Vector) -> bool:
    """Membership in Up(C) = {z : z >= v for some v in C}."""
    return project_convex(C, z).nu == one(z.kind)


def member(C: ConvexSet, y: Vector) -> bool:
    r = project_convex(C, y)
    return r.q == y and r.nu == one(y.kind)


def proj_point(C: ConvexSet, y: Vector) -> Vector:
    """``Q_C(y) nu_C(y)^-1``, which always lies in C."""
    r = project_convex(C, y)
    if r.nu.is_bottom:
        raise ProjectionUndefined(f"{y!r} shares no support with the convex set")
    return vscale(r.q, inv(r.nu))

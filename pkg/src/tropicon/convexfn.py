"""
Convex functions K^n -> K-bar: upper hulls of differences of affine
functions, finitely probed epigraphs, and supporting functions.

An :class:`EpiSet` stores graph points ``(z_j, lam_j)``; the set it stands
for is their convex hull closed upwards in the value coordinate,

    E = conv{(z_j, lam_j)} (+) {(0, ..., 0, t) : t in K},

the epigraph of ``f(x) = min{lam : (x, lam) in E}``.  Such a set is not a
finitely generated convex set (the vertical ray is lost under combinations
whose weights sum to the unit), but its homogenisation is the finitely
generated semimodule spanned by ``(z_j, lam_j, 1)`` and the ray
``(0, ..., 0, 1, 0)``.  Supporting functions are obtained by separating
``(y, nu, 1)`` from that semimodule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Any, Sequence

from .diffaffine import DiffAffine, evaluate
from .errors import (
    DimensionMismatch,
    DomainError,
    KindMismatch,
    MuMismatch,
    PointInModule,
    PointOnEpigraph,
    SeparationFailed,
)
from .projection import ModuleBasis, ProjectionResult
from .semifield import (
    Scalar,
    SemifieldKind,
    bottom,
    finite,
    inv,
    lres,
    meet,
    one,
    oplus,
    otimes,
    top,
)
from .separation import separate_module
from .vectors import Vector, require_kn, vcomb, vlres, voplus, vscale, zero_vector

__all__ = [
    "Hull",
    "EpiSet",
    "ConvexityReport",
    "hull_eval",
    "convexity_check",
    "epi_project",
    "supporting_function",
    "hull_from_supports",
    "probes_below",
]


@dataclass(frozen=True)
class Hull:
    """Pointwise supremum of finitely many differences of affine functions."""

    pieces: tuple[DiffAffine, ...] = ()

    def __init__(self, pieces: Sequence[DiffAffine] = ()):
        pieces = tuple(pieces)
        if pieces:
            n, kind = pieces[0].n, pieces[0].kind
            if any(p.n != n for p in pieces):
                raise DimensionMismatch("hull pieces have different dimensions")
            if any(p.kind is not kind for p in pieces):
                raise KindMismatch("hull pieces mix semifields")
        object.__setattr__(self, "pieces", pieces)

    def __call__(self, x: Vector) -> Scalar:
        return hull_eval(self, x)


def hull_eval(F: Hull, x: Vector) -> Scalar:
    acc = bottom(x.kind)
    for u in F.pieces:
        acc = oplus(acc, evaluate(u, x))
    return acc


@dataclass(frozen=True)
class EpiSet:
    graph_points: tuple[tuple[Vector, Scalar], ...]

    def __init__(self, graph_points: Sequence[tuple[Vector, Scalar]]):
        pts = tuple((z, lam) for z, lam in graph_points)
        if not pts:
            raise ValueError("an epigraph needs at least one graph point")
        n, kind = len(pts[0][0]), pts[0][0].kind
        for z, lam in pts:
            if len(z) != n:
                raise DimensionMismatch("graph points have different dimensions")
            if z.kind is not kind or lam.kind is not kind:
                raise KindMismatch("graph points mix semifields")
            require_kn(z, "graph point")
            if lam.is_top:
                raise DomainError("graph values must lie in K")
        object.__setattr__(self, "graph_points", pts)

    @property
    def n(self) -> int:
        return len(self.graph_points[0][0])

    @property
    def kind(self) -> SemifieldKind:
        return self.graph_points[0][0].kind

    def contains(self, x: Vector, lam: Scalar) -> bool:
        r = epi_project(self, x, lam)
        return r.nu == one(x.kind) and r.q == x.extend(lam)

    def value(self, x: Vector) -> Scalar:
        """``f(x) = min{lam : (x, lam) in E}``; TOP outside the domain.

        Membership is monotone in ``lam`` and can only switch on at a graph
        value ``lam_j`` or at ``lam_j (x) (x_i / z_ji)``, so scanning those
        candidates in increasing order is exact.
        """
        _check_point(self, x)
        cands = set()
        for z, lam in self.graph_points:
            cands.add(lam)
            for zi, xi in zip(z, x):
                c = otimes(lam, lres(zi, xi))
                if c.in_k:
                    cands.add(c)
        for lam in sorted(cands):
            if self.contains(x, lam):
                return lam
        return top(x.kind)

    def __call__(self, x: Vector) -> Scalar:
        return self.value(x)


def _check_point(E: EpiSet, y: Vector) -> None:
    if len(y) != E.n:
        raise DimensionMismatch(f"point has dimension {len(y)}, epigraph lives over K^{E.n}")
    if y.kind is not E.kind:
        raise KindMismatch("point and epigraph use different semifields")
    require_kn(y, "point")


def epi_project(E: EpiSet, y: Vector, nu: Scalar) -> ProjectionResult:
    """``Q`` and ``nu`` of ``(y, nu)`` relative to the upward-closed epigraph.

    Along the vertical ray the residual ``v \\ (y, nu)`` only decreases, so
    ``nu_E`` and the first n coordinates of ``Q_E`` are attained at graph
    points.  The last coordinate of ``Q_E`` climbs to ``nu`` along the ray
    as soon as some graph point has ``z_j \\ y`` nonzero.
    """
    _check_point(E, y)
    if nu.is_top:
        raise DomainError("nu must lie in K")
    unit = one(y.kind)
    nu_e = bottom(y.kind)
    q = zero_vector(len(y), y.kind)
    last = bottom(y.kind)
    reaches_ray = False
    for z, lam in E.graph_points:
        r = vlres(z, y)
        reaches_ray = reaches_ray or not r.is_bottom
        c = meet(meet(r, lres(lam, nu)), unit)
        nu_e = oplus(nu_e, c)
        q = voplus(q, vscale(z, c))
        last = oplus(last, otimes(lam, c))
    if reaches_ray:
        last = nu
    return ProjectionResult(q.extend(last), nu_e)


def _homogenized_epigraph(E: EpiSet) -> ModuleBasis:
    kind, unit, zero = E.kind, one(E.kind), bottom(E.kind)
    gens = [z.extend(lam, unit) for z, lam in E.graph_points]
    gens.append(zero_vector(E.n, kind).extend(unit, zero))
    return ModuleBasis(gens)


def _normalize(u0: DiffAffine, mu: Scalar, y: Vector, nu: Scalar) -> tuple[DiffAffine, str, Scalar]:
    """Bring the value-coordinate coefficient to the unit, or rescale when it is zero.

    A zero ``mu`` means ``y`` lies outside dom f: then ``u0`` vanishes on the
    graph points and is nonzero at ``y``, and any nonzero multiple keeps the
    first property.  The multiple ``(u0(y) \\ nu) + 1`` lifts ``u0(y)`` strictly
    above ``nu``.  With the perturbed separation used here ``mu`` is always
    finite (the ray generator covers the value coordinate), so the second
    branch is a safeguard.
    """
    kind = y.kind
    if not mu.is_bottom:
        alpha = inv(mu)
        return u0.scaled(alpha), "normalized", alpha
    v = evaluate(u0, y)
    if v.is_bottom:
        raise SeparationFailed("degenerate epigraph separation: u0(y) is zero")
    alpha = one(kind) if nu.is_bottom else otimes(lres(v, nu), finite(1, kind))
    return u0.scaled(alpha), "scaled", alpha


def _supporting_function(E: EpiSet, y: Vector, nu: Scalar) -> tuple[DiffAffine, dict[str, Any]]:
    _check_point(E, y)
    if nu.is_top:
        raise DomainError("nu must lie in K")
    if E.contains(y, nu):
        raise PointOnEpigraph(f"({y!r}, {nu!r}) lies in the epigraph")
    n, kind = E.n, y.kind
    try:
        cert = separate_module(_homogenized_epigraph(E), y.extend(nu, one(kind)))
    except PointInModule as exc:  # pragma: no cover - excluded by the membership test above
        raise PointOnEpigraph(str(exc)) from exc
    H = cert.hyperplane
    wp, mu_p, dp = H.w_prime[:n], H.w_prime[n], H.w_prime[n + 1]
    ws, mu_s, ds = H.w_second[:n], H.w_second[n], H.w_second[n + 1]
    if mu_p != mu_s:
        raise MuMismatch(f"value-coordinate coefficients differ: {mu_p!r} vs {mu_s!r}")
    u, branch, alpha = _normalize(DiffAffine(wp, dp, ws, ds), mu_p, y, nu)
    trace: dict[str, Any] = {"mu": mu_p, "branch": branch, "alpha": alpha, "separation": cert.trace}
    if any(not evaluate(u, z) <= lam for z, lam in E.graph_points) or evaluate(u, y) <= nu:
        raise SeparationFailed("supporting function violates its contract")
    return u, trace


def supporting_function(E: EpiSet, y: Vector, nu: Scalar) -> DiffAffine:
    """A difference of affine functions ``u <= f`` with ``u(y) </= nu``.

    Requires ``(y, nu)`` outside the epigraph.
    """
    return _supporting_function(E, y, nu)[0]


def hull_from_supports(E: EpiSet, probes: Sequence[tuple[Vector, Scalar]]) -> Hull:
    return Hull([supporting_function(E, y, nu) for y, nu in probes])


def probes_below(E: EpiSet, xs: Sequence[Vector], delta=1) -> list[tuple[Vector, Scalar]]:
    """Probes ``(x, f(x) - delta)`` for the points of ``xs`` where f is finite."""
    out = []
    for x in xs:
        fx = E.value(x)
        if fx.is_finite:
            out.append((x, otimes(fx, finite(-delta, x.kind))))
    return out


@dataclass
class ConvexityReport:
    ok: bool
    witness: dict[str, Any] | None = None
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _weight_candidates(x: Vector, target: Vector) -> list[Scalar]:
    kind = x.kind
    cands = {bottom(kind), one(kind)}
    for a, b in zip(x, target):
        c = lres(a, b)
        if c.in_k and c <= one(kind):
            cands.add(c)
    return sorted(cands)


def convexity_check(samples: Sequence[tuple[Vector, Scalar]], trials: int | None = 200,
                    seed: int = 0) -> ConvexityReport:
    """Sampled test of ``f(x a (+) y b) <= f(x) a (+) f(y) b`` for ``a (+) b = 1``.

    Only combinations landing on another sampled point can be checked.  For
    each pair and target point every minimal weight pair is enumerated: a
    minimal weight is the zero, the unit, or makes some coordinate tight.
    This is a sampling check, not a decision procedure.
    """
    pts = list(samples)
    if len(pts) < 2:
        return ConvexityReport(True)
    pairs = [(i, j) for i in range(len(pts)) for j in range(len(pts)) if i < j]
    if trials is not None and trials < len(pairs):
        pairs = random.Random(seed).sample(pairs, trials)
    unit = one(pts[0][0].kind)
    for i, j in pairs:
        (x1, f1), (x2, f2) = pts[i], pts[j]
        for x, fx in pts:
            for a, b in product(_weight_candidates(x1, x), _weight_candidates(x2, x)):
                if oplus(a, b) != unit or vcomb([x1, x2], [a, b]) != x:
                    continue
                bound = oplus(otimes(f1, a), otimes(f2, b))
                if not fx <= bound:
                    witness = {"x1": x1, "x2": x2, "alpha": a, "beta": b,
                               "x": x, "f(x)": fx, "bound": bound}
                    return ConvexityReport(False, witness, len(pairs))
    return ConvexityReport(True, None, len(pairs))

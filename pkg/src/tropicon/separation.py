"""
Separating hyperplanes for finitely generated convex sets and semimodules.

Two constructions are offered:

* :func:`universal_separate` linearises the projection-based separating set
  of a complete convex set.  Its coefficients live in the completed
  semifield and may contain the top element, in which case the hyperplane is
  not closed.
* :func:`separate_convex` produces a hyperplane whose coefficients all lie in
  K.  It reduces supports, homogenises ``C`` into the semimodule
  ``V_C = {(x lam, lam)}``, and separates ``(y, 1)`` from ``V_C`` with the
  perturbed linear hyperplane ``<z^-, x> = <P(z)^-, x>`` of
  :func:`separate_module`.

Every hyperplane is stored with the dominating side primed
(``w' >= w''``, ``d' >= d''``), so ``A == B`` and ``A <= B`` coincide.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence, Union

from .errors import (
    DimensionMismatch,
    KindMismatch,
    PointInModule,
    PointIsMember,
    SeparationFailed,
)
from .projection import ConvexSet, ModuleBasis, member, project_convex, project_module
from .semifield import Scalar, SemifieldKind, bottom, dual, finite, one, oplus
from .vectors import (
    Vector,
    require_kn,
    support,
    unit_vector,
    vcomb,
    vdot,
    vdual,
    zero_vector,
)

__all__ = [
    "Mode",
    "KbarHyperplane",
    "AffineHyperplane",
    "SeparationCertificate",
    "VerificationReport",
    "contains",
    "universal_separate",
    "separate_module",
    "separate_convex",
    "dehomogenize",
    "verify_certificate",
    "check_certificate",
    "sample_weights",
    "MAX_PERTURBATION_STEPS",
]

MAX_PERTURBATION_STEPS = 64


class Mode(enum.Enum):
    UNIVERSAL = "universal"
    REFINED = "refined"


@dataclass(frozen=True)
class KbarHyperplane:
    """Solution set of ``<w', x> (+) d' = <w'', x> (+) d''``; coefficients may be TOP."""

    w_prime: Vector
    d_prime: Scalar
    w_second: Vector
    d_second: Scalar

    def __post_init__(self):
        if len(self.w_prime) != len(self.w_second):
            raise DimensionMismatch("hyperplane sides have different dimensions")
        kinds = {self.w_prime.kind, self.w_second.kind, self.d_prime.kind, self.d_second.kind}
        if len(kinds) != 1:
            raise KindMismatch("hyperplane coefficients mix semifields")

    @property
    def n(self) -> int:
        return len(self.w_prime)

    @property
    def kind(self) -> SemifieldKind:
        return self.w_prime.kind

    @property
    def is_normalized(self) -> bool:
        return self.w_prime >= self.w_second and self.d_prime >= self.d_second

    @property
    def is_linear(self) -> bool:
        return self.d_prime.is_bottom and self.d_second.is_bottom

    @property
    def has_top(self) -> bool:
        return not (self.w_prime.in_kn and self.w_second.in_kn
                    and self.d_prime.in_k and self.d_second.in_k)

    def sides(self, x: Vector) -> tuple[Scalar, Scalar]:
        return (oplus(vdot(self.w_prime, x), self.d_prime),
                oplus(vdot(self.w_second, x), self.d_second))


@dataclass(frozen=True)
class AffineHyperplane(KbarHyperplane):
    """Hyperplane with every coefficient in K (finite or the zero)."""

    def __post_init__(self):
        super().__post_init__()
        if self.has_top:
            raise ValueError("affine hyperplane coefficients must lie in K")


Hyperplane = Union[KbarHyperplane, AffineHyperplane]


def contains(H: KbarHyperplane, x: Vector) -> bool:
    if len(x) != H.n:
        raise DimensionMismatch(f"point has dimension {len(x)}, hyperplane {H.n}")
    a, b = H.sides(x)
    return a == b


def _oriented(cls, wa: Vector, da: Scalar, wb: Vector, db: Scalar) -> tuple[KbarHyperplane, bool]:
    """Build a hyperplane with the dominating side primed; report whether sides were swapped."""
    if wa >= wb and da >= db:
        return cls(wa, da, wb, db), False
    if wb >= wa and db >= da:
        return cls(wb, db, wa, da), True
    raise ValueError("neither side of the hyperplane dominates the other")


@dataclass(frozen=True)
class SeparationCertificate:
    hyperplane: KbarHyperplane
    set: Union[ConvexSet, ModuleBasis]
    point: Vector
    mode: Mode
    trace: dict[str, Any] = field(default_factory=dict)


def _check_dims(gens: Sequence[Vector], y: Vector) -> None:
    if len(y) != len(gens[0]):
        raise DimensionMismatch(f"point has dimension {len(y)}, set has {len(gens[0])}")
    if y.kind is not gens[0].kind:
        raise KindMismatch("point and set use different semifields")
    require_kn(y, "point")


def universal_separate(C: ConvexSet, y: Vector) -> SeparationCertificate:
    """Hyperplane ``<Q_C(y)^-, x> (+) nu_C(y)^- = <y^-, x> (+) 1`` (coefficients in K-bar)."""
    _check_dims(C.generators, y)
    r = project_convex(C, y)
    if r.q == y and r.nu == one(y.kind):
        raise PointIsMember(f"{y!r} belongs to the convex set")
    H, swapped = _oriented(KbarHyperplane, vdual(y), one(y.kind), vdual(r.q), dual(r.nu))
    trace = {"q": r.q, "nu": r.nu, "swapped": swapped}
    return SeparationCertificate(H, C, y, Mode.UNIVERSAL, trace)


def _coordinate_obstruction(gens: Sequence[Vector], y: Vector) -> int | None:
    """First index where y is nonzero but every generator vanishes."""
    covered = frozenset().union(*(support(g) for g in gens))
    missing = sorted(support(y) - covered)
    return missing[0] if missing else None


def _pad(v: Vector, indices: Sequence[int], n: int) -> Vector:
    out = list(zero_vector(n, v.kind))
    for i, e in zip(indices, v):
        out[i] = e
    return Vector(out, v.kind)


def _perturbed(y: Vector, m: Fraction) -> Vector:
    fill = finite(m, y.kind)
    return Vector((fill if e.is_bottom else e for e in y), y.kind)


def _separate_full_support(gens: Sequence[Vector], y: Vector, z: Vector | None = None):
    """Linear separation when the generators jointly cover every coordinate.

    Returns ``(w_prime, w_second, trace)`` with ``w_prime = P(z)^-`` and
    ``w_second = z^-`` for a vector ``z >= y`` with nonzero entries and
    ``y </= P(z)``.
    """
    basis = ModuleBasis(gens)
    n = len(y)
    trace: dict[str, Any] = {}
    if z is not None:
        if not (z >= y and all(e.is_finite for e in z)):
            raise ValueError("perturbation z must dominate y and have nonzero entries")
        p = project_module(basis, z)
        if y <= p:
            raise ValueError("the supplied z does not separate y")
        trace["z_source"] = "given"
    elif len(support(y)) == n:
        z, p = y, project_module(basis, y)
        trace["z_source"] = "point"
    else:
        values = [e.value for v in (y, *gens) for e in v if e.is_finite]
        m = min(values) - 1
        for step in range(MAX_PERTURBATION_STEPS):
            z = _perturbed(y, m)
            p = project_module(basis, z)
            if not y <= p:
                break
            m -= 2 ** step
        else:
            raise SeparationFailed(f"no separating perturbation within {MAX_PERTURBATION_STEPS} steps")
        trace.update(z_source="perturbation", m=finite(m, y.kind), steps=step)
    trace["z"] = z
    return vdual(p), vdual(z), trace


def _self_check(H: KbarHyperplane, gens: Sequence[Vector], y: Vector) -> None:
    if not all(contains(H, g) for g in gens) or contains(H, y):
        raise SeparationFailed("constructed hyperplane does not separate")


def separate_module(W: ModuleBasis, y: Vector, z: Vector | None = None) -> SeparationCertificate:
    """Linear hyperplane with coefficients in K containing the module and not ``y``.

    ``z`` optionally fixes the perturbation vector (entries nonzero,
    ``z >= y``); by default ``y`` itself is used when it has full support,
    otherwise its zero entries are replaced by a descending finite level.
    """
    gens = W.generators
    _check_dims(gens, y)
    if project_module(W, y) == y:
        raise PointInModule(f"{y!r} belongs to the semimodule")
    n, kind = len(y), y.kind
    zero = bottom(kind)

    i = _coordinate_obstruction(gens, y)
    if i is not None:
        H = AffineHyperplane(unit_vector(n, i, kind), zero, zero_vector(n, kind), zero)
        return SeparationCertificate(H, W, y, Mode.REFINED,
                                     {"reduction": "coordinate", "coordinate": i})

    J = sorted(frozenset().union(*(support(g) for g in gens)))
    sub = [g.pick(J) for g in gens]
    zJ = z.pick(J) if z is not None else None
    wp, ws, trace = _separate_full_support(sub, y.pick(J), zJ)
    H = AffineHyperplane(_pad(wp, J, n), zero, _pad(ws, J, n), zero)
    _self_check(H, gens, y)
    trace.update(reduction="none", restricted_to=J, swapped=True)
    return SeparationCertificate(H, W, y, Mode.REFINED, trace)


def dehomogenize(wp: Vector, ws: Vector, J: Sequence[int], n: int) -> AffineHyperplane:
    """Turn a linear hyperplane on K^(|J|+1) (last coordinate homogenising) into an affine one on K^n."""
    k = len(J)
    return AffineHyperplane(_pad(wp[:k], J, n), wp[k], _pad(ws[:k], J, n), ws[k])


def separate_convex(C: ConvexSet, y: Vector) -> SeparationCertificate:
    """Affine hyperplane with all coefficients in K containing C and not ``y``."""
    gens = C.generators
    _check_dims(gens, y)
    if member(C, y):
        raise PointIsMember(f"{y!r} belongs to the convex set")
    n, kind = len(y), y.kind
    zero, unit = bottom(kind), one(kind)

    i = _coordinate_obstruction(gens, y)
    if i is not None:
        H = AffineHyperplane(unit_vector(n, i, kind), zero, zero_vector(n, kind), zero)
        return SeparationCertificate(H, C, y, Mode.REFINED,
                                     {"reduction": "coordinate", "coordinate": i, "homogenized": False})

    J = sorted(frozenset().union(*(support(g) for g in gens)))
    lifted = [g.pick(J).extend(unit) for g in gens]
    wp, ws, trace = _separate_full_support(lifted, y.pick(J).extend(unit))
    H = dehomogenize(wp, ws, J, n)
    _self_check(H, gens, y)
    trace.update(reduction="none", restricted_to=J, homogenized=True, swapped=True)
    return SeparationCertificate(H, C, y, Mode.REFINED, trace)


# -- verification -----------------------------------------------------------

def sample_weights(rng: random.Random, m: int, kind: SemifieldKind, convex: bool = True) -> list[Scalar]:
    """Random exact weights with denominators at most 64.

    Roughly one weight in five is the zero.  With ``convex`` the weights are
    shifted so that their sum (maximum) is exactly the unit.
    """
    raw: list[Fraction | None] = []
    for _ in range(m):
        if rng.random() < 0.2:
            raw.append(None)
        else:
            den = rng.randint(1, 64)
            raw.append(Fraction(rng.randint(-20 * den, 0), den))
    if convex:
        finite_vals = [v for v in raw if v is not None]
        if not finite_vals:
            raw[rng.randrange(m)] = Fraction(0)
        else:
            top_val = max(finite_vals)
            raw = [None if v is None else v - top_val for v in raw]
    return [bottom(kind) if v is None else finite(v, kind) for v in raw]


@dataclass
class VerificationReport:
    ok: bool
    failures: list[str]
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def check_certificate(cert: SeparationCertificate, samples: int = 100, seed: int = 0) -> VerificationReport:
    H, gens, y = cert.hyperplane, cert.set.generators, cert.point
    convex = isinstance(cert.set, ConvexSet)
    failures: list[str] = []
    if H.n != len(y) or len(gens[0]) != len(y):
        return VerificationReport(False, ["dimension mismatch between hyperplane, set and point"], 0)
    if not H.is_normalized:
        failures.append("orientation not normalized (need w' >= w'' and d' >= d'')")
    if cert.mode is Mode.REFINED and H.has_top:
        failures.append("refined certificate has a top coefficient")
    for k, g in enumerate(gens):
        if not contains(H, g):
            failures.append(f"generator {k} {g!r} is not on the hyperplane")
    rng = random.Random(seed)
    for s in range(samples):
        w = sample_weights(rng, len(gens), y.kind, convex=convex)
        x = vcomb(gens, w)
        if not contains(H, x):
            failures.append(f"sample {s} {x!r} (weights {[str(a) for a in w]}) is not on the hyperplane")
            break
    if contains(H, y):
        failures.append(f"point {y!r} lies on the hyperplane")
    return VerificationReport(not failures, failures, len(gens) + samples + 1)


def verify_certificate(cert: SeparationCertificate, samples: int = 100, seed: int = 0) -> bool:
    """Check generators, ``samples`` random combinations and the excluded point."""
    return check_certificate(cert, samples, seed).ok

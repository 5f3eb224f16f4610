"""
JSON wire format.

Scalars are written as JSON integers when they are integral and finite, and
otherwise as strings: ``"p/q"``, ``"-inf"`` or ``"+inf"``.  Infinite strings
are read numerically, so in min-plus ``"+inf"`` is the semiring zero.  Input
numbers with a decimal point are read exactly (``0.1`` is ``1/10``).
"""

from __future__ import annotations

import enum
import json
import os
from fractions import Fraction
from typing import Any, Mapping

from .convexfn import EpiSet, Hull
from .diffaffine import DiffAffine
from .errors import SchemaError
from .projection import ConvexSet, ModuleBasis
from .semifield import Scalar, SemifieldKind, scalar
from .separation import AffineHyperplane, KbarHyperplane, Mode, SeparationCertificate
from .vectors import Vector

__all__ = [
    "ENV_SEMIFIELD",
    "loads",
    "dumps",
    "jsonable",
    "resolve_kind",
    "encode_scalar",
    "decode_scalar",
    "encode_vector",
    "decode_vector",
    "encode_set",
    "decode_set",
    "encode_certificate",
    "decode_certificate",
    "encode_diffaffine",
    "decode_diffaffine",
    "encode_hull",
    "decode_hull",
    "encode_episet",
    "decode_episet",
    "decode_probes",
    "require_field",
]

ENV_SEMIFIELD = "TROPICON_SEMIFIELD"


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


def jsonable(obj: Any) -> Any:
    """Recursively convert library values into plain JSON data."""
    if isinstance(obj, Scalar):
        return encode_scalar(obj)
    if isinstance(obj, Vector):
        return encode_vector(obj)
    if isinstance(obj, (ConvexSet, ModuleBasis)):
        return encode_set(obj)
    if isinstance(obj, DiffAffine):
        return encode_diffaffine(obj)
    if isinstance(obj, Hull):
        return encode_hull(obj)
    if isinstance(obj, SeparationCertificate):
        return encode_certificate(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Mapping):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


# -- semifield selection ------------------------------------------------------

def _nested_kinds(doc: Any, out: set[str], depth: int = 0) -> set[str]:
    if isinstance(doc, Mapping):
        if depth > 0 and isinstance(doc.get("semifield"), str):
            out.add(doc["semifield"])
        for v in doc.values():
            _nested_kinds(v, out, depth + 1)
    elif isinstance(doc, list):
        for v in doc:
            _nested_kinds(v, out, depth + 1)
    return out


def _parse_kind(text: Any) -> SemifieldKind:
    if not isinstance(text, str):
        raise SchemaError(f"semifield must be a string, got {text!r}")
    try:
        return SemifieldKind.parse(text)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def resolve_kind(doc: Mapping, env: Mapping[str, str] | None = None) -> SemifieldKind:
    """Semifield of a document, honouring the ``TROPICON_SEMIFIELD`` override.

    The override replaces the top-level ``semifield`` field.  Nested objects
    (e.g. the set embedded in a certificate) are payload markers: if one of
    them names a different semifield the override is rejected.
    """
    env = os.environ if env is None else env
    own = _parse_kind(doc.get("semifield", "max-plus"))
    override = env.get(ENV_SEMIFIELD)
    if not override:
        return own
    kind = _parse_kind(override)
    for marker in _nested_kinds(doc, set()):
        if _parse_kind(marker) is not kind:
            raise SchemaError(f"{ENV_SEMIFIELD}={override} conflicts with an embedded "
                              f"semifield marker {marker!r}")
    return kind


# -- scalars and vectors --------------------------------------------------------

def encode_scalar(s: Scalar) -> int | str:
    v = s.to_user()
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return str(s)


def decode_scalar(v: Any, kind: SemifieldKind, where: str = "scalar") -> Scalar:
    if isinstance(v, bool) or not isinstance(v, (int, Fraction, str)):
        raise SchemaError(f"{where}: expected a number or numeric string, got {v!r}")
    try:
        return scalar(v, kind)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def encode_vector(x: Vector) -> list:
    return [encode_scalar(e) for e in x]


def decode_vector(v: Any, kind: SemifieldKind, n: int | None = None, where: str = "vector") -> Vector:
    if not isinstance(v, list) or not v:
        raise SchemaError(f"{where}: expected a nonempty array")
    if n is not None and len(v) != n:
        raise SchemaError(f"{where}: expected {n} coordinates, got {len(v)}")
    return Vector([decode_scalar(e, kind, f"{where}[{i}]") for i, e in enumerate(v)], kind)


def require_field(doc: Any, key: str, where: str) -> Any:
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{where}: expected an object")
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    return doc[key]


# -- sets -------------------------------------------------------------------------

def encode_set(S: ConvexSet | ModuleBasis) -> dict:
    doc = {"semifield": S.kind.value, "dimension": S.n,
           "generators": [encode_vector(g) for g in S.generators]}
    if isinstance(S, ModuleBasis):
        doc["type"] = "module"
    return doc


def decode_set(doc: Any, kind: SemifieldKind, where: str = "set") -> ConvexSet | ModuleBasis:
    gens = require_field(doc, "generators", where)
    if not isinstance(gens, list) or not gens:
        raise SchemaError(f"{where}.generators: expected a nonempty array")
    n = doc.get("dimension")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int) or n < 1):
        raise SchemaError(f"{where}.dimension: expected a positive integer")
    n = n if n is not None else (len(gens[0]) if isinstance(gens[0], list) else None)
    vecs = [decode_vector(g, kind, n, f"{where}.generators[{i}]") for i, g in enumerate(gens)]
    kind_of = doc.get("type", "convex")
    try:
        if kind_of == "convex":
            return ConvexSet(vecs)
        if kind_of == "module":
            return ModuleBasis(vecs)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}.type: expected 'convex' or 'module', got {kind_of!r}")


# -- certificates -----------------------------------------------------------------

def encode_certificate(cert: SeparationCertificate) -> dict:
    H = cert.hyperplane
    return {
        "semifield": H.kind.value,
        "mode": cert.mode.value,
        "w_prime": encode_vector(H.w_prime),
        "d_prime": encode_scalar(H.d_prime),
        "w_second": encode_vector(H.w_second),
        "d_second": encode_scalar(H.d_second),
        "trace": jsonable(cert.trace),
        "set": encode_set(cert.set),
        "point": encode_vector(cert.point),
    }


def decode_certificate(doc: Any, kind: SemifieldKind) -> SeparationCertificate:
    try:
        mode = Mode(require_field(doc, "mode", "certificate"))
    except ValueError:
        raise SchemaError(f"certificate.mode: expected 'refined' or 'universal', got {doc['mode']!r}") from None
    S = decode_set(require_field(doc, "set", "certificate"), kind, "certificate.set")
    y = decode_vector(require_field(doc, "point", "certificate"), kind, S.n, "certificate.point")
    parts = (
        decode_vector(require_field(doc, "w_prime", "certificate"), kind, S.n, "certificate.w_prime"),
        decode_scalar(require_field(doc, "d_prime", "certificate"), kind, "certificate.d_prime"),
        decode_vector(require_field(doc, "w_second", "certificate"), kind, S.n, "certificate.w_second"),
        decode_scalar(require_field(doc, "d_second", "certificate"), kind, "certificate.d_second"),
    )
    cls = AffineHyperplane if mode is Mode.REFINED else KbarHyperplane
    try:
        H = cls(*parts)
    except ValueError as exc:
        raise SchemaError(f"certificate: {exc}") from None
    trace = doc.get("trace", {})
    return SeparationCertificate(H, S, y, mode, trace if isinstance(trace, dict) else {})


# -- functions ----------------------------------------------------------------------

def encode_diffaffine(u: DiffAffine) -> dict:
    return {"w_prime": encode_vector(u.w_prime), "d_prime": encode_scalar(u.d_prime),
            "w_second": encode_vector(u.w_second), "d_second": encode_scalar(u.d_second)}


def decode_diffaffine(doc: Any, kind: SemifieldKind, where: str = "function") -> DiffAffine:
    wp = decode_vector(require_field(doc, "w_prime", where), kind, None, f"{where}.w_prime")
    try:
        return DiffAffine(
            wp,
            decode_scalar(require_field(doc, "d_prime", where), kind, f"{where}.d_prime"),
            decode_vector(require_field(doc, "w_second", where), kind, len(wp), f"{where}.w_second"),
            decode_scalar(require_field(doc, "d_second", where), kind, f"{where}.d_second"),
        )
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def encode_hull(F: Hull) -> dict:
    return {"pieces": [encode_diffaffine(u) for u in F.pieces]}


def decode_hull(doc: Any, kind: SemifieldKind) -> Hull:
    pieces = require_field(doc, "pieces", "hull")
    if not isinstance(pieces, list):
        raise SchemaError("hull.pieces: expected an array")
    try:
        return Hull([decode_diffaffine(p, kind, f"hull.pieces[{i}]") for i, p in enumerate(pieces)])
    except ValueError as exc:
        raise SchemaError(f"hull: {exc}") from None


def _decode_pairs(items: Any, kind: SemifieldKind, where: str) -> list[tuple[Vector, Scalar]]:
    if not isinstance(items, list) or not items:
        raise SchemaError(f"{where}: expected a nonempty array of [[x...], value] pairs")
    out = []
    n = None
    for i, item in enumerate(items):
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError(f"{where}[{i}]: expected a [[x...], value] pair")
        z = decode_vector(item[0], kind, n, f"{where}[{i}][0]")
        n = len(z)
        out.append((z, decode_scalar(item[1], kind, f"{where}[{i}][1]")))
    return out


def encode_episet(E: EpiSet) -> dict:
    return {"semifield": E.kind.value,
            "graph_points": [[encode_vector(z), encode_scalar(lam)] for z, lam in E.graph_points]}


def decode_episet(doc: Any, kind: SemifieldKind) -> EpiSet:
    pts = _decode_pairs(require_field(doc, "graph_points", "epigraph"), kind, "graph_points")
    try:
        return EpiSet(pts)
    except ValueError as exc:
        raise SchemaError(f"epigraph: {exc}") from None


def decode_probes(items: Any, kind: SemifieldKind) -> list[tuple[Vector, Scalar]]:
    return _decode_pairs(items, kind, "probes")

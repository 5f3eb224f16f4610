"""
Exact scalars of the completed max-plus / min-plus semifield.

A :class:`Scalar` is one of three states: the semiring zero (``BOTTOM``), a
finite exact rational, or the adjoined top element (``TOP``).  Values are
always stored in max-plus orientation; the min-plus semifield is realised by
order reflection, i.e. a user-facing min-plus number ``v`` is stored as
``-v``.  Consequently every algebraic routine below is written once, and the
ordering operators on :class:`Scalar` always express the *natural* semiring
order (``a <= b`` iff ``a (+) b == b``), whatever the semifield.

Rules of the completion::

    a (+) TOP = TOP
    BOTTOM (x) TOP = TOP (x) BOTTOM = BOTTOM
    a (x) TOP = TOP (x) a = TOP      for a != BOTTOM
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InversionOfZeroOrTop, KindMismatch

__all__ = [
    "SemifieldKind",
    "MAX_PLUS",
    "MIN_PLUS",
    "Scalar",
    "scalar",
    "finite",
    "bottom",
    "top",
    "one",
    "BOTTOM",
    "TOP",
    "ONE",
    "oplus",
    "otimes",
    "meet",
    "inv",
    "lres",
    "ominus",
    "dual",
]


class SemifieldKind(enum.Enum):
    MAX_PLUS = "max-plus"
    MIN_PLUS = "min-plus"

    @property
    def sign(self) -> int:
        # user value = sign * stored value
        return 1 if self is SemifieldKind.MAX_PLUS else -1

    @classmethod
    def parse(cls, text: str) -> "SemifieldKind":
        key = text.strip().lower().replace("_", "-")
        aliases = {"max-plus": cls.MAX_PLUS, "maxplus": cls.MAX_PLUS, "max": cls.MAX_PLUS,
                   "min-plus": cls.MIN_PLUS, "minplus": cls.MIN_PLUS, "min": cls.MIN_PLUS}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown semifield {text!r}") from None


MAX_PLUS = SemifieldKind.MAX_PLUS
MIN_PLUS = SemifieldKind.MIN_PLUS

_BOT, _FIN, _TOP = 0, 1, 2

_POS_INF = {"+inf", "inf", "+infinity", "infinity", "+oo", "oo"}
_NEG_INF = {"-inf", "-infinity", "-oo"}

Number = Union[int, Fraction, str]


class Scalar:
    """Element of the completed semifield; immutable and hashable."""

    __slots__ = ("tag", "value", "kind")

    def __init__(self, tag: int, value: Fraction | None, kind: SemifieldKind = MAX_PLUS):
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.tag, self.value, self.kind))

    # -- state predicates -------------------------------------------------
    @property
    def is_bottom(self) -> bool:
        return self.tag == _BOT

    @property
    def is_top(self) -> bool:
        return self.tag == _TOP

    @property
    def is_finite(self) -> bool:
        return self.tag == _FIN

    @property
    def in_k(self) -> bool:
        """True unless this is the adjoined top element."""
        return self.tag != _TOP

    # -- ordering (natural semiring order) ---------------------------------
    def _key(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.kind is not self.kind:
            raise KindMismatch(f"cannot compare {self.kind.value} with {other.kind.value}")
        return other

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.kind is other.kind and self.tag == other.tag and self.value == other.value

    def __hash__(self):
        return hash((self.tag, self.value, self.kind))

    def __lt__(self, other):
        other = self._key(other)
        if other is NotImplemented:
            return other
        if self.tag != other.tag:
            return self.tag < other.tag
        return self.tag == _FIN and self.value < other.value

    def __le__(self, other):
        other = self._key(other)
        if other is NotImplemented:
            return other
        if self.tag != other.tag:
            return self.tag < other.tag
        return self.tag != _FIN or self.value <= other.value

    def __gt__(self, other):
        res = self.__le__(other)
        return res if res is NotImplemented else not res

    def __ge__(self, other):
        res = self.__lt__(other)
        return res if res is NotImplemented else not res

    # -- conversions -------------------------------------------------------
    def to_user(self):
        """User-facing number: a Fraction, or the strings ``"-inf"``/``"+inf"``."""
        if self.tag == _FIN:
            return self.value * self.kind.sign
        low = (self.tag == _BOT) == (self.kind is MAX_PLUS)
        return "-inf" if low else "+inf"

    def __str__(self):
        v = self.to_user()
        if isinstance(v, str):
            return v
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __repr__(self):
        suffix = "" if self.kind is MAX_PLUS else f", {self.kind.value}"
        return f"Scalar({str(self)!r}{suffix})"


def _finite(value: Fraction, kind: SemifieldKind) -> Scalar:
    return Scalar(_FIN, value, kind)


def finite(value, kind: SemifieldKind = MAX_PLUS) -> Scalar:
    """Finite scalar from a value in stored (natural-order) orientation.

    Generic algorithms use this; for max-plus it coincides with :func:`scalar`.
    """
    return Scalar(_FIN, Fraction(value), kind)


def bottom(kind: SemifieldKind = MAX_PLUS) -> Scalar:
    return Scalar(_BOT, None, kind)


def top(kind: SemifieldKind = MAX_PLUS) -> Scalar:
    return Scalar(_TOP, None, kind)


def one(kind: SemifieldKind = MAX_PLUS) -> Scalar:
    return Scalar(_FIN, Fraction(0), kind)


BOTTOM = bottom()
TOP = top()
ONE = one()


def scalar(x: Number | Scalar, kind: SemifieldKind = MAX_PLUS) -> Scalar:
    """Build a Scalar from a user-facing number or string, exactly.

    Accepts ints, Fractions, decimal or ``"p/q"`` strings, and ``"-inf"`` /
    ``"+inf"``.  Infinite strings are read numerically: in max-plus
    ``"-inf"`` is the zero; in min-plus ``"+inf"`` is the zero.  Floats are
    rejected because they cannot be read exactly.
    """
    if isinstance(x, Scalar):
        if x.kind is not kind:
            raise KindMismatch(f"scalar of kind {x.kind.value} used as {kind.value}")
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean scalar input {x!r}")
    if isinstance(x, str):
        s = x.strip().lower()
        if s in _NEG_INF or s in _POS_INF:
            low = s in _NEG_INF
            return bottom(kind) if low == (kind is MAX_PLUS) else top(kind)
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse scalar {x!r}") from None
    elif isinstance(x, Rational):
        value = Fraction(x)
    else:
        raise TypeError(f"unsupported scalar input {x!r}")
    return _finite(value * kind.sign, kind)


def _same(a: Scalar, b: Scalar) -> SemifieldKind:
    if a.kind is not b.kind:
        raise KindMismatch(f"mixing {a.kind.value} and {b.kind.value} scalars")
    return a.kind


def oplus(a: Scalar, b: Scalar) -> Scalar:
    """Semiring addition: the natural-order maximum."""
    _same(a, b)
    return b if a <= b else a


def meet(a: Scalar, b: Scalar) -> Scalar:
    """Binary infimum for the natural order."""
    _same(a, b)
    return a if a <= b else b


def otimes(a: Scalar, b: Scalar) -> Scalar:
    kind = _same(a, b)
    if a.tag == _BOT or b.tag == _BOT:
        return bottom(kind)
    if a.tag == _TOP or b.tag == _TOP:
        return top(kind)
    return _finite(a.value + b.value, kind)


def inv(a: Scalar) -> Scalar:
    if a.tag != _FIN:
        raise InversionOfZeroOrTop(f"{a!r} has no multiplicative inverse")
    return _finite(-a.value, a.kind)


def lres(a: Scalar, b: Scalar) -> Scalar:
    """Left residual ``a \\ b``: the largest lam with ``a (x) lam <= b``."""
    kind = _same(a, b)
    if a.tag == _BOT or b.tag == _TOP:
        return top(kind)
    if a.tag == _TOP or b.tag == _BOT:
        # a = TOP, b < TOP: only lam = BOTTOM keeps a*lam below b.
        # a finite, b = BOTTOM: likewise.
        return bottom(kind)
    return _finite(b.value - a.value, kind)


def ominus(nu: Scalar, mu: Scalar) -> Scalar:
    """Dual residual of addition: the least lam with ``mu (+) lam >= nu``."""
    kind = _same(nu, mu)
    return nu if mu < nu else bottom(kind)


def dual(a: Scalar) -> Scalar:
    """``a \\ 1``; an order-reversing involution of the completed semifield."""
    if a.tag == _BOT:
        return top(a.kind)
    if a.tag == _TOP:
        return bottom(a.kind)
    return _finite(-a.value, a.kind)

"""Coefficient rings for truncated series.

A ring here is only a descriptor: it coerces Python numbers into its element
type, knows its zero, and names itself for serialization.  The elements are
plain ``Fraction``/``mpmath.mpf`` values or :class:`~spsubgraphs.series.jets.Jet`
instances, so arithmetic is just Python operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .jets import Jet, is_zero


class RingError(ValueError):
    pass


class Ring:
    exact = False
    numeric = True

    def coerce(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, value) -> bool:
        return is_zero(value)

    @property
    def tag(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ExactRational(Ring):
    exact = True
    numeric = False

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise RingError(f"cannot coerce {type(value).__name__} into exact rationals")

    @property
    def tag(self) -> str:
        return "rational"


@dataclass(frozen=True)
class BigFloat(Ring):
    digits: int = 50

    def __post_init__(self):
        if self.digits < 30:
            raise RingError("BigFloat needs at least 30 decimal digits")

    def coerce(self, value):
        if isinstance(value, Jet):
            raise RingError("cannot coerce a jet into BigFloat")
        if isinstance(value, Fraction):
            return mpmath.mpf(value.numerator) / value.denominator
        return mpmath.mpf(value)

    @property
    def tag(self) -> str:
        return f"bigfloat:{self.digits}"


@dataclass(frozen=True)
class JetRing(Ring):
    """Jets of a fixed order in one variable over a base ring.

    ``JetRing(BigFloat(), 2, "u")`` is the UJet2 ring; ``JetRing(base, m, "x")``
    is XJet(m).
    """

    base: Ring
    order: int
    var: str

    def coerce(self, value):
        if isinstance(value, Jet) and value.var == self.var:
            if value.order != self.order:
                raise RingError(f"jet order {value.order} != ring order {self.order}")
            return Jet([self.base.coerce(c) for c in value.c], self.var)
        return Jet((self.base.coerce(value),) + (self.base.zero,) * self.order, self.var)

    def variable(self, value) -> Jet:
        c = [self.base.coerce(value), self.base.one] + [self.base.zero] * (self.order - 1)
        return Jet(c[: self.order + 1], self.var)

    @property
    def exact(self):
        return self.base.exact

    @property
    def tag(self) -> str:
        return f"jet{self.order}[{self.var}]<{self.base.tag}>"


def UJet2(digits: int = 50) -> JetRing:
    return JetRing(BigFloat(digits), 2, "u")


def XJet(order: int, base: Ring | None = None) -> JetRing:
    return JetRing(base if base is not None else BigFloat(), order, "x")


def ring_from_tag(tag: str) -> Ring:
    if tag == "rational":
        return ExactRational()
    if tag.startswith("bigfloat:"):
        return BigFloat(int(tag.split(":", 1)[1]))
    raise RingError(f"unknown ring tag {tag!r}")

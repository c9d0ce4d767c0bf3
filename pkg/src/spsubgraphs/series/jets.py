"""Truncated Taylor jets over an arbitrary scalar type.

A :class:`Jet` ``Jet((c0, c1, ..., cm), var)`` stands for ``c0 + c1 e + ... + cm e^m``
with ``e`` an infinitesimal attached to ``var``.  Coefficients may themselves be
jets in another variable, so a u-jet nested inside an x-jet is a bivariate
Taylor jet.  Jets in different variables never mix coefficient-wise: the one
with the higher variable rank is the outer jet and treats the other as a
scalar coefficient.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Sequence

import mpmath

# Nesting order, innermost first: u-jets, x-jets, then Newton tangents.
VAR_RANK = {"u": 1, "x": 2, "t": 3, "t2": 4}


def _rank(var: str) -> int:
    try:
        return VAR_RANK[var]
    except KeyError:
        raise ValueError(f"unknown jet variable {var!r}") from None


class Jet:
    __slots__ = ("c", "var")

    def __init__(self, coeffs: Sequence[Any], var: str = "u"):
        _rank(var)
        self.c = tuple(coeffs)
        self.var = var

    @classmethod
    def variable(cls, value, order: int, var: str) -> "Jet":
        """The jet of the identity map at ``value``."""
        return cls((value, 1) + (0,) * (order - 1), var) if order >= 1 else cls((value,), var)

    @classmethod
    def constant(cls, value, order: int, var: str) -> "Jet":
        return cls((value,) + (0,) * order, var)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self):
        return self.c[0]

    def derivative(self, k: int):
        """k-th derivative at the expansion point (not the Taylor coefficient)."""
        if k > self.order:
            raise IndexError(f"jet of order {self.order} has no derivative {k}")
        return self.c[k] * math.factorial(k)

    # -- coercion helpers -------------------------------------------------
    def _same(self, other) -> bool:
        return isinstance(other, Jet) and other.var == self.var

    def _outer(self, other) -> bool:
        # True when `other` must be treated as a scalar coefficient of self.
        return not isinstance(other, Jet) or _rank(other.var) < _rank(self.var)

    def _inner(self, other) -> bool:
        # Python skips reflected methods between instances of one class.
        return isinstance(other, Jet) and _rank(other.var) > _rank(self.var)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if self._same(other):
            m = min(self.order, other.order)
            return Jet([a + b for a, b in zip(self.c[: m + 1], other.c[: m + 1])], self.var)
        if self._outer(other):
            return Jet((self.c[0] + other,) + self.c[1:], self.var)
        if self._inner(other):
            return other.__add__(self)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c], self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if self._same(other):
            m = min(self.order, other.order)
            return Jet([a - b for a, b in zip(self.c[: m + 1], other.c[: m + 1])], self.var)
        if self._outer(other):
            return Jet((self.c[0] - other,) + self.c[1:], self.var)
        if self._inner(other):
            return other.__rsub__(self)
        return NotImplemented

    def __rsub__(self, other):
        if self._outer(other):
            return Jet((other - self.c[0],) + tuple(-a for a in self.c[1:]), self.var)
        return NotImplemented

    def __mul__(self, other):
        if self._same(other):
            m = min(self.order, other.order)
            a, b = self.c, other.c
            out = []
            for k in range(m + 1):
                acc = a[0] * b[k]
                for j in range(1, k + 1):
                    acc = acc + a[j] * b[k - j]
                out.append(acc)
            return Jet(out, self.var)
        if self._outer(other):
            return Jet([a * other for a in self.c], self.var)
        if self._inner(other):
            return other.__mul__(self)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        b = self.c
        r0 = 1 / b[0]
        r = [r0]
        for k in range(1, len(b)):
            acc = b[1] * r[k - 1]
            for j in range(2, k + 1):
                acc = acc + b[j] * r[k - j]
            r.append(-acc * r0)
        return Jet(r, self.var)

    def __truediv__(self, other):
        if self._same(other):
            return self * other.reciprocal()
        if self._outer(other):
            return Jet([a / other for a in self.c], self.var)
        if self._inner(other):
            return other.__rtruediv__(self)
        return NotImplemented

    def __rtruediv__(self, other):
        if self._outer(other):
            return self.reciprocal() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return exp(log(self) * n)
        if n < 0:
            return (self ** (-n)).reciprocal()
        result = Jet.constant(1, self.order, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exp(self) -> "Jet":
        a = self.c
        e = [exp(a[0])]
        for k in range(1, len(a)):
            acc = a[1] * e[k - 1]
            for j in range(2, k + 1):
                acc = acc + j * a[j] * e[k - j]
            e.append(acc / k)
        return Jet(e, self.var)

    def log(self) -> "Jet":
        a = self.c
        inv0 = 1 / a[0]
        g = [log(a[0])]
        for k in range(1, len(a)):
            acc = k * a[k]
            for j in range(1, k):
                acc = acc - j * g[j] * a[k - j]
            g.append(acc * inv0 / k)
        return Jet(g, self.var)

    def sqrt(self) -> "Jet":
        a = self.c
        s0 = sqrt(a[0])
        s = [s0]
        inv = 1 / (2 * s0)
        for k in range(1, len(a)):
            acc = a[k]
            for j in range(1, k):
                acc = acc - s[j] * s[k - j]
            s.append(acc * inv)
        return Jet(s, self.var)

    def __eq__(self, other):
        if self._same(other):
            return self.c == other.c
        if self._outer(other):
            return self.c[0] == other and all(is_zero(a) for a in self.c[1:])
        if self._inner(other):
            return other.__eq__(self)
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.var))

    def __repr__(self):
        return f"Jet{self.c!r}@{self.var}"


def exp(a):
    if isinstance(a, Jet):
        return a.exp()
    if isinstance(a, (int, Fraction)):
        if a == 0:
            return Fraction(1)
        raise ValueError("exp of a nonzero rational is not rational")
    return mpmath.exp(a)


def log(a):
    if isinstance(a, Jet):
        return a.log()
    if isinstance(a, (int, Fraction)):
        if a == 1:
            return Fraction(0)
        raise ValueError("log of a rational other than 1 is not rational")
    return mpmath.log(a)


def sqrt(a):
    if isinstance(a, Jet):
        return a.sqrt()
    return mpmath.sqrt(a)


def is_zero(a) -> bool:
    if isinstance(a, Jet):
        return all(is_zero(c) for c in a.c)
    return a == 0


def base_value(a):
    """Innermost scalar of the value slot."""
    while isinstance(a, Jet):
        a = a.c[0]
    return a


def magnitude(a):
    """Max absolute value over every component of a (nested) jet."""
    if isinstance(a, Jet):
        return max(magnitude(c) for c in a.c)
    return abs(a)


def ujet(value, d1=0, d2=0) -> Jet:
    """UJet2 from a value and its first two u-derivatives."""
    return Jet((value, d1, d2 / 2 if not isinstance(d2, int) else Fraction(d2, 2)), "u")


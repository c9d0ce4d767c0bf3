"""Truncated power series in an exponential variable x and ordinary variables y, u.

Coefficients are kept per x-order as polynomials in (y, u):
``_c[i]`` is a dict ``{(j, k): coeff}`` holding the coefficient of ``x^i y^j u^k``.
Zero coefficients are never stored, so equality is structural.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from . import jets
from .jets import Jet, is_zero, magnitude
from .rings import BigFloat, ExactRational, Ring, ring_from_tag


class SeriesError(ValueError):
    pass


class CapExceeded(SeriesError):
    pass


class DivergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Caps:
    """Optional degree caps for y and u.

    Terms above a cap raise :class:`CapExceeded` unless ``project`` is set, in
    which case they are dropped.
    """

    y: int | None = None
    u: int | None = None
    project: bool = False


@dataclass(frozen=True)
class TailReport:
    last_term_magnitude: object
    estimated_tail_bound: object
    order_used: int


Poly = dict  # (j, k) -> coefficient


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for key, v in b.items():
        w = out.get(key)
        w = (v if sign > 0 else -v) if w is None else (w + v if sign > 0 else w - v)
        if is_zero(w):
            out.pop(key, None)
        else:
            out[key] = w
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: Poly = {}
    for (j1, k1), v1 in a.items():
        for (j2, k2), v2 in b.items():
            key = (j1 + j2, k1 + k2)
            w = out.get(key)
            out[key] = v1 * v2 if w is None else w + v1 * v2
    return {key: v for key, v in out.items() if not is_zero(v)}


def _pscale(a: Poly, c) -> Poly:
    if is_zero(c):
        return {}
    out = {key: v * c for key, v in a.items()}
    return {key: v for key, v in out.items() if not is_zero(v)}


def _scalar_only(p: Poly) -> bool:
    return not p or (len(p) == 1 and (0, 0) in p)


class TruncatedSeries:
    """Immutable truncated series; every operation returns a new series."""

    __slots__ = ("ring", "order", "_c", "caps")

    def __init__(self, ring: Ring, order: int, coeffs: Iterable[Mapping], caps: Caps | None = None):
        if order < 0:
            raise SeriesError("order_x must be non-negative")
        coeffs = list(coeffs)
        if len(coeffs) > order + 1:
            if any(coeffs[order + 1:]):
                raise SeriesError("coefficient above order_x")
            coeffs = coeffs[: order + 1]
        coeffs += [{}] * (order + 1 - len(coeffs))
        self.ring = ring
        self.order = order
        self.caps = caps
        self._c = tuple(self._normalize(p) for p in coeffs)

    def _normalize(self, p: Mapping) -> Poly:
        caps = self.caps
        out = {}
        for key, v in p.items():
            if is_zero(v):
                continue
            if caps is not None and (
                (caps.y is not None and key[0] > caps.y) or (caps.u is not None and key[1] > caps.u)
            ):
                if caps.project:
                    continue
                raise CapExceeded(f"term y^{key[0]} u^{key[1]} exceeds caps {caps}")
            out[key] = v
        return out

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_terms(cls, ring: Ring, order: int, terms: Mapping, caps: Caps | None = None):
        coeffs = [dict() for _ in range(order + 1)]
        for (i, j, k), v in terms.items():
            if i > order:
                raise SeriesError(f"x-exponent {i} above order {order}")
            coeffs[i][(j, k)] = ring.coerce(v) if not isinstance(v, Jet) else v
        return cls(ring, order, coeffs, caps)

    @classmethod
    def zero(cls, ring: Ring, order: int, caps: Caps | None = None):
        return cls(ring, order, [], caps)

    @classmethod
    def constant(cls, ring: Ring, order: int, value, caps: Caps | None = None):
        v = value if isinstance(value, Jet) else ring.coerce(value)
        return cls(ring, order, [{(0, 0): v}], caps)

    @classmethod
    def monomial(cls, ring: Ring, order: int, i: int = 0, j: int = 0, k: int = 0, coeff=1, caps=None):
        if i > order:
            return cls.zero(ring, order, caps)
        coeffs = [dict() for _ in range(i + 1)]
        coeffs[i][(j, k)] = ring.coerce(coeff) if not isinstance(coeff, Jet) else coeff
        return cls(ring, order, coeffs, caps)

    @classmethod
    def x(cls, ring: Ring, order: int, caps=None):
        return cls.monomial(ring, order, 1, 0, 0, 1, caps)

    @classmethod
    def y(cls, ring: Ring, order: int, caps=None):
        return cls.monomial(ring, order, 0, 1, 0, 1, caps)

    @classmethod
    def u(cls, ring: Ring, order: int, caps=None):
        return cls.monomial(ring, order, 0, 0, 1, 1, caps)

    def _new(self, coeffs, order: int | None = None):
        return TruncatedSeries(self.ring, self.order if order is None else order, coeffs, self.caps)

    # -- inspection ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return {(i, j, k): v for i, p in enumerate(self._c) for (j, k), v in p.items()}

    def x_poly(self, i: int) -> dict:
        """Coefficient of x^i as a dict {(j, k): value}."""
        if i > self.order:
            raise SeriesError(f"x^{i} is above order {self.order}")
        return dict(self._c[i])

    def coefficient(self, i: int, j: int = 0, k: int = 0):
        return self.x_poly(i).get((j, k), self.ring.zero)

    @property
    def valuation_x(self) -> float:
        for i, p in enumerate(self._c):
            if p:
                return i
        return math.inf

    def is_zero(self) -> bool:
        return not any(self._c)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, tuple(tuple(sorted(p.items())) for p in self._c)))

    def __repr__(self):
        parts = []
        for (i, j, k), v in sorted(self.terms.items()):
            mono = "".join(
                s for s in (
                    f"x^{i}" if i > 1 else ("x" if i == 1 else ""),
                    f"y^{j}" if j > 1 else ("y" if j == 1 else ""),
                    f"u^{k}" if k > 1 else ("u" if k == 1 else ""),
                )
            )
            parts.append(f"{v}*{mono}" if mono else f"{v}")
        body = " + ".join(parts) if parts else "0"
        return f"<{body} + O(x^{self.order + 1})>"

    # -- compatibility ----------------------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise SeriesError(f"ring mismatch: {self.ring.tag} vs {other.ring.tag}")
        if self.order != other.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        v = other if isinstance(other, Jet) else self.ring.coerce(other)
        return TruncatedSeries(self.ring, self.order, [{(0, 0): v}], self.caps)

    # -- ring operations ----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        return self._new([_padd(a, b) for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return self._new([_padd(a, b, -1) for a, b in zip(self._c, other._c)])

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return self._new([{key: -v for key, v in p.items()} for p in self._c])

    def scale(self, c):
        c = c if isinstance(c, Jet) else self.ring.coerce(c)
        return self._new([_pscale(p, c) for p in self._c])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        a, b = self._c, other._c
        va, vb = self.valuation_x, other.valuation_x
        if va == math.inf or vb == math.inf:
            return self._new([])
        out = []
        for i in range(self.order + 1):
            acc: Poly = {}
            for m in range(va, i - vb + 1):
                if a[m] and b[i - m]:
                    acc = _padd(acc, _pmul(a[m], b[i - m]))
            out.append(acc)
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SeriesError("pow needs a non-negative integer exponent")
        result = self._lift(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return self.scale(1 / self.ring.coerce(other) if not isinstance(other, Jet) else 1 / other)

    # -- helpers for unit constant terms ---------------------------------------------
    def _constant_scalar(self):
        p = self._c[0]
        if not _scalar_only(p):
            raise SeriesError("x^0 coefficient depends on y or u")
        return p.get((0, 0), self.ring.zero)

    def reciprocal(self):
        f0 = self._constant_scalar()
        if is_zero(f0):
            raise SeriesError("series is not a unit")
        inv0 = 1 / f0
        f = self._c
        r = [{(0, 0): inv0}]
        for i in range(1, self.order + 1):
            acc: Poly = {}
            for m in range(1, i + 1):
                if f[m] and r[i - m]:
                    acc = _padd(acc, _pmul(f[m], r[i - m]))
            r.append(_pscale(acc, -inv0))
        return self._new(r)

    # -- transcendental operations ------------------------------------------------
    def _split_constant(self):
        """Return (c0, s - c0) for exp/log of a series with a scalar constant term."""
        if not self._c[0]:
            return None, self
        if self.ring.exact:
            raise SeriesError("nonzero constant term: exp/log would leave the exact ring")
        c0 = self._constant_scalar()
        return c0, self._new([{}] + list(self._c[1:]))

    def exp(self):
        c0, s = self._split_constant()
        a = s._c
        e: list[Poly] = [{(0, 0): self.ring.one}]
        for i in range(1, self.order + 1):
            acc: Poly = {}
            for m in range(1, i + 1):
                if a[m] and e[i - m]:
                    acc = _padd(acc, _pscale(_pmul(a[m], e[i - m]), m))
            e.append(_pscale(acc, self._inv_int(i)))
        out = self._new(e)
        return out if c0 is None else out.scale(jets.exp(c0))

    def _inv_int(self, i: int):
        return Fraction(1, i) if self.ring.exact else self.ring.one / i

    def log(self):
        """Natural logarithm of a series whose constant term is a nonzero scalar."""
        f0 = self._constant_scalar()
        if is_zero(f0):
            raise SeriesError("log of a series with zero constant term")
        f = self._c if f0 == 1 else self.scale(1 / f0)._c
        g: list[Poly] = [{}]
        for i in range(1, self.order + 1):
            acc = _pscale(f[i], i)
            for m in range(1, i):
                if g[m] and f[i - m]:
                    acc = _padd(acc, _pscale(_pmul(g[m], f[i - m]), m), -1)
            g.append(_pscale(acc, self._inv_int(i)))
        out = self._new(g)
        return out if f0 == 1 else out + jets.log(f0)

    def sqrt(self):
        f0 = self._constant_scalar()
        if self.ring.exact:
            raise SeriesError("sqrt is only available over numeric rings")
        return (self.scale(1 / f0).log().scale(self.ring.coerce(Fraction(1, 2)))).exp().scale(jets.sqrt(f0))

    # -- structural operations ----------------------------------------------------
    def truncate(self, order: int):
        if order > self.order:
            raise SeriesError("cannot raise the order by truncation")
        return self._new(self._c[: order + 1], order)

    def padded(self, order: int):
        """Same coefficients, reinterpreted at another order (missing terms read as zero)."""
        return self._new(self._c[: order + 1], order)

    def diff(self, var: str = "x"):
        if var == "x":
            if self.order == 0:
                raise SeriesError("cannot differentiate an order-0 series in x")
            return self._new([_pscale(self._c[i], i) for i in range(1, self.order + 1)], self.order - 1)
        if var not in ("y", "u"):
            raise SeriesError(f"unknown variable {var!r}")
        pos = 0 if var == "y" else 1
        out = []
        for p in self._c:
            q = {}
            for key, v in p.items():
                e = key[pos]
                if e:
                    nk = (e - 1, key[1]) if pos == 0 else (key[0], e - 1)
                    q[nk] = v * e
            out.append(q)
        return self._new(out)

    def integrate_div_x(self):
        """Antiderivative of s/x with zero constant term (inverse of pointing)."""
        if self._c[0]:
            raise SeriesError("integrate_div_x needs x-valuation >= 1")
        return self._new([{}] + [_pscale(self._c[i], self._inv_int(i)) for i in range(1, self.order + 1)])

    def mul_x(self):
        """Multiply by x (drops the top coefficient)."""
        return self._new([{}] + list(self._c[: self.order]))

    def div_y_degree(self):
        """Divide every y^j term by j; requires no y^0 terms.  Inverts ``y d/dy``."""
        out = []
        for p in self._c:
            q = {}
            for (j, k), v in p.items():
                if j == 0:
                    raise SeriesError("y-unrooting needs every term to carry y")
                q[(j, k)] = v * self._inv_int(j)
            out.append(q)
        return self._new(out)

    def specialize(self, y=None, u=None):
        """Substitute scalar values for y and/or u."""
        out = []
        for p in self._c:
            q: Poly = {}
            for (j, k), v in p.items():
                w = v
                nj, nk = j, k
                if y is not None:
                    w = w * (y ** j) if j else w
                    nj = 0
                if u is not None:
                    w = w * (u ** k) if k else w
                    nk = 0
                q = _padd(q, {(nj, nk): w})
            out.append(q)
        return self._new(out)

    def map_coefficients(self, fn, ring: Ring | None = None):
        return TruncatedSeries(
            ring or self.ring, self.order, [{key: fn(v) for key, v in p.items()} for p in self._c], self.caps
        )

    # -- evaluation --------------------------------------------------------------
    def eval_numeric(self, x0, y0=1, u0=1, window: int = 5):
        """Evaluate at a point inside the disk of convergence.

        Returns ``(value, TailReport)``.  The tail bound extrapolates the ratio of
        the last two nonzero term magnitudes geometrically.
        """
        if self.ring.exact:
            raise SeriesError("eval_numeric needs a numeric ring")
        total = self.ring.zero
        mags = []
        for i, p in enumerate(self._c):
            t = self.ring.zero
            for (j, k), v in p.items():
                t = t + v * (y0 ** j) * (u0 ** k)
            t = t * (x0 ** i)
            total = total + t
            if p:
                mags.append(magnitude(t))
        if len(mags) >= window and all(mags[-m] >= mags[-m - 1] for m in range(1, window)):
            raise DivergenceError("term magnitudes are non-decreasing; evaluation point outside the disk")
        if len(mags) < 2 or mags[-2] == 0:
            last = mags[-1] if mags else 0
            return total, TailReport(last, last, self.order)
        r = mags[-1] / mags[-2]
        bound = mags[-1] * r / (1 - r) if r < 1 else mpmath.inf
        return total, TailReport(mags[-1], bound, self.order)

    # -- serialization --------------------------------------------------------------
    def to_json(self) -> dict:
        if isinstance(self.ring, ExactRational):
            fmt = lambda v: f"{v.numerator}/{v.denominator}"
        elif isinstance(self.ring, BigFloat):
            fmt = lambda v: mpmath.nstr(v, self.ring.digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
        else:
            raise SeriesError(f"ring {self.ring.tag} has no JSON form")
        terms = [[i, j, k, fmt(v)] for (i, j, k), v in sorted(self.terms.items())]
        return {"vars": ["x", "y", "u"], "order_x": self.order, "ring": self.ring.tag, "terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc: Mapping):
        ring = ring_from_tag(doc["ring"])
        terms = {}
        for i, j, k, v in doc["terms"]:
            terms[(i, j, k)] = Fraction(v) if ring.exact else mpmath.mpf(v)
        return cls.from_terms(ring, doc["order_x"], terms)


# -- free functions mirroring the construction dictionary ------------------------------


def arith(a: TruncatedSeries, b: TruncatedSeries, op: str, n: int | None = None):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        if n is None:
            raise SeriesError("pow needs an exponent")
        return a ** n
    raise SeriesError(f"unknown op {op!r}")


def exp_geq(s: TruncatedSeries, k: int = 0) -> TruncatedSeries:
    """sum_{i>=k} s^i / i!  (k=0 is plain exp)."""
    if k < 0:
        raise SeriesError("k must be non-negative")
    if s._c[0] and (s.ring.exact or k > 0 and not _scalar_only(s._c[0])):
        raise SeriesError("exp_geq needs a zero constant term")
    out = s.exp()
    term = s._lift(1)
    for i in range(k):
        out = out - term
        term = (term * s).scale(s._inv_int(i + 1))
    return out


def log_one_minus(s: TruncatedSeries) -> TruncatedSeries:
    return (1 - s).log()


def cyc(s: TruncatedSeries) -> TruncatedSeries:
    """-1/2 log(1-s) - s/2 - s^2/4."""
    if s._c[0] and s.ring.exact:
        raise SeriesError("cyc needs a zero constant term")
    half = s.ring.coerce(Fraction(1, 2)) if s.ring.exact else s.ring.one / 2
    quarter = s.ring.coerce(Fraction(1, 4)) if s.ring.exact else s.ring.one / 4
    return log_one_minus(s).scale(-half) - s.scale(half) - (s * s).scale(quarter)


def qbinom_sum(s: TruncatedSeries, shift: int, kmin: int = 0, u=None) -> TruncatedSeries:
    """sum_{k>=kmin} u^{C(k+shift, 2)} s^k / k!.

    With ``u=None`` the weight is the formal monomial in u; otherwise ``u`` is a
    scalar and the weights are its powers.  The k-sum stops at ``order_x`` when
    s has x-valuation >= 1; a series with a constant term is only accepted over
    a numeric ring with scalar ``u``, and the sum then runs until terms drop
    below working precision.
    """
    if shift not in (0, 1):
        raise SeriesError("shift must be 0 or 1")
    finite = not s._c[0]
    if not finite and (u is None or s.ring.exact):
        raise SeriesError("qbinom_sum needs x-valuation >= 1")
    out = s._lift(0)
    power = s._lift(1)  # s^k / k!
    k = 0
    eps = None if finite else mpmath.mpf(10) ** (-(mpmath.mp.dps + 5))
    stall = 0
    while True:
        if finite and k > s.order:
            break
        c = math.comb(k + shift, 2)
        if k >= kmin:
            if u is None:
                term = power._new([{(j, kk + c): v for (j, kk), v in p.items()} for p in power._c])
            else:
                w = u ** c if c else 1
                term = power if w == 1 else power.scale(w)
            out = out + term
            if not finite:
                mag = max((magnitude(v) for p in term._c for v in p.values()), default=0)
                stall = stall + 1 if mag < eps else 0
                if stall >= 3:
                    break
        k += 1
        power = (power * s).scale(s._inv_int(k))
        if not finite and k > 10000:
            raise DivergenceError("qbinom_sum did not converge")
    return out


def diff(s: TruncatedSeries, var: str = "x") -> TruncatedSeries:
    return s.diff(var)


def integrate_div_x(s: TruncatedSeries) -> TruncatedSeries:
    return s.integrate_div_x()


def subs_x(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner) in the x slot; y and u of outer pass through."""
    outer._check(inner)
    if inner._c[0]:
        raise SeriesError("subs_x needs inner series with x-valuation >= 1")
    result = outer._new([outer._c[outer.order]])
    for i in range(outer.order - 1, -1, -1):
        result = result * inner + outer._new([outer._c[i]])
    return result


def eval_numeric(s: TruncatedSeries, x0, y0=1, u0=1, window: int = 5):
    return s.eval_numeric(x0, y0, u0, window)

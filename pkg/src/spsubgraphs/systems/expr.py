"""Expression DAGs for functional equations.

Leaves are the variables x, y, u, rational constants and named unknowns.  The
same DAG is walked by every consumer: the series fixed-point solver, the
residual checker and the pointwise Newton solver differ only in the algebra
they pass to :func:`evaluate`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Mapping

from ..series import jets
from ..series import series as ser
from ..series.series import TruncatedSeries

LEAVES = ("x", "y", "u")
OPS = {
    "x": 0, "y": 0, "u": 0, "const": 0, "var": 0,
    "add": 2, "sub": 2, "mul": 2, "neg": 1, "pow": 1,
    "exp_geq": 1, "cyc": 1, "qbinom": 1,
}


class ExprError(ValueError):
    pass


class Expr:
    """A node of an expression DAG.

    ``params`` holds non-expression data: the constant value, the unknown's
    name, the exponent of ``pow``, ``k`` of ``exp_geq`` or ``(shift, kmin)`` of
    ``qbinom``.
    """

    __slots__ = ("op", "args", "params")

    def __init__(self, op: str, args: tuple = (), params: tuple = ()):
        if op not in OPS:
            raise ExprError(f"unknown op {op!r}")
        self.op = op
        self.args = tuple(args)
        self.params = tuple(params)

    # building sugar
    def __add__(self, other):
        return Expr("add", (self, lift(other)))

    def __radd__(self, other):
        return Expr("add", (lift(other), self))

    def __sub__(self, other):
        return Expr("sub", (self, lift(other)))

    def __rsub__(self, other):
        return Expr("sub", (lift(other), self))

    def __mul__(self, other):
        return Expr("mul", (self, lift(other)))

    def __rmul__(self, other):
        return Expr("mul", (lift(other), self))

    def __neg__(self):
        return Expr("neg", (self,))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ExprError("only non-negative integer powers")
        return Expr("pow", (self,), (n,))

    def __truediv__(self, n):
        return Expr("mul", (self, const(Fraction(1) / Fraction(n))))

    def __repr__(self):
        return to_text(self)

    def to_json(self):
        return to_json(self)


def lift(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return const(v)
    raise ExprError(f"cannot use {type(v).__name__} in an expression")


def const(v) -> Expr:
    return Expr("const", (), (Fraction(v),))


def var(name: str) -> Expr:
    return Expr("var", (), (name,))


X = Expr("x")
Y = Expr("y")
U = Expr("u")


def exp_geq(e: Expr, k: int = 0) -> Expr:
    return Expr("exp_geq", (lift(e),), (k,))


def exp(e: Expr) -> Expr:
    return exp_geq(e, 0)


def cyc(e: Expr) -> Expr:
    return Expr("cyc", (lift(e),))


def qbinom(e: Expr, shift: int, kmin: int = 0) -> Expr:
    if shift not in (0, 1):
        raise ExprError("shift must be 0 or 1")
    return Expr("qbinom", (lift(e),), (shift, kmin))


def total(terms) -> Expr:
    terms = list(terms)
    if not terms:
        return const(0)
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def free_vars(e: Expr, _seen=None) -> set:
    seen = _seen if _seen is not None else set()
    out = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.op == "var":
            out.add(node.params[0])
        stack.extend(node.args)
    return out


# -- serialization (prefix notation) -------------------------------------------


def to_json(e: Expr):
    if e.op in LEAVES:
        return [e.op]
    if e.op == "const":
        v = e.params[0]
        return ["const", f"{v.numerator}/{v.denominator}"]
    if e.op == "var":
        return ["var", e.params[0]]
    return [e.op, *[to_json(a) for a in e.args], *e.params]


def from_json(doc) -> Expr:
    op = doc[0]
    if op in LEAVES:
        return Expr(op)
    if op == "const":
        return const(Fraction(doc[1]))
    if op == "var":
        return var(doc[1])
    arity = OPS.get(op)
    if arity is None:
        raise ExprError(f"unknown op {op!r}")
    args = tuple(from_json(a) for a in doc[1: 1 + arity])
    return Expr(op, args, tuple(doc[1 + arity:]))


def to_text(e: Expr) -> str:
    if e.op in LEAVES:
        return e.op
    if e.op == "const":
        return str(e.params[0])
    if e.op == "var":
        return e.params[0]
    sym = {"add": "+", "sub": "-", "mul": "*"}
    if e.op in sym:
        return f"({to_text(e.args[0])} {sym[e.op]} {to_text(e.args[1])})"
    if e.op == "neg":
        return f"-{to_text(e.args[0])}"
    if e.op == "pow":
        return f"{to_text(e.args[0])}^{e.params[0]}"
    inner = ", ".join([to_text(a) for a in e.args] + [str(p) for p in e.params])
    return f"{e.op}({inner})"


# -- evaluation ----------------------------------------------------------------------


class SeriesAlgebra:
    """Interpret nodes as truncated-series operations.

    ``u_value`` is None while u is formal; otherwise the scalar that u was
    specialized to (needed by ``qbinom`` weights).
    """

    def __init__(self, ring, order: int, u_value=None, caps=None):
        self.ring = ring
        self.order = order
        self.u_value = u_value
        self.caps = caps

    def const(self, v):
        return TruncatedSeries.constant(self.ring, self.order, v, self.caps)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, n):
        return a ** n

    def exp_geq(self, a, k):
        return ser.exp_geq(a, k)

    def cyc(self, a):
        return ser.cyc(a)

    def qbinom(self, a, shift, kmin):
        return ser.qbinom_sum(a, shift, kmin, self.u_value)


class ScalarAlgebra:
    """Interpret nodes pointwise over scalars (mpf, Fraction or nested jets)."""

    def __init__(self, coerce: Callable[[Fraction], Any], u_value, tol=None):
        self.coerce = coerce
        self.u_value = u_value
        self.tol = tol

    def const(self, v):
        return self.coerce(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, n):
        return a ** n if n else self.coerce(Fraction(1))

    def exp_geq(self, a, k):
        out = jets.exp(a)
        term = self.coerce(Fraction(1))
        for i in range(k):
            out = out - term
            term = term * a / (i + 1)
        return out

    def cyc(self, a):
        one = self.coerce(Fraction(1))
        return -jets.log(one - a) / 2 - a / 2 - a * a / 4

    def qbinom(self, a, shift, kmin):
        u = self.u_value
        one = self.coerce(Fraction(1))
        power = one
        out = self.coerce(Fraction(0))
        tol = self.tol
        small = 0
        k = 0
        # weight u^C(k+shift, 2), advanced by u^(k+shift) per step
        weight = u ** math.comb(shift, 2) if shift >= 2 else one
        step = u ** shift if shift else one
        while True:
            if k >= kmin:
                term = power * weight
                out = out + term
                if jets.is_zero(a):
                    break
                if tol is not None and jets.magnitude(term) < tol:
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
            weight = weight * step
            step = step * u
            k += 1
            power = power * a / k
            if k > 5000:
                raise ArithmeticError("qbinom sum did not converge")
        return out


def evaluate(expr: Expr, env: Mapping[str, Any], alg, cache: dict | None = None):
    """Evaluate ``expr`` bottom-up; ``env`` maps x, y, u and unknown names to values."""
    memo = cache if cache is not None else {}
    stack = [(expr, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        op = node.op
        if op in LEAVES:
            memo[key] = env[op]
            continue
        if op == "var":
            try:
                memo[key] = env[node.params[0]]
            except KeyError:
                raise ExprError(f"unbound unknown {node.params[0]!r}") from None
            continue
        if op == "const":
            memo[key] = alg.const(node.params[0])
            continue
        if not ready:
            stack.append((node, True))
            stack.extend((a, False) for a in node.args if id(a) not in memo)
            continue
        vals = [memo[id(a)] for a in node.args]
        if op == "add":
            r = alg.add(*vals)
        elif op == "sub":
            r = alg.sub(*vals)
        elif op == "mul":
            r = alg.mul(*vals)
        elif op == "neg":
            r = alg.neg(*vals)
        elif op == "pow":
            r = alg.pow(vals[0], node.params[0])
        elif op == "exp_geq":
            r = alg.exp_geq(vals[0], node.params[0])
        elif op == "cyc":
            r = alg.cyc(vals[0])
        else:
            r = alg.qbinom(vals[0], *node.params)
        memo[key] = r
    return memo[id(expr)]

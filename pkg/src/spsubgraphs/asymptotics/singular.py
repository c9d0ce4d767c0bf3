"""Singular expansions in X = sqrt(1 - x/R) and transfer to coefficient asymptotics.

The expansion of the gain unknowns is found by undetermined coefficients:
substitute x = R(1 - X^2) into g = F(x, g) and match powers of X.  With
A = I - F_g at the characteristic point (rank deficiency one, right and left
null vectors v and w):

* order X^1 forces g_1 = alpha_1 v;
* order X^2 is solvable only if w.r_2 = 0, a quadratic in alpha_1;
* order X^m (m >= 3) fixes the null component of g_{m-1} (affine in it) and
  the remaining part of g_m by a bordered solve.

Every residual is an evaluation of the system DAG on truncated X-series, so
the same routine serves single equations and systems.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import mpmath

from ..series.jets import base_value
from ..series.rings import BigFloat
from ..series.series import TruncatedSeries
from ..systems.expr import Expr, SeriesAlgebra, evaluate
from .characteristic import CharPoint
from .linalg import lu_solve
from .pointwise import PointSystem, to_mpf


class SingularExpansionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SingularExpansion:
    name: str
    R: object
    coeffs: tuple  # coefficient of X^i, i = 0..depth
    digits: int = 50

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def evaluate(self, x):
        X = mpmath.sqrt(1 - mpmath.mpf(x) / self.R)
        return mpmath.fsum(c * X ** i for i, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        with mpmath.workdps(self.digits):
            return self._to_json()

    def _to_json(self) -> dict:
        return {
            "name": self.name,
            "R": mpmath.nstr(self.R, self.digits),
            "X": "sqrt(1 - x/R)",
            "coeffs": [mpmath.nstr(c, self.digits) for c in self.coeffs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class AsymptoticConstant:
    """[x^n] f ~ value * n^exponent * growth^n (times n! for labeled counts)."""

    name: str
    class_tag: str
    level: str
    value: object
    growth: object
    exponent: object
    error_estimate: object = None
    digits: int = 50

    def to_json(self) -> dict:
        with mpmath.workdps(self.digits):
            return self._to_json()

    def _to_json(self) -> dict:
        return {
            "name": self.name,
            "class": self.class_tag,
            "level": self.level,
            "value": mpmath.nstr(self.value, self.digits),
            "growth": mpmath.nstr(self.growth, self.digits),
            "exponent": mpmath.nstr(self.exponent, 5),
            "error_estimate": None if self.error_estimate is None else mpmath.nstr(self.error_estimate, 5),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _series(ring, order, coeffs) -> TruncatedSeries:
    return TruncatedSeries.from_terms(ring, order, {(i, 0, 0): c for i, c in enumerate(coeffs[: order + 1]) if c})


def _null_vectors(A) -> tuple:
    M = mpmath.matrix([[base_value(a) for a in row] for row in A])
    U, S, V = mpmath.svd_r(M)
    n = M.rows
    k = min(range(n), key=lambda i: abs(S[i]))
    others = [abs(S[i]) for i in range(n) if i != k]
    if others and min(others) < mpmath.mpf(10) ** (-(mpmath.mp.dps // 3)):
        raise SingularExpansionError("I - F_g has a null space of dimension > 1")
    v = [V[k, j] for j in range(n)]
    w = [U[j, k] for j in range(n)]
    if mpmath.fsum(v) < 0:
        v = [-a for a in v]
    if mpmath.fsum(w) < 0:
        w = [-a for a in w]
    return v, w


class _Residual:
    def __init__(self, cp: CharPoint, u, y, digits):
        self.spec = cp.spec
        self.gains = cp.spec.gain_unknowns
        self.R = to_mpf(base_value(cp.R))
        self.u = to_mpf(u)
        self.y = to_mpf(y)
        self.ring = BigFloat(digits)

    def env(self, coeffs: list, order: int) -> dict:
        ring = self.ring
        X = TruncatedSeries.x(ring, order)
        env = {
            "x": (1 - X * X).scale(self.R),
            "y": TruncatedSeries.constant(ring, order, self.y),
            "u": TruncatedSeries.constant(ring, order, self.u),
        }
        for name, c in zip(self.gains, coeffs):
            env[name] = _series(ring, order, c)
        alg = SeriesAlgebra(ring, order, self.u)
        cache: dict = {}
        for name in self.spec.explicit_order:
            env[name] = evaluate(self.spec.rhs[name], env, alg, cache)
        self._alg, self._cache = alg, cache
        return env

    def __call__(self, coeffs: list, order: int) -> list:
        """Coefficient of X^order in g - F(x, g)."""
        env = self.env(coeffs, order)
        out = []
        for name in self.gains:
            r = env[name] - evaluate(self.spec.rhs[name], env, self._alg, self._cache)
            out.append(r.coefficient(order))
        return out


def singular_expansion(
    cp: CharPoint,
    depth: int = 3,
    extra: list | tuple = (),
    digits: int | None = None,
) -> dict:
    """Expansions of every gain unknown, explicit unknown and ``extra`` (name, Expr) pair.

    ``extra`` entries are evaluated in order and may refer to earlier ones.
    """
    digits = digits or cp.digits
    if cp.spec is None:
        raise SingularExpansionError("characteristic point carries no system")
    with mpmath.workdps(digits):
        u0, y0 = base_value(cp.u), base_value(cp.y)
        res = _Residual(cp, u0, y0, digits)
        K = len(res.gains)
        ps = PointSystem(cp.spec, y0, u0, digits)
        g0 = [to_mpf(base_value(cp.y_star[n])) for n in res.gains]
        A = ps.jacobian(res.R, g0)
        v, w = _null_vectors(A)
        coeffs = [[g] + [mpmath.mpf(0)] * (depth + 1) for g in g0]

        def with_null(m, alpha):
            return [c[:m] + [c[m] + alpha * vi] + c[m + 1:] for c, vi in zip(coeffs, v)]

        def dot(a, b):
            return mpmath.fsum(x * y for x, y in zip(a, b))

        bordered = [list(A[i]) + [v[i]] for i in range(K)] + [list(v) + [mpmath.mpf(0)]]

        def particular(r):
            sol = lu_solve(bordered, [-ri for ri in r] + [mpmath.mpf(0)])
            return sol[:K]

        # order 2: quadratic in alpha_1
        q0 = dot(w, res(with_null(1, 0), 2))
        q1 = dot(w, res(with_null(1, 1), 2))
        lead = q1 - q0
        if lead == 0 or -q0 / lead <= 0:
            raise SingularExpansionError("no square-root singularity: order-X^2 matching fails")
        alpha = -mpmath.sqrt(-q0 / lead)
        coeffs = with_null(1, alpha)
        y2 = particular(res(coeffs, 2))
        for c, val in zip(coeffs, y2):
            c[2] = val
        for m in range(3, depth + 2):
            r0 = res(with_null(m - 1, 0), m)
            r1 = res(with_null(m - 1, 1), m)
            slope = dot(w, [b - a for a, b in zip(r0, r1)])
            if slope == 0:
                raise SingularExpansionError(f"order X^{m}: null direction not determined")
            alpha = -dot(w, r0) / slope
            coeffs = with_null(m - 1, alpha)
            ym = particular([a + alpha * (b - a) for a, b in zip(r0, r1)])
            for c, val in zip(coeffs, ym):
                c[m] = val
        coeffs = [c[: depth + 1] for c in coeffs]
        env = res.env(coeffs, depth)
        alg = SeriesAlgebra(res.ring, depth, res.u)
        names = list(res.gains) + list(cp.spec.explicit_order)
        for name, expr in extra:
            env[name] = evaluate(expr, env, alg)
            names.append(name)
        R = res.R
        return {
            n: SingularExpansion(n, R, tuple(env[n].coefficient(i) for i in range(depth + 1)), digits) for n in names
        }


def expansion_residual(cp: CharPoint, exps: dict) -> object:
    """Largest |coefficient| of g - F(x, g) through the expansion depth."""
    gains = cp.spec.gain_unknowns
    depth = exps[gains[0]].depth
    res = _Residual(cp, base_value(cp.u), base_value(cp.y), exps[gains[0]].digits)
    coeffs = [list(exps[n].coeffs) for n in gains]
    return max(abs(r) for m in range(depth + 1) for r in res(coeffs, m))


def transfer_constant(exp: SingularExpansion, class_tag: str = "", level: str = "two_connected") -> AsymptoticConstant:
    """Leading coefficient asymptotics from the first odd power of X.

    X^3 gives n^{-5/2} with factor 1/Gamma(-3/2) = 3/(4 sqrt(pi)); X^1 gives
    n^{-3/2} with 1/Gamma(-1/2) = -1/(2 sqrt(pi)).
    """
    with mpmath.workdps(exp.digits):
        tiny = mpmath.mpf(10) ** (-(exp.digits // 2))
        for i in range(1, exp.depth + 1, 2):
            c = exp.coeffs[i]
            if abs(c) > tiny:
                k = mpmath.mpf(i) / 2
                value = c / mpmath.gamma(-k)
                return AsymptoticConstant(exp.name, class_tag, level, value, 1 / exp.R, -k - 1, None, exp.digits)
        raise SingularExpansionError(f"{exp.name}: no odd-order term through X^{exp.depth}")

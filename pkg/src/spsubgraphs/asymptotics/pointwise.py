"""Pointwise evaluation and Newton solving of network systems.

The reduced system keeps only the gain unknowns g; the explicit unknowns are
recomputed from g in dependency order, so the fixed point is g = F(x, g).
Values may be mpf or nested jets, which is how derivatives in x, u and the
Newton tangents are all obtained from a single evaluation routine.
"""

from __future__ import annotations

import logging
from fractions import Fraction

import mpmath

from ..series.jets import VAR_RANK, Jet, base_value, magnitude
from ..systems.expr import ScalarAlgebra, evaluate
from ..systems.spec import SystemSpec
from .linalg import SingularMatrixError, det, lu_solve

log = logging.getLogger(__name__)


class NewtonError(ArithmeticError):
    pass


def to_mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    if isinstance(v, Jet):
        return Jet([to_mpf(c) for c in v.c], v.var)
    return mpmath.mpf(v)


def lift(v, var: str):
    """v plus the infinitesimal of ``var``, nested correctly inside outer jets."""
    return v + Jet((0, 1), var)


def tangent(v, var: str):
    """First-order coefficient in ``var``, zero if ``v`` does not depend on it."""
    if isinstance(v, Jet):
        if v.var == var:
            return v.c[1]
        if VAR_RANK[v.var] > VAR_RANK[var]:
            return Jet([tangent(c, var) for c in v.c], v.var)
    return 0


def strip(v, var: str):
    """Drop the ``var`` infinitesimal."""
    if isinstance(v, Jet):
        if v.var == var:
            return v.c[0]
        if VAR_RANK[v.var] > VAR_RANK[var]:
            return Jet([strip(c, var) for c in v.c], v.var)
    return v


def newton(fun, z0, tol, maxit: int = 60, tvar: str = "t", damp: bool = True):
    """Solve fun(z) = 0 with the Jacobian from forward-mode tangents in ``tvar``."""
    z = list(z0)
    n = len(z)
    prev = None
    stalled = 0
    for it in range(maxit):
        cols = []
        r = None
        for j in range(n):
            zj = [lift(v, tvar) if i == j else v for i, v in enumerate(z)]
            out = fun(zj)
            if r is None:
                r = [strip(v, tvar) for v in out]
            cols.append([tangent(v, tvar) for v in out])
        norm = max(magnitude(v) for v in r)
        scale = 1 + max(magnitude(v) for v in z)
        if norm < tol * scale:
            return z, norm, it
        J = [[cols[j][i] for j in range(n)] for i in range(n)]
        try:
            dz = lu_solve(J, [-v for v in r])
        except SingularMatrixError as exc:
            raise NewtonError(f"singular Jacobian at iteration {it}") from exc
        if prev is not None and norm > prev / 2:
            stalled += 1
            if stalled >= 4:
                raise NewtonError(f"Newton stalled at residual {mpmath.nstr(norm, 5)}")
        else:
            stalled = 0
        step = 1
        if damp and prev is not None and not isinstance(z[0], Jet):
            # backtrack when the full step makes the residual worse
            for _ in range(8):
                trial = [a + step * b for a, b in zip(z, dz)]
                try:
                    tn = max(abs(v) for v in fun(trial))
                except (ValueError, ZeroDivisionError, ArithmeticError):
                    tn = mpmath.inf
                if tn < norm * 2 or tn < tol:
                    break
                step /= 2
        z = [a + step * b for a, b in zip(z, dz)]
        if not all(mpmath.isfinite(base_value(v)) for v in z):
            raise NewtonError("Newton iterate left the finite reals")
        prev = norm
    raise NewtonError(f"no convergence in {maxit} iterations (residual {mpmath.nstr(norm, 5)})")


class PointSystem:
    """The reduced fixed-point map of a network system at fixed y and u."""

    def __init__(self, spec: SystemSpec, y=1, u=1, digits: int = 50):
        self.spec = spec
        self.gains = spec.gain_unknowns
        self.digits = digits
        self.y = to_mpf(y)
        self.u = to_mpf(u)
        self.tol = mpmath.mpf(10) ** (-(digits - 8))
        self.alg = ScalarAlgebra(to_mpf, self.u, tol=mpmath.mpf(10) ** (-(digits + 8)))
        self._warm = None

    def env(self, x, g) -> dict:
        """Every unknown of the network system at the point (x, g)."""
        env = {"x": x, "y": self.y, "u": self.u}
        env.update(zip(self.gains, g))
        cache: dict = {}
        for name in self.spec.explicit_order:
            env[name] = evaluate(self.spec.rhs[name], env, self.alg, cache)
        return env

    def rhs(self, x, g) -> list:
        env = self.env(x, g)
        cache: dict = {}
        return [evaluate(self.spec.rhs[n], env, self.alg, cache) for n in self.gains]

    def residual(self, x, g) -> list:
        return [a - b for a, b in zip(g, self.rhs(x, g))]

    def jacobian(self, x, g, tvar: str = "t") -> list:
        """I - dF/dg, column by column."""
        n = len(g)
        cols = []
        for j in range(n):
            gj = [lift(v, tvar) if i == j else v for i, v in enumerate(g)]
            cols.append([tangent(v, tvar) for v in self.residual(x, gj)])
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def det(self, x, g, tvar: str = "t"):
        return det(self.jacobian(x, g, tvar))

    # -- solving ---------------------------------------------------------------

    def newton(self, x, g0, maxit: int = 60):
        z, _, _ = newton(lambda g: self.residual(x, g), g0, self.tol, maxit)
        return z

    def solve(self, x, init=None) -> list:
        """Gain unknowns on the branch through the origin.

        Scalar x is reached by continuation from x = 0; a jet x (or jet u) is
        solved at its base value first and then refined in the jet ring.
        """
        with mpmath.workdps(self.digits):
            x = to_mpf(x)
            x0 = base_value(x)
            scalar = not isinstance(x, Jet) and not isinstance(self.u, Jet)
            base = self._solve_scalar(x0, init if scalar else None)
            if scalar:
                return base
            return self.newton(x, base)

    def _solve_scalar(self, x0, init=None) -> list:
        u_saved = self.u
        self.u = base_value(self.u)
        self.alg.u_value = self.u
        try:
            if init is not None:
                try:
                    g = self.newton(x0, [base_value(v) for v in init])
                    if self._on_branch(x0, g):
                        return g
                except NewtonError:
                    pass
            start_x, start_g = mpmath.mpf(0), [mpmath.mpf(0)] * len(self.gains)
            if self._warm is not None and self._warm[0] == self.u and abs(self._warm[1] - x0) < x0:
                start_x, start_g = self._warm[1], self._warm[2]
            g = self._continue(start_x, start_g, x0)
            self._warm = (self.u, x0, g)
            return g
        finally:
            self.u = u_saved
            self.alg.u_value = u_saved

    def _on_branch(self, x, g) -> bool:
        try:
            return self.det(x, g) > 0
        except (ValueError, ZeroDivisionError):
            return False

    def _continue(self, xa, ga, xb) -> list:
        if xb == xa:
            return ga
        h = xb - xa if xa else (xb - xa) / 4
        x, g = xa, ga
        while x != xb:
            nxt = min(xb, x + h) if h > 0 else max(xb, x + h)
            try:
                trial = self.newton(nxt, g, maxit=40)
                ok = self._on_branch(nxt, trial)
            except (NewtonError, ValueError, ZeroDivisionError):
                ok = False
            if ok:
                x, g = nxt, trial
                h *= 2
            else:
                h /= 4
                if abs(h) < abs(xb) * mpmath.mpf(10) ** (-(self.digits // 2)):
                    raise NewtonError(
                        f"{self.spec.name}: lost the solution branch near x={mpmath.nstr(x, 10)} "
                        f"(is x={mpmath.nstr(xb, 10)} beyond the singularity?)"
                    )
        return g

    def march_to_fold(self, h0=None) -> tuple:
        """Follow the branch from 0 until det(I - F_g) is about to vanish.

        Returns the last point (x, g) with a positive determinant together
        with the first x at which the branch was lost.
        """
        with mpmath.workdps(self.digits):
            x = mpmath.mpf(0)
            g = [mpmath.mpf(0)] * len(self.gains)
            h = mpmath.mpf(h0 or "0.01")
            lost = None
            while h > mpmath.mpf(10) ** -7 * (x + h):
                nxt = x + h
                try:
                    trial = self.newton(nxt, g, maxit=40)
                    ok = self._on_branch(nxt, trial)
                except (NewtonError, ValueError, ZeroDivisionError):
                    ok = False
                if ok:
                    x, g = nxt, trial
                    if lost is None:
                        h *= 2
                    else:
                        h = (lost - x) / 2
                else:
                    lost = nxt if lost is None else min(lost, nxt)
                    h = (lost - x) / 2 if lost - x < 4 * h else h / 4
                if x > 100:
                    raise NewtonError(f"{self.spec.name}: no singularity found below x=100")
            return x, g, lost

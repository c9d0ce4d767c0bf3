"""Connected level: the branch point of C•(x) = x exp(B'(C•(x))).

The singularity of C• is not inherited from B: it is the branch point where
tau B''(tau) = 1, with rho = tau exp(-B'(tau)) and tau below the radius of B.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import mpmath

from ..series.jets import Jet, base_value
from ..systems.expr import Expr, evaluate
from ..systems.spec import SystemSpec
from .characteristic import CharPoint
from .pointwise import NewtonError, PointSystem, to_mpf


@dataclass(frozen=True)
class MomentReport:
    class_tag: str
    level: str
    method: str
    mu: object
    sigma2: object
    error_estimate: object = None
    digits: int = 50

    def to_json(self) -> dict:
        with mpmath.workdps(self.digits):
            return self._to_json()

    def _to_json(self) -> dict:
        return {
            "class": self.class_tag,
            "level": self.level,
            "method": self.method,
            "mu": mpmath.nstr(self.mu, self.digits),
            "sigma2": mpmath.nstr(self.sigma2, self.digits),
            "error_estimate": None if self.error_estimate is None else mpmath.nstr(self.error_estimate, 5),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def moments_from_radius(cp: CharPoint, level: str = "two_connected") -> MomentReport:
    """mu = -R'/R and sigma^2 = -R''/R - R'/R + (R'/R)^2 at the base u."""
    R, R1, R2 = cp.derivatives()
    q = R1 / R
    return MomentReport(cp.class_tag, level, "radius_jets", -q, -R2 / R - q + q * q, None, cp.digits)


class BlockFunction:
    """B(x) near a point, with its x-derivatives, from the pointwise network solution."""

    def __init__(self, spec: SystemSpec, block: Expr, y=1, u=1, digits: int = 50):
        self.spec = spec
        self.block = block
        self.ps = PointSystem(spec, y, u, digits)
        self.digits = digits

    @property
    def u(self):
        return self.ps.u

    def taylor(self, x0, order: int) -> list:
        """Taylor coefficients B^(k)(x0)/k!, k = 0..order."""
        with mpmath.workdps(self.digits):
            xj = Jet((to_mpf(x0), 1) + (0,) * (order - 1), "x")
            g = self.ps.solve(xj)
            env = self.ps.env(xj, g)
            b = evaluate(self.block, env, self.ps.alg)
            if not isinstance(b, Jet):
                return [b] + [0] * order
            return list(b.c)


def _phi(bf: BlockFunction, tau):
    t = bf.taylor(tau, 3)
    b2, b3 = 2 * t[2], 6 * t[3]
    return tau * b2 - 1, b2 + tau * b3, t


def branch_point_connected(bf: BlockFunction, R_block, jets: bool = True) -> CharPoint:
    """Solve tau B''(tau) = 1 below the radius ``R_block`` of B; rho = tau e^{-B'(tau)}."""
    digits = bf.digits
    with mpmath.workdps(digits):
        tol = mpmath.mpf(10) ** (-(digits - 8))
        u_saved = bf.ps.u
        bf.ps.u = base_value(u_saved)
        bf.ps.alg.u_value = bf.ps.u
        try:
            lo, hi = mpmath.mpf(0), to_mpf(base_value(R_block))
            tau = hi / 2
            for _ in range(200):
                try:
                    f, df, _ = _phi(bf, tau)
                except NewtonError:
                    # past the radius of B, or too close to it to resolve
                    hi = tau
                    tau = (lo + hi) / 2
                    continue
                if f < 0:
                    lo = tau
                else:
                    hi = tau
                if abs(f) < tol:
                    break
                nxt = tau - f / df
                tau = nxt if lo < nxt < hi else (lo + hi) / 2
            else:
                raise NewtonError("branch point iteration did not converge")
        finally:
            bf.ps.u = u_saved
            bf.ps.alg.u_value = u_saved
        if jets and isinstance(u_saved, Jet):
            tau = Jet([tau] + [0] * u_saved.order, "u")
            for _ in range(u_saved.order + 3):
                f, df, _ = _phi(bf, tau)
                tau = tau - f / df
        f, _, t = _phi(bf, tau)
        rho = tau * mpmath.exp(-t[1]) if not isinstance(tau, Jet) else tau * (-t[1]).exp()
        return CharPoint(
            bf.spec.class_tag, "branch_point", rho, {"tau": tau}, bf.u, bf.ps.y, abs(base_value(f)), digits, bf.spec
        )


def f_partials(bf: BlockFunction, tau, rho) -> dict:
    """Partials of F(x, y, u) = x exp(B'(y, u)) at (rho, tau, u0) from a B Taylor table in x and u."""
    if not isinstance(bf.u, Jet) or bf.u.order < 2:
        raise ValueError("quasi-powers partials need u as a jet of order 2")
    with mpmath.workdps(bf.digits):
        t = bf.taylor(tau, 3)

        def d(k, j):
            # d^k/dx^k d^j/du^j of B at (tau, u0)
            c = t[k]
            cj = c.c[j] if isinstance(c, Jet) else (c if j == 0 else 0)
            return cj * math.factorial(k) * math.factorial(j)

        B1, B2, B3 = d(1, 0), d(2, 0), d(3, 0)
        B1u, B1uu, B2u = d(1, 1), d(1, 2), d(2, 1)
        E = mpmath.exp(B1)
        x = rho
        return {
            "F": x * E,
            "F_x": E,
            "F_xx": mpmath.mpf(0),
            "F_y": x * E * B2,
            "F_yy": x * E * (B3 + B2 ** 2),
            "F_u": x * E * B1u,
            "F_uu": x * E * (B1uu + B1u ** 2),
            "F_yu": x * E * (B2u + B2 * B1u),
            "F_xu": E * B1u,
            "F_yx": E * B2,
        }


def quasi_powers_moments(p: dict, x0, class_tag: str = "", level: str = "connected", digits: int = 50) -> MomentReport:
    """Mean and variance constants of the single-equation limit theorem."""
    Fx, Fu, Fyy = p["F_x"], p["F_u"], p["F_yy"]
    mu = Fu / (x0 * Fx)
    s2 = (
        Fx ** 2 * (Fyy * p["F_uu"] - p["F_yu"] ** 2)
        - 2 * Fx * Fu * (Fyy * p["F_xu"] - p["F_yx"] * p["F_yu"])
        + Fu ** 2 * (Fyy * p["F_xx"] - p["F_yx"] ** 2)
    ) / (x0 * Fx ** 3 * Fyy) + mu + mu ** 2
    return MomentReport(class_tag, level, "quasi_powers", mu, s2, None, digits)

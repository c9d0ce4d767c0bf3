"""Enumeration constants at the connected and general levels.

With tau, rho from the branch point and F = x exp(B'(y)):

* C•(x) = tau - h X + O(X^2) with h = sqrt(2 rho F_x / F_yy), X = sqrt(1 - x/rho);
* [x^n] C ~ h / (2 sqrt(pi)) n^{-5/2} rho^{-n}, since C' = C•/x;
* G = exp(C) gives g = exp(C(rho)) c, and exp(-C(rho)) is the limiting
  probability of connectedness.

C(rho) = int_0^rho C•(x)/x dx is computed by Gauss-Legendre quadrature after
x = rho (1 - s^2), which removes the square-root endpoint singularity.  The
identity C(rho) = tau + B(tau) - tau B'(tau) serves as an independent check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import mpmath
from mpmath.calculus.quadrature import GaussLegendre

from ..series.jets import base_value
from .characteristic import CharPoint
from .connected import BlockFunction, branch_point_connected
from .pointwise import NewtonError, to_mpf
from .singular import AsymptoticConstant


@dataclass(frozen=True)
class ConnectedConstants:
    class_tag: str
    branch: CharPoint
    tau: object
    rho: object
    h: object
    C_rho: object
    C_rho_closed: object
    quadrature_error: object
    c: AsymptoticConstant
    g: AsymptoticConstant
    digits: int = 50

    @property
    def connected_probability(self):
        return mpmath.exp(-self.C_rho)

    def to_json(self) -> dict:
        with mpmath.workdps(self.digits):
            return self._to_json()

    def _to_json(self) -> dict:
        n = lambda v: mpmath.nstr(v, self.digits)
        return {
            "class": self.class_tag,
            "tau": n(self.tau),
            "rho": n(self.rho),
            "rho_inv": n(1 / self.rho),
            "C_rho": n(self.C_rho),
            "C_rho_closed_form": n(self.C_rho_closed),
            "quadrature_error": mpmath.nstr(self.quadrature_error, 5),
            "connected_probability": n(self.connected_probability),
            "c": self.c.to_json(),
            "g": self.g.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def pointed_connected(bf: BlockFunction, x, start=None, tol=None):
    """C•(x) for 0 < x <= rho: the root of c = x exp(B'(c)) by Newton from below.

    c - x exp(B'(c)) is concave in c, so Newton started below the root
    increases monotonically to it.
    """
    tol = tol or mpmath.mpf(10) ** (-(bf.digits - 8))
    c = mpmath.mpf(0) if start is None else start
    for _ in range(200):
        t = bf.taylor(c, 2)
        e = mpmath.exp(t[1])
        f = c - x * e
        df = 1 - x * e * 2 * t[2]
        if df <= 0:
            raise NewtonError("Newton for C• passed the branch point")
        step = f / df
        c = c - step
        if abs(step) < tol * (1 + abs(c)):
            return c
    raise NewtonError("Newton for C• did not converge")


def _nodes(degree: int, digits: int) -> list:
    """Gauss-Legendre nodes and weights on [0, 1] (3 * 2^(degree-1) points)."""
    gl = GaussLegendre(mpmath.mp)
    pts = gl.calc_nodes(degree, mpmath.mp.prec)
    return [((x + 1) / 2, w / 2) for x, w in pts]


class QuadratureError(ArithmeticError):
    pass


def C_at_rho(bf: BlockFunction, tau, rho, tol=None, max_degree: int = 6) -> tuple:
    """(C(rho), error estimate); the node count doubles until two results agree to ``tol``."""
    tol = tol if tol is not None else mpmath.mpf(10) ** -15

    def integrate(deg):
        nodes = sorted(_nodes(deg, bf.digits), key=lambda p: -p[0])  # increasing x
        total = mpmath.mpf(0)
        c = None
        for s, wgt in nodes:
            x = rho * (1 - s * s)
            c = pointed_connected(bf, x, start=None if c is None else c)
            total += wgt * 2 * rho * s * c / x
        return total

    prev = integrate(2)
    for deg in range(3, max_degree + 1):
        cur = integrate(deg)
        err = abs(cur - prev)
        if err < tol:
            return cur, err
        prev = cur
    raise QuadratureError(f"C(rho) quadrature error {mpmath.nstr(err, 3)} above {mpmath.nstr(tol, 3)}")


def connected_constants(
    bf: BlockFunction,
    R_block,
    quad_tol=None,
    name: str = "",
) -> ConnectedConstants:
    digits = bf.digits
    with mpmath.workdps(digits):
        bp = branch_point_connected(bf, R_block, jets=False)
        tau = to_mpf(base_value(bp.y_star["tau"]))
        rho = to_mpf(base_value(bp.R))
        t = bf.taylor(tau, 3)
        B0, B1, B2, B3 = t[0], t[1], 2 * t[2], 6 * t[3]
        Fx = mpmath.exp(B1)
        Fyy = rho * Fx * (B3 + B2 ** 2)
        h = mpmath.sqrt(2 * rho * Fx / Fyy)
        closed = tau + B0 - tau * B1
        C_rho, err = C_at_rho(bf, tau, rho, quad_tol)
        tag = bp.class_tag
        c_val = h / (2 * mpmath.sqrt(mpmath.pi))
        c = AsymptoticConstant(name or "C", tag, "connected", c_val, 1 / rho, mpmath.mpf(-5) / 2, None, digits)
        g = AsymptoticConstant(
            name or "G", tag, "general", mpmath.exp(C_rho) * c_val, 1 / rho, mpmath.mpf(-5) / 2, None, digits
        )
        return ConnectedConstants(tag, bp, tau, rho, h, C_rho, closed, err, c, g, digits)

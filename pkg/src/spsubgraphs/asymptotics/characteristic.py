"""Characteristic points: the square-root singularity of a network system.

At the dominant singularity R(u) the reduced system g = F(x, g) has a
solution with det(I - F_g) = 0.  Both conditions are solved together by
Newton in (x, g), first over mpf and then over u-jets of order 2, which
yields R, R' and R'' without finite differences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import mpmath

from ..series.jets import Jet, base_value, magnitude
from ..systems.spec import SystemSpec
from .pointwise import NewtonError, PointSystem, newton, to_mpf


@dataclass(frozen=True)
class CharPoint:
    class_tag: str
    method: str
    R: object  # mpf or u-jet
    y_star: dict
    u: object
    y: object
    residual: object
    digits: int
    spec: SystemSpec = field(repr=False, compare=False, default=None)

    @property
    def R_value(self):
        return base_value(self.R)

    def derivatives(self) -> tuple:
        """(R, R', R'') at the base u; needs a jet-valued R."""
        if not isinstance(self.R, Jet):
            raise ValueError("characteristic point was computed without u-derivatives")
        return tuple(self.R.derivative(k) for k in range(3))

    def to_json(self) -> dict:
        with mpmath.workdps(self.digits):
            return self._to_json()

    def _to_json(self) -> dict:
        out = {
            "class": self.class_tag,
            "method": self.method,
            "u": mpmath.nstr(base_value(self.u), self.digits),
            "y": mpmath.nstr(base_value(self.y), self.digits),
            "R": mpmath.nstr(self.R_value, self.digits),
            "y_star": {k: mpmath.nstr(base_value(v), self.digits) for k, v in self.y_star.items()},
            "residual": mpmath.nstr(self.residual, 5),
        }
        if isinstance(self.R, Jet):
            out["R_u"] = mpmath.nstr(self.R.derivative(1), self.digits)
            out["R_uu"] = mpmath.nstr(self.R.derivative(2), self.digits)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def augmented_residual(ps: PointSystem, z: list) -> list:
    """[g - F(x, g), det(I - F_g)] at z = (x, g)."""
    x, g = z[0], z[1:]
    return ps.residual(x, g) + [ps.det(x, g, "t")]


def characteristic_point(
    spec: SystemSpec,
    u=1,
    y=1,
    digits: int = 50,
    jets: bool = True,
    method: str = "multi_det",
    x_start=None,
) -> CharPoint:
    """Solve g = F(x, g), det(I - F_g) = 0 on the branch through the origin."""
    with mpmath.workdps(digits):
        u0 = to_mpf(u)
        ps = PointSystem(spec, y, u0, digits)
        tol = ps.tol
        x, g, lost = ps.march_to_fold(x_start)
        # start from the midpoint of the last good point and the first failure
        z0 = [x] + list(g)
        fun = lambda z: augmented_residual(ps, z)
        try:
            z, res, _ = newton(fun, z0, tol, maxit=80, tvar="t2", damp=True)
        except NewtonError as exc:
            raise NewtonError(f"{spec.name}: characteristic system did not converge: {exc}") from exc
        if not (z[0] > 0 and lost is not None and abs(z[0] - lost) < mpmath.mpf("1e-3") * lost):
            raise NewtonError(f"{spec.name}: characteristic Newton left the physical branch (x={z[0]})")
        if jets:
            uj = Jet((u0, 1, 0), "u")
            ps_j = PointSystem(spec, y, uj, digits)
            zj = [Jet((v, 0, 0), "u") for v in z]
            z, res, _ = newton(lambda w: augmented_residual(ps_j, w), zj, tol, maxit=20, tvar="t2", damp=False)
            u_out = uj
        else:
            u_out = u0
        return CharPoint(
            spec.class_tag, method, z[0], dict(zip(ps.gains, z[1:])), u_out, to_mpf(y), res, digits, spec
        )


def char_single(spec: SystemSpec, u=1, y=1, digits: int = 50, jets: bool = True) -> CharPoint:
    """One implicit equation S = G(S, x): S = G and G_S = 1."""
    if len(spec.gain_unknowns) != 1:
        raise ValueError(f"{spec.name} has {len(spec.gain_unknowns)} gain unknowns; expected 1")
    return characteristic_point(spec, u, y, digits, jets, "single")


def char_pair(spec: SystemSpec, u=1, y=1, digits: int = 50, jets: bool = True) -> CharPoint:
    """Two coupled equations with the vanishing 2x2 Jacobian determinant."""
    if len(spec.gain_unknowns) != 2:
        raise ValueError(f"{spec.name} has {len(spec.gain_unknowns)} gain unknowns; expected 2")
    return characteristic_point(spec, u, y, digits, jets, "pair")


def char_multi_det(spec: SystemSpec, u=1, y=1, digits: int = 50, jets: bool = True) -> CharPoint:
    return characteristic_point(spec, u, y, digits, jets, "multi_det")


def recheck_residual(cp: CharPoint, digits: int | None = None):
    """Re-evaluate the characteristic residual at higher working precision."""
    digits = digits or 2 * cp.digits
    with mpmath.workdps(digits):
        ps = PointSystem(cp.spec, cp.y, cp.u, digits)
        z = [cp.R] + [cp.y_star[n] for n in ps.gains]
        return max(magnitude(v) for v in augmented_residual(ps, z))


def ratio_estimate(coeffs: list) -> object:
    """Radius estimate from the last two positive coefficients (a_{n-1}/a_n)."""
    pos = [(i, c) for i, c in enumerate(coeffs) if c]
    if len(pos) < 2:
        raise ValueError("need two nonzero coefficients")
    (i1, a1), (i2, a2) = pos[-2], pos[-1]
    return (mpmath.mpf(a1) / a2) ** (mpmath.mpf(1) / (i2 - i1))

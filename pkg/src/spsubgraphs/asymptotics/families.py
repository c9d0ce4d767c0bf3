"""Named graph families and subgraph counts mapped onto systems and solvers."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import mpmath

from ..series.jets import Jet, base_value
from ..systems.spec import (
    build_c4_network_system,
    build_girth_network_system,
    build_triangle_free_s3_equation,
    build_triangle_network_system,
    c4_block_exprs,
    triangle_block_exprs,
    triangle_free_network_exprs,
)
from .characteristic import CharPoint, char_multi_det, char_pair, char_single
from .connected import BlockFunction, MomentReport, branch_point_connected, f_partials, moments_from_radius, quasi_powers_moments
from .constants import ConnectedConstants, connected_constants
from .singular import AsymptoticConstant, SingularExpansion, singular_expansion, transfer_constant

FAMILIES = ("sp", "triangle_free", "quadrangle_free", "girth(k)")
SUBGRAPHS = ("triangle", "c4")
LEVELS = ("two_connected", "connected", "general")


class FamilyError(ValueError):
    pass


def parse_girth(family: str):
    m = re.fullmatch(r"girth\((\d+)\)", family)
    return int(m.group(1)) if m else None


def _marked(subgraph: str):
    if subgraph == "triangle":
        return build_triangle_network_system(), triangle_block_exprs()["B"]
    if subgraph == "c4":
        return build_c4_network_system(), c4_block_exprs()["B"]
    raise FamilyError(f"unknown subgraph {subgraph!r}; expected one of {SUBGRAPHS}")


def family_system(family: str) -> tuple:
    """(network system, u value, B expression or None) describing a family."""
    if family == "sp":
        spec, B = _marked("triangle")
        return spec, 1, B
    if family == "triangle_free":
        spec, B = _marked("triangle")
        return spec, 0, B
    if family == "quadrangle_free":
        spec, B = _marked("c4")
        return spec, 0, B
    k = parse_girth(family)
    if k is not None:
        if k == 4:
            return family_system("triangle_free")
        return build_girth_network_system(k), 1, None
    raise FamilyError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class FamilyConstants:
    family: str
    char: CharPoint
    expansions: dict = field(repr=False)
    b: AsymptoticConstant | None
    connected: ConnectedConstants | None
    cross_checks: dict = field(default_factory=dict)
    digits: int = 50

    def to_json(self) -> dict:
        with mpmath.workdps(self.digits):
            return self._to_json()

    def _to_json(self) -> dict:
        n = lambda v: mpmath.nstr(v, self.digits)
        out = {
            "family": self.family,
            "R": n(self.char.R_value),
            "R_inv": n(1 / self.char.R_value),
            "method": self.char.method,
            "expansions": {k: e.to_json()["coeffs"] for k, e in sorted(self.expansions.items())},
            "cross_checks": {k: n(v) for k, v in sorted(self.cross_checks.items())},
        }
        if self.b is not None:
            out["b"] = self.b.to_json()
        if self.connected is not None:
            out["connected"] = self.connected.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def family_radius(family: str, digits: int = 50) -> CharPoint:
    if family == "triangle_free":
        return char_single(build_triangle_free_s3_equation(), 0, 1, digits, jets=False)
    spec, u, _ = family_system(family)
    if len(spec.gain_unknowns) == 2:
        return char_pair(spec, u, 1, digits, jets=False)
    return char_multi_det(spec, u, 1, digits, jets=False)


def family_constants(family: str, digits: int = 50, depth: int = 3, quad_tol=None) -> FamilyConstants:
    """Radius, singular expansions, b and (when B is available) the connected-level constants."""
    spec, u, B = family_system(family)
    cp = family_radius(family, digits)
    checks: dict = {}
    if family == "triangle_free":
        extra = list(triangle_free_network_exprs().items()) + [("B", B)]
        pair = char_pair(spec, 0, 1, digits, jets=False)
        checks["R_pair_minus_single"] = abs(pair.R_value - cp.R_value)
    else:
        extra = [] if B is None else [("B", B)]
    exps = singular_expansion(cp, depth, extra, digits)
    if B is None:
        return FamilyConstants(family, cp, exps, None, None, checks, digits)
    b = transfer_constant(exps["B"], family, "two_connected")
    bf = BlockFunction(spec, B, 1, u, digits)
    conn = connected_constants(bf, cp.R_value, quad_tol)
    checks["C_rho_quadrature_minus_closed"] = abs(conn.C_rho - conn.C_rho_closed)
    return FamilyConstants(family, cp, exps, b, conn, checks, digits)


def moments(level: str, subgraph: str, digits: int = 50) -> list:
    """MomentReports for copies of ``subgraph`` at a level (two routes at the connected level)."""
    if level not in LEVELS:
        raise FamilyError(f"unknown level {level!r}; expected one of {LEVELS}")
    spec, B = _marked(subgraph)
    if level == "two_connected":
        cp = (char_pair if subgraph == "triangle" else char_multi_det)(spec, 1, 1, digits, jets=True)
        return [moments_from_radius(cp, level)]
    # a connected or general graph has the same rho(u): G = exp(C) adds no singularity
    R = (char_pair if subgraph == "triangle" else char_multi_det)(spec, 1, 1, digits, jets=False).R_value
    uj = Jet((mpmath.mpf(1), 1, 0), "u")
    bf = BlockFunction(spec, B, 1, uj, digits)
    bp = branch_point_connected(bf, R)
    radius = moments_from_radius(bp, level)
    tau = base_value(bp.y_star["tau"])
    qp = quasi_powers_moments(f_partials(bf, tau, bp.R_value), bp.R_value, spec.class_tag, level, digits)
    err = abs(radius.mu - qp.mu) + abs(radius.sigma2 - qp.sigma2)
    return [
        MomentReport(radius.class_tag, level, radius.method, radius.mu, radius.sigma2, err, digits),
        MomentReport(qp.class_tag, level, qp.method, qp.mu, qp.sigma2, err, digits),
    ]

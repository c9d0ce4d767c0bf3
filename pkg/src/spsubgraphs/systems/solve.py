"""Order-by-order fixed-point solving of network systems and block/connected assembly."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..series import series as ser
from ..series.rings import ExactRational, Ring
from ..series.series import Caps, TruncatedSeries
from .expr import SeriesAlgebra, evaluate
from .spec import SystemSpec, c4_block_exprs, network_total, triangle_block_exprs

log = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolvedNetworks:
    class_tag: str
    series: Mapping[str, TruncatedSeries]
    spec: SystemSpec = field(repr=False)
    order: int
    ring: Ring
    y_value: object = None
    u_value: object = None
    sweeps: int = 0

    def __getitem__(self, name: str) -> TruncatedSeries:
        return self.series[name]

    def env(self) -> dict:
        env = _leaves(self.ring, self.order, self.y_value, self.u_value, None)
        env.update(self.series)
        return env

    @property
    def D(self) -> TruncatedSeries:
        return evaluate(network_total(self.spec), self.env(), self.algebra())

    def algebra(self) -> SeriesAlgebra:
        return SeriesAlgebra(self.ring, self.order, self.u_value)


@dataclass(frozen=True)
class GraphClassSeries:
    class_tag: str
    B: TruncatedSeries
    B_R: TruncatedSeries | None = None
    B_M: TruncatedSeries | None = None
    B_RM: TruncatedSeries | None = None
    C_pointed: TruncatedSeries | None = None
    C: TruncatedSeries | None = None
    G: TruncatedSeries | None = None


def _leaves(ring, order, y_value, u_value, caps) -> dict:
    x = TruncatedSeries.x(ring, order, caps)
    y = TruncatedSeries.y(ring, order, caps) if y_value is None else TruncatedSeries.constant(ring, order, y_value, caps)
    u = TruncatedSeries.u(ring, order, caps) if u_value is None else TruncatedSeries.constant(ring, order, u_value, caps)
    return {"x": x, "y": y, "u": u}


def solve_fixed_point(
    spec: SystemSpec,
    order: int,
    ring: Ring | None = None,
    y=None,
    u=None,
    caps: Caps | None = None,
) -> SolvedNetworks:
    """Iterate all equations from zero until a sweep at full order changes nothing.

    Sweep t evaluates at x-order min(t, order): gain unknowns first from the
    previous sweep, then explicit unknowns in dependency order, so after sweep t
    every coefficient up to x^t is final.  ``y``/``u`` specialize those variables
    to scalars; left as None they stay formal.
    """
    ring = ring or ExactRational()
    yv = None if y is None else ring.coerce(y)
    uv = None if u is None else ring.coerce(u)
    values = {n: TruncatedSeries.zero(ring, 0, caps) for n in spec.unknowns}
    max_sweeps = order + 2
    previous = None
    for t in range(max_sweeps):
        n = min(t, order)
        env = _leaves(ring, n, yv, uv, caps)
        alg = SeriesAlgebra(ring, n, uv, caps)
        current = {name: v.padded(n) for name, v in values.items()}
        env.update(current)
        for name in spec.sweep_order:
            env[name] = evaluate(spec.rhs[name], env, alg)
        values = {name: env[name] for name in spec.unknowns}
        if t > order and previous == values:
            log.debug("%s solved to order %d in %d sweeps", spec.name, order, t + 1)
            return SolvedNetworks(spec.class_tag, values, spec, order, ring, yv, uv, t + 1)
        if t >= order:
            previous = values
    raise ConvergenceError(f"{spec.name}: no fixed point after {max_sweeps} sweeps (gain condition violated?)")


def residuals(solved: SolvedNetworks) -> dict:
    """rhs(solution) - solution for every unknown; all zero for a true solution."""
    env = solved.env()
    alg = solved.algebra()
    return {n: evaluate(solved.spec.rhs[n], env, alg) - solved.series[n] for n in solved.spec.unknowns}


def _assemble(nets: SolvedNetworks, exprs: dict, tag: str) -> GraphClassSeries:
    if nets.class_tag != tag:
        raise ValueError(f"expected {tag} networks, got {nets.class_tag}")
    env = nets.env()
    alg = nets.algebra()
    cache: dict = {}
    parts = {k: evaluate(e, env, alg, cache) for k, e in exprs.items()}
    return GraphClassSeries(tag, parts["B"], parts["B_R"], parts["B_M"], parts["B_RM"])


def assemble_B_triangle(nets: SolvedNetworks) -> GraphClassSeries:
    return _assemble(nets, triangle_block_exprs(), "triangle")


def assemble_B_c4(nets: SolvedNetworks) -> GraphClassSeries:
    return _assemble(nets, c4_block_exprs(), "c4")


def assemble_B_edge_rooted(nets: SolvedNetworks) -> GraphClassSeries:
    """B from 2y dB/dy = x^2 P1 (root-edge unrooting); needs y formal.

    Used for girth classes, where no dissymmetry formula is available.
    """
    if nets.y_value is not None:
        raise ValueError("edge unrooting needs y to be formal")
    rooted = nets["P1"].mul_x().mul_x().scale(Fraction(1, 2) if nets.ring.exact else nets.ring.one / 2)
    return GraphClassSeries(nets.class_tag, rooted.div_y_degree())


def connected_from_B(B: TruncatedSeries, order: int, class_tag: str = "") -> GraphClassSeries:
    """C•, C and G from the 2-connected series.

    B must be known through x^(order+1) because B° = dB/dx loses one order.
    """
    if B.order < order + 1:
        raise ValueError(f"B known to order {B.order}; need {order + 1}")
    B_deriv = B.truncate(order + 1).diff("x")
    x = TruncatedSeries.x(B.ring, order, B.caps)
    cp = TruncatedSeries.zero(B.ring, order, B.caps)
    for _ in range(order + 2):
        new = x * ser.subs_x(B_deriv, cp).exp()
        if new == cp:
            break
        cp = new
    else:
        raise ConvergenceError("C• fixed point did not settle")
    C = cp.integrate_div_x()
    G = ser.exp_geq(C, 0)
    return GraphClassSeries(class_tag, B, C_pointed=cp, C=C, G=G)


def solve_class(spec: SystemSpec, order: int, ring=None, y=None, u=None, block="auto") -> tuple:
    """Solve networks to order+1 and assemble B, C•, C, G through ``order``."""
    nets = solve_fixed_point(spec, order + 1, ring, y, u)
    if block == "auto":
        block = {"triangle": "triangle", "c4": "c4"}.get(spec.class_tag, "edge")
    if block == "triangle":
        parts = assemble_B_triangle(nets)
    elif block == "c4":
        parts = assemble_B_c4(nets)
    else:
        parts = assemble_B_edge_rooted(nets)
    conn = connected_from_B(parts.B, order, spec.class_tag)
    full = GraphClassSeries(
        spec.class_tag, parts.B, parts.B_R, parts.B_M, parts.B_RM, conn.C_pointed, conn.C, conn.G
    )
    return nets, full

"""Singularities, singular expansions, enumeration constants and limit-law moments."""

from .characteristic import CharPoint, char_multi_det, char_pair, char_single, characteristic_point, recheck_residual
from .connected import BlockFunction, MomentReport, branch_point_connected, f_partials, moments_from_radius, quasi_powers_moments
from .constants import ConnectedConstants, QuadratureError, connected_constants, pointed_connected
from .families import FAMILIES, LEVELS, SUBGRAPHS, FamilyError, family_constants, family_radius, family_system, moments
from .pointwise import NewtonError, PointSystem, newton
from .singular import (
    AsymptoticConstant,
    SingularExpansion,
    SingularExpansionError,
    expansion_residual,
    singular_expansion,
    transfer_constant,
)


def pointwise_solve(spec, x0, y0=1, u0=1, init=None, digits: int = 50) -> dict:
    """Every unknown of ``spec`` at a point inside the singularity, by Newton with continuation from x = 0."""
    ps = PointSystem(spec, y0, u0, digits)
    g = ps.solve(x0, init)
    env = ps.env(x0 if not hasattr(x0, "c") else x0, g)
    return {n: env[n] for n in spec.unknowns}

"""Network equation systems, their fixed-point solutions and graph-class assembly."""

from .expr import Expr, ScalarAlgebra, SeriesAlgebra, evaluate
from .solve import (
    ConvergenceError,
    GraphClassSeries,
    SolvedNetworks,
    assemble_B_c4,
    assemble_B_edge_rooted,
    assemble_B_triangle,
    connected_from_B,
    residuals,
    solve_class,
    solve_fixed_point,
)
from .spec import (
    C4_UNKNOWNS,
    SystemSpec,
    SystemSpecError,
    build_c4_network_system,
    build_girth_network_system,
    build_triangle_free_s3_equation,
    build_triangle_network_system,
    c4_block_exprs,
    network_total,
    triangle_block_exprs,
    triangle_free_network_exprs,
)

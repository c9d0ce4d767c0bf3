from fractions import Fraction
from math import factorial

import mpmath
import pytest

from spsubgraphs.asymptotics import pointwise_solve
from spsubgraphs.oracle import K3, census
from spsubgraphs.series import BigFloat, ExactRational
from spsubgraphs.systems import (
    SystemSpec,
    SystemSpecError,
    assemble_B_c4,
    assemble_B_edge_rooted,
    assemble_B_triangle,
    build_c4_network_system,
    build_girth_network_system,
    build_triangle_network_system,
    residuals,
    solve_class,
    solve_fixed_point,
)
from spsubgraphs.systems.expr import var
from spsubgraphs.verify import PUBLISHED_D

Q = ExactRational()


def egf(S, n, j=None, k=None):
    """n! [x^n y^j u^k] S, summing over any index left as None."""
    return sum(
        c for (i, jj, kk), c in S.terms.items()
        if i == n and (j is None or jj == j) and (k is None or kk == k)
    ) * factorial(n)


def test_triangle_D_through_x3():
    assert solve_fixed_point(build_triangle_network_system(), 3, Q).D.terms == PUBLISHED_D


def test_order_zero():
    nets = solve_fixed_point(build_triangle_network_system(), 0, Q)
    assert nets.D.terms == {(0, 1, 0): 1}
    assert nets["P1"].terms == {(0, 1, 0): 1}
    assert nets["S2"].is_zero() and nets["S3"].is_zero()


def test_u_zero_kills_marked_terms():
    D = solve_fixed_point(build_triangle_network_system(), 1, Q, u=0).D
    assert {k: v for k, v in D.terms.items() if k[0] == 1} == {(1, 2, 0): 1}


@pytest.mark.parametrize("build", [build_triangle_network_system, build_c4_network_system,
                                   lambda: build_girth_network_system(5)])
def test_residuals_vanish(build):
    nets = solve_fixed_point(build(), 7, Q)
    assert all(r.is_zero() for r in residuals(nets).values())


def test_u_one_collapse():
    order = 7
    tri = solve_fixed_point(build_triangle_network_system(), order, Q, u=1)
    sq = solve_fixed_point(build_c4_network_system(), order, Q, u=1)
    assert tri.D == sq.D
    # barred and unbarred c4 networks coincide at u=1
    for name in sq.spec.unknowns:
        if name.endswith("b") and name[:-1] in sq.spec.unknowns:
            assert sq[name] == sq[name[:-1]], name
    formal = solve_fixed_point(build_triangle_network_system(), order, Q)
    assert formal.D.specialize(u=1) == tri.D


def test_c4_single_edge():
    nets = solve_fixed_point(build_c4_network_system(), 2, Q)
    assert nets["P1"].x_poly(0) == {(1, 0): 1}


def test_girth4_is_triangle_free():
    a = solve_fixed_point(build_girth_network_system(4), 10, Q, u=1)
    b = solve_fixed_point(build_triangle_network_system(), 10, Q, u=0)
    assert a.D == b.D


def test_girth_s1_contributes_nothing():
    spec = build_girth_network_system(5)
    full = solve_fixed_point(spec, 6, Q, u=1)
    assert full["S1"].is_zero()
    reduced = solve_fixed_point(spec.without("S1"), 6, Q, u=1)
    for name in reduced.spec.unknowns:
        assert reduced[name] == full[name]


def test_girth_needs_k_at_least_4():
    with pytest.raises(SystemSpecError):
        build_girth_network_system(3)


def test_cycle_invariant_enforced():
    with pytest.raises(SystemSpecError):
        SystemSpec("loop", "x", ("A", "B"), {"A": var("B"), "B": var("A")}, frozenset())


def test_spec_json_roundtrip():
    spec = build_c4_network_system()
    back = SystemSpec.from_json(spec.to_json())
    assert back.unknowns == spec.unknowns
    assert solve_fixed_point(back, 5, Q).D == solve_fixed_point(spec, 5, Q).D


def test_block_examples_triangle():
    _, cls = solve_class(build_triangle_network_system(), 4, Q, y=1)
    assert {k: egf(cls.B, 3, k=k) for k in (0, 1)} == {0: 0, 1: 1}
    assert egf(cls.C, 3, k=0) == 3 and egf(cls.C, 3, k=1) == 1
    assert egf(cls.C, 1) == 1 and egf(cls.C, 2) == 1
    nets = solve_fixed_point(build_triangle_network_system(), 4, Q)
    B = assemble_B_triangle(nets).B
    assert {k: v for k, v in B.terms.items() if k[0] == 2} == {(2, 1, 0): Fraction(1, 2)}


def test_block_examples_c4():
    _, cls = solve_class(build_c4_network_system(), 4, Q, y=1)
    # C4 itself (3 labelings) and K4 minus an edge (6 labelings), each with one 4-cycle
    assert {k: egf(cls.B, 4, k=k) for k in range(3)} == {0: 0, 1: 9, 2: 0}
    _, free = solve_class(build_c4_network_system(), 4, Q, y=1, u=0)
    assert egf(free.B, 4) == 0


def test_edge_rooting_identity_with_formal_u():
    for build, assemble in ((build_triangle_network_system, assemble_B_triangle),
                            (build_c4_network_system, assemble_B_c4)):
        nets = solve_fixed_point(build(), 7, Q)
        assert assemble(nets).B == assemble_B_edge_rooted(nets).B


def test_class_series_invariants():
    _, cls = solve_class(build_triangle_network_system(), 6, Q, y=1)
    assert cls.C.diff("x").mul_x() == cls.C_pointed.truncate(5)
    assert cls.C.exp() == cls.G


def test_general_counts_all_sp_graphs():
    _, cls = solve_class(build_triangle_network_system(), 6, Q, y=1, u=1)
    assert [egf(cls.G, n) for n in range(1, 7)] == [census(n, "all", "sp", K3).total for n in range(1, 7)]


def test_pointwise_agrees_with_series():
    with mpmath.workdps(40):
        nets = solve_fixed_point(build_triangle_network_system(), 40, BigFloat(40), y=1, u=1)
        value, tail = nets.D.eval_numeric(mpmath.mpf("0.05"))
        point = pointwise_solve(build_triangle_network_system(), mpmath.mpf("0.05"), digits=40)
        assert abs(value - point["D"]) < 1e-10


def test_series_counts_vs_pointwise_at_small_x():
    with mpmath.workdps(40):
        x0 = mpmath.mpf("0.01")
        nets = solve_fixed_point(build_triangle_network_system(), 12, BigFloat(40), y=1, u=1)
        value, tail = nets.D.eval_numeric(x0)
        point = pointwise_solve(build_triangle_network_system(), x0, digits=40)
        assert abs(value - point["D"]) <= 10 * tail.estimated_tail_bound + mpmath.mpf(10) ** -30

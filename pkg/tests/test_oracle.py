from fractions import Fraction
from math import factorial, inf

import pytest

from spsubgraphs.oracle import (
    C4,
    K3,
    GraphError,
    LabeledGraph,
    automorphisms,
    census,
    complete,
    count_copies,
    cycle,
    enumerate_graphs,
    format_pattern,
    girth,
    has_k4_minor,
    is_connected,
    is_series_parallel,
    is_two_connected,
    parse_family,
    parse_pattern,
    path,
)
from spsubgraphs.series import ExactRational
from spsubgraphs.systems import build_triangle_network_system, solve_class

K4_MINUS_E = LabeledGraph.from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)])


def test_small_enumerations():
    assert len(list(enumerate_graphs(1, "connected"))) == 1
    assert len(list(enumerate_graphs(2, "two_connected"))) == 1
    assert len(list(enumerate_graphs(3, "connected"))) == 4
    assert len(list(enumerate_graphs(4, "connected"))) == 38
    assert len(list(enumerate_graphs(4, "any"))) == 64


def test_connectivity_predicates():
    assert is_connected(path(3)) and not is_two_connected(path(3))
    assert is_two_connected(cycle(5))
    assert not is_connected(LabeledGraph.from_edges(4, [(1, 2), (3, 4)]))


def test_series_parallel_recognition():
    assert not is_series_parallel(complete(4)) and has_k4_minor(complete(4))
    assert is_series_parallel(K4_MINUS_E)
    assert is_series_parallel(path(5)) and is_series_parallel(cycle(6))
    # K4 subdivided on one edge still has a K4 minor
    sub = LabeledGraph.from_edges(5, [(1, 5), (5, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    assert not is_series_parallel(sub)


def test_count_copies():
    assert count_copies(complete(4), K3) == 4
    assert count_copies(cycle(5), path(2)) == 5
    assert count_copies(K4_MINUS_E, C4) == 1
    assert count_copies(complete(4), C4) == 3
    assert automorphisms(C4) == 8
    with pytest.raises(GraphError):
        count_copies(complete(4), LabeledGraph.from_edges(4, [(1, 2), (3, 4)]))


def test_girth():
    assert girth(complete(4)) == 3
    assert girth(cycle(4)) == 4
    assert girth(path(4)) == inf


def test_census_small_classes():
    c = census(3, "connected", "sp", K3)
    assert c.u_polynomial() == {0: 3, 1: 1}
    assert census(3, "two_connected", "sp", K3).u_polynomial() == {1: 1}
    assert c.mean() == Fraction(1, 4)
    assert c.variance() == Fraction(3, 16)


def test_census_matches_series():
    _, cls = solve_class(build_triangle_network_system(), 4, ExactRational(), y=1, u=0)
    free = sum(v for (i, _, _), v in cls.C.terms.items() if i == 4) * factorial(4)
    assert census(4, "connected", "sp_girth(4)", K3).total == free
    assert census(4, "connected", "sp_triangle_free", K3).total == free


def test_patterns():
    g = parse_pattern("4; 1-2, 2-3,3-4 ,4-1")
    assert g == C4
    assert format_pattern(g) == "4; 1-2,1-4,2-3,3-4"
    for bad in ("x; 1-2", "3; 1-2-3", "3; 1-1", "3; 1-4"):
        with pytest.raises(GraphError):
            parse_pattern(bad)


def test_census_errors():
    with pytest.raises(GraphError):
        census(4, "connected", "sp", LabeledGraph.from_edges(4, [(1, 2), (3, 4)]))
    with pytest.raises(GraphError):
        census(9, "connected", "sp", K3, cap=9)
    with pytest.raises(GraphError):
        census(4, "weird", "sp", K3)
    with pytest.raises(GraphError):
        parse_family("planar")
    with pytest.raises(GraphError):
        parse_family("sp_girth(2)")


def test_workers_do_not_change_results():
    one = census(5, "connected", "sp", K3, workers=1)
    two = census(5, "connected", "sp", K3, workers=2)
    assert one.to_json() == two.to_json()

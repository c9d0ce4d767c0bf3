"""Brute-force ground truth over small labeled graphs."""

from .census import CensusPolynomial, census, parse_family
from .graphs import (
    C4,
    K3,
    GraphError,
    LabeledGraph,
    automorphisms,
    complete,
    count_copies,
    count_embeddings,
    cycle,
    enumerate_graphs,
    format_pattern,
    girth,
    has_k4_minor,
    is_connected,
    is_series_parallel,
    is_two_connected,
    parse_pattern,
    path,
)

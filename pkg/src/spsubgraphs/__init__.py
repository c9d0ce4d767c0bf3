"""Subgraph statistics in series-parallel graph classes.

Exact series solving of the network equation systems, singularity analysis of
the solved systems, and a brute-force labeled-graph oracle to check both.
"""

__version__ = "0.1.0"

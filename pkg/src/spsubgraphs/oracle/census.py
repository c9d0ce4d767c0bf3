"""Exact census of subgraph-copy counts over small labeled graph classes."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .graphs import (
    DEFAULT_CAP,
    HARD_CAP,
    GraphError,
    LabeledGraph,
    connected_adj,
    copies_adj,
    enumerate_masks,
    format_pattern,
    girth_adj,
    pair_list,
    sp_adj,
    two_connected_adj,
)

CONNECTIVITIES = ("all", "connected", "two_connected")


def parse_family(family: str) -> tuple:
    """``sp``, ``sp_triangle_free``, ``sp_quadrangle_free`` or ``sp_girth(k)``; returns (min girth, label)."""
    if family == "sp":
        return 3, family
    if family == "sp_triangle_free":
        return 4, family
    if family == "sp_quadrangle_free":
        return None, family
    if family.startswith("sp_girth(") and family.endswith(")"):
        k = int(family[len("sp_girth("):-1])
        if k < 3:
            raise GraphError("girth bound must be >= 3")
        return k, family
    raise GraphError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CensusPolynomial:
    n: int
    connectivity: str
    family: str
    h: LabeledGraph
    counts: dict = field(default_factory=dict)  # copies -> number of graphs

    @property
    def class_tag(self) -> tuple:
        return (self.connectivity, self.family)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def u_polynomial(self) -> dict:
        """sum over graphs of u^copies, as {exponent: count}."""
        return dict(sorted(self.counts.items()))

    def mean(self) -> Fraction:
        if not self.total:
            raise ZeroDivisionError("empty class")
        return Fraction(sum(k * c for k, c in self.counts.items()), self.total)

    def variance(self) -> Fraction:
        m = self.mean()
        return Fraction(sum(k * k * c for k, c in self.counts.items()), self.total) - m * m

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "class": f"{self.connectivity}/{self.family}",
            "H": format_pattern(self.h),
            "total": self.total,
            "distribution": {str(k): v for k, v in sorted(self.counts.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _in_family(adj, family: str) -> bool:
    if not sp_adj(adj):
        return False
    k, label = parse_family(family)
    if label == "sp_quadrangle_free":
        return copies_adj(adj, (0b1010, 0b0101, 0b1010, 0b0101)) == 0
    return girth_adj(adj) >= k


def _keep(adj, connectivity: str) -> bool:
    if connectivity == "connected":
        return connected_adj(adj)
    if connectivity == "two_connected":
        return two_connected_adj(adj)
    return True


def _chunk(args) -> Counter:
    n, connectivity, family, hadj, lo, hi = args
    out: Counter = Counter()
    for _, adj in enumerate_masks(n, "any", HARD_CAP, lo, hi):
        if not _keep(adj, connectivity) or not _in_family(adj, family):
            continue
        out[copies_adj(adj, hadj)] += 1
    return out


def census(
    n: int,
    connectivity: str,
    family: str,
    h: LabeledGraph,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> CensusPolynomial:
    """Distribution of copies of ``h`` over the labeled graphs of a class on n vertices.

    The edge-subset range is split into chunks whose partial counts merge by
    addition, so the result does not depend on ``workers``.
    """
    if connectivity not in CONNECTIVITIES:
        raise GraphError(f"unknown connectivity {connectivity!r}")
    if not connected_adj(h.adjacency):
        raise GraphError("pattern graph must be connected")
    parse_family(family)
    if n > min(cap, HARD_CAP):
        raise GraphError(f"n={n} above the enumeration cap {min(cap, HARD_CAP)}")
    return _census_cached(n, connectivity, family, h.adjacency, h, workers)


@lru_cache(maxsize=256)
def _census_cached(n, connectivity, family, hadj, h, workers) -> CensusPolynomial:
    space = 1 << len(pair_list(n))
    nchunks = max(1, workers * 4) if workers > 1 else 1
    step = -(-space // nchunks)
    jobs = [(n, connectivity, family, hadj, lo, min(space, lo + step)) for lo in range(0, space, step)]
    total: Counter = Counter()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_chunk, jobs):
                total.update(part)
    else:
        for job in jobs:
            total.update(_chunk(job))
    return CensusPolynomial(n, connectivity, family, h, dict(sorted(total.items())))

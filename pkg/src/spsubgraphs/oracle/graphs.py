"""Labeled simple graphs, enumeration, SP recognition and subgraph counting.

Vertices are 1..n.  Internally graphs are adjacency bitmasks over 0..n-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

DEFAULT_CAP = 7
HARD_CAP = 8


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            a, b = tuple(e)
            if a == b:
                raise GraphError("loops are not allowed")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise GraphError(f"edge {a}-{b} outside 1..{self.n}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges) -> "LabeledGraph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def adjacency(self) -> tuple:
        adj = [0] * self.n
        for a, b in self.edges:
            adj[a - 1] |= 1 << (b - 1)
            adj[b - 1] |= 1 << (a - 1)
        return tuple(adj)

    def __str__(self):
        return format_pattern(self)


def parse_pattern(text: str) -> LabeledGraph:
    """Parse ``"n; a-b,c-d,..."``."""
    try:
        head, _, body = text.partition(";")
        n = int(head.strip())
        edges = []
        for tok in body.split(","):
            tok = tok.strip()
            if not tok:
                continue
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
    except ValueError as exc:
        raise GraphError(f"bad pattern {text!r}: expected 'n; a-b,c-d,...'") from exc
    return LabeledGraph.from_edges(n, edges)


def format_pattern(g: LabeledGraph) -> str:
    return f"{g.n}; " + ",".join(f"{a}-{b}" for a, b in sorted(g.edges))


def complete(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, combinations(range(1, n + 1), 2))


def cycle(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n_edges: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n_edges + 1, [(i, i + 1) for i in range(1, n_edges + 1)])


K3 = complete(3)
C4 = cycle(4)

# -- bitmask primitives ------------------------------------------------------------


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple:
    return tuple(combinations(range(n), 2))


def adjacency_from_mask(n: int, mask: int) -> tuple:
    adj = [0] * n
    for bit, (a, b) in enumerate(pair_list(n)):
        if mask >> bit & 1:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return tuple(adj)


def graph_from_mask(n: int, mask: int) -> LabeledGraph:
    return LabeledGraph(n, frozenset((a + 1, b + 1) for bit, (a, b) in enumerate(pair_list(n)) if mask >> bit & 1))


def _reach(adj, start: int, alive: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def connected_adj(adj, alive: int | None = None) -> bool:
    n = len(adj)
    alive = (1 << n) - 1 if alive is None else alive
    if alive == 0:
        return True
    start = (alive & -alive).bit_length() - 1
    return _reach(adj, start, alive) == alive


def two_connected_adj(adj) -> bool:
    """2-connected under the block convention: the single edge on 2 vertices qualifies."""
    n = len(adj)
    if n == 2:
        return adj[0] == 0b10
    if n < 3 or not connected_adj(adj):
        return False
    full = (1 << n) - 1
    return all(connected_adj(adj, full & ~(1 << v)) for v in range(n))


def is_connected(g: LabeledGraph) -> bool:
    return connected_adj(g.adjacency)


def is_two_connected(g: LabeledGraph) -> bool:
    return two_connected_adj(g.adjacency)


def enumerate_graphs(n: int, connectivity: str = "any", cap: int = DEFAULT_CAP) -> Iterator[LabeledGraph]:
    """Every labeled simple graph on {1..n} passing the connectivity filter, once each."""
    for _, adj in enumerate_masks(n, connectivity, cap):
        yield graph_from_adj(adj)


def graph_from_adj(adj) -> LabeledGraph:
    n = len(adj)
    return LabeledGraph(n, frozenset((a + 1, b + 1) for a in range(n) for b in range(a + 1, n) if adj[a] >> b & 1))


def enumerate_masks(n: int, connectivity: str = "any", cap: int = DEFAULT_CAP, lo: int = 0, hi: int | None = None):
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > min(cap, HARD_CAP):
        raise GraphError(f"n={n} above the enumeration cap {min(cap, HARD_CAP)}")
    if connectivity not in ("any", "connected", "two_connected"):
        raise GraphError(f"unknown connectivity {connectivity!r}")
    m = len(pair_list(n))
    hi = 1 << m if hi is None else hi
    for mask in range(lo, hi):
        adj = adjacency_from_mask(n, mask)
        if connectivity == "connected" and not connected_adj(adj):
            continue
        if connectivity == "two_connected" and not two_connected_adj(adj):
            continue
        yield mask, adj


# -- series-parallel recognition -------------------------------------------------------


def blocks(adj) -> list:
    """Edge sets of the blocks (biconnected components), via Hopcroft–Tarjan."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    counter = 0
    stack: list = []
    out = []
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        work = [(root, -1, _neighbors(adj[root]))]
        while work:
            v, parent, nbrs = work[-1]
            if nbrs:
                w = nbrs.pop()
                if index[w] == -1:
                    stack.append((v, w))
                    index[w] = low[w] = counter
                    counter += 1
                    work.append((w, v, _neighbors(adj[w])))
                elif w != parent and index[w] < index[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if low[v] >= index[parent]:
                        comp = []
                        while True:
                            e = stack.pop()
                            comp.append(e)
                            if e == (parent, v):
                                break
                        out.append(comp)
    return out


def _neighbors(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _reduces_to_edge(edges) -> bool:
    """Series/parallel reduction of a 2-connected multigraph down to one edge."""
    mult: dict = {}
    for a, b in edges:
        key = (min(a, b), max(a, b))
        mult[key] = 1  # parallel reduction is implicit: multi-edges collapse
    nbr: dict = {}
    for a, b in mult:
        nbr.setdefault(a, set()).add(b)
        nbr.setdefault(b, set()).add(a)
    changed = True
    while changed and len(nbr) > 2:
        changed = False
        for v in list(nbr):
            if len(nbr[v]) == 2:
                a, b = nbr.pop(v)
                nbr[a].discard(v)
                nbr[b].discard(v)
                nbr[a].add(b)  # series reduction; a parallel duplicate merges here
                nbr[b].add(a)
                changed = True
                if len(nbr) <= 2:
                    break
    return len(nbr) <= 2


def is_series_parallel(g: LabeledGraph) -> bool:
    """No K4 minor: every block reduces to a single edge."""
    adj = g.adjacency
    return all(len(b) <= 1 or _reduces_to_edge(b) for b in blocks(adj))


def sp_adj(adj) -> bool:
    return all(len(b) <= 1 or _reduces_to_edge(b) for b in blocks(adj))


def has_k4_minor(g: LabeledGraph) -> bool:
    """Direct minor search by edge deletion/contraction (exponential; small graphs only)."""
    return _k4_minor(_canon(g.n, g.edges))


def _canon(n, edges):
    verts = sorted({v for e in edges for v in e})
    relabel = {v: i for i, v in enumerate(verts)}
    return frozenset((min(relabel[a], relabel[b]), max(relabel[a], relabel[b])) for a, b in edges)


@lru_cache(maxsize=None)
def _k4_minor(edges: frozenset) -> bool:
    verts = sorted({v for e in edges for v in e})
    if len(verts) < 4 or len(edges) < 6:
        return False
    adj = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for quad in combinations(verts, 4):
        if all(b in adj[a] for a, b in combinations(quad, 2)):
            return True
    for e in edges:
        if _k4_minor(_canon(0, edges - {e})):
            return True
        a, b = e
        merged = set()
        for c, d in edges - {e}:
            c = a if c == b else c
            d = a if d == b else d
            if c != d:
                merged.add((min(c, d), max(c, d)))
        if _k4_minor(_canon(0, merged)):
            return True
    return False


# -- subgraph copies and girth ----------------------------------------------------------------


def count_embeddings(g: LabeledGraph, h: LabeledGraph) -> int:
    """Injective maps V(h) -> V(g) sending edges of h to edges of g."""
    return _embeddings(g.adjacency, h.adjacency)


def _embeddings(gadj, hadj) -> int:
    hn, gn = len(hadj), len(gadj)
    if hn > gn:
        return 0
    # visit pattern vertices so each (after the first) touches an earlier one
    order = [0]
    rest = set(range(1, hn))
    while rest:
        nxt = next((v for v in sorted(rest) if any(hadj[v] >> w & 1 for w in order)), min(rest))
        order.append(nxt)
        rest.discard(nxt)
    back = [[order.index(w) for w in order[:i] if hadj[order[i]] >> w & 1] for i in range(hn)]
    image = [0] * hn
    count = 0

    def extend(i, used):
        nonlocal count
        if i == hn:
            count += 1
            return
        cand = ((1 << gn) - 1) & ~used
        for j in back[i]:
            cand &= gadj[image[j]]
        while cand:
            low = cand & -cand
            image[i] = low.bit_length() - 1
            extend(i + 1, used | low)
            cand ^= low

    extend(0, 0)
    return count


@lru_cache(maxsize=None)
def _aut_count(hadj: tuple) -> int:
    return _embeddings(hadj, hadj)


def automorphisms(h: LabeledGraph) -> int:
    return _aut_count(h.adjacency)


def count_copies(g: LabeledGraph, h: LabeledGraph) -> int:
    """Number of (not necessarily induced) subgraphs of g isomorphic to h."""
    if not is_connected(h):
        raise GraphError("pattern graph must be connected")
    return copies_adj(g.adjacency, h.adjacency)


def copies_adj(gadj, hadj) -> int:
    emb = _embeddings(gadj, hadj)
    aut = _aut_count(tuple(hadj))
    q, r = divmod(emb, aut)
    if r:
        raise ArithmeticError("embedding count not divisible by |Aut(h)|")
    return q


def girth_adj(adj) -> float:
    n = len(adj)
    best = math.inf
    for root in range(n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for v in queue:
            for w in _neighbors(adj[v]):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def girth(g: LabeledGraph) -> float:
    """Length of a shortest cycle; math.inf for forests."""
    return girth_adj(g.adjacency)

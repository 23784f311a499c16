"""k-uniform hypergraphs with multiset hyperedges.

Vertices carry a fixed total order given by their position in the vertex
tuple.  Every hyperedge is a length-k tuple of vertex labels stored in
nondecreasing vertex order, so two edges are equal exactly when they are
equal as multisets.  Hypergraphs are immutable; constructors canonicalise
their input and reject duplicate edges.

An optional partition marks the hypergraph as k-partite: the blocks are
pairwise disjoint, cover the vertex set, and every edge meets each block
exactly once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

import networkx as nx

__all__ = [
    "Hypergraph",
    "complete_hypergraph",
    "complete_partite",
    "induced_subhypergraph",
    "neighbor_closure",
    "d_valent_extension",
    "erdos_renyi_subgraph",
    "vertex_connectivity",
    "without_edges",
    "edge_minus",
    "edge_support",
    "edge_multiplicity",
    "from_json_dict",
    "to_json_dict",
    "load_hypergraph",
    "dump_hypergraph",
]

Vertex = Hashable
Edge = tuple


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph with multiset edges."""

    k: int
    vertices: tuple
    edges: tuple
    partition: tuple | None = None
    _index: Mapping = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"uniformity must be at least 1, got k={self.k}")
        vertices = tuple(self.vertices)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertex labels")
        edges = []
        for e in self.edges:
            e = tuple(e)
            if len(e) != self.k:
                raise ValueError(
                    f"edge {e!r} has {len(e)} entries, expected k={self.k}"
                )
            for v in e:
                if v not in index:
                    raise ValueError(f"edge {e!r} uses unknown vertex {v!r}")
            edges.append(tuple(sorted(e, key=index.__getitem__)))
        edges.sort(key=lambda e: tuple(index[v] for v in e))
        for a, b in zip(edges, edges[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a!r}")
        partition = self.partition
        if partition is not None:
            partition = tuple(tuple(block) for block in partition)
            if len(partition) != self.k:
                raise ValueError(
                    f"partition has {len(partition)} blocks, expected k={self.k}"
                )
            seen: set = set()
            for block in partition:
                for v in block:
                    if v not in index:
                        raise ValueError(f"partition uses unknown vertex {v!r}")
                    if v in seen:
                        raise ValueError(f"partition blocks overlap at {v!r}")
                    seen.add(v)
            if len(seen) != len(vertices):
                raise ValueError("partition does not cover the vertex set")
            block_of = {v: i for i, block in enumerate(partition) for v in block}
            for e in edges:
                hits = sorted(block_of[v] for v in e)
                if hits != list(range(self.k)):
                    raise ValueError(
                        f"edge {e!r} does not meet every block exactly once"
                    )
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "partition", partition)
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v: Vertex) -> int:
        return self._index[v]

    def sort_edge(self, entries: Iterable[Vertex]) -> Edge:
        """Arrange labels into canonical (vertex-order) form."""
        return tuple(sorted(entries, key=self._index.__getitem__))

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._index

    def is_simple(self) -> bool:
        return all(len(set(e)) == self.k for e in self.edges)


def edge_minus(edge: Edge, v: Vertex) -> Edge:
    """Remove one occurrence of v; order of the rest is preserved."""
    i = edge.index(v)
    return edge[:i] + edge[i + 1:]


def edge_support(edge: Edge) -> frozenset:
    return frozenset(edge)


def edge_multiplicity(edge: Edge, v: Vertex) -> int:
    return edge.count(v)


def complete_hypergraph(n: int, k: int, simple: bool = False) -> Hypergraph:
    """All multisets (or k-subsets when simple) of [n] as edges.

    Vertices are labelled 1..n.
    """
    if n < 1:
        raise ValueError(f"need at least one vertex, got n={n}")
    vertices = tuple(range(1, n + 1))
    picker = combinations if simple else combinations_with_replacement
    if simple and k > n:
        raise ValueError(f"no simple k-edges on n={n} vertices for k={k}")
    edges = tuple(picker(vertices, k))
    return Hypergraph(k, vertices, edges)


def complete_partite(sizes: Sequence[int]) -> Hypergraph:
    """Complete k-partite hypergraph with the given block sizes.

    Vertices are labelled 1..sum(sizes), blocks are consecutive runs, and
    the edges are all transversals picking one vertex per block.
    """
    k = len(sizes)
    if k < 1 or any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive, got {list(sizes)!r}")
    vertices = tuple(range(1, sum(sizes) + 1))
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(vertices[start:start + s])
        start += s
    edges = [()]
    for block in blocks:
        edges = [e + (v,) for e in edges for v in block]
    return Hypergraph(k, vertices, tuple(edges), partition=tuple(blocks))


def induced_subhypergraph(G: Hypergraph, X: Iterable[Vertex]) -> Hypergraph:
    """Restrict to the vertices of X and the edges supported inside X."""
    Xset = set(X)
    for v in Xset:
        if not G.has_vertex(v):
            raise ValueError(f"vertex {v!r} is not in the hypergraph")
    vertices = tuple(v for v in G.vertices if v in Xset)
    edges = tuple(e for e in G.edges if all(v in Xset for v in e))
    return Hypergraph(G.k, vertices, edges)


def neighbor_closure(G: Hypergraph, edges: Iterable[Edge]) -> tuple:
    """Edges of G reachable from the given set by one vertex swap.

    A swap removes one occurrence of a vertex u of e and inserts any
    vertex of G; only results that are edges of G are kept.  Swapping a
    vertex with itself is allowed, so the input set is contained in its
    closure.
    """
    edge_set = set(G.edges)
    out = set()
    for e in edges:
        canonical = G.sort_edge(e)
        if canonical not in edge_set:
            raise ValueError(f"edge {tuple(e)!r} is not an edge of the hypergraph")
        for u in set(canonical):
            trimmed = edge_minus(canonical, u)
            for v in G.vertices:
                swapped = G.sort_edge(trimmed + (v,))
                if swapped in edge_set:
                    out.add(swapped)
    return tuple(e for e in G.edges if e in out)


def without_edges(G: Hypergraph, drop: Iterable[Edge]) -> Hypergraph:
    """Same vertex set, with the listed edges removed."""
    gone = {G.sort_edge(e) for e in drop}
    missing = gone.difference(G.edges)
    if missing:
        raise ValueError(f"edge {sorted(missing)[0]!r} is not an edge of the hypergraph")
    return Hypergraph(G.k, G.vertices, tuple(e for e in G.edges if e not in gone),
                      partition=G.partition)


def d_valent_extension(
    G: Hypergraph,
    new_vertex: Vertex,
    new_edges: Iterable[Edge],
    simple_required: bool = False,
) -> Hypergraph:
    """Append a vertex together with new edges, all containing it.

    The new vertex becomes the last element in the vertex order.  Any
    partition structure is dropped because the new vertex has no block.
    """
    if G.has_vertex(new_vertex):
        raise ValueError(f"vertex {new_vertex!r} already present")
    vertices = G.vertices + (new_vertex,)
    index = {v: i for i, v in enumerate(vertices)}
    canonical = []
    for e in new_edges:
        e = tuple(e)
        if len(e) != G.k:
            raise ValueError(f"edge {e!r} has {len(e)} entries, expected k={G.k}")
        if new_vertex not in e:
            raise ValueError(f"new edge {e!r} does not contain {new_vertex!r}")
        for v in e:
            if v not in index:
                raise ValueError(f"edge {e!r} uses unknown vertex {v!r}")
        if simple_required and len(set(e)) != G.k:
            raise ValueError(f"edge {e!r} repeats a vertex but simple edges were required")
        canonical.append(tuple(sorted(e, key=index.__getitem__)))
    if len(set(canonical)) != len(canonical):
        raise ValueError("new edges contain a duplicate")
    return Hypergraph(G.k, vertices, G.edges + tuple(canonical))


def _mix64(x: int) -> int:
    # splitmix64 finaliser; a counter-indexed hash, not a stateful stream.
    mask = (1 << 64) - 1
    x = (x + 0x9E3779B97F4A7C15) & mask
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
    return x ^ (x >> 31)


def counter_hash(seed: int, *indices: int) -> int:
    """Deterministic 64-bit hash of a seed and a tuple of counters."""
    x = _mix64(seed & ((1 << 64) - 1))
    for i in indices:
        x = _mix64(x ^ _mix64(i & ((1 << 64) - 1)))
    return x


def erdos_renyi_subgraph(G: Hypergraph, t: float, seed: int = 0) -> Hypergraph:
    """Keep each edge independently with probability t.

    The decision for an edge depends only on the seed and the edge's
    position in the canonical edge order, so for a fixed seed the kept
    sets are nested as t grows.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"keep probability must lie in [0, 1], got {t}")
    kept = tuple(
        e for i, e in enumerate(G.edges)
        if counter_hash(seed, i) < t * 2.0 ** 64
    )
    return Hypergraph(G.k, G.vertices, kept, partition=G.partition)


def vertex_connectivity(G: Hypergraph) -> int:
    """Vertex connectivity of the 2-section (clique per edge support)."""
    if G.n < 2:
        raise ValueError("vertex connectivity needs at least two vertices")
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    for e in G.edges:
        for u, v in combinations(sorted(set(e), key=G.vertex_index), 2):
            H.add_edge(u, v)
    return nx.node_connectivity(H)


def to_json_dict(G: Hypergraph) -> dict:
    doc = {
        "k": G.k,
        "vertices": [str(v) for v in G.vertices],
        "edges": [[str(v) for v in e] for e in G.edges],
    }
    if G.partition is not None:
        doc["partition"] = [[str(v) for v in block] for block in G.partition]
    return doc


def from_json_dict(doc: Mapping) -> Hypergraph:
    try:
        k = int(doc["k"])
        vertices = tuple(str(v) for v in doc["vertices"])
        edges = tuple(tuple(str(v) for v in e) for e in doc["edges"])
        partition = doc.get("partition")
        if partition is not None:
            partition = tuple(tuple(str(v) for v in block) for block in partition)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed hypergraph JSON: {exc}") from exc
    return Hypergraph(k, vertices, edges, partition=partition)


def load_hypergraph(path: str | Path) -> Hypergraph:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed hypergraph JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("malformed hypergraph JSON: top level must be an object")
    return from_json_dict(doc)


def dump_hypergraph(G: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_json_dict(G), indent=2) + "\n")

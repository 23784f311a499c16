"""Count sparsity, pebble games, and tree packings.

A hypergraph is (a, b)-sparse when every nonempty edge subset F satisfies
|F| <= a|V(F)| - b over its support.  For 0 <= b <= a*k - 1 the sparse
sets form a matroid and ranks are computed by a pebble game: every vertex
holds a pebbles, inserting an edge requires gathering b+1 pebbles on its
support, and one pebble is consumed to orient the edge away from its
tail.

Beyond that range (b >= a*k on graphs, such as the (3, 6) counts used for
three-dimensional frameworks) no matroid exists.  For simple graphs the
module falls back to explicit subgraph counting with the conventional
vertex floor: only supports with at least ceil((b+1)/a) vertices are
counted.  Ranks in this regime are greedy accumulations in canonical edge
order; unlike the matroidal regime they are maximal, not necessarily
maximum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import matroidunion
from .forms import MeasurementModel
from .hypergraph import Hypergraph, vertex_connectivity, without_edges

__all__ = [
    "is_sparse",
    "is_tight",
    "sparsity_rank",
    "expected_rank_bound",
    "geiringer_laman_rigid",
    "spanning_tree_packing",
    "LpPlaneReport",
    "lp_plane_global_condition",
]

_SUBGRAPH_LIMIT = 16


def _regime(G: Hypergraph, a: int, b: int) -> str:
    if a < 1:
        raise ValueError(f"count coefficient a must be positive, got {a}")
    if b < 0:
        raise ValueError(f"count offset b must be nonnegative, got {b}")
    if b <= a * G.k - 1:
        return "matroidal"
    if G.k == 2 and G.is_simple():
        if G.n > _SUBGRAPH_LIMIT:
            raise ValueError(
                f"subgraph-count regime is exponential in |V|; supported up to "
                f"{_SUBGRAPH_LIMIT} vertices, got {G.n}"
            )
        return "subgraph_counts"
    raise ValueError(
        f"counts (a={a}, b={b}) lie outside the matroidal range b <= a*k-1 "
        "and the subgraph-count fallback applies only to simple graphs"
    )


class _PebbleGame:
    """Pebble game for the (a, b)-sparsity matroid on k-uniform hypergraphs."""

    def __init__(self, vertices, a: int, b: int):
        self.a = a
        self.b = b
        self.order = {v: i for i, v in enumerate(vertices)}
        self.pebbles = {v: a for v in vertices}
        self.out: dict = {v: [] for v in vertices}  # edge ids with this tail
        self.support: list = []
        self.tail: list = []

    def insert(self, edge) -> bool:
        supp = sorted(set(edge), key=self.order.__getitem__)
        while sum(self.pebbles[v] for v in supp) < self.b + 1:
            if not self._retrieve(supp):
                return False
        tail = next(v for v in supp if self.pebbles[v] > 0)
        self.pebbles[tail] -= 1
        eid = len(self.support)
        self.support.append(tuple(supp))
        self.tail.append(tail)
        self.out[tail].append(eid)
        return True

    def _retrieve(self, supp) -> bool:
        # Shortest alternating search for a pebble outside supp; on success
        # the path is reversed and one pebble lands on the support.
        seen = set(supp)
        parent: dict = {}
        queue = deque(supp)
        while queue:
            u = queue.popleft()
            for eid in self.out[u]:
                for w in self.support[eid]:
                    if w in seen:
                        continue
                    seen.add(w)
                    parent[w] = (u, eid)
                    if self.pebbles[w] > 0:
                        self.pebbles[w] -= 1
                        node = w
                        while node in parent:
                            prev, peid = parent[node]
                            self.out[prev].remove(peid)
                            self.out[node].append(peid)
                            self.tail[peid] = node
                            node = prev
                        self.pebbles[node] += 1
                        return True
                    queue.append(w)
        return False


def _edge_bitmasks(G: Hypergraph) -> list[int]:
    masks = []
    for e in G.edges:
        m = 0
        for v in set(e):
            m |= 1 << G.vertex_index(v)
        masks.append(m)
    return masks


def _counts_ok(edge_masks: list[int], n: int, a: int, b: int, floor: int) -> bool:
    for W in range(1, 1 << n):
        size = W.bit_count()
        if size < floor:
            continue
        inside = sum(1 for m in edge_masks if m and m & ~W == 0)
        if inside > a * size - b:
            return False
    return True


def _count_floor(a: int, b: int) -> int:
    # Smallest support size whose count bound is at least 1.
    return -(-(b + 1) // a)


def is_sparse(G: Hypergraph, a: int, b: int) -> bool:
    regime = _regime(G, a, b)
    if regime == "matroidal":
        game = _PebbleGame(G.vertices, a, b)
        return all(game.insert(e) for e in G.edges)
    return _counts_ok(_edge_bitmasks(G), G.n, a, b, _count_floor(a, b))


def is_tight(G: Hypergraph, a: int, b: int) -> bool:
    return is_sparse(G, a, b) and len(G.edges) == a * G.n - b


def sparsity_rank(G: Hypergraph, a: int, b: int) -> int:
    regime = _regime(G, a, b)
    if regime == "matroidal":
        game = _PebbleGame(G.vertices, a, b)
        return sum(1 for e in G.edges if game.insert(e))
    floor = _count_floor(a, b)
    masks = _edge_bitmasks(G)
    kept: list[int] = []
    for m in masks:
        if _counts_ok(kept + [m], G.n, a, b, floor):
            kept.append(m)
    return len(kept)


def expected_rank_bound(G: Hypergraph, model: MeasurementModel) -> int:
    """Count-based prediction of the generic measurement rank.

    Uses a = d and b = the stabiliser dimension.  The value bounds the
    true rank from above in the matroidal regime; the classical
    three-dimensional counts on graphs are served by the subgraph-count
    fallback, where the vertex floor must agree with the stabiliser's
    vertex gate for the counts to stay necessary.
    """
    stab = model.stabilizer
    if stab.d_gamma is None or stab.n_gamma is None:
        raise ValueError(
            f"stabiliser dimensions unknown for model {model.key!r}"
        )
    a, b = model.d, stab.d_gamma
    if b <= a * G.k - 1:
        if G.k < stab.n_gamma:
            raise ValueError(
                f"count bound needs k >= n_gamma ({stab.n_gamma}), got k={G.k}"
            )
        return sparsity_rank(G, a, b)
    if G.k == 2 and G.is_simple() and _count_floor(a, b) == stab.n_gamma:
        return sparsity_rank(G, a, b)
    raise ValueError(
        f"count hypotheses fail for model {model.key!r}: need b <= a*k-1 "
        "with k >= n_gamma, or the simple-graph fallback with matching vertex floor"
    )


def geiringer_laman_rigid(G: Hypergraph) -> bool:
    """Tight-subgraph characterisation of planar generic rigidity.

    True when the (2, 3)-sparsity rank reaches 2|V| - 3, i.e. the graph
    contains a spanning (2, 3)-tight subgraph.
    """
    if G.k != 2:
        raise ValueError(f"planar rigidity counts apply to graphs, got k={G.k}")
    if not G.is_simple():
        raise ValueError("planar rigidity counts apply to simple graphs")
    return sparsity_rank(G, 2, 3) == 2 * G.n - 3


def _forest_oracle(items: tuple) -> bool:
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for u, v in items:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def spanning_tree_packing(G: Hypergraph, t: int, return_forests: bool = False):
    """Whether the edges contain t edge-disjoint spanning trees.

    Computed by matroid union over t copies of the graphic matroid; the
    packing exists exactly when the union rank reaches t * (|V| - 1).
    """
    if G.k != 2:
        raise ValueError(f"tree packings apply to graphs, got k={G.k}")
    if not G.is_simple():
        raise ValueError("tree packings apply to simple graphs")
    if t < 1:
        raise ValueError(f"need at least one tree, got t={t}")
    parts, _ = matroidunion.partition_into_independent(G.edges, t, _forest_oracle)
    packs = sum(len(p) for p in parts) == t * (G.n - 1)
    if return_forests:
        return packs, tuple(tuple(p) for p in parts) if packs else None
    return packs


@dataclass(frozen=True)
class LpPlaneReport:
    holds: bool
    two_connected: bool
    packing_after_each_deletion: bool
    failing_edge: Optional[tuple]


def lp_plane_global_condition(G: Hypergraph) -> LpPlaneReport:
    """Combinatorial global rigidity condition for even-power planar norms.

    The condition: G is 2-connected and G - e contains two edge-disjoint
    spanning trees for every edge e.  Requires a simple connected graph on
    at least three vertices.
    """
    if G.k != 2:
        raise ValueError(f"the planar condition applies to graphs, got k={G.k}")
    if not G.is_simple():
        raise ValueError("the planar condition applies to simple graphs")
    if G.n < 3:
        raise ValueError(f"the planar condition needs at least 3 vertices, got {G.n}")
    two_connected = vertex_connectivity(G) >= 2
    if not two_connected:
        return LpPlaneReport(False, False, False, None)
    for e in G.edges:
        if not spanning_tree_packing(without_edges(G, [e]), 2):
            return LpPlaneReport(False, True, False, e)
    return LpPlaneReport(True, True, True, None)

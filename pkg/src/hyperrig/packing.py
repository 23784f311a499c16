"""Rigidity of sums of copies via packed vertex families.

For a model that is the sum of t coordinate copies of a base form h, local
rigidity of a hypergraph follows from a family X_1, ..., X_t of vertex
sets such that, writing F_i for the neighbourhood closure of the edges
induced by X_i:

  P1  the hypergraph (V, F_i) is locally h-rigid,
  P2  the induced hypergraph G[X_i] is locally h-rigid,
  P3  for i != j, no edge e in F_i has a vertex v with the support of
      e - v contained inside X_j.

Rejection of P3 always carries a concrete witness (i, e, v) that can be
re-checked by hand.  The packing criterion is sufficient only; a rejected
family never demonstrates flexibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .exactla import PRIME_FIELD, FieldConfig
from .forms import MeasurementModel, sum_of_copies
from .hypergraph import (
    Hypergraph,
    complete_hypergraph,
    edge_minus,
    induced_subhypergraph,
    neighbor_closure,
)
from .rigidity import is_locally_rigid

__all__ = [
    "PackingReport",
    "verify_packing",
    "greedy_sparse_family",
    "packing_number_lower_bound",
    "CorollaryReport",
    "corollary_check",
    "power_pair_hypergraph",
]


@dataclass(frozen=True)
class PackingReport:
    accepted: bool
    failing_condition: Optional[str]
    witness: Optional[dict]
    per_set: tuple


def verify_packing(
    G: Hypergraph,
    model: MeasurementModel,
    family: Sequence,
    probes: int = 3,
    field: FieldConfig = PRIME_FIELD,
    seed: int = 0,
) -> PackingReport:
    """Check the packing conditions P1, P2, P3 for the given family.

    The family must have one vertex set per copy of the base form.  An
    accepted report certifies generic local rigidity of G for the sum
    model; a rejected report only means this particular family fails.
    """
    if model.copies is None:
        raise ValueError(f"model {model.key!r} is not a sum of copies")
    base, t = model.copies
    if len(family) != t:
        raise ValueError(
            f"family has {len(family)} sets but the model sums {t} copies"
        )
    n_gamma = base.stabilizer.n_gamma
    if n_gamma is None:
        raise ValueError(f"base form {base.key!r} has unknown stabiliser data")
    sets = []
    for X in family:
        X = list(dict.fromkeys(X))
        for v in X:
            if not G.has_vertex(v):
                raise ValueError(f"family vertex {v!r} is not in the hypergraph")
        if len(X) < n_gamma:
            raise ValueError(
                f"family set {X!r} has fewer than n_gamma={n_gamma} vertices"
            )
        sets.append(tuple(X))

    per_set = []
    closures = []
    for i, X in enumerate(sets):
        Xset = set(X)
        induced_edges = tuple(e for e in G.edges if set(e) <= Xset)
        F_i = neighbor_closure(G, induced_edges)
        closures.append(F_i)
        cover = is_locally_rigid(
            Hypergraph(G.k, G.vertices, F_i), base,
            probes=probes, field=field, seed=seed,
        )
        inner = is_locally_rigid(
            induced_subhypergraph(G, X), base,
            probes=probes, field=field, seed=seed,
        )
        per_set.append({
            "set": X,
            "induced_edge_count": len(induced_edges),
            "closure_size": len(F_i),
            "cover_verdict": cover.verdict,
            "induced_verdict": inner.verdict,
        })
        if not cover.rigid:
            return PackingReport(False, "P1", {"set_index": i, "verdict": cover.verdict},
                                 tuple(per_set))
        if not inner.rigid:
            return PackingReport(False, "P2", {"set_index": i, "verdict": inner.verdict},
                                 tuple(per_set))

    for i in range(t):
        for j in range(t):
            if i == j:
                continue
            Xj = set(sets[j])
            for e in closures[i]:
                for v in set(e):
                    if set(edge_minus(e, v)) <= Xj:
                        return PackingReport(
                            False, "P3",
                            {"set_index": i, "other_index": j, "edge": e, "vertex": v},
                            tuple(per_set),
                        )
    return PackingReport(True, None, None, tuple(per_set))


def greedy_sparse_family(n: int, size: int, overlap: int) -> tuple:
    """Greedy family of size-subsets of 1..n with pairwise overlap < overlap.

    Subsets are scanned in lexicographic order, so the family is
    deterministic; its cardinality is a lower bound for the maximum.
    """
    if size < 1 or size > n:
        raise ValueError(f"subset size {size} must lie in 1..{n}")
    if overlap < 0:
        raise ValueError(f"overlap bound must be nonnegative, got {overlap}")
    chosen: list = []
    for cand in combinations(range(1, n + 1), size):
        cset = set(cand)
        if all(len(cset & set(other)) < overlap for other in chosen):
            chosen.append(cand)
    return tuple(chosen)


def packing_number_lower_bound(n: int, size: int, overlap: int) -> int:
    return len(greedy_sparse_family(n, size, overlap))


@dataclass(frozen=True)
class CorollaryReport:
    applies: bool
    t_max: int
    family: tuple
    base_rigid: Optional[bool]
    reason: str


def corollary_check(
    n: int,
    k: int,
    model: MeasurementModel,
    a: int,
    probes: int = 3,
    field: FieldConfig = PRIME_FIELD,
    seed: int = 0,
) -> CorollaryReport:
    """Complete-hypergraph corollary of the packing criterion.

    If the simple complete hypergraph on a vertices is locally rigid for
    the base form, a >= n_gamma + 1, and n, k >= 3, then the simple
    complete hypergraph on n vertices is locally rigid for any sum of up
    to t_max copies, where t_max is the size of a greedy family of
    a-subsets with pairwise overlap below k - 2.  A sum-of-copies model
    additionally has its own copy count checked against t_max; a base
    form alone only yields the bound.  When the hypotheses fail the
    corollary simply does not apply; that is never evidence against
    rigidity.
    """
    if k < 3:
        raise ValueError(f"the corollary needs k >= 3, got k={k}")
    if n < 3:
        return CorollaryReport(False, 0, (), None,
                               f"hypotheses need n >= 3, got n={n}")
    if model.copies is not None:
        base, t = model.copies
    else:
        base, t = model, None
    if base.k != k:
        raise ValueError(f"base form arity k={base.k} does not match k={k}")
    n_gamma = base.stabilizer.n_gamma
    if n_gamma is None:
        raise ValueError(f"base form {base.key!r} has unknown stabiliser data")
    if a < n_gamma + 1:
        return CorollaryReport(False, 0, (), None,
                               f"need a >= n_gamma + 1 = {n_gamma + 1}, got a={a}")
    if a > n:
        return CorollaryReport(False, 0, (), None,
                               f"subset size a={a} exceeds n={n}")
    if a < k:
        return CorollaryReport(
            False, 0, (), False,
            f"the simple complete hypergraph on a={a} vertices has no "
            f"{k}-edges, so it cannot be locally rigid",
        )
    base_report = is_locally_rigid(
        complete_hypergraph(a, k, simple=True), base,
        probes=probes, field=field, seed=seed,
    )
    if not base_report.rigid:
        return CorollaryReport(
            False, 0, (), False,
            f"the simple complete hypergraph on a={a} vertices is not locally "
            f"rigid for {base.key!r} (verdict {base_report.verdict}); "
            "the corollary does not apply",
        )
    family = greedy_sparse_family(n, a, k - 2)
    t_max = len(family)
    if t is not None and t > t_max:
        return CorollaryReport(
            False, t_max, family, True,
            f"the model sums t={t} copies but the greedy packing bound is "
            f"{t_max}; the certificate could not be constructed",
        )
    return CorollaryReport(
        True, t_max, family, True,
        f"sums of up to {t_max} copies are locally rigid on the simple "
        f"complete hypergraph with n={n}",
    )


def power_pair_hypergraph(n: int, k: int) -> Hypergraph:
    """Edges v^(k-1) w for all vertex pairs v, w of 1..n, including v = w.

    A thin witness family for the packing criterion: the first d singleton
    sets certify rigidity for sums of d <= n copies of the coordinate
    product.
    """
    if n < 1 or k < 2:
        raise ValueError(f"need n >= 1 and k >= 2, got n={n}, k={k}")
    vertices = tuple(range(1, n + 1))
    edges = {tuple(sorted((v,) * (k - 1) + (w,))) for v in vertices for w in vertices}
    return Hypergraph(k, vertices, tuple(sorted(edges)))

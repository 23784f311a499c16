"""Measurement maps, Jacobians, and generic local rigidity.

The measurement of a hypergraph evaluates the model's polynomial on every
edge, arguments listed in increasing vertex order.  Its Jacobian at a
configuration p has one row per edge and a width-d column block per
vertex.  For a multiaffine model the block of edge e at vertex v is

    c(e, v) * grad(p(e - v))

where grad is the first-slot gradient of the form at the remaining
arguments in vertex order, and c(e, v) counts the occurrences of v in e,
with alternating signs for anti-symmetric forms.  Distance-type models
(euclidean, pseudo-euclidean, even-power lp) contribute their two blocks
directly from coordinate differences.

Generic ranks are certified lower bounds obtained from random
specialisations; see exactla.probe_rank_with_confidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping, Optional, Sequence

from . import matroidunion
from .exactla import (
    PRIME_FIELD,
    ExactMatrix,
    FieldConfig,
    GenericPoint,
    ProbeReport,
    counter_hash,
    probe_rank_with_confidence,
    rank,
    sample_generic_point,
)
from .forms import MeasurementModel, StabilizerInfo, evaluate, gradient
from .hypergraph import Hypergraph, complete_hypergraph, d_valent_extension, edge_minus

__all__ = [
    "coefficient",
    "measurement",
    "jacobian",
    "generic_rank",
    "generic_rank_report",
    "RigidityReport",
    "is_locally_rigid",
    "MatroidOracle",
    "matroid_independent",
    "matroid_rank",
    "find_circuit",
    "decompose_independent",
    "is_stable_vertex",
    "ExtensionReport",
    "check_extension",
    "OracleAnswer",
    "secant_dimension_oracle",
    "GlobalOracleAnswer",
    "complete_global_rigidity_oracle",
]


def coefficient(model: MeasurementModel, edge: tuple, v) -> int:
    """Multiplicity of v in the edge, signed for anti-symmetric forms.

    For an anti-symmetric form the occurrences of v in the ordered edge
    alternate in sign, so consecutive repeats cancel; a multiset edge can
    therefore contribute a zero block even at a vertex it contains.
    """
    if not model.antisymmetric:
        return edge.count(v)
    return sum((-1) ** i for i, u in enumerate(edge) if u == v)


def _coord_map(G: Hypergraph, p) -> dict:
    if isinstance(p, GenericPoint):
        table = dict(zip(p.labels, p.coords))
    elif isinstance(p, Mapping):
        table = dict(p)
    else:
        raise TypeError("configuration must be a GenericPoint or a mapping")
    missing = [v for v in G.vertices if v not in table]
    if missing:
        raise ValueError(f"configuration has no coordinates for vertex {missing[0]!r}")
    return table


def _check_arity(G: Hypergraph, model: MeasurementModel) -> None:
    if G.k != model.k:
        raise ValueError(
            f"model arity k={model.k} does not match hypergraph uniformity k={G.k}"
        )


def _field_of(p, field: Optional[FieldConfig]) -> FieldConfig:
    if field is not None:
        return field
    if isinstance(p, GenericPoint):
        return p.field
    raise ValueError("a field must be given when the configuration is a plain mapping")


def measurement(
    G: Hypergraph, model: MeasurementModel, p, field: Optional[FieldConfig] = None
) -> tuple:
    """Value of the measurement map at p, one entry per edge."""
    _check_arity(G, model)
    fld = _field_of(p, field)
    table = _coord_map(G, p)
    return tuple(
        fld.element(evaluate(model, [table[v] for v in e])) for e in G.edges
    )


def jacobian(
    G: Hypergraph, model: MeasurementModel, p, field: Optional[FieldConfig] = None
) -> ExactMatrix:
    """Jacobian of the measurement map at p.

    Rows follow the canonical edge order; columns come in width-d blocks,
    one per vertex in vertex order.
    """
    _check_arity(G, model)
    fld = _field_of(p, field)
    table = _coord_map(G, p)
    d = model.d
    width = d * G.n
    rows = []
    if model.multiaffine:
        for e in G.edges:
            row = [0] * width
            for v in set(e):
                c = coefficient(model, e, v)
                if c == 0:
                    continue
                grad = gradient(model, [table[u] for u in edge_minus(e, v)])
                base = G.vertex_index(v) * d
                for j, gval in enumerate(grad):
                    row[base + j] = c * gval
            rows.append(row)
    elif model.name in ("euclidean", "pseudo_euclidean", "lp"):
        params = dict(model.params)
        exponent = params["p"] - 1 if model.name == "lp" else 1
        signs = None
        if model.name == "pseudo_euclidean":
            signs = tuple(1 if ch == "+" else -1 for ch in params["signature"])
        for e in G.edges:
            u, v = e
            row = [0] * width
            xu, xv = table[u], table[v]
            for c in range(d):
                diff = xu[c] - xv[c]
                val = diff ** exponent
                if signs is not None:
                    val *= signs[c]
                # += so that loop edges cancel to a zero row
                row[G.vertex_index(u) * d + c] += val
                row[G.vertex_index(v) * d + c] -= val
            rows.append(row)
    else:
        raise ValueError(f"no Jacobian assembly for model {model.name!r}")
    return ExactMatrix.from_rows(fld, rows, ncols=width)


def generic_rank_report(
    G: Hypergraph,
    model: MeasurementModel,
    probes: int = 3,
    field: FieldConfig = PRIME_FIELD,
    seed: int = 0,
) -> ProbeReport:
    _check_arity(G, model)

    def build(fld: FieldConfig, probe_seed: int) -> ExactMatrix:
        p = sample_generic_point(G, model.d, fld, probe_seed)
        return jacobian(G, model, p)

    return probe_rank_with_confidence(build, probes=probes, fields=(field,), seed=seed)


def generic_rank(
    G: Hypergraph,
    model: MeasurementModel,
    probes: int = 3,
    field: FieldConfig = PRIME_FIELD,
    seed: int = 0,
) -> int:
    return generic_rank_report(G, model, probes=probes, field=field, seed=seed).rank


@dataclass(frozen=True)
class RigidityReport:
    verdict: str  # "locally_rigid" | "flexible" | "below_n_gamma"
    rank: int
    target_rank: Optional[int]
    dof: Optional[int]
    d_gamma: Optional[int]
    n_gamma: Optional[int]
    partite: bool
    probes: ProbeReport

    @property
    def rigid(self) -> bool:
        return self.verdict == "locally_rigid"


def is_locally_rigid(
    G: Hypergraph,
    model: MeasurementModel,
    probes: int = 3,
    field: FieldConfig = PRIME_FIELD,
    seed: int = 0,
    stabilizer: Optional[StabilizerInfo] = None,
) -> RigidityReport:
    """Generic local rigidity via the rank criterion.

    On a k-partite hypergraph with partite stabiliser data the larger
    partite stabiliser applies; the vertex-count gate then reads blockwise.
    Below the gate the rank formula is not available and the verdict is
    "below_n_gamma" rather than a rigidity claim.
    """
    stab = stabilizer if stabilizer is not None else model.stabilizer
    partite = G.partition is not None and stab.d_gamma_partite is not None
    if partite:
        d_gamma = stab.d_gamma_partite
        n_gamma = stab.n_gamma_partite
        gate_ok = all(len(block) >= n_gamma for block in G.partition)
    else:
        d_gamma = stab.d_gamma
        n_gamma = stab.n_gamma
        if d_gamma is None or n_gamma is None:
            raise ValueError(
                f"stabiliser dimensions unknown for model {model.key!r}; "
                "pass stabilizer= with explicit values or estimate them first"
            )
        gate_ok = G.n >= n_gamma
    report = generic_rank_report(G, model, probes=probes, field=field, seed=seed)
    target = model.d * G.n - d_gamma
    if not gate_ok:
        return RigidityReport("below_n_gamma", report.rank, None, None,
                              d_gamma, n_gamma, partite, report)
    verdict = "locally_rigid" if report.rank == target else "flexible"
    return RigidityReport(verdict, report.rank, target, target - report.rank,
                          d_gamma, n_gamma, partite, report)


class MatroidOracle:
    """Generic row matroid of a complete hypergraph's Jacobian.

    Caches one Jacobian row per edge of the complete k-uniform hypergraph
    for each probe, so that rank queries on edge subsets reduce to small
    eliminations.  Ranks are maxima over probes, hence certified lower
    bounds that agree with the generic matroid unless every probe is
    degenerate.
    """

    def __init__(
        self,
        n: int,
        model: MeasurementModel,
        field: FieldConfig = PRIME_FIELD,
        seed: int = 0,
        probes: int = 3,
        simple: bool = False,
    ):
        if probes < 1:
            raise ValueError(f"need at least one probe, got {probes}")
        self.n = n
        self.model = model
        self.field = field
        self.seed = seed
        self.probes = probes
        self.ground = complete_hypergraph(n, model.k, simple=simple)
        self._edge_set = set(self.ground.edges)
        self._tables = []
        for i in range(probes):
            p = sample_generic_point(self.ground, model.d, field, counter_hash(seed, i))
            J = jacobian(self.ground, model, p)
            self._tables.append(dict(zip(self.ground.edges, J.entries)))
        self.full_rank = self.rank_of(self.ground.edges)

    def canonical(self, edges: Sequence) -> list:
        out = []
        for e in edges:
            ce = self.ground.sort_edge(e)
            if ce not in self._edge_set:
                raise ValueError(f"edge {tuple(e)!r} is not in the ground set")
            out.append(ce)
        return out

    def rank_of(self, edges: Sequence) -> int:
        selected = self.canonical(edges)
        if not selected:
            return 0
        cap = min(len(selected), self.model.d * self.n)
        best = 0
        for table in self._tables:
            M = ExactMatrix(self.field, len(selected), self.model.d * self.n,
                            tuple(table[e] for e in selected))
            best = max(best, rank(M))
            if best == cap:
                break
        return best

    def independent(self, edges: Sequence) -> bool:
        edges = list(edges)
        return self.rank_of(edges) == len(edges)


_ORACLE_CACHE: dict = {}


def _oracle(n: int, model: MeasurementModel, field: FieldConfig, seed: int,
            probes: int) -> MatroidOracle:
    key = (n, model, field, seed, probes)
    oracle = _ORACLE_CACHE.get(key)
    if oracle is None:
        oracle = MatroidOracle(n, model, field=field, seed=seed, probes=probes)
        _ORACLE_CACHE[key] = oracle
    return oracle


def matroid_independent(
    n: int, model: MeasurementModel, edges: Sequence,
    field: FieldConfig = PRIME_FIELD, seed: int = 0, probes: int = 3,
) -> bool:
    return _oracle(n, model, field, seed, probes).independent(edges)


def matroid_rank(
    n: int, model: MeasurementModel, edges: Sequence,
    field: FieldConfig = PRIME_FIELD, seed: int = 0, probes: int = 3,
) -> int:
    return _oracle(n, model, field, seed, probes).rank_of(edges)


def find_circuit(
    n: int, model: MeasurementModel, edges: Sequence,
    field: FieldConfig = PRIME_FIELD, seed: int = 0, probes: int = 3,
) -> tuple:
    """A minimal dependent subset of the given dependent edge set."""
    oracle = _oracle(n, model, field, seed, probes)
    current = oracle.canonical(edges)
    if oracle.independent(current):
        raise ValueError("edge set is independent; it contains no circuit")
    for e in list(current):
        trimmed = list(current)
        trimmed.remove(e)
        if not oracle.independent(trimmed):
            current = trimmed
    return tuple(current)


def decompose_independent(
    n: int, model: MeasurementModel, edges: Sequence,
    field: FieldConfig = PRIME_FIELD, seed: int = 0, probes: int = 3,
) -> tuple:
    """Split an independent set into per-copy independent parts.

    For a model that is a sum of t copies of a base form, an independent
    edge set partitions into t sets that are independent for the base
    form.  Failure to complete the partition would contradict that
    decomposition, so it raises RuntimeError rather than returning a
    partial answer.
    """
    if model.copies is None:
        raise ValueError(f"model {model.key!r} is not a sum of copies")
    base, t = model.copies
    oracle = _oracle(n, model, field, seed, probes)
    canonical = oracle.canonical(edges)
    if not oracle.independent(canonical):
        raise ValueError("edge set is dependent; only independent sets decompose")
    base_oracle = _oracle(n, base, field, seed, probes)
    parts, unassigned = matroidunion.partition_into_independent(
        canonical, t, lambda items: base_oracle.independent(items)
    )
    if unassigned:
        raise RuntimeError(
            f"decomposition incomplete: {len(unassigned)} edges unassigned, "
            "contradicting the per-copy decomposition of an independent set"
        )
    return tuple(tuple(part) for part in parts)


def is_stable_vertex(
    G: Hypergraph, model: MeasurementModel, p, v,
    field: Optional[FieldConfig] = None,
) -> bool:
    """Whether the slot gradients at v of its incident edges span F^d."""
    _check_arity(G, model)
    if not model.multiaffine:
        raise ValueError("stability is defined through slot gradients of multiaffine models")
    if not G.has_vertex(v):
        raise ValueError(f"vertex {v!r} is not in the hypergraph")
    fld = _field_of(p, field)
    table = _coord_map(G, p)
    rows = [
        gradient(model, [table[u] for u in edge_minus(e, v)])
        for e in G.edges if v in e
    ]
    M = ExactMatrix.from_rows(fld, rows, ncols=model.d)
    return rank(M) == model.d


@dataclass(frozen=True)
class ExtensionReport:
    preserves_rigidity: bool
    stable_vertex: bool
    valence: int
    required_rank: int
    note: str


def check_extension(
    G: Hypergraph, model: MeasurementModel, new_vertex, new_edges,
    simple_required: bool = False,
    probes: int = 3, field: FieldConfig = PRIME_FIELD, seed: int = 0,
) -> ExtensionReport:
    """Vertex-extension test: the new vertex must be generically stable.

    Adding a vertex with incident edges preserves generic local rigidity
    exactly when the new vertex is stable in the extended hypergraph, so
    the verdict reports stability observed at randomly probed
    configurations.
    """
    H = d_valent_extension(G, new_vertex, new_edges, simple_required=simple_required)
    valence = len(H.edges) - len(G.edges)
    stable = False
    for i in range(probes):
        p = sample_generic_point(H, model.d, field, counter_hash(seed, i))
        if is_stable_vertex(H, model, p, new_vertex):
            stable = True
            break
    note = (
        "new vertex stable: incident slot gradients span the ambient space"
        if stable else
        "incident slot gradients stay in a proper subspace at every probe"
    )
    return ExtensionReport(stable, stable, valence, model.d, note)


@dataclass(frozen=True)
class OracleAnswer:
    rigid: bool
    edge_count: int
    parameter_count: int
    exceptional: bool


# Sporadic defective triples (k, n, d) where the complete measurement rank
# drops below both the edge count and the parameter count.
_DEFECTIVE_LOCAL = {(3, 5, 7), (4, 3, 5), (4, 4, 9), (4, 5, 14)}


def secant_dimension_oracle(k: int, n: int, d: int) -> OracleAnswer:
    """Closed-form local rigidity of the complete hypergraph under d
    copies of the coordinate product.

    The complete measurement is generically rigid exactly when the number
    of edges reaches d*n, apart from four sporadic defective triples.
    Only k >= 3 is covered.
    """
    if k < 3:
        raise ValueError(f"closed-form answer requires k >= 3, got k={k}")
    if n < 1 or d < 1:
        raise ValueError(f"n and d must be positive, got n={n}, d={d}")
    edges = comb(n + k - 1, k)
    exceptional = (k, n, d) in _DEFECTIVE_LOCAL
    rigid = edges >= d * n and not exceptional
    return OracleAnswer(rigid, edges, d * n, exceptional)


@dataclass(frozen=True)
class GlobalOracleAnswer:
    status: str  # "globally_rigid" | "not_globally_rigid" | "out_of_scope"
    globally_rigid: Optional[bool]
    edge_count: int
    parameter_count: int
    reason: str


_GLOBAL_EXCEPTIONS_OVERDETERMINED = {(6, 3, 9), (4, 4, 8), (3, 6, 9)}
_GLOBAL_SPORADIC_SQUARE = {(3, 4, 5), (5, 3, 7)}


def complete_global_rigidity_oracle(k: int, n: int, d: int) -> GlobalOracleAnswer:
    """Closed-form global rigidity of the complete hypergraph under d
    copies of the coordinate product, k >= 3.

    With more edges than parameters, global rigidity holds apart from
    three exceptional triples.  With edge count equal to d*n it holds only
    for two sporadic triples and the family (k, n, d) = (2s-1, 2, s).
    Fewer edges than parameters is out of scope.
    """
    if k < 3:
        raise ValueError(f"closed-form answer requires k >= 3, got k={k}")
    if n < 1 or d < 1:
        raise ValueError(f"n and d must be positive, got n={n}, d={d}")
    edges = comb(n + k - 1, k)
    params = d * n
    if edges < params:
        return GlobalOracleAnswer(
            "out_of_scope", None, edges, params,
            "fewer measurements than parameters; no closed-form answer",
        )
    if edges > params:
        rigid = (k, n, d) not in _GLOBAL_EXCEPTIONS_OVERDETERMINED
        reason = ("exceptional triple" if not rigid
                  else "overdetermined measurement is injective up to stabiliser")
        status = "globally_rigid" if rigid else "not_globally_rigid"
        return GlobalOracleAnswer(status, rigid, edges, params, reason)
    rigid = (k, n, d) in _GLOBAL_SPORADIC_SQUARE or (
        n == 2 and d >= 2 and k == 2 * d - 1
    )
    reason = ("square measurement is injective up to stabiliser" if rigid
              else "square measurement admits a second preimage")
    status = "globally_rigid" if rigid else "not_globally_rigid"
    return GlobalOracleAnswer(status, rigid, edges, params, reason)

"""Stress-kernel certificates of global rigidity.

Every equilibrium stress w of a measurement (a left-kernel vector of the
Jacobian) induces a stress matrix A_w with one row per vertex and one
column per slice, where a slice is a (k-1)-multiset obtained by deleting
one vertex occurrence from an edge.  The entry at (v, sigma) is w(e)
weighted by the multiplicity of v in e = sigma + v (sign-alternating in
the anti-symmetric case), and zero when sigma + v is not an edge.

The certificates implemented here: if some configuration is
infinitesimally rigid and the intersection of the kernels of all stress
matrices has dimension exactly d (the ambient dimension), the framework
is globally rigid up to its stabiliser.  The sum-of-products certificate
additionally needs at least |V| + d slices.  Failure of these conditions
is reported as inconclusive, never as a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .exactla import (
    RATIONAL_FIELD,
    ExactMatrix,
    FieldConfig,
    GenericPoint,
    counter_hash,
    left_kernel_basis,
    rank,
    right_kernel_basis,
    sample_generic_point,
)
from .forms import MeasurementModel, gradient
from .hypergraph import Hypergraph, edge_minus, vertex_connectivity
from .rigidity import ExtensionReport, check_extension, jacobian

__all__ = [
    "slice_set",
    "stress_basis",
    "weighted_adjacency",
    "slice_gradient_matrix",
    "shared_kernel_dim",
    "StressCertificate",
    "certify_global_tensor",
    "certify_global_determinant",
    "ZeroExtensionVerdict",
    "zero_extension_global",
    "ConnectivityReport",
    "connectivity_necessary",
    "GaussMapReport",
    "experimental_gauss_map_rank",
]


def slice_set(G: Hypergraph) -> tuple:
    """All (k-1)-multisets e - v over edges e and vertices v of e."""
    seen = set()
    for e in G.edges:
        for v in set(e):
            seen.add(edge_minus(e, v))
    return tuple(sorted(seen, key=lambda s: tuple(G.vertex_index(v) for v in s)))


def stress_basis(
    G: Hypergraph, model: MeasurementModel, p, field: Optional[FieldConfig] = None
) -> tuple:
    """Basis of equilibrium stresses: the left kernel of the Jacobian."""
    return left_kernel_basis(jacobian(G, model, p, field=field))


def _entry_coefficient(edge: tuple, v, signed: bool) -> int:
    if signed:
        return sum((-1) ** i for i, u in enumerate(edge) if u == v)
    return edge.count(v)


def _weight_table(G: Hypergraph, w) -> dict:
    if isinstance(w, Mapping):
        table = {G.sort_edge(e): value for e, value in w.items()}
        missing = [e for e in G.edges if e not in table]
        if missing:
            raise ValueError(f"weight missing for edge {missing[0]!r}")
        return table
    values = list(w)
    if len(values) != len(G.edges):
        raise ValueError(
            f"got {len(values)} weights for {len(G.edges)} edges"
        )
    return dict(zip(G.edges, values))


def weighted_adjacency(
    G: Hypergraph,
    w,
    signed: bool = False,
    field: FieldConfig = RATIONAL_FIELD,
) -> ExactMatrix:
    """Stress matrix A_w: rows by vertex, columns by slice.

    w is either a mapping from edges to weights or a sequence aligned with
    the canonical edge order.
    """
    table = _weight_table(G, w)
    slices = slice_set(G)
    col = {s: j for j, s in enumerate(slices)}
    rows = [[0] * len(slices) for _ in range(G.n)]
    for e in G.edges:
        weight = table[e]
        for v in set(e):
            c = _entry_coefficient(e, v, signed)
            if c:
                rows[G.vertex_index(v)][col[edge_minus(e, v)]] += c * weight
    return ExactMatrix.from_rows(field, rows, ncols=len(slices))


def slice_gradient_matrix(
    G: Hypergraph, model: MeasurementModel, p, field: Optional[FieldConfig] = None
) -> ExactMatrix:
    """Matrix with one column per slice holding the form's gradient there."""
    from .rigidity import _coord_map, _field_of  # same conventions as jacobian

    if not model.multiaffine:
        raise ValueError("slice gradients require a multiaffine model")
    fld = _field_of(p, field)
    table = _coord_map(G, p)
    slices = slice_set(G)
    cols = [gradient(model, [table[u] for u in s]) for s in slices]
    rows = [[c[i] for c in cols] for i in range(model.d)]
    return ExactMatrix.from_rows(fld, rows, ncols=len(slices))


def shared_kernel_dim(
    G: Hypergraph,
    model: MeasurementModel,
    p,
    field: Optional[FieldConfig] = None,
    signed: Optional[bool] = None,
) -> int:
    """Dimension of the intersection of all stress matrix kernels at p.

    With no stresses at all the intersection is the whole slice space.
    """
    if signed is None:
        signed = model.antisymmetric
    fld = field if field is not None else getattr(p, "field", RATIONAL_FIELD)
    basis = stress_basis(G, model, p, field=fld)
    slices = slice_set(G)
    if not basis:
        return len(slices)
    stacked = []
    for w in basis:
        A = weighted_adjacency(G, dict(zip(G.edges, w)), signed=signed, field=fld)
        stacked.extend(A.entries)
    M = ExactMatrix(fld, len(stacked), len(slices), tuple(stacked))
    return len(slices) - rank(M)


@dataclass(frozen=True)
class StressCertificate:
    certified: bool
    status: str  # "certified" | "inconclusive"
    model_key: str
    vertex_count: int
    slice_count: int
    ambient_dim: int
    infinitesimally_rigid: bool
    rank: int
    target_rank: int
    shared_kernel: Optional[int]
    size_ok: Optional[bool]
    probe_seed: Optional[int]
    note: str


def _certify(
    G: Hypergraph,
    model: MeasurementModel,
    d_gamma: int,
    signed: bool,
    size_ok: Optional[bool],
    probes: int,
    field: FieldConfig,
    seed: int,
) -> StressCertificate:
    slices = slice_set(G)
    target = model.d * G.n - d_gamma
    best = (False, 0, None, None)
    for i in range(probes):
        probe_seed = counter_hash(seed, i)
        p = sample_generic_point(G, model.d, field, probe_seed)
        r = rank(jacobian(G, model, p))
        inf_rigid = r == target
        kernel = None
        if inf_rigid and size_ok is not False:
            kernel = shared_kernel_dim(G, model, p, field=field, signed=signed)
            if kernel == model.d:
                return StressCertificate(
                    True, "certified", model.key, G.n, len(slices), model.d,
                    True, r, target, kernel, size_ok, probe_seed,
                    "infinitesimally rigid configuration with d-dimensional "
                    "shared stress kernel",
                )
        # keep the most informative probe for the inconclusive report
        if inf_rigid or not best[0]:
            best = (inf_rigid, r, kernel, probe_seed)
    inf_rigid, r, kernel, probe_seed = best
    if size_ok is False:
        note = "slice count below |V| + d; certificate cannot apply"
    elif not inf_rigid:
        note = "no probed configuration was infinitesimally rigid"
    else:
        note = (
            f"shared stress kernel has dimension {kernel}, expected {model.d}; "
            "no conclusion about global rigidity"
        )
    return StressCertificate(
        False, "inconclusive", model.key, G.n, len(slices), model.d,
        inf_rigid, r, target, kernel, size_ok, probe_seed, note,
    )


def certify_global_tensor(
    G: Hypergraph,
    model: MeasurementModel,
    probes: int = 3,
    field: FieldConfig = RATIONAL_FIELD,
    seed: int = 0,
) -> StressCertificate:
    """Stress certificate for sums of copies of the coordinate product.

    Certifies global rigidity up to the stabiliser when some configuration
    is infinitesimally rigid, the slice count is at least |V| + d, and the
    shared stress kernel has dimension d.  Inconclusive otherwise.
    """
    if model.name not in ("sym_tensor", "h_prod"):
        raise ValueError(
            f"certificate applies to sums of coordinate products, got {model.key!r}"
        )
    if G.k != model.k:
        raise ValueError(
            f"model arity k={model.k} does not match hypergraph uniformity k={G.k}"
        )
    size_ok = len(slice_set(G)) >= G.n + model.d
    return _certify(G, model, 0, False, size_ok, probes, field, seed)


def certify_global_determinant(
    G: Hypergraph,
    model: MeasurementModel,
    probes: int = 3,
    field: FieldConfig = RATIONAL_FIELD,
    seed: int = 0,
) -> StressCertificate:
    """Stress certificate for a single determinant form.

    Uses the sign-alternating stress matrices.  Certifies global rigidity
    up to the stabiliser when some configuration is infinitesimally rigid
    and the shared signed stress kernel has dimension d = k.
    """
    single_det = model.name == "det" or (
        model.name == "skew_tensor" and model.copies is not None and model.copies[1] == 1
    )
    if not single_det:
        raise ValueError(
            f"certificate applies to a single determinant form, got {model.key!r}"
        )
    if G.k != model.k:
        raise ValueError(
            f"model arity k={model.k} does not match hypergraph uniformity k={G.k}"
        )
    d_gamma = model.stabilizer.d_gamma
    if G.n < model.stabilizer.n_gamma:
        slices = slice_set(G)
        return StressCertificate(
            False, "inconclusive", model.key, G.n, len(slices), model.d,
            False, 0, model.d * G.n - d_gamma, None, None, None,
            f"vertex count {G.n} is below the stabiliser gate {model.stabilizer.n_gamma}",
        )
    return _certify(G, model, d_gamma, True, None, probes, field, seed)


@dataclass(frozen=True)
class ZeroExtensionVerdict:
    certified: bool
    extended: Hypergraph
    extension: ExtensionReport
    note: str


def zero_extension_global(
    G: Hypergraph,
    model: MeasurementModel,
    new_vertex,
    new_edges,
    base_certified: bool,
    probes: int = 3,
    field: FieldConfig = RATIONAL_FIELD,
    seed: int = 0,
) -> ZeroExtensionVerdict:
    """Transfer a global rigidity certificate across a d-valent extension.

    For multilinear models, extending by one vertex with d simple edges
    preserves global rigidity whenever the extension preserves local
    rigidity.  base_certified says whether G itself carries a global
    certificate; the result is certified only when both hold.
    """
    if not model.multilinear:
        raise ValueError("zero-extension transfer requires a multilinear model")
    new_edges = list(new_edges)
    if len(new_edges) != model.d:
        raise ValueError(
            f"extension must add exactly d={model.d} edges, got {len(new_edges)}"
        )
    report = check_extension(
        G, model, new_vertex, new_edges,
        simple_required=True, probes=probes, field=field, seed=seed,
    )
    from .hypergraph import d_valent_extension

    H = d_valent_extension(G, new_vertex, new_edges, simple_required=True)
    certified = bool(base_certified) and report.preserves_rigidity
    if certified:
        note = "local rigidity is preserved, so the global certificate transfers"
    elif not base_certified:
        note = "the base hypergraph carries no certificate to transfer"
    else:
        note = "extension does not preserve local rigidity; nothing transfers"
    return ZeroExtensionVerdict(certified, H, report, note)


@dataclass(frozen=True)
class ConnectivityReport:
    passes: bool
    connectivity: Optional[int]
    required: int
    note: str


def connectivity_necessary(
    G: Hypergraph, model: MeasurementModel, stabilizer=None
) -> ConnectivityReport:
    """Necessary vertex-connectivity bound for local rigidity.

    A locally rigid hypergraph on more than n_gamma vertices must be
    n_gamma-connected.  Failing the bound rules rigidity out; passing it
    certifies nothing.
    """
    stab = stabilizer if stabilizer is not None else model.stabilizer
    if stab.n_gamma is None:
        raise ValueError(f"stabiliser vertex gate unknown for model {model.key!r}")
    required = stab.n_gamma
    if G.n <= required:
        raise ValueError(
            f"connectivity bound needs |V| > n_gamma = {required}, got |V| = {G.n}"
        )
    if required == 0:
        kappa = vertex_connectivity(G) if G.n >= 2 else None
        return ConnectivityReport(True, kappa, 0,
                                  "trivial stabiliser gate; bound is vacuous")
    kappa = vertex_connectivity(G)
    passes = kappa >= required
    note = (
        "necessary condition satisfied; this certifies nothing"
        if passes else
        f"connectivity {kappa} is below {required}; the hypergraph is not locally rigid"
    )
    return ConnectivityReport(passes, kappa, required, note)


@dataclass(frozen=True)
class GaussMapReport:
    rank: int
    max_rank: int
    experimental: bool
    note: str


def experimental_gauss_map_rank(
    G: Hypergraph,
    model: MeasurementModel,
    p,
    w,
    field: Optional[FieldConfig] = None,
) -> GaussMapReport:
    """Rank of the stress Hessian (weighted sum of edge Hessians).

    Experimental probe of measurement-map degeneracy for sums of
    coordinate products.  Carries no certification semantics; low rank
    merely hints at a degenerate tangent image.
    """
    if model.name not in ("sym_tensor", "h_prod"):
        raise ValueError(
            f"the stress Hessian probe applies to sums of coordinate products, "
            f"got {model.key!r}"
        )
    from .rigidity import _coord_map, _field_of

    fld = _field_of(p, field)
    table = _coord_map(G, p)
    weights = _weight_table(G, w)
    d, n = model.d, G.n
    blocks = [[[0] * n for _ in range(n)] for _ in range(d)]
    for e in G.edges:
        weight = weights[e]
        supp = list(set(e))
        for u in supp:
            mu = e.count(u)
            for v in supp:
                mv = e.count(v)
                if u == v:
                    if mu < 2:
                        continue
                    coef = mu * (mu - 1)
                    rest = edge_minus(edge_minus(e, u), u)
                else:
                    coef = mu * mv
                    rest = edge_minus(edge_minus(e, u), v)
                ui, vi = G.vertex_index(u), G.vertex_index(v)
                for c in range(d):
                    prod = 1
                    for x in rest:
                        prod *= table[x][c]
                    blocks[c][ui][vi] += weight * coef * prod
    total = 0
    for c in range(d):
        total += rank(ExactMatrix.from_rows(fld, blocks[c], ncols=n))
    return GaussMapReport(
        total, d * n, True,
        "experimental stress Hessian rank; no certification semantics",
    )

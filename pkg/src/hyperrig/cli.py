"""Command-line interface.

Subcommands cover local rigidity analysis, matroid queries, sparsity
counts, packing certificates, global rigidity certificates, random
subgraph sweeps, and closed-form oracles.  All reports embed the seed,
field, probe count and package version, and identical invocations produce
byte-identical output.

Exit codes: 0 on success, 2 for input problems (unknown model, malformed
JSON, arity mismatches, bad parameters), 1 for internal failures.
"""

from __future__ import annotations

import csv
import functools
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import click

from . import __version__
from .exactla import PRIME_FIELD, RATIONAL_FIELD, FieldConfig, sample_generic_point
from .forms import parse_model
from .globalcert import (
    certify_global_determinant,
    certify_global_tensor,
    connectivity_necessary,
    experimental_gauss_map_rank,
    slice_set,
    stress_basis,
)
from .hypergraph import Hypergraph, load_hypergraph
from .packing import verify_packing
from .randomized import sweep
from .rigidity import (
    complete_global_rigidity_oracle,
    find_circuit,
    is_locally_rigid,
    matroid_rank,
    secant_dimension_oracle,
)
from .sparsity import is_sparse, is_tight, sparsity_rank

_FIELDS = {"prime": PRIME_FIELD, "rational": RATIONAL_FIELD}


def _jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Hypergraph):
        from .hypergraph import to_json_dict

        return to_json_dict(obj)
    return obj


def _emit(doc: dict) -> None:
    click.echo(json.dumps(_jsonable(doc), indent=2, sort_keys=True))


def _meta(field: FieldConfig, seed: int, probes: int | None = None) -> dict:
    meta = {
        "version": __version__,
        "seed": seed,
        "field": {"kind": field.kind, "modulus": field.modulus},
    }
    if probes is not None:
        meta["probes"] = probes
    return meta


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


_graph_option = click.option(
    "--graph", "graph_path", required=True, type=click.Path(exists=True),
    help="Path to a hypergraph JSON file.",
)
_model_option = click.option(
    "--model", "model_desc", required=True,
    help="Model descriptor, e.g. euclidean:d=2 or sym_tensor:d=2,k=3.",
)
_probes_option = click.option("--probes", default=3, show_default=True, type=int)
_seed_option = click.option("--seed", default=0, show_default=True, type=int)


def _field_option(default: str):
    return click.option(
        "--field", "field_name", default=default, show_default=True,
        type=click.Choice(sorted(_FIELDS)),
    )


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--threads", default=1, show_default=True, type=int,
    help="Parallelism capability count; the current engines are single-threaded.",
)
@click.pass_context
def main(ctx: click.Context, threads: int) -> None:
    """Rigidity analysis of k-uniform hyper-frameworks."""
    ctx.ensure_object(dict)
    ctx.obj["threads"] = threads


@main.command()
@_graph_option
@_model_option
@_probes_option
@_field_option("prime")
@_seed_option
@_guard
def analyze(graph_path, model_desc, probes, field_name, seed):
    """Generic local rigidity of a hypergraph under a model."""
    G = load_hypergraph(graph_path)
    model = parse_model(model_desc)
    field = _FIELDS[field_name]
    report = is_locally_rigid(G, model, probes=probes, field=field, seed=seed)
    _emit({
        "command": "analyze",
        "model": model.key,
        "vertex_count": G.n,
        "edge_count": len(G.edges),
        "verdict": report.verdict,
        "rigid": report.rigid,
        "rank": report.rank,
        "target_rank": report.target_rank,
        "dof": report.dof,
        "d_gamma": report.d_gamma,
        "n_gamma": report.n_gamma,
        "partite": report.partite,
        "probe_ranks": [o.rank for o in report.probes.outcomes],
        "meta": _meta(field, seed, probes),
    })


@main.command()
@_graph_option
@_model_option
@click.option(
    "--ambient", default=None, type=int,
    help="Ground-set vertex count; defaults to the graph's vertex count.",
)
@_probes_option
@_field_option("prime")
@_seed_option
@_guard
def matroid(graph_path, model_desc, ambient, probes, field_name, seed):
    """Independence, rank and circuits in the generic measurement matroid."""
    G = load_hypergraph(graph_path)
    model = parse_model(model_desc)
    field = _FIELDS[field_name]
    n = ambient if ambient is not None else G.n
    if n < G.n:
        raise ValueError(f"ambient vertex count {n} is below the graph's {G.n}")
    relabel = {v: i + 1 for i, v in enumerate(G.vertices)}
    back = {i + 1: v for i, v in enumerate(G.vertices)}
    edges = [tuple(relabel[v] for v in e) for e in G.edges]
    rank_val = matroid_rank(n, model, edges, field=field, seed=seed, probes=probes)
    independent = rank_val == len(edges)
    circuit = None
    if not independent:
        circuit = [
            [str(back[v]) for v in e]
            for e in find_circuit(n, model, edges, field=field, seed=seed, probes=probes)
        ]
    _emit({
        "command": "matroid",
        "model": model.key,
        "ambient": n,
        "edge_count": len(edges),
        "rank": rank_val,
        "independent": independent,
        "circuit": circuit,
        "meta": _meta(field, seed, probes),
    })


@main.command()
@_graph_option
@click.option("--a", "a", required=True, type=int, help="Count coefficient.")
@click.option("--b", "b", required=True, type=int, help="Count offset.")
@_guard
def sparsity(graph_path, a, b):
    """Count sparsity and pebble-game rank."""
    G = load_hypergraph(graph_path)
    _emit({
        "command": "sparsity",
        "a": a,
        "b": b,
        "vertex_count": G.n,
        "edge_count": len(G.edges),
        "sparse": is_sparse(G, a, b),
        "rank": sparsity_rank(G, a, b),
        "tight": is_tight(G, a, b),
        "meta": {"version": __version__},
    })


@main.command()
@_graph_option
@_model_option
@click.option(
    "--family", "family_path", required=True, type=click.Path(exists=True),
    help="JSON file holding a list of vertex-label lists.",
)
@_probes_option
@_field_option("prime")
@_seed_option
@_guard
def packing(graph_path, model_desc, family_path, probes, field_name, seed):
    """Packing-family certificate for sums of copies."""
    G = load_hypergraph(graph_path)
    model = parse_model(model_desc)
    field = _FIELDS[field_name]
    try:
        family_doc = json.loads(open(family_path).read())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed family JSON: {exc}") from exc
    if not isinstance(family_doc, list) or not all(
        isinstance(X, list) for X in family_doc
    ):
        raise ValueError("malformed family JSON: expected a list of vertex lists")
    family = [[str(v) for v in X] for X in family_doc]
    report = verify_packing(G, model, family, probes=probes, field=field, seed=seed)
    _emit({
        "command": "packing",
        "model": model.key,
        "accepted": report.accepted,
        "failing_condition": report.failing_condition,
        "witness": report.witness,
        "per_set": report.per_set,
        "meta": _meta(field, seed, probes),
    })


@main.command(name="global")
@_graph_option
@_model_option
@_probes_option
@_field_option("rational")
@_seed_option
@click.option(
    "--gauss-map", is_flag=True,
    help="Also report the experimental stress Hessian rank (no certification).",
)
@_guard
def global_cmd(graph_path, model_desc, probes, field_name, seed, gauss_map):
    """Stress-kernel global rigidity certificate."""
    G = load_hypergraph(graph_path)
    model = parse_model(model_desc)
    field = _FIELDS[field_name]
    if model.name in ("sym_tensor", "h_prod"):
        cert = certify_global_tensor(G, model, probes=probes, field=field, seed=seed)
    elif model.name == "det" or (
        model.name == "skew_tensor" and model.copies and model.copies[1] == 1
    ):
        cert = certify_global_determinant(G, model, probes=probes, field=field, seed=seed)
    else:
        raise ValueError(
            f"no global certificate route for model {model.key!r}; supported: "
            "sums of coordinate products and single determinant forms"
        )
    connectivity = None
    try:
        connectivity = asdict(connectivity_necessary(G, model))
    except ValueError:
        pass
    gauss = None
    if gauss_map:
        p = sample_generic_point(G, model.d, field, seed)
        basis = stress_basis(G, model, p, field=field)
        if basis:
            gauss = asdict(experimental_gauss_map_rank(
                G, model, p, dict(zip(G.edges, basis[0])), field=field
            ))
    _emit({
        "command": "global",
        "model": model.key,
        "certificate": cert,
        "connectivity": connectivity,
        "gauss_map": gauss,
        "slice_count": len(slice_set(G)),
        "meta": _meta(field, seed, probes),
    })


@main.command(name="random")
@click.option("--n", required=True, type=int, help="Part size of the k-partite graph.")
@click.option("--k", required=True, type=int, help="Uniformity.")
@click.option("--d", required=True, type=int, help="Ambient dimension.")
@click.option("--c", default=2.0, show_default=True, type=float,
              help="Constant inside the threshold logarithm.")
@click.option("--t", "t_values", multiple=True, type=float,
              help="Keep probability; repeatable. Defaults to a grid around the threshold.")
@click.option("--trials", default=20, show_default=True, type=int)
@_seed_option
@click.option("--format", "out_format", default="csv", show_default=True,
              type=click.Choice(["csv", "json"]))
@_guard
def random_cmd(n, k, d, c, t_values, trials, seed, out_format):
    """Seeded rigid-fraction sweep for random subgraphs."""
    result = sweep(n, k, d, t_values=list(t_values) or None, trials=trials,
                   seed=seed, c=c)
    if out_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["t", "trials", "rigid_count", "fraction", "threshold_flag"])
        for row in result.rows:
            writer.writerow([
                repr(row.t), row.trials, row.rigid_count, repr(row.fraction),
                str(row.threshold_flag).lower(),
            ])
        click.echo(buf.getvalue(), nl=False)
    else:
        _emit({
            "command": "random",
            "spec": result.spec,
            "rows": result.rows,
            "meta": {"version": __version__, "seed": seed, "trials": trials},
        })


@main.command()
@click.option("--local", "local_args", nargs=3, type=int, default=None,
              help="K N D: closed-form local rigidity of the complete hypergraph.")
@click.option("--global", "global_args", nargs=3, type=int, default=None,
              help="K N D: closed-form global rigidity of the complete hypergraph.")
@_guard
def oracle(local_args, global_args):
    """Closed-form answers for complete hypergraphs under copies of the
    coordinate product."""
    chosen = [x for x in (local_args, global_args) if x]
    if len(chosen) != 1:
        raise ValueError("pass exactly one of --local K N D or --global K N D")
    if local_args:
        k, n, d = local_args
        answer = secant_dimension_oracle(k, n, d)
        _emit({
            "command": "oracle",
            "kind": "local",
            "k": k, "n": n, "d": d,
            "answer": answer,
            "meta": {"version": __version__},
        })
    else:
        k, n, d = global_args
        answer = complete_global_rigidity_oracle(k, n, d)
        _emit({
            "command": "oracle",
            "kind": "global",
            "k": k, "n": n, "d": d,
            "answer": answer,
            "meta": {"version": __version__},
        })


if __name__ == "__main__":
    main()

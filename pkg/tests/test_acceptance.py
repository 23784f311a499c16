"""Acceptance gate: the ten headline desk-scale reproduction checks.

Each test prints exactly one PASS/FAIL line.  Run with

    pytest tests/test_acceptance.py -v -s

to see the lines as they complete.  These tests exercise the public API
end to end: closed-form oracles against rank probes, exhaustive small
cases of the combinatorial characterisations, the worked global
certificates, the structured spectral audit, seeded random thresholds,
and the identity and decomposition property suites.
"""

import math
import random
from itertools import combinations

from hyperrig.exactla import RATIONAL_FIELD, sample_generic_point
from hyperrig.forms import builtin_model
from hyperrig.globalcert import (
    certify_global_tensor,
    slice_gradient_matrix,
    weighted_adjacency,
)
from hyperrig.exactla import matmul, transpose
from hyperrig.hypergraph import Hypergraph, complete_hypergraph
from hyperrig.packing import power_pair_hypergraph, verify_packing
from hyperrig.randomized import monte_carlo_rigidity, threshold_t, verify_structured_spectrum
from hyperrig.rigidity import (
    decompose_independent,
    is_locally_rigid,
    jacobian,
    matroid_rank,
    secant_dimension_oracle,
)
from hyperrig.sparsity import (
    geiringer_laman_rigid,
    lp_plane_global_condition,
    sparsity_rank,
)


def _report(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def _all_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    verts = tuple(range(1, n + 1))
    for mask in range(1 << len(pairs)):
        edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        yield Hypergraph(2, verts, edges)


def _two_connected(n, pairs, mask):
    adj = [0] * n
    for i, (u, v) in enumerate(pairs):
        if mask >> i & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    full = (1 << n) - 1

    def connected(excluded):
        start = next(i for i in range(n) if not excluded >> i & 1)
        seen = 1 << start
        frontier = seen
        while frontier:
            step = 0
            for i in range(n):
                if frontier >> i & 1:
                    step |= adj[i]
            step &= ~excluded & ~seen
            seen |= step
            frontier = step
        return seen | excluded == full

    if not connected(0):
        return False
    return all(connected(1 << v) for v in range(n))


def test_criterion_01_secant_oracle_matches_rank_probes():
    defective = {(3, 5, 7), (4, 3, 5), (4, 4, 9), (4, 5, 14)}
    mismatches = []
    checked = 0
    defective_seen = 0
    for k in (3, 4):
        for n in range(1, 6):
            cap = math.comb(n + k - 1, k) + 2
            for d in range(1, 16):
                if d * n > cap:
                    continue
                answer = secant_dimension_oracle(k, n, d)
                model = builtin_model("sym_tensor", d=d, k=k)
                probe = is_locally_rigid(complete_hypergraph(n, k), model, probes=2)
                checked += 1
                if (k, n, d) in defective:
                    defective_seen += 1
                if probe.rigid != answer.rigid:
                    mismatches.append((k, n, d))
    _report(
        1, "secant dimension oracle vs rank probes",
        not mismatches and defective_seen == 4,
        f"{checked} grid points, {defective_seen}/4 defective cases, "
        f"{len(mismatches)} mismatches",
    )


def test_criterion_02_planar_count_characterisation():
    model = builtin_model("euclidean", d=2)
    total = 0
    mismatches = 0
    for n in range(2, 7):
        for G in _all_graphs(n):
            total += 1
            combinatorial = geiringer_laman_rigid(G)
            algebraic = is_locally_rigid(G, model, probes=2).rigid
            if combinatorial != algebraic:
                mismatches += 1
    _report(
        2, "tight-subgraph count equals plane rigidity on all small graphs",
        mismatches == 0, f"{total} labeled graphs, {mismatches} mismatches",
    )


def test_criterion_03_double_banana_gap():
    verts = tuple(range(1, 9))
    edges = []
    for banana in ((3, 4, 5), (6, 7, 8)):
        group = (1, 2) + banana
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                if (u, v) == (1, 2):
                    continue
                edges.append((u, v))
    G = Hypergraph(2, verts, tuple(edges))
    count_rank = sparsity_rank(G, 3, 6)
    generic = matroid_rank(8, builtin_model("euclidean", d=3), G.edges)
    ok = count_rank == 18 and generic == 17
    _report(
        3, "double banana separates counts from generic rank",
        ok, f"sparsity rank {count_rank}, matroid rank {generic}",
    )


def test_criterion_04_worked_global_certificates():
    model = builtin_model("sym_tensor", d=1, k=4)
    G1 = Hypergraph(4, ("a", "b"), (
        ("a", "a", "a", "a"), ("a", "b", "b", "b"), ("b", "b", "b", "b"),
    ))
    G2 = Hypergraph(4, ("a", "b"), (
        ("a", "a", "a", "a"), ("a", "a", "b", "b"), ("b", "b", "b", "b"),
    ))
    c1 = certify_global_tensor(G1, model)
    c2 = certify_global_tensor(G2, model)
    ok = (
        c1.certified and c1.shared_kernel == 1
        and not c2.certified and c2.shared_kernel == 2
    )
    _report(
        4, "two-vertex global certificates",
        ok,
        f"kernels {c1.shared_kernel} and {c2.shared_kernel}, "
        f"statuses {c1.status}/{c2.status}",
    )


def test_criterion_05_structured_spectrum_audit():
    # (n, d) pairs at k = 3, with frozen rank and least nonzero eigenvalue
    cases = [(4, 2, 20, 4), (6, 3, 48, 4)]
    details = []
    ok = True
    for n, d, want_rank, want_lambda in cases:
        rep = verify_structured_spectrum(n, 3, d)
        good = (
            rep.ok and rep.rank == want_rank
            and rep.lambda_min_nonzero == want_lambda
            and rep.row_norms_ok and rep.block_structure_ok
            and rep.eigenvector_families_ok
        )
        ok = ok and good
        details.append(f"(n={n}, d={d}): rank {rep.rank}, lambda {rep.lambda_min_nonzero}")
    _report(5, "structured configuration spectrum", ok, "; ".join(details))


def test_criterion_06_random_threshold_fraction():
    spec = threshold_t(30, 3, 2, c=2.0)
    row = monte_carlo_rigidity(30, 3, 2, spec.t_star, trials=100, seed=0)
    # nominal bound 0.5; allow binomial 3 sigma over 100 trials
    ok = row.fraction >= 0.35
    _report(
        6, "rigid fraction at the threshold",
        ok, f"t* = {spec.t_star:.4f}, fraction {row.fraction:.2f} over {row.trials} trials",
    )


def test_criterion_07_stress_jacobian_identity_suite():
    rng = random.Random(1405)
    checked = 0
    failures = 0
    while checked < 100:
        if rng.random() < 0.5:
            k = rng.choice([3, 4])
            model = builtin_model("sym_tensor", d=rng.choice([1, 2]), k=k)
        else:
            k = rng.choice([2, 3])
            model = builtin_model("skew_tensor", r=rng.choice([1, 2]), k=k)
        n = rng.randint(2, 4)
        verts = tuple(range(1, n + 1))
        pool = set()
        for _ in range(rng.randint(1, 6)):
            pool.add(tuple(sorted(rng.choice(verts) for _ in range(k))))
        G = Hypergraph(k, verts, tuple(sorted(pool)))
        p = sample_generic_point(G, model.d, RATIONAL_FIELD, seed=checked * 7 + 1)
        w = [rng.randint(-9, 9) for _ in G.edges]
        A = weighted_adjacency(G, w, signed=model.antisymmetric, field=RATIONAL_FIELD)
        P = slice_gradient_matrix(G, model, p)
        J = jacobian(G, model, p)
        lhs = matmul(A, transpose(P))
        for vi in range(G.n):
            for c in range(model.d):
                rhs = sum(w[r] * J[r, vi * model.d + c] for r in range(J.nrows))
                if lhs[vi, c] != rhs:
                    failures += 1
        checked += 1
    _report(
        7, "stress matrix times gradient stack equals weighted rows",
        failures == 0, f"{checked} random instances, {failures} bad entries",
    )


def test_criterion_08_every_basis_decomposes():
    model = builtin_model("sym_tensor", d=2, k=3)
    base = builtin_model("h_prod", k=3)
    universe = complete_hypergraph(3, 3).edges
    independent = {}
    for size in range(0, 4):
        for sub in combinations(universe, size):
            independent[frozenset(sub)] = (
                matroid_rank(3, base, list(sub), probes=2) == len(sub)
            )
    bases = 0
    bad_parts = 0
    exhaustive_disagreements = 0
    for F in combinations(universe, 6):
        if matroid_rank(3, model, list(F), probes=2) != 6:
            continue
        bases += 1
        parts = decompose_independent(3, model, list(F), probes=2)
        valid = (
            len(parts) == 2
            and sorted(parts[0] + parts[1]) == sorted(F)
            and all(independent.get(frozenset(part), False) for part in parts)
        )
        if not valid:
            bad_parts += 1
        found = any(
            independent[frozenset(half)] and independent[frozenset(set(F) - set(half))]
            for half in combinations(F, 3)
        )
        if not found:
            exhaustive_disagreements += 1
    ok = bases > 0 and bad_parts == 0 and exhaustive_disagreements == 0
    _report(
        8, "matroid-union decomposition of every basis",
        ok,
        f"{bases} bases of 210 subsets, {bad_parts} invalid decompositions, "
        f"{exhaustive_disagreements} exhaustive disagreements",
    )


def test_criterion_09_planar_norm_equivalence():
    model = builtin_model("lp", d=2, p=4)
    total = 0
    holds = 0
    mismatches = 0
    for n in range(3, 7):
        pairs = list(combinations(range(n), 2))
        verts = tuple(range(1, n + 1))
        for mask in range(1 << len(pairs)):
            if not _two_connected(n, pairs, mask):
                continue
            edges = tuple((u + 1, v + 1) for i, (u, v) in enumerate(pairs) if mask >> i & 1)
            G = Hypergraph(2, verts, edges)
            total += 1
            tree_condition = lp_plane_global_condition(G).holds
            rank_condition = all(
                is_locally_rigid(
                    Hypergraph(2, verts, tuple(f for f in edges if f != e)),
                    model, probes=2,
                ).rigid
                for e in edges
            )
            if tree_condition:
                holds += 1
            if tree_condition != rank_condition:
                mismatches += 1
    _report(
        9, "redundant tree packing equals per-edge norm rigidity",
        mismatches == 0,
        f"{total} two-connected graphs, {holds} satisfy the condition, "
        f"{mismatches} mismatches",
    )


def test_criterion_10_packing_certificates_are_sound():
    cases = 0
    rejected = 0
    unconfirmed = 0
    for n in range(1, 7):
        G = power_pair_hypergraph(n, 3)
        for d in range(1, n + 1):
            model = builtin_model("sym_tensor", d=d, k=3)
            family = [(v,) for v in range(1, d + 1)]
            report = verify_packing(G, model, family, probes=2)
            cases += 1
            if not report.accepted:
                rejected += 1
                continue
            if not is_locally_rigid(G, model, probes=2).rigid:
                unconfirmed += 1
    ok = rejected == 0 and unconfirmed == 0
    _report(
        10, "singleton packing families certify and cross-check",
        ok, f"{cases} cases, {rejected} rejected, {unconfirmed} unconfirmed",
    )

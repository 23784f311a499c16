"""Polynomial measurement models for k-point configurations.

A model packages a symmetric or anti-symmetric polynomial g in k vector
arguments of dimension d, together with the dimension data of its affine
stabiliser: d_gamma is the dimension of the group of affine maps that
preserve g on all k-tuples, and n_gamma is the vertex count from which the
trivial-motion space of a configuration has that dimension.  Models built
as sums of coordinate copies of a base form record the base and the number
of copies so that matroid decompositions can recover the per-copy
structure.

Anti-symmetric models are always evaluated with their arguments listed in
increasing vertex order; the Jacobian assembly reintroduces the signs that
reordering would produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .exactla import PRIME_FIELD, FieldConfig

__all__ = [
    "StabilizerInfo",
    "MeasurementModel",
    "builtin_model",
    "parse_model",
    "sum_of_copies",
    "evaluate",
    "gradient",
    "estimate_stabilizer_dim",
]


@dataclass(frozen=True)
class StabilizerInfo:
    """Dimension data of the affine stabiliser of a model.

    None means unknown; the partite fields describe the larger stabiliser
    available on k-partite hypergraphs, where each coordinate block may be
    rescaled independently.
    """

    d_gamma: Optional[int]
    n_gamma: Optional[int]
    d_gamma_partite: Optional[int] = None
    n_gamma_partite: Optional[int] = None
    heuristic: bool = False
    description: str = ""


@dataclass(frozen=True)
class MeasurementModel:
    name: str
    k: int
    d: int
    symmetry: str  # "symmetric" or "antisymmetric"
    multiaffine: bool
    multilinear: bool
    params: tuple
    stabilizer: StabilizerInfo
    copies: Optional[tuple] = None  # (base model, count) for coordinate sums

    @property
    def antisymmetric(self) -> bool:
        return self.symmetry == "antisymmetric"

    @property
    def key(self) -> str:
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(f"{k}={v}" for k, v in self.params)

    def __str__(self) -> str:
        return self.key


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def _require_positive(name: str, value: int) -> int:
    value = int(value)
    if value < 1:
        raise ValueError(f"parameter {name} must be a positive integer, got {value}")
    return value


def _h_prod(k: int) -> MeasurementModel:
    k = _require_positive("k", k)
    if k < 2:
        raise ValueError("coordinate product needs k >= 2")
    stab = StabilizerInfo(
        d_gamma=0, n_gamma=0, d_gamma_partite=k - 1, n_gamma_partite=1,
        description="scaling torus is trivial on one coordinate; partite version rescales blocks",
    )
    return MeasurementModel("h_prod", k, 1, "symmetric", True, True, (("k", k),), stab)


def _det_form(k: int) -> MeasurementModel:
    k = _require_positive("k", k)
    if k < 2:
        raise ValueError("determinant form needs k >= 2")
    stab = StabilizerInfo(d_gamma=k * k - 1, n_gamma=k, description="special linear group")
    return MeasurementModel("det", k, k, "antisymmetric", True, True, (("k", k),), stab)


def _perm_form(k: int) -> MeasurementModel:
    k = _require_positive("k", k)
    if k < 2:
        raise ValueError("permanent form needs k >= 2")
    stab = StabilizerInfo(
        d_gamma=None, n_gamma=None, heuristic=True,
        description="stabiliser dimension not catalogued; use estimate_stabilizer_dim",
    )
    return MeasurementModel("perm", k, k, "symmetric", True, True, (("k", k),), stab)


def _parse_signature(d: int, signature) -> tuple:
    if isinstance(signature, str):
        if set(signature) - {"+", "-"}:
            raise ValueError(f"signature must consist of '+' and '-', got {signature!r}")
        signs = tuple(1 if ch == "+" else -1 for ch in signature)
    else:
        signs = tuple(int(s) for s in signature)
        if set(signs) - {1, -1}:
            raise ValueError(f"signature entries must be +1 or -1, got {signature!r}")
    if len(signs) != d:
        raise ValueError(f"signature has length {len(signs)}, expected d={d}")
    return signs


def builtin_model(name: str, **params) -> MeasurementModel:
    """Construct a catalogue model by name.

    Recognised names: euclidean, pseudo_euclidean, lp, inner (alias
    inner_product), volume, sym_tensor, skew_tensor, chow, h_prod, det,
    perm.
    """
    maker = _BUILTINS.get(name)
    if maker is None:
        known = ", ".join(sorted(_BUILTINS))
        raise ValueError(f"unknown model name {name!r}; known models: {known}")
    return maker(**params)


def _euclidean(d: int) -> MeasurementModel:
    d = _require_positive("d", d)
    stab = StabilizerInfo(d_gamma=_binom2(d + 1), n_gamma=d, description="rigid motions")
    return MeasurementModel("euclidean", 2, d, "symmetric", False, False, (("d", d),), stab)


def _pseudo_euclidean(d: int, signature=None) -> MeasurementModel:
    d = _require_positive("d", d)
    if signature is None:
        raise ValueError("pseudo_euclidean requires a signature, e.g. signature='+-'")
    signs = _parse_signature(d, signature)
    sig_str = "".join("+" if s > 0 else "-" for s in signs)
    stab = StabilizerInfo(d_gamma=_binom2(d + 1), n_gamma=d,
                          description="indefinite rigid motions")
    return MeasurementModel("pseudo_euclidean", 2, d, "symmetric", False, False,
                            (("d", d), ("signature", sig_str)), stab)


def _lp(d: int, p: int) -> MeasurementModel:
    d = _require_positive("d", d)
    p = int(p)
    if p % 2 != 0:
        raise ValueError(f"lp exponent must be even so the form is polynomial, got p={p}")
    if p == 2:
        raise ValueError("lp with p=2 is the euclidean model; use euclidean(d)")
    if p < 2:
        raise ValueError(f"lp exponent must be at least 4, got p={p}")
    stab = StabilizerInfo(d_gamma=d, n_gamma=1, description="translations")
    return MeasurementModel("lp", 2, d, "symmetric", False, False,
                            (("d", d), ("p", p)), stab)


def _inner(d: int) -> MeasurementModel:
    d = _require_positive("d", d)
    stab = StabilizerInfo(d_gamma=_binom2(d), n_gamma=max(d - 1, 0),
                          description="orthogonal group")
    return MeasurementModel("inner_product", 2, d, "symmetric", True, True,
                            (("d", d),), stab)


def _volume(d: int) -> MeasurementModel:
    d = _require_positive("d", d)
    stab = StabilizerInfo(d_gamma=d * d + d - 1, n_gamma=d + 1,
                          description="volume-preserving affine maps")
    return MeasurementModel("volume", d + 1, d, "antisymmetric", True, False,
                            (("d", d),), stab)


def _sym_tensor(d: int, k: int) -> MeasurementModel:
    d = _require_positive("d", d)
    base = _h_prod(k)
    stab = StabilizerInfo(
        d_gamma=0, n_gamma=0, d_gamma_partite=d * (k - 1), n_gamma_partite=1,
        description="trivial; partite version rescales coordinate blocks",
    )
    return MeasurementModel("sym_tensor", base.k, d, "symmetric", True, True,
                            (("d", d), ("k", base.k)), stab, copies=(base, d))


def _skew_tensor(r: int, k: int) -> MeasurementModel:
    r = _require_positive("r", r)
    base = _det_form(k)
    stab = StabilizerInfo(d_gamma=r * (k * k - 1), n_gamma=k,
                          description="copies of the special linear group")
    return MeasurementModel("skew_tensor", base.k, r * k, "antisymmetric", True, True,
                            (("r", r), ("k", base.k)), stab, copies=(base, r))


def _chow(r: int, k: int) -> MeasurementModel:
    r = _require_positive("r", r)
    base = _perm_form(k)
    stab = StabilizerInfo(
        d_gamma=None, n_gamma=None, heuristic=True,
        description="stabiliser dimension not catalogued; use estimate_stabilizer_dim",
    )
    return MeasurementModel("chow", base.k, r * k, "symmetric", True, True,
                            (("r", r), ("k", base.k)), stab, copies=(base, r))


_BUILTINS = {
    "euclidean": _euclidean,
    "pseudo_euclidean": _pseudo_euclidean,
    "lp": _lp,
    "inner": _inner,
    "inner_product": _inner,
    "volume": _volume,
    "sym_tensor": _sym_tensor,
    "skew_tensor": _skew_tensor,
    "chow": _chow,
    "h_prod": _h_prod,
    "det": _det_form,
    "perm": _perm_form,
}


def parse_model(descriptor: str) -> MeasurementModel:
    """Parse a CLI descriptor such as 'sym_tensor:d=2,k=3' or 'euclidean:d=2'."""
    name, _, tail = descriptor.partition(":")
    name = name.strip()
    params = {}
    if tail.strip():
        for chunk in tail.split(","):
            key, eq, value = chunk.partition("=")
            if not eq:
                raise ValueError(
                    f"malformed model parameter {chunk!r} in {descriptor!r}; expected key=value"
                )
            key = key.strip()
            value = value.strip()
            if key == "signature":
                params[key] = value
            else:
                try:
                    params[key] = int(value)
                except ValueError:
                    raise ValueError(
                        f"model parameter {key}={value!r} is not an integer"
                    ) from None
    try:
        return builtin_model(name, **params)
    except TypeError:
        raise ValueError(
            f"wrong parameters for model {name!r} in descriptor {descriptor!r}"
        ) from None


def sum_of_copies(base: MeasurementModel, t: int) -> MeasurementModel:
    """Sum of t coordinate copies of a base form.

    Copies of the coordinate product give sym_tensor, copies of det give
    skew_tensor, copies of perm give chow, so the result is always a
    catalogue model.
    """
    t = _require_positive("t", t)
    if base.name == "h_prod":
        return _sym_tensor(t, base.k)
    if base.name == "det":
        return _skew_tensor(t, base.k)
    if base.name == "perm":
        return _chow(t, base.k)
    raise ValueError(
        f"sum_of_copies supports base forms h_prod, det and perm, got {base.name!r}"
    )


def _as_vector(x, d: int):
    try:
        vec = tuple(x)
    except TypeError:
        if d != 1:
            raise ValueError(f"scalar given where a vector of length d={d} was expected")
        return (x,)
    if len(vec) != d:
        raise ValueError(f"point has {len(vec)} coordinates, expected d={d}")
    return vec


def _check_points(model: MeasurementModel, points: Sequence, count: int):
    pts = [_as_vector(x, model.d) for x in points]
    if len(pts) != count:
        raise ValueError(f"model takes {count} points, got {len(pts)}")
    return pts


def _det(M) -> object:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    sign = 1
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += sign * M[0][j] * _det(minor)
        sign = -sign
    return total


def _permanent(M) -> object:
    n = len(M)
    total = 0
    for sigma in permutations(range(n)):
        prod = 1
        for i, j in enumerate(sigma):
            prod *= M[i][j]
            if not prod:
                break
        total += prod
    return total


def _columns_matrix(pts) -> list:
    dim = len(pts[0])
    return [[pt[i] for pt in pts] for i in range(dim)]


def evaluate(model: MeasurementModel, points: Sequence):
    """Evaluate g at k points, listed in vertex order for edges."""
    pts = _check_points(model, points, model.k)
    if model.copies is not None:
        base, t = model.copies
        s = base.d
        total = 0
        for block in range(t):
            chunk = [pt[block * s:(block + 1) * s] for pt in pts]
            total += evaluate(base, chunk)
        return total
    return _EVALUATORS[model.name](model, pts)


def _eval_euclidean(model, pts):
    x, y = pts
    return sum((a - b) ** 2 for a, b in zip(x, y))


def _eval_pseudo(model, pts):
    x, y = pts
    signs = _parse_signature(model.d, dict(model.params)["signature"])
    return sum(s * (a - b) ** 2 for s, a, b in zip(signs, x, y))


def _eval_lp(model, pts):
    x, y = pts
    p = dict(model.params)["p"]
    return sum((a - b) ** p for a, b in zip(x, y))


def _eval_inner(model, pts):
    x, y = pts
    return sum(a * b for a, b in zip(x, y))


def _eval_h_prod(model, pts):
    total = 1
    for pt in pts:
        total *= pt[0]
    return total


def _eval_det(model, pts):
    return _det(_columns_matrix(pts))


def _eval_perm(model, pts):
    return _permanent(_columns_matrix(pts))


def _eval_volume(model, pts):
    rows = [[1] * len(pts)] + _columns_matrix(pts)
    return _det(rows)


_EVALUATORS = {
    "euclidean": _eval_euclidean,
    "pseudo_euclidean": _eval_pseudo,
    "lp": _eval_lp,
    "inner_product": _eval_inner,
    "h_prod": _eval_h_prod,
    "det": _eval_det,
    "perm": _eval_perm,
    "volume": _eval_volume,
}


def gradient(model: MeasurementModel, points: Sequence):
    """Gradient of g in its first slot, the other k-1 slots held at points.

    Only defined for multiaffine models, where the gradient does not depend
    on the first argument.  Distance-type models contribute their rows
    through the Jacobian assembly instead.
    """
    if not model.multiaffine:
        raise ValueError(
            f"model {model.name!r} is not multiaffine; its Jacobian rows are "
            "assembled directly rather than from slot gradients"
        )
    pts = _check_points(model, points, model.k - 1)
    if model.copies is not None:
        base, t = model.copies
        s = base.d
        out = []
        for block in range(t):
            chunk = [pt[block * s:(block + 1) * s] for pt in pts]
            out.extend(gradient(base, chunk))
        return tuple(out)
    return _GRADIENTS[model.name](model, pts)


def _grad_h_prod(model, pts):
    total = 1
    for pt in pts:
        total *= pt[0]
    return (total,)


def _grad_inner(model, pts):
    return tuple(pts[0])


def _unit_column(dim: int, j: int) -> list:
    return [1 if i == j else 0 for i in range(dim)]


def _grad_det(model, pts):
    k = model.d
    cols = list(pts)
    out = []
    for j in range(k):
        e = _unit_column(k, j)
        rows = [[e[i]] + [c[i] for c in cols] for i in range(k)]
        out.append(_det(rows))
    return tuple(out)


def _grad_perm(model, pts):
    k = model.d
    cols = list(pts)
    out = []
    for j in range(k):
        e = _unit_column(k, j)
        rows = [[e[i]] + [c[i] for c in cols] for i in range(k)]
        out.append(_permanent(rows))
    return tuple(out)


def _grad_volume(model, pts):
    d = model.d
    cols = list(pts)
    out = []
    for c in range(d):
        rows = [[0] + [1] * len(cols)]
        for i in range(d):
            rows.append([1 if i == c else 0] + [col[i] for col in cols])
        out.append(_det(rows))
    return tuple(out)


_GRADIENTS = {
    "h_prod": _grad_h_prod,
    "inner_product": _grad_inner,
    "det": _grad_det,
    "perm": _grad_perm,
    "volume": _grad_volume,
}


def estimate_stabilizer_dim(
    model: MeasurementModel,
    n_max: int,
    field: FieldConfig = PRIME_FIELD,
    seed: int = 0,
    probes: int = 2,
) -> StabilizerInfo:
    """Heuristic stabiliser dimension from complete-hypergraph kernels.

    Computes d*n minus the generic measurement rank of the complete
    hypergraph on n vertices for growing n and reports the kernel dimension
    once it agrees on two consecutive sizes.  A non-stabilising sequence is
    reported as unknown, not as an error.
    """
    from .hypergraph import complete_hypergraph
    from .rigidity import generic_rank

    if n_max < 2:
        raise ValueError(f"need n_max >= 2 to compare consecutive sizes, got {n_max}")
    history = []
    for n in range(1, n_max + 1):
        G = complete_hypergraph(n, model.k)
        r = generic_rank(G, model, probes=probes, field=field, seed=seed)
        kernel = model.d * n - r
        history.append(kernel)
        if n >= 2 and history[-1] == history[-2]:
            return StabilizerInfo(
                d_gamma=kernel, n_gamma=None, heuristic=True,
                description=(
                    f"kernel dimension stabilised at {kernel} on n={n - 1},{n}; "
                    f"history={history}"
                ),
            )
    return StabilizerInfo(
        d_gamma=None, n_gamma=None, heuristic=True,
        description=f"kernel dimension did not stabilise up to n_max={n_max}; history={history}",
    )

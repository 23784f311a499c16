"""Exact linear algebra over a large prime field or the rationals.

Rank certificates follow the usual specialisation argument: the rank of a
polynomial matrix at any specialised point is at most its generic rank, so
the maximum rank observed over random probes is a certified lower bound,
and it equals the generic rank unless every probe landed in the vanishing
locus of some maximal minor.  With entries hashed into a field of size
around 2**61 that failure probability is bounded by degree/modulus per
probe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .hypergraph import Hypergraph, counter_hash

__all__ = [
    "DEFAULT_MODULUS",
    "FieldConfig",
    "PRIME_FIELD",
    "RATIONAL_FIELD",
    "prime_field",
    "rational_field",
    "ExactMatrix",
    "GenericPoint",
    "sample_generic_point",
    "rank",
    "right_kernel_basis",
    "left_kernel_basis",
    "transpose",
    "matmul",
    "ProbeOutcome",
    "ProbeReport",
    "probe_rank_with_confidence",
]

# Mersenne prime 2**61 - 1.  Large enough that a single probe of any matrix
# arising here fails with probability well under 2**-40.
DEFAULT_MODULUS = (1 << 61) - 1

_MIN_MODULUS = 1 << 50


@dataclass(frozen=True)
class FieldConfig:
    """Ground field for exact computations: Z/p for a big prime p, or Q."""

    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "rational":
            if self.modulus is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            p = self.modulus
            if p is None:
                raise ValueError("prime field needs a modulus")
            if p <= _MIN_MODULUS:
                raise ValueError(
                    f"modulus {p} too small; need more than 2**50 for probe confidence"
                )
            if p != DEFAULT_MODULUS:
                import gmpy2

                if not gmpy2.is_prime(p):
                    raise ValueError(f"modulus {p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def element(self, value) -> int | Fraction:
        """Coerce an int or Fraction into the field."""
        if self.kind == "prime":
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
            return int(value) % self.modulus
        return value if isinstance(value, Fraction) else Fraction(value)


PRIME_FIELD = FieldConfig("prime", DEFAULT_MODULUS)
RATIONAL_FIELD = FieldConfig("rational")


def prime_field(modulus: int = DEFAULT_MODULUS) -> FieldConfig:
    return FieldConfig("prime", modulus)


def rational_field() -> FieldConfig:
    return RATIONAL_FIELD


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with entries already reduced into the field."""

    field: FieldConfig
    nrows: int
    ncols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field: FieldConfig, rows: Iterable[Sequence], ncols: int | None = None) -> "ExactMatrix":
        reduced = tuple(tuple(field.element(x) for x in row) for row in rows)
        if reduced:
            width = len(reduced[0])
            if any(len(row) != width for row in reduced):
                raise ValueError("rows have unequal lengths")
            if ncols is not None and ncols != width:
                raise ValueError(f"rows have {width} columns, expected {ncols}")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(field, len(reduced), ncols, reduced)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __getitem__(self, pos: tuple) -> int | Fraction:
        i, j = pos
        return self.entries[i][j]


def transpose(M: ExactMatrix) -> ExactMatrix:
    cols = tuple(tuple(M.entries[i][j] for i in range(M.nrows)) for j in range(M.ncols))
    return ExactMatrix(M.field, M.ncols, M.nrows, cols)


def matmul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.field != B.field:
        raise ValueError("operands live in different fields")
    if A.ncols != B.nrows:
        raise ValueError(f"shape mismatch: {A.nrows}x{A.ncols} times {B.nrows}x{B.ncols}")
    Bt = [[B.entries[i][j] for i in range(B.nrows)] for j in range(B.ncols)]
    zero = 0 if A.field.is_prime else Fraction(0)
    rows = []
    for i in range(A.nrows):
        arow = A.entries[i]
        out = []
        for col in Bt:
            acc = zero
            for x, y in zip(arow, col):
                acc += x * y
            out.append(acc % A.field.modulus if A.field.is_prime else acc)
        rows.append(tuple(out))
    return ExactMatrix(A.field, A.nrows, B.ncols, tuple(rows))


def _rank_mod_p(rows: list, p: int) -> int:
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, p)
        prow = rows[r]
        for i in range(r + 1, m):
            f = rows[i][col]
            if f:
                f = f * inv % p
                row = rows[i]
                for j in range(col, n):
                    row[j] = (row[j] - f * prow[j]) % p
        r += 1
        if r == m:
            break
    return r


def _rank_bareiss(rows: list) -> int:
    """Fraction-free elimination on integer rows; exact over Q."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    r = 0
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[col]
            for j in range(col + 1, n):
                row[j] = (piv * row[j] - f * rows[r][j]) // prev
            row[col] = 0
        prev = piv
        r += 1
        if r == m:
            break
    return r


def rank(M: ExactMatrix) -> int:
    if M.field.is_prime:
        return _rank_mod_p([list(row) for row in M.entries], M.field.modulus)
    int_rows = []
    for row in M.entries:
        scale = 1
        for x in row:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        int_rows.append([int(x * scale) for x in row])
    return _rank_bareiss(int_rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _rref(M: ExactMatrix) -> tuple[list, list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    p = M.field.modulus if M.field.is_prime else None
    rows = [list(row) for row in M.entries]
    m, n = M.nrows, M.ncols
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, p) if p else 1 / rows[r][col]
        rows[r] = [x * inv % p if p else x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                if p:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
                else:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return rows, pivots


def right_kernel_basis(M: ExactMatrix) -> tuple:
    """Basis of the right kernel, one vector per free column."""
    rows, pivots = _rref(M)
    pivot_set = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivot_set]
    zero = 0 if M.field.is_prime else Fraction(0)
    one = 1 if M.field.is_prime else Fraction(1)
    basis = []
    for j in free:
        vec = [zero] * M.ncols
        vec[j] = one
        for r, col in enumerate(pivots):
            val = -rows[r][j]
            if M.field.is_prime:
                val %= M.field.modulus
            vec[col] = val
        basis.append(tuple(vec))
    return tuple(basis)


def left_kernel_basis(M: ExactMatrix) -> tuple:
    return right_kernel_basis(transpose(M))


@dataclass(frozen=True)
class GenericPoint:
    """Configuration p: V -> F^d with coordinates hashed from a seed.

    Coordinates are nonzero by construction.  The same (seed, vertex
    position, coordinate) triple always produces the same value, so points
    are reproducible across runs and machines.
    """

    field: FieldConfig
    d: int
    labels: tuple
    coords: tuple
    seed: int | None = None

    def vector(self, v) -> tuple:
        return self.coords[self.labels.index(v)]

    def vector_at(self, position: int) -> tuple:
        return self.coords[position]

    @classmethod
    def from_coords(cls, field: FieldConfig, d: int, labels: Sequence, coords: Sequence) -> "GenericPoint":
        labels = tuple(labels)
        coords = tuple(tuple(field.element(x) for x in vec) for vec in coords)
        if len(coords) != len(labels):
            raise ValueError("one coordinate vector per vertex required")
        if any(len(vec) != d for vec in coords):
            raise ValueError(f"coordinate vectors must have length d={d}")
        return cls(field, d, labels, coords)


def sample_generic_point(G: Hypergraph, d: int, field: FieldConfig = PRIME_FIELD, seed: int = 0) -> GenericPoint:
    if d < 1:
        raise ValueError(f"dimension must be positive, got d={d}")
    coords = []
    for pos in range(G.n):
        vec = []
        for c in range(d):
            h = counter_hash(seed, pos, c)
            if field.is_prime:
                vec.append(1 + h % (field.modulus - 1))
            else:
                # Positive integers regarded as rationals; 40 bits is plenty
                # of entropy at desk scale and keeps Bareiss growth modest.
                vec.append(Fraction(1 + h % (1 << 40)))
        coords.append(tuple(vec))
    return GenericPoint(field, d, tuple(G.vertices), tuple(coords), seed=seed)


@dataclass(frozen=True)
class ProbeOutcome:
    field: FieldConfig
    seed: int
    rank: int


@dataclass(frozen=True)
class ProbeReport:
    """Certified lower bound on a generic rank from random specialisations."""

    rank: int
    outcomes: tuple
    note: str

    @property
    def probes(self) -> int:
        return len(self.outcomes)


def probe_rank_with_confidence(
    build: Callable[[FieldConfig, int], ExactMatrix],
    probes: int = 3,
    fields: Sequence[FieldConfig] = (PRIME_FIELD,),
    seed: int = 0,
) -> ProbeReport:
    """Max rank of build(field, probe_seed) over several probes.

    build must return the same polynomial matrix specialised at the point
    determined by probe_seed; the maximum observed rank is then a certified
    lower bound for the generic rank.
    """
    if probes < 1:
        raise ValueError(f"need at least one probe, got {probes}")
    outcomes = []
    best = 0
    for fld in fields:
        for i in range(probes):
            probe_seed = counter_hash(seed, i)
            r = rank(build(fld, probe_seed))
            outcomes.append(ProbeOutcome(fld, probe_seed, r))
            best = max(best, r)
    note = (
        "specialisation rank never exceeds generic rank; the reported value "
        "is a certified lower bound and matches the generic rank unless all "
        "probes hit a minor's vanishing locus"
    )
    return ProbeReport(best, tuple(outcomes), note)

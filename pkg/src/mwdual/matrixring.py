"""Linear algebra over F_q and the subspace lattice behind M_{k x k}(F_q).

Orbits of rank-j matrices in ``M_{k x m}(F_q)`` under the left unit group
correspond to j-dimensional subspaces of ``F_q^m`` (their row spaces). The
same subspaces label functional orbits through the transpose, so one
:class:`Subspace` type serves both sides.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .chainring import reduce_root_sum
from .exactmath import qbinom
from .finitefield import FqField, get_field

Row = tuple[int, ...]

__all__ = [
    "FqField",
    "FqMatrix",
    "Subspace",
    "OrbitIndex",
    "rref_rows",
    "rank_rows",
    "enumerate_subspaces",
    "orbit_size_matrix",
    "subspace_perp",
    "intersect",
    "subspace_sum",
    "rank_of_pairing",
    "ann_count",
    "ann_table",
    "count_intersections",
    "kravchuk_b",
    "rank_kravchuk",
    "brute_rank_kravchuk",
    "ORDERINGS",
    "orbit_index",
    "worked_ordering_k2m3q2",
    "rank_of_pairing_by_perp",
    "MatrixRing",
]


def rref_rows(rows: Iterable[Sequence[int]], F: FqField, ncols: int | None = None) -> tuple[Row, ...]:
    """Reduced row echelon form; zero rows are dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0]) if ncols is None else ncols
    out_rows = 0
    for c in range(ncols):
        piv = next((r for r in range(out_rows, len(mat)) if mat[r][c]), None)
        if piv is None:
            continue
        mat[out_rows], mat[piv] = mat[piv], mat[out_rows]
        inv = F.inv(mat[out_rows][c])
        mat[out_rows] = [F.mul(inv, x) for x in mat[out_rows]]
        prow = mat[out_rows]
        for r in range(len(mat)):
            if r != out_rows and mat[r][c]:
                f = F.neg(mat[r][c])
                mat[r] = [F.add(x, F.mul(f, y)) for x, y in zip(mat[r], prow)]
        out_rows += 1
        if out_rows == len(mat):
            break
    return tuple(tuple(r) for r in mat[:out_rows])


def rank_rows(rows: Iterable[Sequence[int]], F: FqField) -> int:
    return len(rref_rows(rows, F))


@dataclass(frozen=True)
class FqMatrix:
    """A dense matrix over F_q stored as a tuple of rows."""

    q: int
    rows: tuple[Row, ...]
    ncols: int

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "FqMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows) or any(not 0 <= x < q for r in rows for x in r):
            raise ValueError("entries must be field elements in rows of equal length")
        return cls(q, rows, ncols)

    @classmethod
    def zero(cls, q: int, nrows: int, ncols: int) -> "FqMatrix":
        return cls(q, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, q: int, n: int) -> "FqMatrix":
        return cls(q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def field(self) -> FqField:
        return get_field(self.q)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rref(self) -> "FqMatrix":
        red = rref_rows(self.rows, self.field, self.ncols)
        pad = tuple((0,) * self.ncols for _ in range(self.nrows - len(red)))
        return FqMatrix(self.q, red + pad, self.ncols)

    def rank(self) -> int:
        return len(rref_rows(self.rows, self.field, self.ncols))

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.q, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.q != other.q or self.ncols != other.nrows:
            raise ValueError("incompatible matrices")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [() for _ in range(other.ncols)]
        rows = tuple(tuple(F.dot(r, c) for c in cols) for r in self.rows)
        return FqMatrix(self.q, rows, other.ncols)

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        if self.q != other.q or self.ncols != other.ncols or self.nrows != other.nrows:
            raise ValueError("incompatible matrices")
        F = self.field
        return FqMatrix(self.q, tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def row_space(self) -> "Subspace":
        return Subspace.span(self.q, self.ncols, self.rows)

    def column_space(self) -> "Subspace":
        return self.transpose().row_space()

    def trace(self) -> int:
        F = self.field
        s = 0
        for i in range(min(self.nrows, self.ncols)):
            s = F.add(s, self.rows[i][i])
        return s


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^m held as its RREF basis."""

    q: int
    m: int
    basis: tuple[Row, ...]

    @classmethod
    def span(cls, q: int, m: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        if any(len(v) != m for v in vecs):
            raise ValueError(f"vectors must have length {m}")
        return cls(q, m, rref_rows(vecs, get_field(q), m))

    @classmethod
    def zero(cls, q: int, m: int) -> "Subspace":
        return cls(q, m, ())

    @classmethod
    def full(cls, q: int, m: int) -> "Subspace":
        return cls(q, m, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> FqField:
        return get_field(self.q)

    def _compat(self, other: "Subspace") -> None:
        if self.q != other.q or self.m != other.m:
            raise ValueError("subspaces live in different ambient spaces")

    def perp(self) -> "Subspace":
        return subspace_perp(self)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return rank_rows(self.basis + (tuple(v),), self.field) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        self._compat(other)
        return all(other.contains_vector(v) for v in self.basis)

    def vectors(self) -> Iterable[Row]:
        """All q^dim vectors of the subspace."""
        F = self.field
        for coeffs in product(range(self.q), repeat=self.dim):
            v = [0] * self.m
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
            yield tuple(v)

    def label(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def subspace_perp(X: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    F = X.field
    m = X.m
    if X.dim == 0:
        return Subspace.full(X.q, m)
    pivots = [next(i for i, x in enumerate(r) if x) for r in X.basis]
    free = [c for c in range(m) if c not in pivots]
    vecs = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for r, pc in zip(X.basis, pivots):
            v[pc] = F.neg(r[f])
        vecs.append(v)
    return Subspace.span(X.q, m, vecs)


def subspace_sum(X: Subspace, Y: Subspace) -> Subspace:
    X._compat(Y)
    return Subspace.span(X.q, X.m, X.basis + Y.basis)


def intersect(X: Subspace, Y: Subspace) -> Subspace:
    X._compat(Y)
    return subspace_perp(subspace_sum(subspace_perp(X), subspace_perp(Y)))


def rank_of_pairing(X: Subspace, Y: Subspace) -> int:
    """Rank of x lambda where x has row space X and lambda has column space Y."""
    X._compat(Y)
    if X.dim == 0 or Y.dim == 0:
        return 0
    F = X.field
    gram = [[F.dot(a, b) for b in Y.basis] for a in X.basis]
    return rank_rows(gram, F)


def rank_of_pairing_by_perp(X: Subspace, Y: Subspace) -> int:
    """The same rank via ``dim X - dim(X meet Y-perp)``."""
    return X.dim - intersect(X, subspace_perp(Y)).dim


# --- orbit enumeration ---------------------------------------------------------


def _rref_matrices(m: int, d: int, q: int) -> list[tuple[Row, ...]]:
    out = []
    for pivots in combinations(range(m), d):
        free_slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for vals in product(range(q), repeat=len(free_slots)):
            rows = [[0] * m for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_slots, vals):
                rows[r][c] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


@dataclass(frozen=True)
class OrbitIndex:
    """Subspaces of F_q^m of dimension at most ``maxdim``, in a fixed order.

    ``by_dim[j]`` lists the j-dimensional subspaces. The flat order runs
    through dimensions 0, 1, ..., maxdim.
    """

    q: int
    m: int
    maxdim: int
    by_dim: tuple[tuple[Subspace, ...], ...]
    name: str = "lex"
    lambda0_hint: Subspace | None = None

    @property
    def flat(self) -> tuple[Subspace, ...]:
        return tuple(s for group in self.by_dim for s in group)

    @property
    def nonzero(self) -> tuple[Subspace, ...]:
        return tuple(s for group in self.by_dim[1:] for s in group)

    def __len__(self) -> int:
        return sum(len(g) for g in self.by_dim)

    def position(self, s: Subspace) -> int:
        return self._positions[s.basis]

    @property
    def _positions(self) -> dict[tuple[Row, ...], int]:
        cache = self.__dict__.get("_pos_cache")
        if cache is None:
            cache = {s.basis: i for i, s in enumerate(self.flat)}
            object.__setattr__(self, "_pos_cache", cache)
        return cache

    def dims(self) -> list[int]:
        return [s.dim for s in self.flat]


def enumerate_subspaces(m: int, maxdim: int, field: FqField | int) -> OrbitIndex:
    """All subspaces of F_q^m of dim <= maxdim, lexicographic within each dim."""
    q = field if isinstance(field, int) else field.q
    if isinstance(field, int):
        get_field(q)
    if not 0 <= maxdim <= m:
        raise ValueError("need 0 <= maxdim <= m")
    groups = []
    for d in range(maxdim + 1):
        mats = sorted(_rref_matrices(m, d, q))
        groups.append(tuple(Subspace(q, m, b) for b in mats))
    return OrbitIndex(q, m, maxdim, tuple(groups))


# Explicit ordering of the 14 nonzero subspaces of F_2^3 of dim <= 2 used by
# the published M_2(F_2) examples, with their choice of lambda_0 (all-ones line).
_WORKED_K2M3Q2_DIM1 = [(1, 0, 1), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)]
_WORKED_K2M3Q2_DIM2 = [
    ((1, 0, 0), (0, 1, 0)),
    ((1, 0, 1), (0, 1, 0)),
    ((1, 0, 0), (0, 0, 1)),
    ((1, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 1)),
    ((0, 1, 0), (0, 0, 1)),
    ((1, 0, 1), (0, 1, 1)),
]


def worked_ordering_k2m3q2() -> OrbitIndex:
    d0 = (Subspace.zero(2, 3),)
    d1 = tuple(Subspace.span(2, 3, [v]) for v in _WORKED_K2M3Q2_DIM1)
    d2 = tuple(Subspace.span(2, 3, b) for b in _WORKED_K2M3Q2_DIM2)
    for s, raw in zip(d2, _WORKED_K2M3Q2_DIM2):
        assert s.basis == raw, "fixture rows must already be in RREF"
    return OrbitIndex(2, 3, 2, (d0, d1, d2), "worked-k2m3q2", Subspace.span(2, 3, [(1, 1, 1)]))


ORDERINGS = {"lex": None, "worked-k2m3q2": worked_ordering_k2m3q2}


@lru_cache(maxsize=None)
def orbit_index(k: int, m: int, q: int, ordering: str = "lex") -> OrbitIndex:
    """Cached orbit index for ``M_{k x m}(F_q)`` with a named ordering."""
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    if ordering == "lex":
        return enumerate_subspaces(m, min(k, m), q)
    idx = ORDERINGS[ordering]()
    if (idx.q, idx.m, idx.maxdim) != (q, m, min(k, m)):
        raise ValueError(f"ordering {ordering!r} applies only to q={idx.q}, k={idx.maxdim}, m={idx.m}")
    return idx


# --- counting formulas ---------------------------------------------------------


def orbit_size_matrix(j: int, k: int, q: int) -> int:
    """Number of k x m matrices in one rank-j orbit: prod_{i<j}(q^k - q^i)."""
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    out = 1
    for i in range(j):
        out *= q**k - q**i
    return out


def ann_count(i: int, j: int, k: int, q: int) -> int:
    """Number of rank-i matrices r in M_k(F_q) with lambda r = 0 for a rank-j lambda."""
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValueError("ranks must lie in 0..k")
    if i > k - j:
        return 0
    return orbit_size_matrix(i, k, q) * qbinom(k - j, i, q)


def ann_table(k: int, q: int) -> list[list[int]]:
    """Rows i (rank of the annihilating matrix), columns j (rank of lambda)."""
    return [[ann_count(i, j, k, q) for j in range(k + 1)] for i in range(k + 1)]


def count_intersections(a: int, b: int, c: int, d: int, q: int) -> int:
    """b-dim subspaces B of an a-dim space meeting a fixed c-dim space in dim d."""
    if b < d or c < d:
        return 0
    return q ** ((b - d) * (c - d)) * qbinom(c, d, q) * qbinom(a - c, b - d, q)


def kravchuk_b(i: int, ell: int, k: int, q: int) -> int:
    """Character sum over rank-i matrices whose kernel meets in a fixed way."""
    return sum((-1) ** (i - j) * q ** comb(i - j, 2) * q ** (k * j) * qbinom(ell, j, q) for j in range(ell + 1))


def rank_kravchuk(k: int, q: int) -> list[list[int]]:
    """Rank-partition Kravchuk matrix; rows by summed rank, columns by character rank."""
    return [
        [sum(count_intersections(k, i, k - j, ell, q) * kravchuk_b(i, ell, k, q) for ell in range(i + 1)) for j in range(k + 1)]
        for i in range(k + 1)
    ]


def brute_rank_kravchuk(k: int, q: int) -> list[list[int]]:
    """Same matrix from explicit sums of zeta_p^{tr(trace(r s))} over all s."""
    F = get_field(q)
    p = F.p
    mats = [FqMatrix(q, tuple(tuple(vals[r * k:(r + 1) * k]) for r in range(k)), k) for vals in product(range(q), repeat=k * k)]
    by_rank: dict[int, list[FqMatrix]] = {i: [] for i in range(k + 1)}
    for s in mats:
        by_rank[s.rank()].append(s)
    out = [[0] * (k + 1) for _ in range(k + 1)]
    for j in range(k + 1):
        r = FqMatrix(q, tuple(tuple(int(a == b and a < j) for b in range(k)) for a in range(k)), k)
        for i in range(k + 1):
            cnt: Counter = Counter()
            for s in by_rank[i]:
                cnt[F.trace((r @ s).trace())] += 1
            out[i][j] = reduce_root_sum(cnt, p)
    return out


@dataclass(frozen=True)
class MatrixRing:
    """The ring M_k(F_q); elements are k x k :class:`FqMatrix` values."""

    q: int
    k: int

    def __post_init__(self) -> None:
        get_field(self.q)
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError("k must be a positive integer")

    @property
    def size(self) -> int:
        return self.q ** (self.k * self.k)

    def elements(self) -> Iterable[FqMatrix]:
        k = self.k
        for vals in product(range(self.q), repeat=k * k):
            yield FqMatrix(self.q, tuple(tuple(vals[r * k:(r + 1) * k]) for r in range(k)), k)

    def rank_class_sizes(self) -> list[int]:
        """Number of elements of each rank 0..k."""
        return [orbit_size_matrix(i, self.k, self.q) * qbinom(self.k, i, self.q) for i in range(self.k + 1)]

    def kravchuk(self) -> list[list[int]]:
        return rank_kravchuk(self.k, self.q)

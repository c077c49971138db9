"""Linear codes presented by multiplicity functions on functional orbits.

Three information modules are supported:

* ``Z_k = R/(theta^k)`` over a chain ring. A functional is right
  multiplication by ``theta^e`` with ``m-k <= e < m``; its orbit id is ``e``.
* ``S_k = F_q^k`` over a chain ring, paired into the socle ``(theta^{m-1})``.
  A functional is a nonzero vector ``mu`` up to scaling; its orbit id is the
  representative whose last nonzero entry is 1.
* ``M_{k x m}(F_q)`` over ``M_k(F_q)``. A functional orbit is the column space
  of ``lambda``; its id is that :class:`Subspace`.

Module orbits (the code side) are labelled the same way: valuation
``0..k`` for ``Z_k``, normalized vectors for ``S_k``, row spaces for matrices.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Iterable, Sequence

from .chainring import POLY, ZMOD, ChainRing, orbit_size
from .enumerators import PartitionEnumerator, WWEnumerator
from .exactmath import qbinom
from .finitefield import get_field
from .matrixring import (
    FqMatrix,
    MatrixRing,
    OrbitIndex,
    Subspace,
    orbit_index,
    orbit_size_matrix,
    rank_of_pairing,
    rank_rows,
)
from .weights import CHAIN, MATRIX, WeightTable, egalitarian_check

DEFAULT_BUDGET = 2**24


class BudgetExceeded(ValueError):
    """A brute-force enumeration would exceed the configured budget."""


@lru_cache(maxsize=None)
def _pair_rank(x: Subspace, y: Subspace) -> int:
    return rank_of_pairing(x, y)


def normalize_vector(v: Sequence[int], q: int) -> tuple[int, ...]:
    """Scale a nonzero vector so its last nonzero entry is 1."""
    F = get_field(q)
    last = max((i for i, x in enumerate(v) if x), default=None)
    if last is None:
        raise ValueError("the zero vector has no orbit representative")
    inv = F.inv(v[last])
    return tuple(F.mul(inv, x) for x in v)


# --- modules -------------------------------------------------------------------


@dataclass(frozen=True)
class ChainModule:
    """``Z_k`` (kind ``"Z"``) or ``S_k`` (kind ``"S"``) over a chain ring."""

    ring: ChainRing
    kind: str
    k: int

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "S"):
            raise ValueError("chain module kind must be 'Z' or 'S'")
        if not isinstance(self.k, int) or self.k < 1 or (self.kind == "Z" and self.k > self.ring.m):
            raise ValueError(f"k={self.k} out of range for this module")

    family = CHAIN

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def classes(self) -> int:
        return self.ring.m + 1

    @property
    def zero_class(self) -> int:
        return self.ring.m

    @property
    def size(self) -> int:
        return self.ring.q**self.k

    def check_orbit(self, oid) -> Any:
        m, k, q = self.ring.m, self.k, self.ring.q
        if self.kind == "Z":
            if not isinstance(oid, int) or not m - k <= oid < m:
                raise ValueError(f"Z_{k} functional orbit ids are exponents {m - k}..{m - 1}, got {oid!r}")
            return oid
        v = tuple(int(x) for x in oid)
        if len(v) != k or any(not 0 <= x < q for x in v):
            raise ValueError(f"S_{k} functional ids are length-{k} vectors over F_{q}")
        if normalize_vector(v, q) != v:
            raise ValueError(f"{v} is not normalized (last nonzero entry must be 1)")
        return v

    def functional_orbits(self) -> list:
        m, k, q = self.ring.m, self.k, self.ring.q
        if self.kind == "Z":
            return list(range(m - k, m))
        return sorted(normalize_vector(v, q) for v in product(range(q), repeat=k) if any(v) and normalize_vector(v, q) == v)

    def module_orbits(self) -> list[tuple[Any, int]]:
        """(representative, orbit size) for every orbit, zero included."""
        q, k = self.ring.q, self.k
        if self.kind == "Z":
            return [(i, q ** (k - i - 1) * (q - 1) if i < k else 1) for i in range(k + 1)]
        return [(v, q - 1) for v in self.functional_orbits()] + [((0,) * k, 1)]

    def pair_class(self, x, oid) -> int:
        """Valuation of x paired with the functional of orbit ``oid``."""
        m = self.ring.m
        if self.kind == "Z":
            return min(x + oid, m) if x < self.k else m
        F = get_field(self.ring.q)
        return m - 1 if F.dot(x, oid) else m

    def elements(self) -> Iterable:
        if self.kind == "Z":
            return range(self.ring.q**self.k)
        return product(range(self.ring.q), repeat=self.k)

    def element_orbit(self, x):
        """Orbit representative of a module element (as yielded by ``elements``)."""
        if self.kind == "Z":
            return min(self.ring.val_idx(x), self.k)
        return normalize_vector(x, self.ring.q) if any(x) else (0,) * self.k

    def functional_column(self, oid) -> tuple[int, ...]:
        """Generator-matrix column (ring indices) for one functional."""
        R = self.ring
        if self.kind == "Z":
            return (R.theta_power_idx(oid),)
        top = R.theta_power_idx(R.m - 1)
        return tuple(R.mul_idx(R.lift_field_idx(c), top) for c in oid)

    def zero_column(self) -> tuple[int, ...]:
        return (0,) * (1 if self.kind == "Z" else self.k)

    def to_json(self) -> dict:
        return {"ring": self.ring.representation, "q": self.ring.q, "m": self.ring.m, "kind": self.kind, "k": self.k}

    def orbit_to_json(self, oid):
        return oid if self.kind == "Z" else list(oid)

    def orbit_from_json(self, raw):
        return self.check_orbit(raw if self.kind == "Z" else tuple(raw))


@dataclass(frozen=True)
class MatrixModule:
    """The information module ``M_{k x m}(F_q)`` over ``M_k(F_q)``."""

    q: int
    k: int
    m: int
    ordering: str = "lex"

    family = MATRIX

    def __post_init__(self) -> None:
        get_field(self.q)
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be positive")

    @property
    def classes(self) -> int:
        return self.k + 1

    @property
    def zero_class(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return self.q ** (self.k * self.m)

    @property
    def ring(self) -> MatrixRing:
        return MatrixRing(self.q, self.k)

    @cached_property
    def index(self) -> OrbitIndex:
        return orbit_index(self.k, self.m, self.q, self.ordering)

    def check_orbit(self, oid) -> Subspace:
        if not isinstance(oid, Subspace):
            oid = Subspace.span(self.q, self.m, oid)
        if oid.q != self.q or oid.m != self.m or not 1 <= oid.dim <= min(self.k, self.m):
            raise ValueError("functional orbit must be a nonzero subspace of F_q^m of dim <= k")
        return oid

    def functional_orbits(self) -> list[Subspace]:
        return list(self.index.nonzero)

    def module_orbits(self) -> list[tuple[Subspace, int]]:
        return [(s, orbit_size_matrix(s.dim, self.k, self.q)) for s in self.index.flat]

    def pair_class(self, x: Subspace, oid: Subspace) -> int:
        return _pair_rank(x, oid)

    def functional_column(self, oid: Subspace) -> tuple[tuple[int, ...], ...]:
        """An m x k matrix whose column space is ``oid``."""
        cols = list(oid.basis) + [(0,) * self.m] * (self.k - oid.dim)
        return tuple(tuple(c[r] for c in cols) for r in range(self.m))

    def zero_column(self) -> tuple[tuple[int, ...], ...]:
        return tuple((0,) * self.k for _ in range(self.m))

    def to_json(self) -> dict:
        return {"q": self.q, "k": self.k, "m": self.m}

    def orbit_to_json(self, oid: Subspace):
        return oid.label()

    def orbit_from_json(self, raw) -> Subspace:
        return self.check_orbit(Subspace.span(self.q, self.m, raw))


def _orbit_key(oid):
    if isinstance(oid, Subspace):
        return (oid.dim, oid.basis)
    return (0, oid) if isinstance(oid, int) else (1, oid)


# --- multiplicity functions ------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityFunction:
    """Counts of each functional orbit, plus the count of zero functionals."""

    module: Any
    counts: tuple[tuple[Any, int], ...]
    zero_count: int = 0

    def __post_init__(self) -> None:
        merged: dict = {}
        for oid, c in self.counts:
            oid = self.module.check_orbit(oid)
            if not isinstance(c, int) or c < 0:
                raise ValueError("multiplicities must be nonnegative integers")
            merged[oid] = merged.get(oid, 0) + c
        if not isinstance(self.zero_count, int) or self.zero_count < 0:
            raise ValueError("zero_count must be a nonnegative integer")
        ordered = tuple(sorted(((o, c) for o, c in merged.items() if c), key=lambda oc: _orbit_key(oc[0])))
        object.__setattr__(self, "counts", ordered)

    @classmethod
    def from_mapping(cls, module, counts: dict, zero_count: int = 0) -> "MultiplicityFunction":
        return cls(module, tuple(counts.items()), zero_count)

    @property
    def family(self) -> str:
        return self.module.family

    @property
    def length(self) -> int:
        return self.zero_count + sum(c for _, c in self.counts)

    def as_dict(self) -> dict:
        return dict(self.counts)

    def count(self, oid) -> int:
        return self.as_dict().get(self.module.check_orbit(oid), 0)

    def with_zeros(self, z: int) -> "MultiplicityFunction":
        return MultiplicityFunction(self.module, self.counts, self.zero_count + z)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "module": self.module.to_json(),
            "multiplicities": [{"orbit": self.module.orbit_to_json(o), "count": c} for o, c in self.counts],
            "zero_count": self.zero_count,
        }

    @classmethod
    def from_json(cls, data: dict | str, ordering: str = "lex") -> "MultiplicityFunction":
        if isinstance(data, str):
            data = json.loads(data)
        module = module_from_json(data["family"], data["module"], ordering)
        counts = tuple((module.orbit_from_json(t["orbit"]), int(t["count"])) for t in data["multiplicities"])
        return cls(module, counts, int(data.get("zero_count", 0)))


def module_from_json(family: str, desc: dict, ordering: str = "lex"):
    if family == CHAIN:
        rep = desc.get("ring", ZMOD)
        if rep not in (ZMOD, POLY):
            raise ValueError(f"unknown chain ring representation {rep!r}")
        ring = ChainRing(int(desc["q"]), int(desc["m"]), rep)
        return ChainModule(ring, desc["kind"], int(desc["k"]))
    if family == MATRIX:
        return MatrixModule(int(desc["q"]), int(desc["k"]), int(desc["m"]), ordering)
    raise ValueError(f"unknown family {family!r}")


def matrix_mf_from_vector(module: MatrixModule, vec: Sequence[int]) -> MultiplicityFunction:
    """Build from ``<eta([0]) | rank-1 entries | rank-2 entries | ...>`` in index order."""
    flat = module.index.flat
    if len(vec) != len(flat):
        raise ValueError(f"expected {len(flat)} entries, got {len(vec)}")
    return MultiplicityFunction(module, tuple((s, int(c)) for s, c in zip(flat[1:], vec[1:])), int(vec[0]))


def matrix_mf_to_vector(eta: MultiplicityFunction) -> list[int]:
    d = eta.as_dict()
    return [eta.zero_count] + [d.get(s, 0) for s in eta.module.index.nonzero]


def _check_family(eta: MultiplicityFunction, w: WeightTable) -> None:
    mod = eta.module
    if w.family != mod.family:
        raise ValueError("weight and code belong to different ring families")
    n = mod.ring.m if mod.family == CHAIN else mod.k
    if w.q != mod.q or w.n != n:
        raise ValueError("weight table does not match the ring of the code")


# --- orbit data ------------------------------------------------------------------


def class_vector(eta: MultiplicityFunction, x) -> tuple[int, ...]:
    """Exponent vector (count of coordinates per class) of the codeword of x."""
    mod = eta.module
    out = [0] * mod.classes
    out[mod.zero_class] += eta.zero_count
    for oid, c in eta.counts:
        out[mod.pair_class(x, oid)] += c
    return tuple(out)


def kernel_size(eta: MultiplicityFunction) -> int:
    """Number of module elements mapped to the zero codeword."""
    mod = eta.module
    if mod.family == MATRIX:
        span = Subspace.zero(mod.q, mod.m)
        for oid, _ in eta.counts:
            span = span + oid
        return mod.q ** (mod.k * (mod.m - span.dim))
    zero = mod.zero_class
    return sum(size for x, size in mod.module_orbits() if all(mod.pair_class(x, o) == zero for o, _ in eta.counts))


def efflength(eta: MultiplicityFunction) -> int:
    return eta.length - eta.zero_count


def orbit_weights(eta: MultiplicityFunction, w: WeightTable) -> list[tuple[Any, int]]:
    """(module orbit, omega) for every module orbit, in the module's order."""
    _check_family(eta, w)
    cw = w.class_weights()
    return [(x, sum(cw[eta.module.pair_class(x, o)] * c for o, c in eta.counts)) for x, _ in eta.module.module_orbits()]


def omega_vector(eta: MultiplicityFunction, w: WeightTable) -> list[int]:
    """Orbit weights as a flat list in module-orbit order (matrix: index order)."""
    return [v for _, v in orbit_weights(eta, w)]


def se_from_orbits(eta: MultiplicityFunction) -> PartitionEnumerator:
    """Symmetrized or rank-partition enumerator of the code."""
    mod = eta.module
    acc: Counter = Counter()
    for x, size in mod.module_orbits():
        acc[class_vector(eta, x)] += size
    ker = kernel_size(eta)
    out = {}
    for exps, c in acc.items():
        if c % ker:
            raise ValueError("orbit counts are not divisible by the kernel size")
        out[exps] = c // ker
    return PartitionEnumerator.from_dict(mod.classes, eta.length, out)


def se_by_elements(eta: MultiplicityFunction) -> PartitionEnumerator:
    """The same enumerator from explicit codewords (chain modules only)."""
    mod = eta.module
    if mod.family != CHAIN:
        raise ValueError("element iteration is provided for chain modules")
    acc: Counter = Counter()
    for x in mod.elements():
        acc[class_vector(eta, mod.element_orbit(x))] += 1
    ker = kernel_size(eta)
    return PartitionEnumerator.from_dict(mod.classes, eta.length, {e: c // ker for e, c in acc.items()})


def wwe_from_orbits(eta: MultiplicityFunction, w: WeightTable) -> WWEnumerator:
    _check_family(eta, w)
    acc: Counter = Counter()
    for (x, size), (_, om) in zip(eta.module.module_orbits(), orbit_weights(eta, w)):
        acc[om] += size
    ker = kernel_size(eta)
    if any(c % ker for c in acc.values()):
        raise ValueError("orbit counts are not divisible by the kernel size")
    return WWEnumerator.from_dict({d: c // ker for d, c in acc.items()})


def code_size(eta: MultiplicityFunction) -> int:
    return eta.module.size // kernel_size(eta)


# --- generator matrices and brute force ---------------------------------------------


@dataclass(frozen=True)
class GeneratorMatrix:
    """Columns of a generator matrix over the concrete ring.

    Chain: each column is a tuple of ring indices (one per generator row).
    Matrix: each column is an m x k matrix over F_q, as a tuple of rows.
    """

    module: Any
    columns: tuple

    @property
    def length(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> list[list]:
        if not self.columns:
            return []
        return [list(col) for col in zip(*self.columns)]


def generator_matrix(eta: MultiplicityFunction) -> GeneratorMatrix:
    """Columns grouped by orbit in canonical orbit order, zero columns last."""
    mod = eta.module
    cols = []
    for oid, c in eta.counts:
        cols.extend([mod.functional_column(oid)] * c)
    cols.extend([mod.zero_column()] * eta.zero_count)
    return GeneratorMatrix(mod, tuple(cols))


def _ring_classes(mod) -> tuple[int, list[int], Any]:
    """(ring size, class of each ring element index, element arithmetic)."""
    if mod.family == CHAIN:
        R = mod.ring
        return R.size, [R.val_idx(a) for a in range(R.size)], R
    ring = mod.ring
    return ring.size, [e.rank() for e in ring.elements()], ring


def _matrix_encode(rows: Sequence[Sequence[int]], q: int) -> int:
    a = 0
    for r in rows:
        for x in r:
            a = a * q + x
    return a


def brute_force_dual_wwe(G: GeneratorMatrix, w: WeightTable, budget: int = DEFAULT_BUDGET) -> WWEnumerator:
    """w-weight enumerator of the right dual ``{y : sum_i G_i y_i = 0}``.

    The count covers every y in R^n. It is organised as a tally over
    coordinates keyed by the running sum ``sum_{i<=t} G_i y_i``, which gives
    exactly the same multiset as listing all of R^n.
    """
    mod = G.module
    n = G.length
    size, classes, ring = _ring_classes(mod)
    if size**n > budget:
        raise BudgetExceeded(f"|R|^n = {size}^{n} exceeds the budget {budget}")
    cw = w.class_weights()
    weight_of = [cw[c] for c in classes]
    if mod.family == CHAIN:
        R = ring
        rows = len(G.columns[0]) if n else 1
        zero_state = (0,) * rows
        states = {zero_state: Counter({0: 1})}
        for col in G.columns:
            contrib = [tuple(R.mul_idx(g, y) for g in col) for y in range(size)]
            nxt: dict = {}
            for st, tally in states.items():
                for y in range(size):
                    new = tuple(R.add_idx(a, b) for a, b in zip(st, contrib[y]))
                    bucket = nxt.setdefault(new, Counter())
                    wy = weight_of[y]
                    for d, c in tally.items():
                        bucket[d + wy] += c
            states = nxt
        return WWEnumerator.from_dict(dict(states.get(zero_state, {})))
    F = get_field(mod.q)
    elems = list(ring.elements())
    zero_state = tuple((0,) * mod.k for _ in range(mod.m))
    states = {zero_state: Counter({0: 1})}
    for col in G.columns:
        lam = FqMatrix(mod.q, col, mod.k)
        contrib = [(lam @ y).rows for y in elems]
        nxt = {}
        for st, tally in states.items():
            for yi, add in enumerate(contrib):
                new = tuple(tuple(F.add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(st, add))
                bucket = nxt.setdefault(new, Counter())
                wy = weight_of[yi]
                for d, c in tally.items():
                    bucket[d + wy] += c
        states = nxt
    return WWEnumerator.from_dict(dict(states.get(zero_state, {})))


def brute_force_dual_by_listing(G: GeneratorMatrix, w: WeightTable, budget: int = 2**16) -> WWEnumerator:
    """Literal enumeration of every y in R^n; only for very small cases."""
    mod = G.module
    n = G.length
    size, classes, ring = _ring_classes(mod)
    if size**n > budget:
        raise BudgetExceeded(f"|R|^n = {size}^{n} exceeds the budget {budget}")
    cw = w.class_weights()
    acc: Counter = Counter()
    if mod.family == CHAIN:
        R = ring
        rows = len(G.columns[0]) if n else 1
        for ys in product(range(size), repeat=n):
            s = [0] * rows
            for col, y in zip(G.columns, ys):
                for r in range(rows):
                    s[r] = R.add_idx(s[r], R.mul_idx(col[r], y))
            if not any(s):
                acc[sum(cw[classes[y]] for y in ys)] += 1
        return WWEnumerator.from_dict(acc)
    elems = list(ring.elements())
    lams = [FqMatrix(mod.q, col, mod.k) for col in G.columns]
    for ys in product(range(size), repeat=n):
        s = FqMatrix.zero(mod.q, mod.m, mod.k)
        for lam, y in zip(lams, ys):
            s = s + lam @ elems[y]
        if s.is_zero():
            acc[sum(cw[classes[y]] for y in ys)] += 1
    return WWEnumerator.from_dict(acc)


def codewords(G: GeneratorMatrix) -> list[tuple[int, ...]]:
    """All codewords as tuples of orbit classes, with repetition removed."""
    mod = G.module
    seen = set()
    if mod.family == CHAIN:
        R = mod.ring
        rows = len(G.columns[0]) if G.columns else 1
        for xs in product(range(R.size), repeat=rows):
            word = tuple(_chain_dot(R, xs, col) for col in G.columns)
            seen.add(word)
        return sorted(seen)
    lams = [FqMatrix(mod.q, col, mod.k) for col in G.columns]
    for vals in product(range(mod.q), repeat=mod.k * mod.m):
        x = FqMatrix(mod.q, tuple(tuple(vals[r * mod.m:(r + 1) * mod.m]) for r in range(mod.k)), mod.m)
        seen.add(tuple(_matrix_encode((x @ lam).rows, mod.q) for lam in lams))
    return sorted(seen)


def _chain_dot(R: ChainRing, xs, col) -> int:
    s = 0
    for x, g in zip(xs, col):
        s = R.add_idx(s, R.mul_idx(x, g))
    return s


def brute_force_wwe(G: GeneratorMatrix, w: WeightTable) -> WWEnumerator:
    """Primal w-weight enumerator from explicit codewords."""
    mod = G.module
    cw = w.class_weights()
    acc: Counter = Counter()
    if mod.family == CHAIN:
        R = mod.ring
        for word in codewords(G):
            acc[sum(cw[R.val_idx(a)] for a in word)] += 1
        return WWEnumerator.from_dict(acc)
    ranks = {}
    for word in codewords(G):
        tot = 0
        for a in word:
            if a not in ranks:
                digits = []
                b = a
                for _ in range(mod.k * mod.k):
                    digits.append(b % mod.q)
                    b //= mod.q
                digits.reverse()
                ranks[a] = rank_rows([digits[r * mod.k:(r + 1) * mod.k] for r in range(mod.k)], get_field(mod.q))
            tot += cw[ranks[a]]
        acc[tot] += 1
    return WWEnumerator.from_dict(acc)


# --- weight sums -------------------------------------------------------------------


def weight_sum_check(eta: MultiplicityFunction, w: WeightTable) -> tuple[int, Fraction | None]:
    """Total weight of all codewords, and gamma |C| efflength when w is egalitarian.

    The left side uses one term per coordinate: the kernel size of the
    functional times the weight sum over its image.
    """
    _check_family(eta, w)
    mod = eta.module
    q = mod.q
    total = 0
    for oid, c in eta.counts:
        if mod.family == CHAIN:
            m = mod.ring.m
            e = oid if mod.kind == "Z" else m - 1
            img = sum(orbit_size(i, mod.ring) * w.w(i) for i in range(e, m))
            ker = mod.size // q ** (m - e)
        else:
            j = oid.dim
            img = sum(qbinom(j, i, q) * orbit_size_matrix(i, mod.k, q) * w.w(i) for i in range(1, j + 1))
            ker = q ** (mod.k * (mod.m - j))
        total += c * ker * img
    kers = kernel_size(eta)
    if total % kers:
        raise ValueError("weight total is not divisible by the kernel size")
    lhs = total // kers
    gamma = egalitarian_check(w)
    rhs = None if gamma is None else gamma * code_size(eta) * efflength(eta)
    return lhs, rhs

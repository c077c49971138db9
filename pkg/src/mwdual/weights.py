"""Weight tables with maximal symmetry on the two ring families.

A chain weight stores ``w_0..w_{m-1}``, its value on the orbit of
``theta^i``. A matrix weight stores ``w_1..w_k``, its value on rank-i
matrices. The zero element always has weight 0 and is never stored.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactmath import prime_power, qbinom
from .matrixring import orbit_size_matrix

CHAIN = "chain"
MATRIX = "matrix"


@dataclass(frozen=True)
class WeightTable:
    family: str
    q: int
    n: int  # m for chain rings, k for matrix rings
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in (CHAIN, MATRIX):
            raise ValueError(f"family must be 'chain' or 'matrix', got {self.family!r}")
        prime_power(self.q)
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("m or k must be a positive integer")
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.n:
            raise ValueError(f"expected {self.n} weight values, got {len(vals)}")
        if any(not isinstance(v, int) or isinstance(v, bool) or v <= 0 for v in vals):
            raise ValueError("weight values must be positive integers")

    @classmethod
    def chain(cls, q: int, values) -> "WeightTable":
        values = tuple(values)
        return cls(CHAIN, q, len(values), values)

    @classmethod
    def matrix(cls, q: int, values) -> "WeightTable":
        values = tuple(values)
        return cls(MATRIX, q, len(values), values)

    @property
    def m(self) -> int:
        if self.family != CHAIN:
            raise ValueError("m is defined for chain weights only")
        return self.n

    @property
    def k(self) -> int:
        if self.family != MATRIX:
            raise ValueError("k is defined for matrix weights only")
        return self.n

    def w(self, i: int) -> int:
        """Weight of orbit class i (valuation for chain, rank for matrix)."""
        if self.family == CHAIN:
            if not 0 <= i <= self.n:
                raise ValueError("valuation out of range")
            return 0 if i == self.n else self.values[i]
        if not 0 <= i <= self.n:
            raise ValueError("rank out of range")
        return 0 if i == 0 else self.values[i - 1]

    def class_weights(self) -> list[int]:
        """Weights indexed by orbit class, zero class included."""
        return [self.w(i) for i in range(self.n + 1)]

    @property
    def zero_class(self) -> int:
        return self.n if self.family == CHAIN else 0

    def nonzero_classes(self) -> list[int]:
        return [i for i in range(self.n + 1) if i != self.zero_class]

    @property
    def w_min(self) -> int:
        return min(self.values)

    @property
    def w_max(self) -> int:
        return max(self.values)

    def min_indices(self) -> list[int]:
        return index_set(self, self.w_min)

    def to_json(self) -> dict:
        key = "m" if self.family == CHAIN else "k"
        return {"family": self.family, "q": self.q, key: self.n, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict | str) -> "WeightTable":
        if isinstance(data, str):
            data = json.loads(data)
        fam = data.get("family")
        key = "m" if fam == CHAIN else "k"
        if key not in data or "q" not in data or "values" not in data:
            raise ValueError("weight descriptor needs family, q, m or k, and values")
        return cls(fam, int(data["q"]), int(data[key]), tuple(int(v) for v in data["values"]))


def index_set(w: WeightTable, d: int) -> list[int]:
    """Classes carrying weight d (ranks 1..k, or valuations 0..m-1)."""
    return [i for i in w.nonzero_classes() if w.w(i) == d]


def homogeneous_chain(q: int, m: int) -> WeightTable:
    """Homogeneous weight on a chain ring, normalized so the average is q-1."""
    prime_power(q)
    if m < 1:
        raise ValueError("m must be positive")
    return WeightTable.chain(q, [q - 1] * (m - 1) + [q])


def homogeneous_matrix(k: int, q: int) -> WeightTable:
    """Homogeneous weight on M_k(F_q) with the integer normalization."""
    prime_power(q)
    if k < 1:
        raise ValueError("k must be positive")
    zeta = Fraction(1, q)
    for t in range(1, k + 1):
        zeta *= q**t - 1
    vals = []
    for rho in range(1, k + 1):
        den = 1
        for t in range(rho):
            den *= q ** (k - t) - 1
        v = zeta * (1 - Fraction((-1) ** rho, den))
        if v.denominator != 1:
            raise ValueError(f"homogeneous value at rank {rho} is not an integer: {v}")
        vals.append(int(v))
    return WeightTable.matrix(q, vals)


def hamming(family: str, q: int, n: int) -> WeightTable:
    if family not in (CHAIN, MATRIX):
        raise ValueError(f"unknown family {family!r}")
    return WeightTable(family, q, n, (1,) * n)


def scale(w: WeightTable, c: int) -> WeightTable:
    if not isinstance(c, int) or c < 1:
        raise ValueError("scale factor must be a positive integer")
    return WeightTable(w.family, w.q, w.n, tuple(c * v for v in w.values))


def is_hamming_multiple(w: WeightTable) -> bool:
    return len(set(w.values)) == 1


@dataclass(frozen=True)
class EpsilonData:
    """Consecutive differences of a chain weight.

    ``eps[i]`` holds epsilon_i for i = 1..m (index 0 unused) and
    ``eps_prime[i]`` holds the modified differences for i = 1..m-1.
    """

    eps: tuple[int, ...]
    eps_prime: tuple[int, ...]


def epsilons(w: WeightTable) -> EpsilonData:
    if w.family != CHAIN:
        raise ValueError("epsilons are defined for chain weights")
    m, q = w.n, w.q
    eps = [0] + [w.w(i) - w.w(i - 1) for i in range(1, m + 1)]
    ep = [0] + eps[1 : m - 1] + ([q * eps[m - 1] + eps[m]] if m >= 2 else [])
    return EpsilonData(tuple(eps), tuple(ep))


def c_coefficients(w: WeightTable) -> list[int]:
    """Block coefficients c_1..c_k of the block-diagonalized W_0."""
    if w.family != MATRIX:
        raise ValueError("c coefficients are defined for matrix weights")
    q, k = w.q, w.n
    out = []
    for j in range(1, k + 1):
        s = sum((-1) ** ell * q ** comb(ell, 2) * qbinom(j, ell, q) * w.w(ell) for ell in range(1, j + 1))
        out.append((-1) ** j * q ** comb(j, 2) * s)
    return out


def is_degenerate(w: WeightTable) -> bool:
    return any(c == 0 for c in c_coefficients(w))


def ideal_weight_sums(w: WeightTable) -> list[tuple[int, int]]:
    """(sum of weights, size) for each nonzero left ideal class.

    Chain rings: the ideals (theta^j), j = 0..m-1. Matrix rings: the
    cyclic modules R x with rank x = 1..k (rows of x spanning a fixed space).
    """
    q, n = w.q, w.n
    out = []
    if w.family == CHAIN:
        for j in range(n):
            total = sum(q ** (n - i - 1) * (q - 1) * w.w(i) for i in range(j, n))
            out.append((total, q ** (n - j)))
    else:
        for rho in range(1, n + 1):
            total = sum(qbinom(rho, i, q) * orbit_size_matrix(i, n, q) * w.w(i) for i in range(1, rho + 1))
            out.append((total, q ** (n * rho)))
    return out


def egalitarian_check(w: WeightTable, ring=None) -> Fraction | None:
    """Common average weight over nonzero left ideals, or None if it varies."""
    if ring is not None and getattr(ring, "q", w.q) != w.q:
        raise ValueError("ring and weight disagree on q")
    avgs = {Fraction(s, size) for s, size in ideal_weight_sums(w)}
    if len(avgs) != 1:
        return None
    return avgs.pop()

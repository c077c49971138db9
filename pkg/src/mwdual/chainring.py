"""Finite chain rings: Z/p^m and F_q[x]/(x^m).

Elements are stored as integer indices ``0..q^m-1``. For ``Z/p^m`` the index
is the residue itself. For ``F_q[x]/(x^m)`` the index is ``sum c_i q^i`` where
``c_i`` is the field element (see :mod:`mwdual.finitefield`) multiplying
``x^i``. The uniformizer is ``p`` or ``x`` respectively.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .exactmath import prime_power
from .finitefield import FqField, get_field

ZMOD = "zmod"
POLY = "poly"


@dataclass(frozen=True)
class ChainRing:
    """A chain ring with residue field of size ``q`` and nilpotency index ``m``."""

    q: int
    m: int
    representation: str = ZMOD

    def __post_init__(self) -> None:
        p, e = prime_power(self.q)
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if self.representation not in (ZMOD, POLY):
            raise ValueError(f"unknown representation {self.representation!r}")
        if self.representation == ZMOD and e != 1:
            raise ValueError("Z/p^m needs q prime; use the poly representation")

    @classmethod
    def zmod(cls, p: int, m: int) -> "ChainRing":
        return cls(p, m, ZMOD)

    @classmethod
    def poly(cls, q: int, m: int) -> "ChainRing":
        return cls(q, m, POLY)

    # structure ---------------------------------------------------------------

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def size(self) -> int:
        return self.q**self.m

    @cached_property
    def field(self) -> FqField:
        return get_field(self.q)

    def describe(self) -> str:
        if self.representation == ZMOD:
            return f"Z/{self.size}"
        return f"F_{self.q}[x]/(x^{self.m})"

    def orbit_size(self, i: int) -> int:
        return orbit_size(i, self)

    # index-level arithmetic ---------------------------------------------------

    def _coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.q)
            a //= self.q
        return out

    def _index(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.q + c
        return a

    @cached_property
    def _tables(self) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...], tuple[int, ...]]:
        n = self.size
        if self.representation == ZMOD:
            add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
            mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
            neg = tuple((-a) % n for a in range(n))
            return add, mul, neg
        F = self.field
        co = [self._coeffs(a) for a in range(n)]
        add = tuple(tuple(self._index(F.add(x, y) for x, y in zip(co[a], co[b])) for b in range(n)) for a in range(n))
        neg = tuple(self._index(F.neg(x) for x in co[a]) for a in range(n))
        mul_rows = []
        for a in range(n):
            row = []
            for b in range(n):
                prod = [0] * self.m
                for i, x in enumerate(co[a]):
                    if x:
                        for j in range(self.m - i):
                            y = co[b][j]
                            if y:
                                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
                row.append(self._index(prod))
            mul_rows.append(tuple(row))
        return add, tuple(mul_rows), neg

    def add_idx(self, a: int, b: int) -> int:
        return self._tables[0][a][b]

    def mul_idx(self, a: int, b: int) -> int:
        return self._tables[1][a][b]

    def neg_idx(self, a: int) -> int:
        return self._tables[2][a]

    @cached_property
    def _valuations(self) -> tuple[int, ...]:
        out = []
        for a in range(self.size):
            if a == 0:
                out.append(self.m)
            elif self.representation == ZMOD:
                v = 0
                while a % self.p == 0:
                    a //= self.p
                    v += 1
                out.append(v)
            else:
                out.append(next(i for i, c in enumerate(self._coeffs(a)) if c))
        return tuple(out)

    def val_idx(self, a: int) -> int:
        return self._valuations[a]

    def theta_power_idx(self, i: int) -> int:
        """Index of theta^i (zero for i >= m)."""
        if i >= self.m:
            return 0
        if self.representation == ZMOD:
            return self.p**i
        return self.q**i

    def lift_field_idx(self, c: int) -> int:
        """Index of a fixed lift of the residue-field element ``c``.

        For Z/p this is the integer ``c`` itself; for the polynomial ring it
        is the constant polynomial ``c``.
        """
        if not 0 <= c < self.q:
            raise ValueError(f"{c} is not a residue field element")
        return c

    def character_exponent(self, a: int) -> tuple[int, int]:
        """Generating character value as ``(e, N)`` meaning ``exp(2 pi i e / N)``."""
        if self.representation == ZMOD:
            return a, self.size
        top = self._coeffs(a)[self.m - 1]
        return self.field.trace(top), self.p

    # element-level API --------------------------------------------------------

    def element(self, value) -> "ChainElement":
        """Build an element from an int residue or a coefficient tuple."""
        if self.representation == ZMOD:
            if not isinstance(value, int):
                raise ValueError("Z/p^m elements are integers")
            return ChainElement(self, value % self.size)
        coeffs = tuple(value)
        if len(coeffs) > self.m or any(not 0 <= c < self.q for c in coeffs):
            raise ValueError(f"bad coefficient vector {value!r}")
        return ChainElement(self, self._index(coeffs))

    def from_index(self, a: int) -> "ChainElement":
        if not 0 <= a < self.size:
            raise ValueError(f"index {a} out of range")
        return ChainElement(self, a)

    def elements(self) -> Iterator["ChainElement"]:
        for a in range(self.size):
            yield ChainElement(self, a)

    @property
    def zero(self) -> "ChainElement":
        return ChainElement(self, 0)

    @property
    def one(self) -> "ChainElement":
        return ChainElement(self, 1)

    @property
    def theta(self) -> "ChainElement":
        return ChainElement(self, self.theta_power_idx(1))

    def valuation(self, r: "ChainElement") -> int:
        return valuation(r)

    def add(self, a: "ChainElement", b: "ChainElement") -> "ChainElement":
        return a + b

    def mul(self, a: "ChainElement", b: "ChainElement") -> "ChainElement":
        return a * b

    def neg(self, a: "ChainElement") -> "ChainElement":
        return -a

    def is_unit(self, a: "ChainElement") -> bool:
        return a.is_unit()


@dataclass(frozen=True)
class ChainElement:
    ring: ChainRing
    index: int = field(compare=True)

    def _same(self, other: "ChainElement") -> None:
        if not isinstance(other, ChainElement) or other.ring != self.ring:
            raise ValueError("operands belong to different rings")

    def __add__(self, other: "ChainElement") -> "ChainElement":
        self._same(other)
        return ChainElement(self.ring, self.ring.add_idx(self.index, other.index))

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        self._same(other)
        return ChainElement(self.ring, self.ring.add_idx(self.index, self.ring.neg_idx(other.index)))

    def __mul__(self, other: "ChainElement") -> "ChainElement":
        self._same(other)
        return ChainElement(self.ring, self.ring.mul_idx(self.index, other.index))

    def __neg__(self) -> "ChainElement":
        return ChainElement(self.ring, self.ring.neg_idx(self.index))

    @property
    def value(self):
        """Representation payload: an int residue or a coefficient tuple."""
        if self.ring.representation == ZMOD:
            return self.index
        return tuple(self.ring._coeffs(self.index))

    def valuation(self) -> int:
        return self.ring.val_idx(self.index)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def __repr__(self) -> str:
        return f"ChainElement({self.ring.describe()}, {self.value!r})"


def valuation(r: ChainElement) -> int:
    """Largest i with r in (theta^i); the zero element has valuation m."""
    return r.valuation()


def orbit_size(i: int, ring: ChainRing) -> int:
    """Size of the unit orbit of theta^i."""
    if not 0 <= i <= ring.m:
        raise ValueError(f"orbit class {i} outside 0..{ring.m}")
    if i == ring.m:
        return 1
    return ring.q ** (ring.m - i - 1) * (ring.q - 1)


def kravchuk_entry(i: int, j: int, q: int, m: int) -> int:
    """Closed form for the sum of chi(theta^j s) over s in orb(theta^i)."""
    if i == m:
        return 1
    if i + j <= m - 2:
        return 0
    if i + j == m - 1:
        return -(q ** (m - i - 1))
    return q ** (m - i - 1) * (q - 1)


def generalized_kravchuk(ring: ChainRing) -> list[list[int]]:
    """Rows: class of the summed variable. Columns: class of the character."""
    return [[kravchuk_entry(i, j, ring.q, ring.m) for j in range(ring.m + 1)] for i in range(ring.m + 1)]


def chain_kravchuk(q: int, m: int) -> list[list[int]]:
    prime_power(q)
    return [[kravchuk_entry(i, j, q, m) for j in range(m + 1)] for i in range(m + 1)]


def reduce_root_sum(counts: Counter, n: int) -> int:
    """Integer value of ``sum counts[e] * zeta_n^e`` for a prime power ``n``.

    The only relations among n-th roots of unity come from the cosets
    ``{r + t n/p}``, each of which sums to zero. The sum is an integer exactly
    when the counts are constant on every coset except for an excess at
    exponent 0. Raises ValueError when the sum is not a rational integer.
    """
    p, _ = prime_power(n)
    step = n // p
    c = [counts.get(e % n, 0) for e in range(n)]
    total = c[0] - c[step] if p > 1 else c[0]
    for r in range(step):
        coset = [c[r + t * step] for t in range(p)]
        if r == 0:
            coset[0] -= total
        if len(set(coset)) != 1:
            raise ValueError("root-of-unity sum is not an integer")
    return total


def brute_kravchuk(ring: ChainRing) -> list[list[int]]:
    """Kravchuk matrix from explicit character sums over ring elements."""
    m = ring.m
    out = [[0] * (m + 1) for _ in range(m + 1)]
    by_class: dict[int, list[int]] = {i: [] for i in range(m + 1)}
    for a in range(ring.size):
        by_class[ring.val_idx(a)].append(a)
    n = None
    for j in range(m + 1):
        r = ring.theta_power_idx(j)
        for i in range(m + 1):
            cnt: Counter = Counter()
            for s in by_class[i]:
                e, n = ring.character_exponent(ring.mul_idx(r, s))
                cnt[e % n] += 1
            out[i][j] = reduce_root_sum(cnt, n)
    return out

"""Finite fields F_q with elements encoded as integers ``0..q-1``.

An element is the base-p number whose digits are the coefficients of its
polynomial representative (digit ``i`` is the coefficient of ``x^i``).
Multiplication and inversion go through log/antilog tables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exactmath import prime_power

# Monic irreducible moduli, low degree first, constant term first.
BUILTIN_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (2, 2, 1),  # x^2 + 2x + 2 (primitive)
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    25: (2, 1, 1),  # x^2 + x + 2
    27: (1, 2, 0, 1),  # x^3 + 2x + 1
}

MAX_TABLE_Q = 2**16


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _polymulmod(a: list[int], b: list[int], mod: Sequence[int], p: int) -> list[int]:
    e = len(mod) - 1
    prod = [0] * (2 * e - 1 if e else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for t in range(e + 1):
                prod[deg - e + t] = (prod[deg - e + t] - c * mod[t]) % p
    return (prod + [0] * e)[:e]


@dataclass(frozen=True)
class FqField:
    """The field with ``q = p**e`` elements."""

    q: int
    modulus: tuple[int, ...] = ()
    p: int = field(init=False)
    e: int = field(init=False)
    _exp: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _log: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _add: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _trace: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        p, e = prime_power(self.q)
        if self.q > MAX_TABLE_Q:
            raise ValueError(f"q={self.q} exceeds the table limit {MAX_TABLE_Q}")
        mod = tuple(self.modulus)
        if e == 1:
            mod = (0, 1)
        elif not mod:
            if self.q not in BUILTIN_MODULI:
                raise ValueError(f"no built-in modulus for q={self.q}; supply one")
            mod = BUILTIN_MODULI[self.q]
        if len(mod) != e + 1 or mod[-1] % p != 1 or any(not 0 <= c < p for c in mod):
            raise ValueError("modulus must be monic of degree e with coefficients in 0..p-1")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        q = self.q
        add = tuple(
            tuple(_undigits([(x + y) % p for x, y in zip(_digits(a, p, e), _digits(b, p, e))], p) for b in range(q))
            for a in range(q)
        )
        object.__setattr__(self, "_add", add)
        exp, log = self._find_generator(p, e, mod)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        # Absolute trace: sum of the Frobenius conjugates a^(p^i).
        tr = []
        for a in range(q):
            s = 0
            c = a
            for _ in range(e):
                s = add[s][c]
                c = self._pow(c, p)
            if s >= p:
                raise ValueError("modulus is not irreducible (trace left the prime field)")
            tr.append(s)
        object.__setattr__(self, "_trace", tuple(tr))

    @staticmethod
    def _find_generator(p: int, e: int, mod: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        q = p**e
        for g in range(2, q) if q > 2 else [1]:
            gd = _digits(g, p, e)
            cur = [1] + [0] * (e - 1)
            exp = []
            seen = set()
            for _ in range(q - 1):
                v = _undigits(cur, p)
                if v in seen or v == 0:
                    break
                seen.add(v)
                exp.append(v)
                cur = _polymulmod(cur, gd, mod, p)
            if len(exp) == q - 1 and _undigits(cur, p) == 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return tuple(exp), tuple(log)
        raise ValueError("modulus is not irreducible (no generator of the unit group)")

    # arithmetic -------------------------------------------------------------

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of F_{self.q}")

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return _undigits([(-d) % self.p for d in _digits(a, self.p, self.e)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg(b)]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def _pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0 and n < 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._pow(a, n)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def trace(self, a: int) -> int:
        """Absolute trace to the prime field, as an integer in ``0..p-1``."""
        return self._trace[a]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        for a, b in zip(u, v):
            if a and b:
                s = self._add[s][self.mul(a, b)]
        return s


@lru_cache(maxsize=None)
def get_field(q: int) -> FqField:
    """Cached field with the built-in modulus."""
    return FqField(q)

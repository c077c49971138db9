"""Exact integer and rational helpers.

Everything here works on Python ``int`` and :class:`fractions.Fraction`.
No floating point value is ever produced.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Sequence


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise ValueError."""
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise ValueError(f"q must be an integer prime power >= 2, got {q!r}")
    n = q
    p = None
    d = 2
    while d * d <= n:
        if n % d == 0:
            p = d
            break
        d += 1 if d == 2 else 2
    if p is None:
        return q, 1
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


@lru_cache(maxsize=None)
def qbinom(m: int, j: int, q: int) -> int:
    """Gaussian binomial coefficient; zero outside ``0 <= j <= m``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if q < 2:
        raise ValueError("q must be at least 2")
    if j < 0 or j > m:
        return 0
    num = 1
    den = 1
    for i in range(j):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def cauchy_alternating_sum(k: int, q: int) -> int:
    """Sum over j of (-1)^j q^C(j,2) [k, j]_q; this is 1 at k = 0 and 0 after."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return sum((-1) ** j * q ** comb(j, 2) * qbinom(k, j, q) for j in range(k + 1))


def p_poly(i: int, q: int) -> int:
    """``1 + 2q + ... + i q^(i-1)``, with the empty sum at i = 0."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return sum((t + 1) * q**t for t in range(i))


def moebius_subspace(c: int, q: int) -> int:
    """Moebius function of the subspace lattice for a codimension-c pair."""
    if c < 0:
        raise ValueError("c must be nonnegative")
    return (-1) ** c * q ** comb(c, 2)


def geometric(q: int, lo: int, hi: int) -> int:
    """``q^lo + ... + q^hi`` (empty when hi < lo)."""
    return sum(q**t for t in range(lo, hi + 1))


# --- rational linear algebra -------------------------------------------------


def as_fraction_matrix(a: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def mat_mul(a, b):
    """Product of two matrices given as lists of rows."""
    if not a:
        return []
    n = len(b)
    if any(len(row) != n for row in a):
        raise ValueError("inner dimensions differ")
    cols = len(b[0]) if b else 0
    bt = [[b[r][c] for r in range(n)] for c in range(cols)]
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def bareiss_determinant(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(a)
    m = [list(map(int, row)) for row in a]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _integer_rows(a) -> tuple[list[list[int]], list[int]]:
    """Scale each row of a rational matrix to integers; return rows and scales."""
    rows = []
    scales = []
    for row in a:
        den = 1
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(Fraction(x) * den) for x in row])
        scales.append(den)
    return rows, scales


def solve(a, b) -> list[list[Fraction]]:
    """Solve ``a X = b`` exactly for square nonsingular ``a``.

    ``b`` is a matrix (list of rows). Elimination runs fraction free on the
    integer-scaled augmented system, then back substitution uses Fractions.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("shape mismatch")
    nb = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    m, _ = _integer_rows(aug)
    width = n + nb
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [[Fraction(0)] * nb for _ in range(n)]
    for c in range(nb):
        for i in range(n - 1, -1, -1):
            s = Fraction(m[i][n + c])
            for j in range(i + 1, n):
                if m[i][j]:
                    s -= m[i][j] * x[j][c]
            x[i][c] = s / m[i][i]
    return x


def inverse(a) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    return solve(a, identity(len(a)))


def rational_rank(a) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    m, _ = _integer_rows(a)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pk = m[rank][c]
        for i in range(rank + 1, rows):
            mic = m[i][c]
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * pk - mic * m[rank][j]) // prev
            m[i][c] = 0
        prev = pk
        rank += 1
    return rank


def lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // gcd(out, d)
    return out

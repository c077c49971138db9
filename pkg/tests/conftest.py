from __future__ import annotations

import itertools
from fractions import Fraction

import pytest


def fraction_det(a) -> Fraction:
    """Textbook elimination over Fractions, kept separate from the library."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= f * m[c][j]
    return det


def count_subspaces(m: int, j: int, q: int) -> int:
    """Count j-dim subspaces of F_p^m (p prime) by growing explicit spans."""
    vecs = [v for v in itertools.product(range(q), repeat=m) if any(v)]
    level = {frozenset([tuple([0] * m)])}
    for _ in range(j):
        nxt = set()
        for span in level:
            for v in vecs:
                if v not in span:
                    nxt.add(frozenset(tuple((a + c * b) % q for a, b in zip(s, v)) for s in span for c in range(q)))
        level = nxt
    return len(level)


@pytest.fixture
def det_oracle():
    return fraction_det

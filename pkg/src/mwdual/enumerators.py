"""Sparse exact enumerators and the MacWilliams transform.

A :class:`PartitionEnumerator` is a homogeneous polynomial in one variable
``Z_i`` per orbit class. A :class:`WWEnumerator` is the univariate
w-weight enumerator ``sum_j A_j t^j``. Coefficients are Python ints.
Terms serialize in descending lexicographic order of exponent vectors, so
``Z_0^n`` comes first; w-weight terms serialize by ascending degree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence

from .weights import WeightTable

Exps = tuple[int, ...]


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


@dataclass(frozen=True)
class PartitionEnumerator:
    """Symmetrized (chain) or rank-partition (matrix) enumerator."""

    classes: int
    length: int
    terms: tuple[tuple[Exps, int], ...]

    @classmethod
    def from_dict(cls, classes: int, length: int, terms: Mapping[Sequence[int], int]) -> "PartitionEnumerator":
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != classes or any(x < 0 for x in exps) or sum(exps) != length:
                raise ValueError(f"exponent vector {exps} does not fit {classes} classes and length {length}")
            if c:
                clean[exps] = clean.get(exps, 0) + int(c)
        ordered = tuple(sorted(_clean(clean).items(), key=lambda kv: kv[0], reverse=True))
        return cls(classes, length, ordered)

    def as_dict(self) -> dict[Exps, int]:
        return dict(self.terms)

    def total(self) -> int:
        return sum(c for _, c in self.terms)

    def to_json(self) -> dict:
        return {
            "classes": self.classes,
            "length": self.length,
            "terms": [{"exponents": list(e), "coeff": str(c)} for e, c in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "PartitionEnumerator":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {tuple(t["exponents"]): int(t["coeff"]) for t in data["terms"]}
        return cls.from_dict(int(data["classes"]), int(data["length"]), terms)

    def to_text(self, var: str = "Z") -> str:
        parts = []
        for exps, c in self.terms:
            mono = "*".join(f"{var}{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class WWEnumerator:
    """w-weight enumerator; ``terms`` lists (degree, A_degree) by degree."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "WWEnumerator":
        return cls(tuple(sorted((int(d), int(c)) for d, c in terms.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, d: int) -> int:
        return self.as_dict().get(d, 0)

    def total(self) -> int:
        return sum(c for _, c in self.terms)

    def truncate(self, maxdeg: int) -> "WWEnumerator":
        return WWEnumerator(tuple((d, c) for d, c in self.terms if d <= maxdeg))

    def max_degree(self) -> int:
        return max((d for d, _ in self.terms), default=0)

    def to_json(self) -> dict:
        return {"terms": [{"deg": d, "coeff": str(c)} for d, c in self.terms]}

    @classmethod
    def from_json(cls, data: dict | str) -> "WWEnumerator":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_dict({int(t["deg"]): int(t["coeff"]) for t in data["terms"]})

    def to_text(self, maxdeg: int | None = None) -> str:
        parts = []
        for d, c in self.terms:
            if maxdeg is not None and d > maxdeg:
                break
            if d == 0:
                parts.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts) or "0"


# --- polynomial helpers ----------------------------------------------------------


def _mul_linear(poly: dict[Exps, int], form: Sequence[int]) -> dict[Exps, int]:
    """Multiply a sparse polynomial by the linear form ``sum_i form[i] Z_i``."""
    out: dict[Exps, int] = {}
    nz = [(i, a) for i, a in enumerate(form) if a]
    for exps, c in poly.items():
        for i, a in nz:
            e = exps[:i] + (exps[i] + 1,) + exps[i + 1 :]
            out[e] = out.get(e, 0) + c * a
    return _clean(out)


def macwilliams_transform(e: PartitionEnumerator, K: Sequence[Sequence[int]], code_size: int) -> PartitionEnumerator:
    """Dual enumerator: substitute Z_j by sum_i K[i][j] Z_i, expand, divide by |C|.

    Products of linear forms are built one factor at a time, sharing work
    between monomials with a common exponent prefix.
    """
    c = e.classes
    if len(K) != c or any(len(row) != c for row in K):
        raise ValueError(f"Kravchuk matrix must be {c}x{c}")
    if code_size != e.total():
        raise ValueError(f"code size {code_size} differs from coefficient total {e.total()}")
    forms = [[K[i][j] for i in range(c)] for j in range(c)]
    zero = (0,) * c
    cache: dict[Exps, dict[Exps, int]] = {zero: {zero: 1}}

    def product_for(exps: Exps) -> dict[Exps, int]:
        # Build prod_j L_j^{n_j} reusing the longest cached prefix.
        if exps in cache:
            return cache[exps]
        j = max(i for i, x in enumerate(exps) if x)
        prev = exps[:j] + (exps[j] - 1,) + exps[j + 1 :]
        poly = _mul_linear(product_for(prev), forms[j])
        cache[exps] = poly
        return poly

    acc: dict[Exps, int] = {}
    for exps, coeff in e.terms:
        cur: Exps = zero
        # Walk the exponent vector class by class so prefixes are shared.
        for j in range(c):
            for _ in range(exps[j]):
                cur = cur[:j] + (cur[j] + 1,) + cur[j + 1 :]
                product_for(cur)
        for mono, v in cache[exps].items():
            acc[mono] = acc.get(mono, 0) + coeff * v
    out = {}
    for mono, v in acc.items():
        if v % code_size:
            raise ValueError("transform is not integral: input is not an enumerator of a linear code over this ring")
        if v:
            out[mono] = v // code_size
    return PartitionEnumerator.from_dict(c, e.length, out)


def specialize(e: PartitionEnumerator, w: WeightTable) -> WWEnumerator:
    """Replace Z_i by t^{w(i)}; the zero class maps to 1."""
    if e.classes != w.n + 1:
        raise ValueError("class count does not match the weight table")
    cw = w.class_weights()
    out: dict[int, int] = {}
    for exps, c in e.terms:
        d = sum(x * cw[i] for i, x in enumerate(exps))
        out[d] = out.get(d, 0) + c
    return WWEnumerator.from_dict(out)


def _poly_mul_trunc(a: dict[int, int], b: dict[int, int], maxdeg: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            if d <= maxdeg:
                out[d] = out.get(d, 0) + ca * cb
    return _clean(out)


def _poly_pow_trunc(a: dict[int, int], n: int, maxdeg: int) -> dict[int, int]:
    result = {0: 1}
    base = a
    while n:
        if n & 1:
            result = _poly_mul_trunc(result, base, maxdeg)
        n >>= 1
        if n:
            base = _poly_mul_trunc(base, base, maxdeg)
    return result


def truncated_dual_wwe(
    e: PartitionEnumerator, K: Sequence[Sequence[int]], code_size: int, w: WeightTable, maxdeg: int
) -> WWEnumerator:
    """Low-order part (degrees <= maxdeg) of the dual w-weight enumerator.

    Each linear form is specialized to a univariate polynomial first. Every
    exponent is nonnegative, so truncating products never loses terms below
    ``maxdeg``.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    c = e.classes
    if c != w.n + 1 or len(K) != c:
        raise ValueError("class count mismatch")
    if code_size != e.total():
        raise ValueError(f"code size {code_size} differs from coefficient total {e.total()}")
    cw = w.class_weights()
    forms = []
    for j in range(c):
        f: dict[int, int] = {}
        for i in range(c):
            if cw[i] <= maxdeg:
                f[cw[i]] = f.get(cw[i], 0) + K[i][j]
        forms.append(_clean(f))
    pow_cache: dict[tuple[int, int], dict[int, int]] = {}
    acc: dict[int, int] = {}
    for exps, coeff in e.terms:
        poly = {0: coeff}
        for j, n in enumerate(exps):
            if n:
                key = (j, n)
                if key not in pow_cache:
                    pow_cache[key] = _poly_pow_trunc(forms[j], n, maxdeg)
                poly = _poly_mul_trunc(poly, pow_cache[key], maxdeg)
        for d, v in poly.items():
            acc[d] = acc.get(d, 0) + v
    out = {}
    for d, v in acc.items():
        if v % code_size:
            raise ValueError("transform is not integral: input is not an enumerator of a linear code over this ring")
        out[d] = v // code_size
    return WWEnumerator.from_dict(out)


def full_space_enumerator(sizes: Sequence[int], length: int) -> PartitionEnumerator:
    """Enumerator of R^n given the class sizes of R."""
    poly = {(0,) * len(sizes): 1}
    for _ in range(length):
        poly = _mul_linear(poly, sizes)
    return PartitionEnumerator.from_dict(len(sizes), length, poly)


def wwe_substitute(
    wwe: WWEnumerator, x_form: Sequence[int], y_form: Sequence[int], wmax: int, code_size: int, length: int
) -> WWEnumerator:
    """Evaluate the homogeneous form ``sum A_j X^{n wmax - j} Y^j`` at linear forms.

    ``x_form`` and ``y_form`` give ``(a, b)`` meaning ``aX + bY``. The result
    is divided by ``code_size`` and returned as a polynomial in ``t = Y/X``.
    Used to check closed-form MacWilliams identities for specific weights.
    """
    total_deg = length * wmax
    acc: dict[int, int] = {}

    def lin_pow(form: Sequence[int], r: int) -> dict[int, int]:
        # (aX + bY)^r as a polynomial in Y/X.
        a, b = form
        return _clean({s: comb(r, s) * a ** (r - s) * b**s for s in range(r + 1)})

    for j, aj in wwe.terms:
        px = lin_pow(x_form, total_deg - j)
        py = lin_pow(y_form, j)
        for d, v in _poly_mul_trunc(px, py, total_deg).items():
            acc[d] = acc.get(d, 0) + aj * v
    out = {}
    for d, v in acc.items():
        if v % code_size:
            raise ValueError("identity evaluation is not integral")
        out[d] = v // code_size
    return WWEnumerator.from_dict(out)

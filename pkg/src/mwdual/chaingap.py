"""Code pairs over chain rings with equal w-weight enumerators, and a classifier.

For ``2 <= k <= m`` the pair is:

* ``C_k`` on ``Z_k``: each functional ``theta^e`` (``m-k <= e < m``) repeated
  ``q^{k-1} w_{m-1}`` times.
* ``D_k`` on ``S_k``: each ``mu`` with last nonzero entry at position ``k-i``
  repeated ``a_i`` times.

Zero functionals pad whichever side is shorter. The low-weight dual counts
differ by singleton contributions only, which have closed forms below.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .chainring import POLY, ZMOD, ChainRing, chain_kravchuk, orbit_size
from .codes import ChainModule, MultiplicityFunction, code_size, se_from_orbits, wwe_from_orbits
from .enumerators import truncated_dual_wwe
from .exactmath import geometric, p_poly, prime_power
from .weights import CHAIN, WeightTable, epsilons, index_set, is_hamming_multiple

RESPECTS = "respects"
FAILS = "fails"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a respects-duality classification.

    For ``fails`` the witness is the construction parameter ``k`` (or the
    swap rank ``s`` for matrix rings), the weight ``d`` and the nonzero
    difference ``delta`` of dual counts at weight ``d``.
    """

    verdict: str
    rule: str
    k: Optional[int] = None
    d: Optional[int] = None
    delta: Optional[int] = None
    reason: str = ""

    def to_json(self) -> dict:
        witness = None
        if self.verdict == FAILS:
            witness = {"k": self.k, "d": self.d, "delta": str(self.delta)}
        out = {"verdict": self.verdict, "witness": witness, "rule": self.rule}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class ChainPair:
    k: int
    eta_C: MultiplicityFunction
    eta_D: MultiplicityFunction
    a: tuple[int, ...]
    Delta: int
    weight: WeightTable = field(repr=False)

    @property
    def length(self) -> int:
        return self.eta_C.length


def _check_chain(w: WeightTable) -> None:
    if w.family != CHAIN:
        raise ValueError("expected a chain-ring weight")


def default_ring(q: int, m: int) -> ChainRing:
    p, e = prime_power(q)
    return ChainRing(q, m, ZMOD if e == 1 else POLY)


def a_coefficients(w: WeightTable, k: int) -> list[int]:
    """a_i = sum_{j<=i} q^j w_{m-j-1} for i = 0..k-1."""
    _check_chain(w)
    q, m = w.q, w.m
    return [sum(q**j * w.w(m - j - 1) for j in range(i + 1)) for i in range(k)]


def _check_k(w: WeightTable, k: int) -> None:
    if not 2 <= k <= w.m:
        raise ValueError(f"k must satisfy 2 <= k <= m={w.m}, got {k}")


def delta_cap_direct(w: WeightTable, k: int) -> int:
    _check_chain(w)
    _check_k(w, k)
    q, m = w.q, w.m
    a = a_coefficients(w, k)
    return k * q ** (k - 1) * w.w(m - 1) - sum(q ** (k - i - 1) * a[i] for i in range(k))


def delta_cap_epsilon(w: WeightTable, k: int) -> int:
    _check_chain(w)
    _check_k(w, k)
    q, m = w.q, w.m
    ep = epsilons(w).eps_prime
    return p_poly(k - 1, q) * ep[m - 1] + sum(q**j * p_poly(k - j, q) * ep[m - j] for j in range(2, k))


def delta_cap(w: WeightTable, k: int) -> int:
    """Length gap Delta_k; the direct and difference forms must agree."""
    direct = delta_cap_direct(w, k)
    other = delta_cap_epsilon(w, k)
    if direct != other:
        raise AssertionError(f"Delta_{k} disagreement: {direct} != {other}")
    return direct


def build_chain_pair(w: WeightTable, k: int, ring: ChainRing | None = None) -> ChainPair:
    _check_chain(w)
    _check_k(w, k)
    q, m = w.q, w.m
    ring = ring or default_ring(q, m)
    if (ring.q, ring.m) != (q, m):
        raise ValueError("ring does not match the weight table")
    Delta = delta_cap(w, k)
    a = a_coefficients(w, k)
    mult = q ** (k - 1) * w.w(m - 1)
    zmod = ChainModule(ring, "Z", k)
    eta_C = MultiplicityFunction(zmod, tuple((e, mult) for e in range(m - k, m)), max(0, -Delta))
    smod = ChainModule(ring, "S", k)
    counts = []
    for mu in smod.functional_orbits():
        last = max(i for i, x in enumerate(mu) if x)
        counts.append((mu, a[k - 1 - last]))
    eta_D = MultiplicityFunction(smod, tuple(counts), max(Delta, 0))
    if eta_C.length != eta_D.length:
        raise AssertionError("constructed codes have different lengths")
    return ChainPair(k, eta_C, eta_D, tuple(a), Delta, w)


def general_d_delta(w: WeightTable, k: int, d: int) -> int:
    """A_d(C_k^perp) - A_d(D_k^perp) from singleton counts, for w_min <= d < 2 w_min."""
    _check_chain(w)
    _check_k(w, k)
    if not w.w_min <= d < 2 * w.w_min:
        raise ValueError(f"d={d} is outside the singleton window [{w.w_min}, {2 * w.w_min})")
    q, m = w.q, w.m
    I_d = index_set(w, d)
    R = default_ring(q, m)
    base = q ** (k - 1) * w.w(m - 1)
    tail = sum((k - i) * base * orbit_size(i, R) for i in I_d if 0 < i < k)
    if 0 in I_d:
        return -orbit_size(0, R) * delta_cap(w, k) - tail
    return -tail


def delta_singleton(w: WeightTable, k: int) -> int:
    """delta_k = A_wmin(C_k^perp) - A_wmin(D_k^perp)."""
    return general_d_delta(w, k, w.w_min)


# --- weak monotonicity ------------------------------------------------------------


@dataclass(frozen=True)
class RunData:
    j0: int
    j1: int
    j2: Optional[int]
    distinct: int


def is_weakly_monotone(w: WeightTable) -> bool:
    v = w.values
    return all(v[i] <= v[i + 1] for i in range(len(v) - 1))


def run_data(w: WeightTable) -> RunData:
    """Run boundaries j0, j1, j2 of a weakly monotone weight."""
    if not is_weakly_monotone(w):
        raise ValueError("run data needs a weakly monotone weight")
    v = w.values
    m = len(v)
    j0 = max(i for i in range(m) if v[i] == v[0])
    j1 = min(i for i in range(m) if v[i] == v[m - 1])
    distinct = len(set(v))
    j2 = None
    if distinct >= 3:
        j2 = min(i for i in range(m) if v[i] == v[j1 - 1])
    return RunData(j0, j1 if distinct > 1 else 0, j2, distinct)


def delta_epsilon_form(w: WeightTable, k: int) -> int:
    """delta_k from differences, valid when the minimum set is {0..j0} with j0 >= 1."""
    q, m = w.q, w.m
    eps = epsilons(w).eps
    I = w.min_indices()
    j0 = max(I)
    if I != list(range(j0 + 1)) or j0 < 1:
        raise ValueError("difference form needs the minimum set {0..j0} with j0 >= 1")
    _check_k(w, k)
    s = -(q**m) * (q - 1) * sum(q ** (j - 1) * p_poly(k - j, q) * eps[m - j] for j in range(1, k))
    if k >= j0 + 2:
        coef = (k - j0 - 1) * q ** (m + k - j0 - 2) - geometric(q, m - 1, m + k - j0 - 3)
        s -= coef * eps[m]
    return s


def delta_step_form(w: WeightTable, k: int) -> int:
    """delta_{k+1} - delta_k for k >= j0+2 and k >= m-j1 on a weakly monotone weight."""
    q, m = w.q, w.m
    rd = run_data(w)
    if not (k >= rd.j0 + 2 and k >= m - rd.j1 and k + 1 <= m):
        raise ValueError("step form hypotheses fail")
    eps = epsilons(w).eps
    inner = (k - rd.j0) * eps[m] + q ** (rd.j0 + 1) * sum((k - i + 1) * eps[m - i] for i in range(m - rd.j1, k + 1))
    return -(q ** (m + k - rd.j0 - 2)) * (q - 1) * inner


# --- classifier ----------------------------------------------------------------------


def _valid_ds(w: WeightTable) -> list[int]:
    return sorted(d for d in set(w.values) if w.w_min <= d < 2 * w.w_min)


def _largest_nonzero(w: WeightTable, d: int, ks) -> Optional[tuple[int, int]]:
    best = None
    for k in ks:
        v = general_d_delta(w, k, d)
        if v:
            best = (k, v)
    return best


def classify_chain(w: WeightTable) -> Verdict:
    _check_chain(w)
    q, m = w.q, w.m
    wmin = w.w_min
    if is_hamming_multiple(w):
        return Verdict(RESPECTS, "hamming-multiple")
    if q == 2 and m == 2 and w.values[1] == 2 * w.values[0]:
        return Verdict(RESPECTS, "homogeneous-q2m2")
    I = w.min_indices()
    if 0 not in I:
        k = 1 + min(I)
        return Verdict(FAILS, "minimum-off-units", k, wmin, delta_singleton(w, k))
    if I == [0]:
        ep = epsilons(w).eps_prime
        if m >= 3:
            j = max(i for i in range(1, m) if ep[i] != 0)
            k = m - j + 1
            return Verdict(FAILS, "unique-unit-minimum", k, wmin, delta_singleton(w, k))
        if ep[1] != 0:
            return Verdict(FAILS, "unique-unit-minimum", 2, wmin, delta_singleton(w, 2))
        d = w.w(1)
        return Verdict(FAILS, "unique-unit-minimum-socle", 2, d, general_d_delta(w, 2, d))
    if is_weakly_monotone(w):
        rd = run_data(w)
        j0, j1 = rd.j0, rd.j1
        eps = epsilons(w).eps
        d = wmin
        if j0 + j1 >= m:
            rule = "monotone-long-head"
        elif j0 + j1 <= m - 2:
            rule = "monotone-long-tail"
        elif w.w(m - 1) != q ** (j0 + 1) * eps[j1]:
            rule = "monotone-balanced"
        elif rd.distinct >= 3:
            rule = "monotone-balanced-three-values"
        else:
            rule = "monotone-balanced-two-values"
            d = w.w(m - 1)
        hit = _largest_nonzero(w, d, range(2, m + 1))
        if hit is None:
            raise AssertionError(f"settled case {rule} produced no nonzero delta")
        return Verdict(FAILS, rule, hit[0], d, hit[1])
    rule = "middle-peak-m3" if m == 3 and w.values[0] == w.values[2] < w.values[1] else "singleton-scan"
    for d in [wmin] + [x for x in _valid_ds(w) if x != wmin]:
        for k in range(2, m + 1):
            v = general_d_delta(w, k, d)
            if v:
                return Verdict(FAILS, rule, k, d, v)
    return Verdict(UNKNOWN, "singleton-scan-exhausted", reason="every singleton difference vanished")


# --- end-to-end checks ----------------------------------------------------------------


def pipeline_delta(pair: ChainPair, d: int) -> int:
    """A_d(C^perp) - A_d(D^perp) through the MacWilliams transform."""
    w = pair.weight
    K = chain_kravchuk(w.q, w.m)
    out = []
    for eta in (pair.eta_C, pair.eta_D):
        se = se_from_orbits(eta)
        out.append(truncated_dual_wwe(se, K, code_size(eta), w, d).coeff(d))
    return out[0] - out[1]


def verify_chain_witness(w: WeightTable, verdict: Verdict, max_length: int = 400) -> Optional[bool]:
    """Rebuild the witness pair and confirm it. None when the pair is too long."""
    if verdict.verdict != FAILS:
        raise ValueError("only failing verdicts carry witnesses")
    pair = build_chain_pair(w, verdict.k)
    if pair.length > max_length:
        return None
    if wwe_from_orbits(pair.eta_C, w) != wwe_from_orbits(pair.eta_D, w):
        return False
    return pipeline_delta(pair, verdict.d) == verdict.delta != 0

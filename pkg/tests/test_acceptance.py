"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its runtime and limit.
Run on its own with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from collections import Counter

import pytest

from mwdual.chaingap import (
    FAILS,
    RESPECTS,
    UNKNOWN,
    build_chain_pair,
    classify_chain,
    delta_singleton,
    pipeline_delta as chain_pipeline_delta,
    verify_chain_witness,
)
from mwdual.chainring import POLY, ZMOD, ChainRing, brute_kravchuk, chain_kravchuk
from mwdual.codes import (
    ChainModule,
    MatrixModule,
    MultiplicityFunction,
    brute_force_dual_wwe,
    code_size,
    generator_matrix,
    se_from_orbits,
    wwe_from_orbits,
)
from mwdual.enumerators import PartitionEnumerator, WWEnumerator, macwilliams_transform, specialize, wwe_substitute
from mwdual.exactmath import mat_mul, transpose
from mwdual.fixtures import CHAIN_FIXTURES, MATRIX_FIXTURES, run_fixture
from mwdual.matrixgap import (
    build_P0,
    build_swap,
    build_W0,
    build_Wbar0,
    classify_matrix,
    diagonalized_wbar0,
    expected_block_matrix,
    new_sum,
    orbit_data,
    pw0pt,
    rank_sums,
    sann_matrix,
    singleton_deltas,
    t_matrix,
    verify_matrix_witness,
    wbar0_from_W0,
)
from mwdual.matrixring import rank_kravchuk
from mwdual.weights import (
    WeightTable,
    c_coefficients,
    hamming,
    homogeneous_chain,
    homogeneous_matrix,
    scale,
)


def _criterion(capsys, number: int, title: str, limit: float, body) -> None:
    start = time.perf_counter()
    error = None
    try:
        body()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n{status} criterion {number}: {title} ({elapsed:.1f}s, limit {limit:.0f}s)", flush=True)
    if error is not None:
        raise error
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


# --- 1: chain-ring worked examples -------------------------------------------------------


def test_criterion_1_chain_fixtures(capsys):
    published_delta = {"chain-z8-homog": -32, "chain-z8-122": 24, "chain-z8-121": 40}

    def body():
        for fid, exp in CHAIN_FIXTURES.items():
            report = run_fixture(fid)
            assert report.ok, [c.to_json() for c in report.mismatches()]
            w = WeightTable.chain(2, exp.weights)
            pair = build_chain_pair(w, 3)
            assert wwe_from_orbits(pair.eta_C, w) == wwe_from_orbits(pair.eta_D, w)
            assert delta_singleton(w, 3) == chain_pipeline_delta(pair, 1) == published_delta[fid]
        homog = build_chain_pair(homogeneous_chain(2, 3), 3)
        K = chain_kravchuk(2, 3)
        w = homogeneous_chain(2, 3)
        for eta, printed in ((homog.eta_C, {0: 1, 1: 16, 2: 1848, 3: 60400}), (homog.eta_D, {0: 1, 1: 48, 2: 1832, 3: 64656})):
            dual = specialize(macwilliams_transform(se_from_orbits(eta), K, code_size(eta)), w)
            assert dual.truncate(3).as_dict() == printed

    _criterion(capsys, 1, "Z/8 example pairs, dual prefixes and delta values", 10, body)


# --- 2: matrix-ring worked examples -------------------------------------------------------


def test_criterion_2_matrix_fixtures(capsys):
    def body():
        lengths = []
        for fid in MATRIX_FIXTURES:
            report = run_fixture(fid)
            assert report.ok, [c.to_json() for c in report.mismatches()]
            lengths.append(MATRIX_FIXTURES[fid].length)
        assert lengths == [4, 65, 77, 46, 278]
        lindep = MATRIX_FIXTURES["mat-f2-w45-lindep"]
        assert (lindep.dual_first[12], lindep.dual_second[12]) == (290160, 290112)

    _criterion(capsys, 2, "M2(F2) example pairs reproduced exactly", 120, body)


# --- 3: Kravchuk matrices ------------------------------------------------------------------


def test_criterion_3_kravchuk(capsys):
    def body():
        assert chain_kravchuk(2, 3) == [[0, 0, -4, 4], [0, -2, 2, 2], [-1, 1, 1, 1], [1, 1, 1, 1]]
        assert brute_kravchuk(ChainRing(2, 3)) == chain_kravchuk(2, 3)
        assert rank_kravchuk(2, 2) == [[1, 1, 1], [9, 1, -3], [6, -2, 2]]
        for q in (2, 3, 4):
            for n in range(1, 5):
                K = chain_kravchuk(q, n)
                sums = [sum(K[i][j] for i in range(n + 1)) for j in range(n + 1)]
                assert sums == [0] * n + [q**n]
                assert mat_mul(K, K) == [[q**n * (i == j) for j in range(n + 1)] for i in range(n + 1)]
                R = rank_kravchuk(n, q)
                sums = [sum(R[i][j] for i in range(n + 1)) for j in range(n + 1)]
                assert sums == [q ** (n * n)] + [0] * n
                assert mat_mul(R, R) == [[q ** (n * n) * (i == j) for j in range(n + 1)] for i in range(n + 1)]

    _criterion(capsys, 3, "Kravchuk matrices and orthogonality", 5, body)


# --- 4: identities that do hold ----------------------------------------------------------------
#
# The rings are re-implemented here from scratch as lookup tables, so the
# duals come from literal listing and share no code with the package.


def _z4():
    add = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    mul = [[(a * b) % 4 for b in range(4)] for a in range(4)]
    return add, mul, [2, 0, 1, 0]  # valuation class per element, zero class = 2


def _f2x_mod_x2():
    # a + b x encoded as a + 2b.
    add = [[a ^ b for b in range(4)] for a in range(4)]

    def m(u, v):
        a, b, c, d = u & 1, u >> 1, v & 1, v >> 1
        return (a * c) % 2 + 2 * ((a * d + b * c) % 2)

    mul = [[m(u, v) for v in range(4)] for u in range(4)]
    return add, mul, [2, 0, 1, 0]


def _m2f2():
    # [[a, b], [c, d]] encoded as a + 2b + 4c + 8d.
    def dec(x):
        return x & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1

    def enc(a, b, c, d):
        return a + 2 * b + 4 * c + 8 * d

    add = [[x ^ y for y in range(16)] for x in range(16)]
    mul = [[0] * 16 for _ in range(16)]
    for x in range(16):
        a, b, c, d = dec(x)
        for y in range(16):
            e, f, g, h = dec(y)
            mul[x][y] = enc((a * e + b * g) % 2, (a * f + b * h) % 2, (c * e + d * g) % 2, (c * f + d * h) % 2)
    rank = []
    for x in range(16):
        a, b, c, d = dec(x)
        rank.append(0 if x == 0 else (2 if (a * d + b * c) % 2 else 1))
    return add, mul, rank


def _span(gens, n, add, mul, size):
    words = {(0,) * n}
    for g in gens:
        words = {tuple(add[c[i]][mul[r][g[i]]] for i in range(n)) for c in words for r in range(size)}
    return frozenset(words)


def _right_dual(gens, n, add, mul, size):
    out = []
    for y in itertools.product(range(size), repeat=n):
        ok = True
        for g in gens:
            s = 0
            for i in range(n):
                s = add[s][mul[g[i]][y[i]]]
            if s:
                ok = False
                break
        if ok:
            out.append(y)
    return out


def _all_codes(n, add, mul, size):
    """Every left submodule of R^n, found by closing spans one vector at a time."""
    space = list(itertools.product(range(size), repeat=n))
    start = _span([], n, add, mul, size)
    seen = {start: []}
    frontier = [start]
    while frontier:
        nxt = []
        for code in frontier:
            for v in space:
                if v in code:
                    continue
                gens = seen[code] + [v]
                new = _span(gens, n, add, mul, size)
                if new not in seen:
                    seen[new] = gens
                    nxt.append(new)
        frontier = nxt
    return seen


def _tally(words, cls, weights, classes):
    wwe = Counter(sum(weights[cls[x]] for x in word) for word in words)
    se = Counter()
    for word in words:
        e = [0] * classes
        for x in word:
            e[cls[x]] += 1
        se[tuple(e)] += 1
    return WWEnumerator.from_dict(wwe), se


def test_criterion_4_positive_identities(capsys):
    def body():
        chain_weight = [1, 2, 0]  # homogeneous weight by valuation class
        K = chain_kravchuk(2, 2)
        for ring in (_z4(), _f2x_mod_x2()):
            add, mul, cls = ring
            total = 0
            for n in (1, 2, 3):
                for code, gens in _all_codes(n, add, mul, 4).items():
                    dual = _right_dual(gens, n, add, mul, 4)
                    assert len(code) * len(dual) == 4**n
                    hwe, se = _tally(code, cls, chain_weight, 3)
                    hwe_dual, se_dual = _tally(dual, cls, chain_weight, 3)
                    assert wwe_substitute(hwe, (1, 1), (1, -1), 2, len(code), n) == hwe_dual
                    se_pe = PartitionEnumerator.from_dict(3, n, se)
                    assert macwilliams_transform(se_pe, K, len(code)).as_dict() == dict(se_dual)
                    total += 1
            assert total > 50
        add, mul, rank = _m2f2()
        homog = [0, 2, 1]
        KR = rank_kravchuk(2, 2)
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.randint(1, 3)
            r = rng.randint(1, 3)
            gens = [tuple(rng.randrange(16) for _ in range(n)) for _ in range(r)]
            code = _span(gens, n, add, mul, 16)
            dual = _right_dual(gens, n, add, mul, 16)
            assert len(code) * len(dual) == 16**n
            hwe, se = _tally(code, rank, homog, 3)
            hwe_dual, se_dual = _tally(dual, rank, homog, 3)
            assert wwe_substitute(hwe, (1, 3), (1, -1), 2, len(code), n) == hwe_dual
            se_pe = PartitionEnumerator.from_dict(3, n, se)
            assert macwilliams_transform(se_pe, KR, len(code)).as_dict() == dict(se_dual)

    _criterion(capsys, 4, "MacWilliams identities for Z/4, F2[x]/(x^2) and M2(F2)", 120, body)


# --- 5: brute force against the pipeline --------------------------------------------------------


def _random_eta(rng, module, budget_size):
    orbits = module.functional_orbits()
    size = module.ring.size
    max_len = 1
    while size ** (max_len + 1) <= budget_size:
        max_len += 1
    n = rng.randint(1, max_len)
    zeros = rng.randint(0, min(1, n - 1))
    counts = Counter(rng.choice(orbits) for _ in range(n - zeros))
    return MultiplicityFunction.from_mapping(module, dict(counts), zeros)


def test_criterion_5_oracle_equivalence(capsys):
    budget = 2**24
    chain_rings = [
        ChainRing(2, 2, ZMOD),
        ChainRing(2, 2, POLY),
        ChainRing(2, 3, ZMOD),
        ChainRing(3, 2, ZMOD),
        ChainRing(2, 3, POLY),
        ChainRing(4, 2, POLY),
    ]

    def chain_module(rng):
        R = rng.choice(chain_rings)
        if rng.random() < 0.5:
            return ChainModule(R, "Z", rng.randint(1, R.m))
        return ChainModule(R, "S", rng.randint(1, 2))

    def matrix_module(rng):
        q, k = rng.choice([(2, 1), (2, 2), (3, 2), (2, 3)])
        return MatrixModule(q, k, rng.randint(1, 3) if k < 3 else rng.randint(2, 3))

    def body():
        rng = random.Random(5)
        for make, kravchuk in (
            (chain_module, lambda mod: chain_kravchuk(mod.q, mod.ring.m)),
            (matrix_module, lambda mod: rank_kravchuk(mod.k, mod.q)),
        ):
            for _ in range(100):
                mod = make(rng)
                # Keep the brute-force listing near a tenth of the budget for runtime.
                eta = _random_eta(rng, mod, budget // 16)
                n = mod.ring.m if mod.family == "chain" else mod.k
                w = WeightTable(mod.family, mod.q, n, tuple(rng.randint(1, 6) for _ in range(n)))
                brute = brute_force_dual_wwe(generator_matrix(eta), w, budget)
                pipeline = specialize(macwilliams_transform(se_from_orbits(eta), kravchuk(mod), code_size(eta)), w)
                assert brute == pipeline, (mod, eta, w)

    _criterion(capsys, 5, "brute-force dual equals MacWilliams pipeline, 100 codes per family", 180, body)


# --- 6: constructions across the sweep grids -------------------------------------------------


def test_criterion_6_construction_grids(capsys):
    def body():
        for q in (2, 3):
            for m in (2, 3, 4):
                for vals in itertools.product(range(1, 5), repeat=m):
                    w = WeightTable.chain(q, vals)
                    for k in range(2, m + 1):
                        pair = build_chain_pair(w, k)
                        assert pair.eta_C.length == pair.eta_D.length
                        assert wwe_from_orbits(pair.eta_C, w) == wwe_from_orbits(pair.eta_D, w)
        for k in (2, 3):
            for q in (2, 3):
                for vals in itertools.product(range(1, 6), repeat=k):
                    w = WeightTable.matrix(q, vals)
                    if not all(c_coefficients(w)):
                        continue
                    for s in range(1, k):
                        pair = build_swap(s, k, k + 1, q, w)
                        assert pair.eta_C.length == pair.eta_D.length
                        assert wwe_from_orbits(pair.eta_C, w) == wwe_from_orbits(pair.eta_D, w)
                        diff = [a - b for a, b in zip(rank_sums(pair.eta_D), rank_sums(pair.eta_C))]
                        contrib = singleton_deltas(diff, k, q)
                        assert all(x == 0 for x in contrib[: s - 1]) and contrib[s - 1] != 0

    _criterion(capsys, 6, "equal primal enumerators and lengths on the sweep grids", 600, body)


# --- 7: block form, diagonalization, triangularity ----------------------------------------------


def _lower_triangular(A) -> bool:
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(i + 1, len(A)))


def test_criterion_7_structure(capsys):
    def body():
        rng = random.Random(7)
        for q in (2, 3):
            for k in (1, 2, 3):
                for m in range(k, 5):
                    data = orbit_data(k, m, q)
                    dims = data.dims[1:]
                    P0 = build_P0(k, m, q)
                    for _ in range(2):
                        w = WeightTable.matrix(q, [rng.randint(1, 5) for _ in range(k)])
                        W0 = build_W0(k, m, q, w)
                        PW = mat_mul(P0, W0)
                        assert mat_mul(PW, transpose(P0)) == expected_block_matrix(k, m, q, w) == pw0pt(k, m, q, w)
                        for a, row in enumerate(PW):
                            for b, v in enumerate(row):
                                if data.ranks[a + 1][b + 1] < dims[a]:
                                    assert v == 0
                        assert build_Wbar0(k, m, q, w) == wbar0_from_W0(k, m, q, w)
        for q in (2, 3):
            for k in (1, 2, 3, 4):
                T = t_matrix(k, q)
                assert _lower_triangular(mat_mul(sann_matrix(k, q), T))
                for m in range(k, k + 3):
                    for _ in range(2):
                        w = WeightTable.matrix(q, [rng.randint(1, 9) for _ in range(k)])
                        c = c_coefficients(w)
                        D = diagonalized_wbar0(k, m, q, w)
                        assert D == [[c[i] * q ** ((i + 1) * (m - i - 1)) if i == j else 0 for j in range(k)] for i in range(k)]
                        assert _lower_triangular(mat_mul(build_Wbar0(k, m, q, w), T))
            for kk in range(0, 6):
                for j in range(kk + 1):
                    for i in range(j):
                        assert new_sum(i, j, kk, q) == 0

    _criterion(capsys, 7, "block diagonal form, Q-diagonalization, triangularity, vanishing sums", 300, body)


# --- 8: classifier ground truth ------------------------------------------------------------------


def _unsettled_k3(vals, q) -> bool:
    w = WeightTable.matrix(q, vals)
    return c_coefficients(w)[2] == 0 and vals[2] >= 2 * vals[0]


def test_criterion_8_classifier(capsys):
    def body():
        # Respects exactly on the stated families, checked over small grids.
        for q, m in ((2, 2), (2, 3), (3, 2), (3, 3)):
            for vals in itertools.product(range(1, 5), repeat=m):
                v = classify_chain(WeightTable.chain(q, vals))
                expected = len(set(vals)) == 1 or (q == m == 2 and vals[1] == 2 * vals[0])
                assert (v.verdict == RESPECTS) == expected, (q, vals, v)
                assert v.verdict != UNKNOWN
        for q, k in ((2, 2), (3, 2), (2, 3)):
            for vals in itertools.product(range(1, 6), repeat=k):
                v = classify_matrix(WeightTable.matrix(q, vals))
                expected = len(set(vals)) == 1 or (q == k == 2 and vals[0] == 2 * vals[1])
                assert (v.verdict == RESPECTS) == expected, (q, vals, v)
        for c in (1, 2, 3):
            assert classify_matrix(scale(homogeneous_matrix(2, 2), c)).verdict == RESPECTS
            assert classify_chain(scale(homogeneous_chain(2, 2), c)).verdict == RESPECTS
            assert classify_matrix(scale(hamming("matrix", 3, 3), c)).verdict == RESPECTS
            assert classify_chain(scale(hamming("chain", 5, 3), c)).verdict == RESPECTS

        # Homogeneous chain weights outside q = m = 2 fail with a verified witness.
        for q in (2, 3, 4, 5, 7):
            for m in (2, 3, 4):
                if (q, m) == (2, 2):
                    continue
                w = homogeneous_chain(q, m)
                v = classify_chain(w)
                assert v.verdict == FAILS
                assert verify_chain_witness(w, v, max_length=10**7) is True

        # Homogeneous matrix weights with (k, q) != (2, 2) fail with a verified witness.
        for k, q in ((2, 3), (2, 4), (2, 5), (3, 2), (3, 3)):
            w = homogeneous_matrix(k, q)
            v = classify_matrix(w)
            assert v.verdict == FAILS
            assert verify_matrix_witness(w, v) is True

        # Every k = 3 weight over F_2 with values <= 5: settled regimes fail with a
        # verified witness, and Unknown appears only in the documented region.
        for vals in itertools.product(range(1, 6), repeat=3):
            w = WeightTable.matrix(2, vals)
            v = classify_matrix(w)
            if len(set(vals)) == 1:
                assert v.verdict == RESPECTS
            elif v.verdict == UNKNOWN:
                assert _unsettled_k3(vals, 2), vals
            else:
                assert v.verdict == FAILS
                assert verify_matrix_witness(w, v) is True
        # The region is not empty, and its members are reported as Unknown.
        for vals, q in (((2, 5, 7), 2), ((4, 10, 14), 2), ((3, 10, 13), 3)):
            if _unsettled_k3(vals, q):
                assert classify_matrix(WeightTable.matrix(q, vals)).verdict == UNKNOWN
        # k = 3 over F_3 on a smaller grid, same rules.
        for vals in itertools.product(range(1, 4), repeat=3):
            w = WeightTable.matrix(3, vals)
            v = classify_matrix(w)
            if v.verdict == UNKNOWN:
                assert _unsettled_k3(vals, 3), vals
            elif v.verdict == FAILS:
                assert verify_matrix_witness(w, v) is True
            else:
                assert len(set(vals)) == 1

    _criterion(capsys, 8, "classifier ground truth with verified witnesses", 600, body)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwdual.chaingap import FAILS, RESPECTS, UNKNOWN
from mwdual.codes import MatrixModule, brute_force_dual_wwe, brute_force_wwe, generator_matrix, wwe_from_orbits
from mwdual.exactmath import mat_mul, qbinom, solve, transpose
from mwdual.matrixgap import (
    alpha_values,
    ann_matrix,
    build_degenerate_pair,
    build_P0,
    build_swap,
    build_W0,
    build_Wbar0,
    classify_matrix,
    diagonalized_wbar0,
    expected_block_matrix,
    new_sum,
    omega_locally_constant,
    orbit_data,
    pipeline_delta,
    pw0pt,
    rank_sums,
    sann_matrix,
    singleton_deltas,
    verify_matrix_witness,
    w0_solve,
    wbar0_from_W0,
    wbar_entry,
    witness_pair,
)
from mwdual.matrixring import MatrixRing
from mwdual.weights import WeightTable, c_coefficients, hamming, homogeneous_matrix, scale

SHAPES = [(1, 2, 2), (2, 2, 2), (2, 3, 2), (2, 3, 3), (3, 3, 2), (3, 4, 2), (2, 4, 2)]


def _weight(k, q, seed):
    return WeightTable.matrix(q, [(seed * (i + 3) + i * i) % 7 + 1 for i in range(k)])


@pytest.mark.parametrize("k,m,q", SHAPES)
def test_block_form(k, m, q):
    for seed in range(3):
        w = _weight(k, q, seed)
        P0, W0 = build_P0(k, m, q), build_W0(k, m, q, w)
        dense = mat_mul(mat_mul(P0, W0), transpose(P0))
        assert dense == pw0pt(k, m, q, w) == expected_block_matrix(k, m, q, w)


@pytest.mark.parametrize("k,m,q", SHAPES)
def test_pw_zero_pattern(k, m, q):
    # P_0 W_0 vanishes where the row subspace is not inside the functional's perp complement pattern:
    # each row of P_0 W_0 is supported on functionals meeting the row subspace's perp trivially.
    data = orbit_data(k, m, q)
    w = _weight(k, q, 1)
    PW = mat_mul(build_P0(k, m, q), build_W0(k, m, q, w))
    dims = data.dims[1:]
    for a, row in enumerate(PW):
        for b, v in enumerate(row):
            if data.ranks[a + 1][b + 1] < dims[a]:
                assert v == 0


@pytest.mark.parametrize("k,m,q", SHAPES)
def test_w0_solve_against_elimination(k, m, q):
    for seed in range(3):
        w = _weight(k, q, seed)
        if not all(c_coefficients(w)):
            continue
        W0 = build_W0(k, m, q, w)
        rhs = [(i * 5 + seed) % 4 - 1 for i in range(len(W0))]
        expected = [r[0] for r in solve(W0, [[x] for x in rhs])]
        assert w0_solve(k, m, q, w, rhs) == expected


def test_w0_solve_rejects_degenerate():
    with pytest.raises(ValueError):
        w0_solve(2, 3, 2, WeightTable.matrix(2, [2, 3]), [0] * 14)


@pytest.mark.parametrize("k,m,q", SHAPES)
def test_wbar_against_orbit_sums(k, m, q):
    data = orbit_data(k, m, q)
    w = _weight(k, q, 2)
    wv = [0] + list(w.values)
    dims = data.dims
    for i in range(k + 1):
        for j in range(k + 1):
            y = dims.index(j)
            brute = sum(wv[data.ranks[x][y]] for x in range(len(dims)) if dims[x] == i)
            entry = wbar_entry(i, j, m, q, wv)
            assert type(entry) is int and entry == brute
            x = dims.index(i)
            brute_omega = sum(wv[data.ranks[x][b]] for b in range(len(dims)) if dims[b] == j)
            assert omega_locally_constant(j, i, k, m, q, w) == brute_omega
    assert build_Wbar0(k, m, q, w) == wbar0_from_W0(k, m, q, w)
    assert alpha_values(k, m, q, w)[0] == 0


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_q_diagonalization(k, q):
    for m in range(k, k + 3):
        for seed in range(3):
            w = _weight(k, q, seed)
            c = c_coefficients(w)
            D = diagonalized_wbar0(k, m, q, w)
            assert D == [[c[i] * q ** ((i + 1) * (m - i - 1)) if i == j else 0 for j in range(k)] for i in range(k)]


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sann_is_triangular_and_new_sum_vanishes(k, q):
    A = ann_matrix(k, q)
    # A rank-i matrix cannot be killed by a rank-j one when i + j > k.
    assert all(A[i][j] == 0 for i in range(k + 1) for j in range(k + 1) if i + j > k)
    assert [A[i][0] for i in range(k + 1)] == MatrixRing(q, k).rank_class_sizes()
    S = sann_matrix(k, q)
    for i in range(k):
        assert all(S[i][j] == -A[i + 1][0] for j in range(k - 1 - i, k))
    for kk in range(k, 6):
        for j in range(kk + 1):
            for i in range(j):
                assert new_sum(i, j, kk, q) == 0


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_k2_published_matrices(q):
    w1, w2 = 3, 7
    w = WeightTable.matrix(q, [w1, w2])
    assert build_Wbar0(2, 3, q, w) == [[q * q * w1, (q * q + q) * w1], [(q * q + q) * w1, (q + 1) * w1 + q * q * w2]]
    assert sann_matrix(2, q) == [
        [-q * (q * q - 1), -(q * q - 1) * (q + 1)],
        [-(q * q - 1) * (q * q - q), -(q * q - 1) * (q * q - q)],
    ]
    assert singleton_deltas([-(q + 1), q], 2, q) == [0, (q * q - 1) * (q * q - q)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_k3_published_matrices(q):
    fp, fm, f2 = q + 1, q - 1, q * q + q + 1
    w1, w2, w3 = 2, 5, 11
    w = WeightTable.matrix(q, [w1, w2, w3])
    expected = [
        [q**3 * w1, q * q * fp * w1, q * f2 * w1],
        [q * q * f2 * w1, q * fp * fp * w1 + q**4 * w2, f2 * w1 + q * q * f2 * w2],
        [q * f2 * w1, fp * w1 + q * q * fp * w2, f2 * w2 + q**3 * w3],
    ]
    Wb = build_Wbar0(3, 4, q, w)
    assert Wb == expected
    from conftest import fraction_det

    assert fraction_det(Wb) == -(q**6) * w1 * (-fp * w1 + q * w2) * (-f2 * w1 + q * f2 * w2 - q**3 * w3)
    S = sann_matrix(3, q)
    assert S[0] == [-q * q * fm * f2, -q * fp * fm * f2, -fm * f2 * f2]
    assert S[1] == [-q * q * fp**2 * fm**2 * f2, -q * fp * fm**2 * f2**2, -q * fp * fm**2 * f2**2]
    assert S[2] == [-(q**3) * fp * fm**3 * f2] * 3


@pytest.mark.parametrize("q", [2, 3])
def test_degenerate_rank_sum_vectors(q):
    fp, fm, f2 = q + 1, q - 1, q * q + q + 1
    # k = 3, j = 2: c_2 = 0 when q w2 = (q+1) w1.
    w = WeightTable.matrix(q, [q, q + 1, 9])
    pair = build_degenerate_pair(2, 3, 4, q, w)
    diff = [a - b for a, b in zip(rank_sums(pair.eta_plus), rank_sums(pair.eta_minus))]
    assert diff == [1, -fp, q, 0]
    assert singleton_deltas(diff[1:], 3, q) == singleton_deltas(diff, 3, q) == [0, q**3 * fp * fm**2 * f2, q**3 * fp * fm**3 * f2]
    # k = 3, j = 3: w = (q b, q^2 a + b, f2 a) puts c_3 = 0; take a = b = 1.
    w = WeightTable.matrix(q, [q, q * q + 1, f2])
    assert c_coefficients(w)[2] == 0
    pair = build_degenerate_pair(3, 3, 4, q, w)
    diff = [a - b for a, b in zip(rank_sums(pair.eta_plus), rank_sums(pair.eta_minus))]
    assert diff == [1, -f2, q * f2, -(q**3)]
    assert singleton_deltas(diff[1:], 3, q) == [0, 0, q**3 * fp * fm**3 * f2]


def test_degenerate_k3_top_row_q2():
    w = WeightTable.matrix(2, [2, 5, 7])
    assert c_coefficients(w)[2] == 0
    pair = build_degenerate_pair(3, 3, 4, 2, w)
    diff = [a - b for a, b in zip(rank_sums(pair.eta_plus), rank_sums(pair.eta_minus))]
    assert diff == [1, -7, 14, -8]
    assert singleton_deltas(diff[1:], 3, 2) == [0, 0, 8 * 3 * 7]
    assert wwe_from_orbits(pair.eta_plus, w) == wwe_from_orbits(pair.eta_minus, w)


@pytest.mark.parametrize("k,q", [(2, 2), (2, 3), (3, 2)])
def test_swap_pairs_are_w_equivalent(k, q):
    for vals in itertools.product(range(1, 4), repeat=k):
        w = WeightTable.matrix(q, vals)
        if not all(c_coefficients(w)):
            continue
        for s in range(1, k):
            pair = build_swap(s, k, k + 1, q, w)
            assert pair.eta_C.length == pair.eta_D.length
            assert wwe_from_orbits(pair.eta_C, w) == wwe_from_orbits(pair.eta_D, w)
            data = orbit_data(k, k + 1, q)
            W0 = build_W0(k, k + 1, q, w)
            lhs = [sum(r * v for r, v in zip(row, pair.sigma)) for row in W0]
            assert lhs == [pair.c * w.w(1) * v for v in pair.varsigma]
            assert len(data.flat) == len(W0) + 1


def test_small_degenerate_pair_against_brute_force():
    w = WeightTable.matrix(2, [2, 3])
    pair = build_degenerate_pair(2, 2, 3, 2, w)
    Gp, Gm = generator_matrix(pair.eta_plus), generator_matrix(pair.eta_minus)
    assert brute_force_wwe(Gp, w) == brute_force_wwe(Gm, w)
    if 16**Gp.length <= 2**26:
        dp, dm = brute_force_dual_wwe(Gp, w, budget=2**26), brute_force_dual_wwe(Gm, w, budget=2**26)
        for d in (2, 3):
            assert dp.coeff(d) - dm.coeff(d) == pipeline_delta(pair.eta_minus, pair.eta_plus, w, d)


@pytest.mark.parametrize("c", [1, 2, 5])
def test_classifier_respects(c):
    assert classify_matrix(scale(homogeneous_matrix(2, 2), c)).verdict == RESPECTS
    for k, q in ((2, 3), (3, 2), (1, 5)):
        assert classify_matrix(scale(hamming("matrix", q, k), c)).verdict == RESPECTS


@pytest.mark.parametrize("k,q", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_homogeneous_fails_with_witness(k, q):
    w = homogeneous_matrix(k, q)
    v = classify_matrix(w)
    assert v.verdict == FAILS
    assert verify_matrix_witness(w, v) is True


def test_homogeneous_k3_q2_witness():
    v = classify_matrix(homogeneous_matrix(3, 2))
    assert (v.rule, v.k, v.d) == ("swap-below-top-rank", 1, 12)
    assert v.delta == 1344


def test_unsettled_region_k3():
    v = classify_matrix(WeightTable.matrix(2, [2, 5, 7]))
    assert v.verdict == UNKNOWN and v.rule == "degenerate-top-unsettled"
    assert v.to_json()["witness"] is None
    with pytest.raises(ValueError):
        witness_pair(WeightTable.matrix(2, [2, 5, 7]), v)


@pytest.mark.parametrize("q", [2, 3])
def test_classifier_grid_k2(q):
    for vals in itertools.product(range(1, 6), repeat=2):
        w = WeightTable.matrix(q, vals)
        v = classify_matrix(w)
        if vals[0] == vals[1] or (q == 2 and vals[0] == 2 * vals[1]):
            assert v.verdict == RESPECTS
            continue
        assert v.verdict == FAILS, (vals, v)
        assert verify_matrix_witness(w, v) is True


k3_weights = st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))


@given(k3_weights)
@settings(max_examples=25, deadline=None)
def test_classifier_k3_q2(vals):
    w = WeightTable.matrix(2, vals)
    v = classify_matrix(w)
    c3 = c_coefficients(w)[2]
    if len(set(vals)) == 1:
        assert v.verdict == RESPECTS
    elif v.verdict == UNKNOWN:
        assert c3 == 0 and vals[2] >= 2 * vals[0]
    else:
        assert v.verdict == FAILS
        assert verify_matrix_witness(w, v) is True


def test_inputs_are_checked():
    with pytest.raises(ValueError):
        classify_matrix(WeightTable.chain(2, [1, 2]))
    with pytest.raises(ValueError):
        build_swap(2, 2, 3, 2, homogeneous_matrix(2, 2))
    with pytest.raises(ValueError):
        build_swap(1, 2, 3, 2, WeightTable.matrix(2, [2, 3]))
    with pytest.raises(ValueError):
        build_degenerate_pair(2, 2, 3, 2, homogeneous_matrix(2, 2))
    with pytest.raises(ValueError):
        singleton_deltas([1, 2, 3, 4, 5], 2, 2)
    assert Fraction(qbinom(3, 1, 2)) == 7


def _is_lower_triangular(A) -> bool:
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(i + 1, len(A)))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_t_products_are_lower_triangular(k, q):
    from mwdual.matrixgap import t_matrix

    T = t_matrix(k, q)
    assert _is_lower_triangular(mat_mul(sann_matrix(k, q), T))
    for seed in range(3):
        assert _is_lower_triangular(mat_mul(build_Wbar0(k, k + 1, q, _weight(k, q, seed)), T))


@pytest.mark.parametrize("k,q", [(2, 2), (2, 3), (3, 2)])
def test_swap_singleton_zero_pattern(k, q):
    for vals in itertools.product(range(1, 4), repeat=k):
        w = WeightTable.matrix(q, vals)
        if not all(c_coefficients(w)):
            continue
        for s in range(1, k):
            pair = build_swap(s, k, k + 1, q, w)
            diff = [a - b for a, b in zip(rank_sums(pair.eta_D), rank_sums(pair.eta_C))]
            deltas = singleton_deltas(diff, k, q)
            assert all(x == 0 for x in deltas[: s - 1])
            assert deltas[s - 1] != 0


def test_short_swap_pairs_end_to_end():
    from mwdual.codes import se_from_orbits
    from mwdual.enumerators import specialize

    checked = 0
    for vals in itertools.product(range(1, 6), repeat=2):
        w = WeightTable.matrix(2, vals)
        if not all(c_coefficients(w)) or len(set(vals)) == 1:
            continue
        pair = build_swap(1, 2, 3, 2, w)
        if pair.length > 300:
            continue
        checked += 1
        assert specialize(se_from_orbits(pair.eta_C), w) == specialize(se_from_orbits(pair.eta_D), w)
        diff = [a - b for a, b in zip(rank_sums(pair.eta_D), rank_sums(pair.eta_C))]
        contrib = singleton_deltas(diff, 2, 2)
        for d in range(w.w_min, 2 * w.w_min):
            predicted = sum(contrib[i - 1] for i in (1, 2) if w.w(i) == d)
            assert pipeline_delta(pair.eta_C, pair.eta_D, w, d) == predicted
    assert checked > 0

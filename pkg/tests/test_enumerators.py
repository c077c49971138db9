from __future__ import annotations

import random

import pytest

from helpers import random_mf, small_modules
from mwdual.chainring import chain_kravchuk
from mwdual.codes import code_size, se_from_orbits
from mwdual.enumerators import (
    PartitionEnumerator,
    WWEnumerator,
    full_space_enumerator,
    macwilliams_transform,
    specialize,
    truncated_dual_wwe,
    wwe_substitute,
)
from mwdual.matrixring import rank_kravchuk
from mwdual.weights import WeightTable, hamming, homogeneous_chain, homogeneous_matrix


def _kravchuk(mod):
    if mod.family == "chain":
        return chain_kravchuk(mod.q, mod.ring.m)
    return rank_kravchuk(mod.k, mod.q)


def _weight(mod, rng):
    n = mod.ring.m if mod.family == "chain" else mod.k
    return WeightTable(mod.family, mod.q, n, tuple(rng.randint(1, 5) for _ in range(n)))


def _ring_size(mod):
    return mod.ring.size


@pytest.mark.parametrize("mod", small_modules(), ids=lambda m: repr(m.to_json()))
def test_double_transform_is_identity(mod):
    rng = random.Random(7)
    K = _kravchuk(mod)
    for _ in range(4):
        eta = random_mf(rng, mod, rng.randint(1, 4))
        se = se_from_orbits(eta)
        dual = macwilliams_transform(se, K, code_size(eta))
        assert dual.total() * se.total() == _ring_size(mod) ** eta.length
        assert macwilliams_transform(dual, K, dual.total()) == se


@pytest.mark.parametrize("mod", small_modules(), ids=lambda m: repr(m.to_json()))
def test_truncated_matches_full_transform(mod):
    rng = random.Random(11)
    K = _kravchuk(mod)
    for _ in range(4):
        eta = random_mf(rng, mod, rng.randint(1, 4))
        w = _weight(mod, rng)
        se = se_from_orbits(eta)
        full = specialize(macwilliams_transform(se, K, code_size(eta)), w)
        for d in (0, 3, 7, full.max_degree()):
            assert truncated_dual_wwe(se, K, code_size(eta), w, d) == full.truncate(d)


@pytest.mark.parametrize(
    "sizes,K,zero_cls", [([2, 1, 1], chain_kravchuk(2, 2), 2), ([1, 9, 6], rank_kravchuk(2, 2), 0)]
)
def test_full_space_dualizes_to_zero_code(sizes, K, zero_cls):
    for n in range(1, 4):
        full = full_space_enumerator(sizes, n)
        assert full.total() == sum(sizes) ** n
        dual = macwilliams_transform(full, K, full.total())
        exps = [0] * len(sizes)
        exps[zero_cls] = n
        assert dual.as_dict() == {tuple(exps): 1}


def test_hamming_identity_over_z4():
    # With the Hamming weight, the dual enumerator obeys the classical
    # substitution X -> X + 3Y, Y -> X - Y.
    rng = random.Random(3)
    mod = small_modules()[1]
    w = hamming("chain", 2, 2)
    K = _kravchuk(mod)
    for _ in range(5):
        eta = random_mf(rng, mod, 3, zero_max=0)
        se = se_from_orbits(eta)
        primal = specialize(se, w)
        dual = specialize(macwilliams_transform(se, K, code_size(eta)), w)
        assert wwe_substitute(primal, (1, 3), (1, -1), 1, code_size(eta), eta.length) == dual


def test_transform_rejects_non_codes():
    bad = PartitionEnumerator.from_dict(3, 1, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    with pytest.raises(ValueError, match="integral"):
        macwilliams_transform(bad, chain_kravchuk(2, 2), 3)
    e = PartitionEnumerator.from_dict(3, 1, {(1, 0, 0): 1, (0, 0, 1): 1})
    with pytest.raises(ValueError):
        macwilliams_transform(e, chain_kravchuk(2, 2), 3)
    with pytest.raises(ValueError):
        macwilliams_transform(e, [[1]], 2)
    with pytest.raises(ValueError):
        truncated_dual_wwe(e, chain_kravchuk(2, 2), 2, homogeneous_chain(2, 2), -1)


def test_specialize_and_text():
    e = PartitionEnumerator.from_dict(3, 2, {(0, 0, 2): 1, (1, 1, 0): 3})
    w = homogeneous_chain(2, 2)
    assert specialize(e, w).as_dict() == {0: 1, 3: 3}
    assert WWEnumerator.from_dict({0: 1, 2: 2, 1: 0}).to_text() == "1 + 2t^2"
    with pytest.raises(ValueError):
        specialize(e, homogeneous_matrix(3, 2))


def test_json_roundtrips():
    e = PartitionEnumerator.from_dict(3, 2, {(0, 0, 2): 1, (1, 1, 0): 3})
    assert PartitionEnumerator.from_json(e.to_json()) == e
    f = WWEnumerator.from_dict({0: 1, 5: 12})
    assert WWEnumerator.from_json(f.to_json()) == f
    assert f.coeff(5) == 12 and f.coeff(4) == 0 and f.total() == 13

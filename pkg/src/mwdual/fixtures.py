"""Worked examples with their published values, rebuilt and compared exactly.

Chain fixtures live over ``Z/8Z`` (``q = 2``, ``m = 3``) with ``k = 3``.
Matrix fixtures live over ``M_2(F_2)`` with ``m = 3`` and the
``worked-k2m3q2`` orbit ordering, so every orbit-indexed vector below is
written ``<zero | seven lines | seven planes>``.

Each fixture returns a :class:`FixtureReport` listing named checks. A check
compares plain Python values (ints, lists, dicts) for equality; nothing is
approximate.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .chaingap import build_chain_pair, pipeline_delta as chain_pipeline_delta
from .chainring import chain_kravchuk
from .codes import MatrixModule, code_size, matrix_mf_from_vector, matrix_mf_to_vector, omega_vector, se_from_orbits, wwe_from_orbits
from .enumerators import truncated_dual_wwe
from .matrixgap import build_degenerate_pair, build_swap, pipeline_dual_prefix, rank_sums, singleton_deltas
from .weights import WeightTable

ORDERING = "worked-k2m3q2"


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "expected": _render(self.expected), "actual": _render(self.actual)}


@dataclass(frozen=True)
class FixtureReport:
    fixture: str
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def mismatches(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"fixture": self.fixture, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _render(value: Any) -> Any:
    """Numbers become decimal strings; dict keys are kept in sorted order."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return [[_render(k), _render(v)] for k, v in sorted(value.items())]
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    return value


def _prefix(wwe, maxdeg: int) -> dict[int, int]:
    return {d: c for d, c in wwe.terms if d <= maxdeg}


def _se(eta) -> dict[tuple[int, ...], int]:
    return se_from_orbits(eta).as_dict()


# --- chain fixtures ----------------------------------------------------------------------


@dataclass(frozen=True)
class ChainExpect:
    weights: tuple[int, int, int]
    c_mult: int
    c_zeros: int
    d_mults: tuple[int, ...]  # sorted multiplicities of the seven S_3 functionals
    Delta: int
    se_C: dict
    se_D: dict
    primal: dict
    dual_C: dict
    dual_D: dict
    delta: int


CHAIN_FIXTURES: dict[str, ChainExpect] = {
    "chain-z8-homog": ChainExpect(
        (1, 1, 2), 8, 0, (2, 2, 2, 2, 4, 4, 8), 0,
        {(8, 8, 8, 0): 4, (0, 8, 8, 8): 2, (0, 0, 8, 16): 1, (0, 0, 0, 24): 1},
        {(0, 0, 16, 8): 4, (0, 0, 12, 12): 2, (0, 0, 8, 16): 1, (0, 0, 0, 24): 1},
        {0: 1, 16: 1, 24: 2, 32: 4},
        {0: 1, 1: 16, 2: 1848, 3: 60400},
        {0: 1, 1: 48, 2: 1832, 3: 64656},
        -32,
    ),
    "chain-z8-122": ChainExpect(
        (1, 2, 2), 8, 6, (2, 2, 2, 2, 6, 6, 10), -6,
        {(8, 8, 8, 6): 4, (0, 8, 8, 14): 2, (0, 0, 8, 22): 1, (0, 0, 0, 30): 1},
        {(0, 0, 20, 10): 4, (0, 0, 16, 14): 2, (0, 0, 8, 22): 1, (0, 0, 0, 30): 1},
        {0: 1, 16: 1, 32: 2, 40: 4},
        {0: 1, 1: 24, 2: 1074, 3: 36584},
        {0: 1, 2: 1354, 3: 34304},
        24,
    ),
    "chain-z8-121": ChainExpect(
        (1, 2, 1), 4, 11, (1, 1, 1, 1, 5, 5, 9), -11,
        {(4, 4, 4, 11): 4, (0, 4, 4, 15): 2, (0, 0, 4, 19): 1, (0, 0, 0, 23): 1},
        {(0, 0, 16, 7): 4, (0, 0, 12, 11): 2, (0, 0, 4, 19): 1, (0, 0, 0, 23): 1},
        {0: 1, 4: 1, 12: 2, 16: 4},
        {0: 1, 1: 63, 2: 2111, 3: 51635},
        {0: 1, 1: 23, 2: 1195, 3: 38431},
        40,
    ),
}


def run_chain_fixture(fid: str) -> FixtureReport:
    ex = CHAIN_FIXTURES[fid]
    w = WeightTable.chain(2, ex.weights)
    pair = build_chain_pair(w, 3)
    K = chain_kravchuk(2, 3)
    C, D = pair.eta_C, pair.eta_D
    duals = [_prefix(truncated_dual_wwe(se_from_orbits(e), K, code_size(e), w, 3), 3) for e in (C, D)]
    checks = [
        Check("C multiplicities", {0: ex.c_mult, 1: ex.c_mult, 2: ex.c_mult}, C.as_dict()),
        Check("C zero columns", ex.c_zeros, C.zero_count),
        Check("D multiplicities", list(ex.d_mults), sorted(D.as_dict().values())),
        Check("D zero columns", 0, D.zero_count),
        Check("Delta", ex.Delta, pair.Delta),
        Check("se C", ex.se_C, _se(C)),
        Check("se D", ex.se_D, _se(D)),
        Check("wwe C", ex.primal, wwe_from_orbits(C, w).as_dict()),
        Check("wwe D", ex.primal, wwe_from_orbits(D, w).as_dict()),
        Check("dual C prefix", ex.dual_C, duals[0]),
        Check("dual D prefix", ex.dual_D, duals[1]),
        Check("delta A_1(C^perp) - A_1(D^perp)", ex.delta, duals[0].get(1, 0) - duals[1].get(1, 0)),
        Check("delta via pipeline_delta", ex.delta, chain_pipeline_delta(pair, 1)),
    ]
    return FixtureReport(fid, tuple(checks))


# --- matrix fixtures ---------------------------------------------------------------------

VARSIGMA = (0, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1)


@dataclass(frozen=True)
class MatrixExpect:
    """Values for a pair (first, second); deltas are rank sums of second minus first."""

    weights: tuple[int, int]
    eta_first: tuple[int, ...]
    eta_second: tuple[int, ...]
    omega_first: tuple[int, ...]
    omega_second: tuple[int, ...]
    length: int
    delta_bar: tuple[int, int, int]
    singletons: tuple[int, int]  # net rank-1 and rank-2 singleton contributions
    se_first: dict
    se_second: dict
    primal: dict
    dual_first: dict
    dual_second: dict
    maxdeg: int
    swap: dict | None = None  # varsigma, sigma, c, a, b, Delta, alpha


def _rep(v: int, n: int = 7) -> tuple[int, ...]:
    return (v,) * n


MATRIX_FIXTURES: dict[str, MatrixExpect] = {
    # first = C_+, second = C_-
    "mat-f2-deg23": MatrixExpect(
        (2, 3),
        (1, 1, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0),
        (0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0),
        (0, 4, 4, 2, 4, 6, 6, 6, 8, 6, 6, 6, 8, 6, 8),
        (0, 4, 4, 2, 4, 6, 6, 6, 8, 6, 6, 6, 8, 6, 8),
        4,
        (-1, 3, -2),
        (0, -6),
        {(4, 0, 0): 1, (3, 1, 0): 3, (2, 2, 0): 9, (1, 3, 0): 27, (2, 0, 2): 6, (1, 1, 2): 18},
        {(4, 0, 0): 1, (3, 1, 0): 3, (2, 2, 0): 9, (1, 3, 0): 33, (0, 4, 0): 18},
        {0: 1, 2: 3, 4: 9, 6: 33, 8: 18},
        {0: 1, 2: 12, 3: 6, 4: 36},
        {0: 1, 2: 12, 4: 54},
        4,
    ),
    "mat-f2-w12": MatrixExpect(
        (1, 2),
        (0, 3, 3, 3, 26, 3, 3, 3) + _rep(3),
        (3, 2, 2, 2, 25, 0, 4, 2, 3, 3, 3, 3, 3, 5, 5),
        (0, 30, 53, 53, 53, 30, 53, 30) + _rep(74, 6) + (51,),
        (0, 30, 51, 51, 53, 30, 53, 30) + _rep(74, 6) + (53,),
        65,
        (3, -7, 4),
        (6, 18),
        {(65, 0, 0): 1, (35, 30, 0): 9, (12, 53, 0): 12, (26, 27, 12): 6, (3, 50, 12): 36},
        {
            (65, 0, 0): 1, (35, 30, 0): 9, (14, 51, 0): 6, (12, 53, 0): 6, (3, 50, 12): 6,
            (5, 46, 14): 24, (28, 21, 16): 6, (7, 42, 16): 6,
        },
        {0: 1, 30: 9, 51: 6, 53: 12, 74: 36},
        {0: 1, 1: 132, 2: 15762, 3: 1674894},
        {0: 1, 1: 138, 2: 16176, 3: 1695210},
        3,
        {
            "varsigma": VARSIGMA,
            "sigma": (-1, -1, -1, -1, -3, 1, -1, 0, 0, 0, 0, 0, 2, 2),
            "c": 2, "a": 3, "b": 0, "Delta": -3, "alpha": (10, 17),
        },
    ),
    "mat-f2-w45-swap": MatrixExpect(
        (4, 5),
        (3,) + _rep(4, 3) + (22,) + _rep(4, 3) + _rep(4),
        (0, 6, 6, 6, 21, 7, 5, 6, 4, 4, 4, 4, 4, 0, 0),
        (0, 160, 232, 232, 232, 160, 232, 160) + _rep(296, 6) + (224,),
        (0, 160, 224, 224, 232, 160, 232, 160) + _rep(296, 6) + (232,),
        77,
        (-3, 11, -8),
        (6, -18),
        {(77, 0, 0): 1, (37, 40, 0): 9, (19, 58, 0): 12, (25, 36, 16): 6, (7, 54, 16): 36},
        {
            (77, 0, 0): 1, (37, 40, 0): 9, (21, 56, 0): 6, (19, 58, 0): 6, (21, 48, 8): 6,
            (5, 64, 8): 6, (6, 59, 12): 24, (7, 54, 16): 6,
        },
        {0: 1, 160: 9, 224: 6, 232: 12, 296: 36},
        {0: 1, 4: 165, 5: 18, 8: 21186},
        {0: 1, 4: 171, 8: 21918},
        8,
        {
            "varsigma": VARSIGMA,
            "sigma": (2, 2, 2, -1, 3, 1, 2, 0, 0, 0, 0, 0, -4, -4),
            "c": 2, "a": 1, "b": 0, "Delta": 3, "alpha": (40, 56),
        },
    ),
    # given directly as multiplicity vectors; no construction parameters
    "mat-f2-w45-lindep": MatrixExpect(
        (4, 5),
        (0, 2, 3, 3, 1, 2, 3, 2, 2, 6, 2, 6, 6, 2, 6),
        (0, 2, 2, 4, 2, 2, 2, 2, 6, 6, 2, 2, 6, 2, 6),
        (0, 136, 144, 144, 136, 136, 144, 136) + _rep(192),
        (0, 136, 144, 136, 136, 136, 144, 144) + _rep(192),
        46,
        (0, 0, 0),
        (0, 0),
        {(46, 0, 0): 1, (12, 34, 0): 12, (10, 36, 0): 9, (1, 33, 12): 6, (2, 28, 16): 18, (3, 23, 20): 18},
        {(46, 0, 0): 1, (12, 34, 0): 12, (10, 36, 0): 9, (2, 28, 16): 36, (4, 18, 24): 6},
        {0: 1, 136: 12, 144: 9, 192: 42},
        {0: 1, 4: 48, 8: 4059, 9: 1440, 10: 522, 12: 290160},
        {0: 1, 4: 48, 8: 4059, 9: 1440, 10: 522, 12: 290112},
        12,
    ),
    "mat-f2-w37": MatrixExpect(
        (3, 7),
        (0,) + _rep(12, 3) + (122,) + _rep(12, 3) + _rep(12),
        (11, 9, 9, 9, 117, 1, 17, 9, 12, 12, 12, 12, 12, 18, 18),
        (0, 360, 690, 690, 690, 360, 690, 360) + _rep(990, 6) + (660,),
        (0, 360, 660, 660, 690, 360, 690, 360) + _rep(990, 6) + (690,),
        278,
        (11, -23, 12),
        (30, 66),
        {(278, 0, 0): 1, (158, 120, 0): 9, (48, 230, 0): 12, (122, 108, 48): 6, (12, 218, 48): 36},
        {
            (278, 0, 0): 1, (158, 120, 0): 9, (58, 220, 0): 6, (48, 230, 0): 6, (12, 218, 48): 6,
            (20, 204, 54): 24, (128, 90, 60): 6, (28, 190, 60): 6,
        },
        {0: 1, 360: 9, 660: 6, 690: 12, 990: 36},
        {0: 1, 3: 582, 6: 316947, 9: 152382900},
        {0: 1, 3: 612, 6: 326649, 7: 66, 9: 154592448},
        9,
        {
            "varsigma": VARSIGMA,
            "sigma": (-3, -3, -3, -5, -11, 5, -3, 0, 0, 0, 0, 0, 6, 6),
            "c": 10, "a": 4, "b": 0, "Delta": -11, "alpha": (30, 55),
        },
    ),
}


def _matrix_pair(fid: str, ex: MatrixExpect, w: WeightTable) -> tuple[Any, Any, list[Check]]:
    """Build (first, second) the way the fixture was produced, with construction checks."""
    extra: list[Check] = []
    if fid == "mat-f2-deg23":
        pair = build_degenerate_pair(2, 2, 3, 2, w, ORDERING)
        return pair.eta_plus, pair.eta_minus, extra
    if fid == "mat-f2-w45-lindep":
        module = MatrixModule(2, 2, 3, ORDERING)
        return matrix_mf_from_vector(module, ex.eta_first), matrix_mf_from_vector(module, ex.eta_second), extra
    pair = build_swap(1, 2, 3, 2, w, ORDERING)
    sw = ex.swap
    extra += [
        Check("varsigma", list(sw["varsigma"]), list(pair.varsigma)),
        Check("sigma", list(sw["sigma"]), list(pair.sigma)),
        Check("c", sw["c"], pair.c),
        Check("a", sw["a"], pair.a),
        Check("b", sw["b"], pair.b),
        Check("Delta", sw["Delta"], pair.Delta),
        Check("alpha_1, alpha_2", list(sw["alpha"]), list(pair.alpha)),
    ]
    return pair.eta_C, pair.eta_D, extra


def run_matrix_fixture(fid: str) -> FixtureReport:
    ex = MATRIX_FIXTURES[fid]
    w = WeightTable.matrix(2, ex.weights)
    first, second, checks = _matrix_pair(fid, ex, w)
    delta_bar = [b - a for a, b in zip(rank_sums(first), rank_sums(second))]
    duals = [_prefix(pipeline_dual_prefix(e, w, ex.maxdeg), ex.maxdeg) for e in (first, second)]
    checks += [
        Check("eta first", list(ex.eta_first), matrix_mf_to_vector(first)),
        Check("eta second", list(ex.eta_second), matrix_mf_to_vector(second)),
        Check("omega first", list(ex.omega_first), omega_vector(first, w)),
        Check("omega second", list(ex.omega_second), omega_vector(second, w)),
        Check("length first", ex.length, first.length),
        Check("length second", ex.length, second.length),
        Check("rank-sum difference", list(ex.delta_bar), delta_bar),
        Check("singleton contributions", list(ex.singletons), singleton_deltas(delta_bar, 2, 2)),
        Check("se first", ex.se_first, _se(first)),
        Check("se second", ex.se_second, _se(second)),
        Check("wwe first", ex.primal, wwe_from_orbits(first, w).as_dict()),
        Check("wwe second", ex.primal, wwe_from_orbits(second, w).as_dict()),
        Check("dual first prefix", ex.dual_first, duals[0]),
        Check("dual second prefix", ex.dual_second, duals[1]),
    ]
    return FixtureReport(fid, tuple(checks))


RUNNERS: dict[str, Callable[[str], FixtureReport]] = {
    **{fid: run_chain_fixture for fid in CHAIN_FIXTURES},
    **{fid: run_matrix_fixture for fid in MATRIX_FIXTURES},
}
FIXTURE_IDS = tuple(RUNNERS)


def run_fixture(fid: str) -> FixtureReport:
    if fid not in RUNNERS:
        raise ValueError(f"unknown fixture {fid!r}; choose from {', '.join(FIXTURE_IDS)}")
    return RUNNERS[fid](fid)

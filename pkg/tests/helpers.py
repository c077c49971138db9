"""Shared generators for small random codes used across the test modules."""
from __future__ import annotations

import random

from mwdual.chainring import POLY, ZMOD, ChainRing
from mwdual.codes import ChainModule, MatrixModule, MultiplicityFunction


def random_mf(rng: random.Random, module, length: int, zero_max: int = 1) -> MultiplicityFunction:
    """A multiplicity function with ``length`` nonzero columns drawn uniformly from the orbits."""
    orbits = module.functional_orbits()
    counts: dict = {}
    for _ in range(length):
        o = rng.choice(orbits)
        counts[o] = counts.get(o, 0) + 1
    return MultiplicityFunction.from_mapping(module, counts, rng.randint(0, zero_max))


def small_modules():
    """A spread of tiny modules over both ring families."""
    z4 = ChainRing(2, 2, ZMOD)
    f2x2 = ChainRing(2, 2, POLY)
    z8 = ChainRing(2, 3, ZMOD)
    z9 = ChainRing(3, 2, ZMOD)
    return [
        ChainModule(z4, "Z", 1),
        ChainModule(z4, "Z", 2),
        ChainModule(z4, "S", 2),
        ChainModule(f2x2, "Z", 2),
        ChainModule(f2x2, "S", 2),
        ChainModule(z8, "Z", 3),
        ChainModule(z9, "Z", 2),
        ChainModule(z9, "S", 1),
        MatrixModule(2, 2, 2),
        MatrixModule(2, 2, 3),
        MatrixModule(2, 1, 2),
        MatrixModule(3, 1, 2),
    ]

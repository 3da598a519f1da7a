"""Seeded random polynomials for sampled identity checks."""

import logging
from collections.abc import Sequence

import numpy as np

from rinehart.model.poly import Monomial, Poly, Var, monomial

logger = logging.getLogger(__name__)

COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_monomial(
    rng: np.random.Generator, variables: Sequence[Var], degree: int
) -> Monomial:
    """A monomial of exactly ``degree`` drawn with replacement from ``variables``."""
    if not variables or degree <= 0:
        return ()
    powers: dict[Var, int] = {}
    for index in rng.integers(len(variables), size=degree):
        var = variables[int(index)]
        powers[var] = powers.get(var, 0) + 1
    return monomial(powers)


def random_poly(
    rng: np.random.Generator,
    base_vars: Sequence[Var],
    fiber_vars: Sequence[Var] = (),
    max_base_degree: int = 3,
    max_fiber_degree: int = 0,
    max_terms: int = 3,
) -> Poly:
    """Sum of up to ``max_terms`` random terms with small integer coefficients.

    Each term has base degree ``<= max_base_degree`` and fiber degree
    ``<= max_fiber_degree``. The result may be zero when terms cancel.
    """
    terms: dict[Monomial, int] = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        base_part = random_monomial(
            rng, base_vars, int(rng.integers(0, max_base_degree + 1))
        )
        fiber_part = random_monomial(
            rng, fiber_vars, int(rng.integers(0, max_fiber_degree + 1))
        )
        mono = monomial({**dict(base_part), **dict(fiber_part)})
        coeff = COEFFICIENTS[int(rng.integers(len(COEFFICIENTS)))]
        terms[mono] = terms.get(mono, 0) + coeff
    return Poly(terms)

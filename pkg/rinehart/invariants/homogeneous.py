"""Reductive homogeneous spaces ``G/H`` with ``g = h + q``."""

import itertools
import logging
from collections.abc import Sequence
from math import comb

from sympy import Matrix

from rinehart.linalg import nullity, nullspace, to_sympy
from rinehart.model.poly import Monomial, Poly, Var, monomial, render_rational
from rinehart.model.presentation import Derivation, LieRinehartPresentation
from rinehart.model.report import CheckReport, CheckResult
from rinehart.model.scene import ReductivePair
from rinehart.tautological import poly_bracket

logger = logging.getLogger(__name__)


def _bracket(pair: ReductivePair, i: int, j: int) -> dict[int, object]:
    return {k: c for k, c in enumerate(pair.structure[i][j]) if c}


def _render(pair: ReductivePair, value: dict[int, object]) -> str:
    return (
        " + ".join(
            f"{render_rational(c)}*{pair.basis[k]}" for k, c in sorted(value.items())
        )
        or "0"
    )


def _inclusion(
    pair: ReductivePair,
    name: str,
    message: str,
    left: Sequence[int],
    right: Sequence[int],
    target: Sequence[int],
) -> CheckResult:
    allowed = set(target)
    for i in left:
        for j in right:
            if i == j:
                continue
            value = _bracket(pair, i, j)
            if any(k not in allowed for k in value):
                return CheckResult.failed(
                    name,
                    f"{message} fails",
                    witness=[
                        f"[{pair.basis[i]}, {pair.basis[j]}]",
                        _render(pair, value),
                    ],
                )
    return CheckResult.ok(name, f"{message} holds")


def lie_algebra_check(pair: ReductivePair) -> CheckResult:
    """Jacobi identity of the structure constants on basis triples."""
    n = len(pair.basis)
    for a, b, c in itertools.combinations(range(n), 3):
        total = [0] * n
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for k, coefficient in _bracket(pair, y, z).items():
                for m, inner in _bracket(pair, x, k).items():
                    total[m] += coefficient * inner
        if any(total):
            return CheckResult.failed(
                "lie_algebra",
                "structure constants violate Jacobi",
                witness=[f"({pair.basis[a]}, {pair.basis[b]}, {pair.basis[c]})"],
            )
    return CheckResult.ok("lie_algebra", "structure constants satisfy Jacobi")


def q_invariant_dimension(pair: ReductivePair) -> int:
    """``dim q^H``: kernel of the stacked action matrices of ``h`` on ``q``."""
    k = len(pair.q_basis)
    if not pair.h_basis:
        return k
    rows = [list(row) for matrix in pair.h_action_on_q for row in matrix]
    return nullity(Matrix([[to_sympy(x) for x in row] for row in rows]))


def q_invariant_check(pair: ReductivePair) -> CheckResult:
    """``dim q^H`` against the number of ``h``-invariant linear forms on ``q``."""
    dimension = q_invariant_dimension(pair)
    linear = len(invariant_polynomials(action_derivations(pair), q_coordinates(pair), 1))
    return CheckResult.from_condition(
        "q_invariants",
        dimension == linear,
        f"dim q^H = {dimension} = number of invariant linear forms",
        [f"dim q^H = {dimension}", f"{linear} invariant linear forms"],
        dimension=dimension,
    )


def check_reductive(pair: ReductivePair) -> CheckReport:
    """``h`` is a subalgebra, ``[h, q] ⊂ q`` and ``[q, q] ⊂ h``."""
    checks = [
        lie_algebra_check(pair),
        _inclusion(pair, "subalgebra", "[h, h] ⊂ h", pair.h_basis, pair.h_basis, pair.h_basis),
        _inclusion(pair, "h_action", "[h, q] ⊂ q", pair.h_basis, pair.q_basis, pair.q_basis),
        _inclusion(pair, "q_bracket", "[q, q] ⊂ h", pair.q_basis, pair.q_basis, pair.h_basis),
        q_invariant_check(pair),
    ]
    return CheckReport(checks=checks)


def q_coordinates(pair: ReductivePair) -> tuple[Var, ...]:
    return tuple(Var.base(f"y{n + 1}") for n in range(len(pair.q_basis)))


def action_derivations(pair: ReductivePair) -> list[Derivation]:
    """Vector fields ``v_n = sum_a (M_n y)_a d/dy_a`` of the ``h``-action on ``q``."""
    ys = q_coordinates(pair)
    derivations = []
    for matrix in pair.h_action_on_q:
        images = {}
        for a, y in enumerate(ys):
            image = Poly.zero()
            for b, coefficient in enumerate(matrix[a]):
                if coefficient:
                    image = image + Poly.var(ys[b]) * coefficient
            images[y] = image
        derivations.append(Derivation(images=images))
    return derivations


def degree_monomials(variables: Sequence[Var], degree: int) -> list[Monomial]:
    result = []
    for combo in itertools.combinations_with_replacement(variables, degree):
        powers: dict[Var, int] = {}
        for var in combo:
            powers[var] = powers.get(var, 0) + 1
        result.append(monomial(powers))
    return result


def invariant_polynomials(
    derivations: Sequence[Derivation], variables: Sequence[Var], degree: int
) -> list[Poly]:
    """Basis of degree-``degree`` polynomials annihilated by every derivation."""
    monomials = degree_monomials(variables, degree)
    if not monomials:
        return []
    index = {mono: c for c, mono in enumerate(monomials)}
    rows: list[list] = []
    for derivation in derivations:
        block = [[0] * len(monomials) for _ in monomials]
        for c, mono in enumerate(monomials):
            for image_mono, coeff in derivation(Poly.from_monomial(mono)).items():
                block[index[image_mono]][c] = coeff
        rows.extend(block)
    if not rows:
        return [Poly.from_monomial(mono) for mono in monomials]
    matrix = Matrix([[to_sympy(x) for x in row] for row in rows])
    return [
        sum(
            (Poly.from_monomial(mono, coeff) for mono, coeff in zip(monomials, vector, strict=True)),
            Poly.zero(),
        )
        for vector in nullspace(matrix)
    ]


def invariant_gap_check(degrees: Sequence[dict], degree_bound: int) -> CheckResult:
    """``S^d(q^H)`` embeds in ``(S^d q)^H``, so no gap may be negative."""
    negative = next((d for d in degrees if d["gap"] < 0), None)
    witness = (
        [
            f"degree {negative['degree']}",
            f"{negative['invariant_dim']} < {negative['q_h_dim']}",
        ]
        if negative
        else None
    )
    return CheckResult.from_condition(
        "invariant_gap",
        negative is None,
        f"dim (S^d q)^H >= dim S^d(q^H) for d <= {degree_bound}",
        witness,
        degrees=list(degrees),
    )


def homogeneous_invariant_gap(pair: ReductivePair, degree_bound: int) -> CheckReport:
    """Compare ``(S^d q)^H`` with ``S^d(q^H)`` for ``1 <= d <= degree_bound``.

    ``H`` is treated through its Lie algebra, which is exact for connected
    ``H``.
    """
    derivations = action_derivations(pair)
    ys = q_coordinates(pair)
    k0 = q_invariant_dimension(pair)
    degrees = []
    for d in range(1, degree_bound + 1):
        invariants = invariant_polynomials(derivations, ys, d)
        q_h_side = comb(k0 + d - 1, d) if k0 else 0
        degrees.append(
            {
                "degree": d,
                "invariant_dim": len(invariants),
                "q_h_dim": q_h_side,
                "gap": len(invariants) - q_h_side,
                "basis": [str(f) for f in invariants],
            }
        )
        logger.debug("degree %d: %d invariants vs %d", d, len(invariants), q_h_side)
    return CheckReport(
        checks=[
            *check_reductive(pair).checks,
            invariant_gap_check(degrees, degree_bound),
        ]
    )


def g_times_g_pair(
    name: str, basis: Sequence[str], structure: Sequence[Sequence[Sequence[object]]]
) -> ReductivePair:
    """``G x G / diagonal`` with ``h_i = (X_i, X_i)`` and ``q_i = (X_i, -X_i)``."""
    n = len(basis)
    h = [f"h{b}" for b in basis]
    q = [f"q{b}" for b in basis]
    brackets: dict[tuple[str, str], dict[str, object]] = {}
    for i, j in itertools.combinations(range(n), 2):
        brackets[h[i], h[j]] = {h[k]: c for k, c in enumerate(structure[i][j]) if c}
        brackets[q[i], q[j]] = {h[k]: c for k, c in enumerate(structure[i][j]) if c}
    for i, j in itertools.product(range(n), repeat=2):
        brackets[h[i], q[j]] = {q[k]: c for k, c in enumerate(structure[i][j]) if c}
    return ReductivePair.from_brackets(
        name=name, basis=[*h, *q], brackets=brackets, h=h
    )


def lie_poisson_casimirs(pres: LieRinehartPresentation, degree: int) -> list[Poly]:
    """Degree-``degree`` elements of ``S[g]`` commuting with every ``e_i``.

    Raises:
        ValueError: If the presentation has base variables.
    """
    if pres.base_vars:
        raise ValueError("Casimirs are computed for Lie-Poisson algebras only")
    derivations = [
        Derivation(
            images={f: poly_bracket(pres, e.poly, f.poly) for f in pres.l_basis}
        )
        for e in pres.l_basis
    ]
    return invariant_polynomials(derivations, pres.l_basis, degree)

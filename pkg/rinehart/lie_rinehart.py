"""Verification of the Lie-Rinehart axioms on finite free presentations.

A presentation is checked on basis elements only: the Jacobi identity and
the anchor-morphism property are ``A``-multilinear once the bracket is
extended by ``[u, a*v] = a*[u, v] + rho(u)(a)*v``, so basis elements plus
symbolic coefficients decide them exactly.
"""

import itertools
import logging
from collections.abc import Iterable

from rinehart.errors import FiberVariableError, PresentationError
from rinehart.model.poly import Poly
from rinehart.model.presentation import (
    Derivation,
    KaehlerPresentation,
    LieRinehartPresentation,
)
from rinehart.model.report import CheckReport, CheckResult
from rinehart.sampling import make_rng, random_poly

logger = logging.getLogger(__name__)


def apply_anchor(pres: LieRinehartPresentation, j: int, a: Poly) -> Poly:
    """``rho(e_j)(a) = sum_s anchor[j][s] * da/dx_s``.

    Raises:
        FiberVariableError: If ``a`` involves a fiber variable.
    """
    fiber = [var for var in a.variables() if var.is_fiber]
    if fiber:
        raise FiberVariableError(
            f"anchor applies to elements of A only, got fiber variable '{fiber[0]}'"
        )
    result = Poly.zero()
    for s, x in enumerate(pres.base_vars):
        coefficient = pres.anchor[j][s]
        if coefficient:
            result = result + coefficient * a.partial(x)
    return result


def _linear_coefficients(pres: LieRinehartPresentation, u: Poly) -> list[Poly]:
    if u.fiber_degree_part(1) != u:
        raise PresentationError(f"'{u}' is not an element of {pres.name}")
    return [u.coefficient(e) for e in pres.l_basis]


def anchor_derivation(pres: LieRinehartPresentation, u: Poly) -> Derivation:
    """``rho(u)`` for ``u = sum_j a_j e_j`` as a derivation of ``A``."""
    result = Derivation(images={x: Poly.zero() for x in pres.base_vars})
    for j, a in enumerate(_linear_coefficients(pres, u)):
        if a:
            result = result + pres.anchor_of(j).scaled(a)
    return result


def lie_bracket(pres: LieRinehartPresentation, u: Poly, v: Poly) -> Poly:
    """Bracket of ``A``-linear combinations of basis elements.

    ``[a e_j, b e_k] = ab [e_j, e_k] + a rho(e_j)(b) e_k - b rho(e_k)(a) e_j``
    """
    left = _linear_coefficients(pres, u)
    right = _linear_coefficients(pres, v)
    result = Poly.zero()
    for j, a in enumerate(left):
        if not a:
            continue
        for k, b in enumerate(right):
            if not b:
                continue
            result = result + a * b * pres.structure_element(j, k)
            result = result + a * apply_anchor(pres, j, b) * pres.basis_element(k)
            result = result - b * apply_anchor(pres, k, a) * pres.basis_element(j)
    return result


def jacobiator(pres: LieRinehartPresentation, u: Poly, v: Poly, w: Poly) -> Poly:
    return (
        lie_bracket(pres, u, lie_bracket(pres, v, w))
        + lie_bracket(pres, v, lie_bracket(pres, w, u))
        + lie_bracket(pres, w, lie_bracket(pres, u, v))
    )


class AxiomReport(CheckReport):
    """Result of :func:`check_axioms` with one check per axiom."""

    @property
    def jacobi_ok(self) -> bool:
        return self["jacobi"].passed

    @property
    def anchor_morphism_ok(self) -> bool:
        return self["anchor_morphism"].passed

    @property
    def witnesses(self) -> dict[str, list[str]]:
        return {check.name: check.witness for check in self.checks if check.witness}


def _names(pres: LieRinehartPresentation, indices: Iterable[int]) -> str:
    return "(" + ", ".join(pres.l_basis[i].name for i in indices) + ")"


def check_jacobi(pres: LieRinehartPresentation) -> CheckResult:
    """Cyclic sum over basis triples ``i < j < k`` in lexicographic order."""
    for triple in itertools.combinations(range(pres.dim), 3):
        i, j, k = (pres.basis_element(n) for n in triple)
        defect = jacobiator(pres, i, j, k)
        if defect:
            logger.debug("Jacobi defect at %s: %s", _names(pres, triple), defect)
            return CheckResult.failed(
                "jacobi",
                "Jacobi identity fails on a basis triple",
                witness=[_names(pres, triple), str(defect)],
                indices=list(triple),
            )
    return CheckResult.ok("jacobi", "Jacobi identity holds on all basis triples")


def check_anchor_morphism(pres: LieRinehartPresentation) -> CheckResult:
    """``rho([e_j, e_k]) = [rho(e_j), rho(e_k)]`` for ``j < k``."""
    for pair in itertools.combinations(range(pres.dim), 2):
        j, k = pair
        lhs = anchor_derivation(pres, pres.structure_element(j, k))
        rhs = pres.anchor_of(j).commutator(pres.anchor_of(k))
        if lhs != rhs:
            defect = lhs - rhs
            logger.debug("Anchor defect at %s: %s", _names(pres, pair), defect)
            return CheckResult.failed(
                "anchor_morphism",
                "Anchor is not a morphism of Lie algebras",
                witness=[_names(pres, pair), str(defect)],
                indices=list(pair),
            )
    return CheckResult.ok(
        "anchor_morphism", "Anchor is a morphism into derivations of A"
    )


def check_axioms(pres: LieRinehartPresentation) -> AxiomReport:
    """Verify Jacobi and the anchor-morphism property symbolically.

    Failures are reported, not raised; each witness is the smallest failing
    index tuple in lexicographic order followed by the rendered defect.
    """
    logger.debug("▶ Checking Lie-Rinehart axioms of %s", pres)
    report = AxiomReport(checks=[check_jacobi(pres), check_anchor_morphism(pres)])
    logger.debug("%s Axioms of %s", "✔" if report.ok else "✖", pres.name)
    return report


def check_leibniz_rule(
    pres: LieRinehartPresentation, seed: int = 0, samples: int = 8
) -> CheckResult:
    """``[e_j, a e_k] - a [e_j, e_k] - rho(e_j)(a) e_k = 0`` on random ``a``."""
    rng = make_rng(seed)
    for n in range(samples):
        a = random_poly(rng, pres.base_vars)
        for j, k in itertools.product(range(pres.dim), repeat=2):
            e_j, e_k = pres.basis_element(j), pres.basis_element(k)
            defect = (
                lie_bracket(pres, e_j, a * e_k)
                - a * lie_bracket(pres, e_j, e_k)
                - apply_anchor(pres, j, a) * e_k
            )
            if defect:
                return CheckResult.failed(
                    "leibniz_rule",
                    "Extended bracket violates the Leibniz rule",
                    witness=[_names(pres, (j, k)), str(a), str(defect)],
                    sample=n,
                )
    return CheckResult.ok(
        "leibniz_rule",
        f"Leibniz rule holds on {samples} random coefficients",
        samples=samples,
    )


def _du(kp: KaehlerPresentation, u: Poly) -> Poly:
    return kp.differential(u)


def kaehler_bracket(
    kp: KaehlerPresentation, a: Poly, u: Poly, b: Poly, v: Poly
) -> Poly:
    """``[a du, b dv] = a{u,b} dv + b{a,v} du + ab d{u,v}``.

    The result is a polynomial linear in the symbols ``du_i``.
    """
    return (
        a * kp.poisson_bracket(u, b) * _du(kp, v)
        + b * kp.poisson_bracket(a, v) * _du(kp, u)
        + a * b * _du(kp, kp.poisson_bracket(u, v))
    )


def check_pi_sharp_morphism(kp: KaehlerPresentation) -> CheckReport:
    """Check that ``pi_sharp: D_A -> Der(A)`` preserves brackets.

    Module generators ``a du_i`` range over ``a`` in ``{1, u_1, ..., u_n}``;
    the first failing pair in enumeration order is reported.
    """
    lr = kp.to_lie_rinehart()
    coefficients = [Poly.one(), *(u.poly for u in kp.generators)]
    elements = [
        a * Poly.var(du) for a in coefficients for du in kp.differentials
    ]
    result = CheckResult.ok(
        "pi_sharp_morphism",
        f"pi_sharp preserves brackets on {len(elements)} module generators",
    )
    for x, y in itertools.combinations(elements, 2):
        lhs = anchor_derivation(lr, lie_bracket(lr, x, y))
        rhs = anchor_derivation(lr, x).commutator(anchor_derivation(lr, y))
        if lhs != rhs:
            result = CheckResult.failed(
                "pi_sharp_morphism",
                "pi_sharp does not preserve the bracket",
                witness=[f"({x}, {y})", str(lhs - rhs)],
            )
            break
    return CheckReport(checks=[result, *check_axioms(lr).prefixed("kaehler")])


import logging

from rinehart.dsl import algebra_source
from rinehart.lie_rinehart import check_axioms, check_leibniz_rule
from rinehart.model.poly import Poly
from rinehart.model.presentation import LieRinehartPresentation
from rinehart.model.report import CheckResult
from rinehart.scenario import Scenario
from rinehart.tautological import (
    SAMPLING_NOTE,
    check_bracket_laws,
    check_potential,
    poly_bracket,
    reconstruct,
)

logger = logging.getLogger(__name__)


def same_presentation(
    left: LieRinehartPresentation, right: LieRinehartPresentation
) -> CheckResult:
    """Compare generators, anchors and structure functions, ignoring names."""
    if (left.base_vars, left.l_basis) != (right.base_vars, right.l_basis):
        return CheckResult.failed(
            "roundtrip",
            "generators differ",
            witness=[str(left), str(right)],
        )
    for j, e in enumerate(left.l_basis):
        if left.anchor[j] != right.anchor[j]:
            return CheckResult.failed(
                "roundtrip",
                "anchor differs",
                witness=[e.name, str(left.anchor_of(j)), str(right.anchor_of(j))],
            )
    for j in range(left.dim):
        for k in range(j + 1, left.dim):
            lhs, rhs = left.structure_element(j, k), right.structure_element(j, k)
            if lhs != rhs:
                return CheckResult.failed(
                    "roundtrip",
                    "structure functions differ",
                    witness=[
                        f"({left.l_basis[j]}, {left.l_basis[k]})",
                        str(lhs),
                        str(rhs),
                    ],
                )
    return CheckResult.ok("roundtrip", "anchor and brackets reproduced exactly")


class AlgebraCheck(Scenario):
    """Lie-Rinehart axioms, sampled bracket laws of ``S_A[L]`` and the Poisson potential."""

    name = "algebra-check"

    def __init__(self, presentation: LieRinehartPresentation, **kwargs):
        """
        Args:
            presentation: The Lie-Rinehart algebra to verify.
        """
        self.presentation = presentation
        super().__init__(**kwargs)

    def execute(self) -> list[CheckResult]:
        pres = self.presentation
        logger.info(f"▶ Checking {pres}")
        seed, samples = self.flags.seed, self.flags.samples
        return [
            *check_axioms(pres),
            check_leibniz_rule(pres, seed=seed),
            *check_bracket_laws(pres, seed=seed, samples=samples),
            check_potential(pres),
        ]

    def analyze(self, results: list[CheckResult]) -> list[CheckResult]:
        return results

    def summarize(self, results: list[CheckResult]) -> dict:
        pres = self.presentation
        return {
            "presentation": pres.name,
            "base": [x.name for x in pres.base_vars],
            "basis": [e.name for e in pres.l_basis],
            "samples": self.flags.samples,
            "sampling": SAMPLING_NOTE,
        }


class BracketComputation(Scenario):
    """The tautological Poisson bracket ``{u, v}`` of two elements of ``S_A[L]``."""

    name = "bracket"

    def __init__(
        self,
        presentation: LieRinehartPresentation,
        left: Poly,
        right: Poly,
        **kwargs,
    ):
        self.presentation = presentation
        self.left = Poly.coerce(left)
        self.right = Poly.coerce(right)
        super().__init__(**kwargs)

    def execute(self) -> tuple[Poly, Poly]:
        logger.info(f"▶ {{{self.left}, {self.right}}} over {self.presentation.name}")
        value = poly_bracket(self.presentation, self.left, self.right)
        swapped = poly_bracket(self.presentation, self.right, self.left)
        return value, swapped

    def analyze(self, results: tuple[Poly, Poly]) -> list[CheckResult]:
        value, swapped = results
        return [
            CheckResult.from_condition(
                "antisymmetry",
                value == -swapped,
                "{u, v} = -{v, u}",
                witness=[] if value == -swapped else [str(value), str(swapped)],
            )
        ]

    def summarize(self, results: tuple[Poly, Poly]) -> dict:
        return {
            "left": str(self.left),
            "right": str(self.right),
            "bracket": str(results[0]),
        }


class Reconstruction(Scenario):
    """Read anchor and structure functions back off the tautological bracket."""

    name = "reconstruct"

    def __init__(self, presentation: LieRinehartPresentation, **kwargs):
        self.presentation = presentation
        super().__init__(**kwargs)

    def execute(self) -> LieRinehartPresentation:
        logger.info(f"↺ Reconstructing {self.presentation.name}")
        return reconstruct(self.presentation)

    def analyze(self, results: LieRinehartPresentation) -> list[CheckResult]:
        return [same_presentation(self.presentation, results)]

    def summarize(self, results: LieRinehartPresentation) -> dict:
        return {"algebra_source": algebra_source(results)}

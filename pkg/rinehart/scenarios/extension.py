import itertools
import logging
from collections.abc import Mapping

from rinehart.dsl import algebra_source
from rinehart.extensions import (
    build_total,
    check_ideal,
    curvature_of,
    reconstruct_extension,
    theorem_identities_report,
)
from rinehart.lie_rinehart import check_axioms
from rinehart.model.extension import ConnectionMap, ExtensionData
from rinehart.model.poly import Poly, Var
from rinehart.model.report import CheckResult
from rinehart.scenario import Scenario
from rinehart.scenarios.algebra import same_presentation

logger = logging.getLogger(__name__)

Curvature = tuple[tuple[tuple[Poly, ...], ...], ...]
"""``m2 x m2 x m1`` tensor of ``L'`` coefficients."""


class ExtensionCheck(Scenario):
    """Brackets of generators of ``S_A[L]`` against the extension data ``(nabla, Omega)``."""

    name = "extension-check"

    def __init__(self, extension: ExtensionData, **kwargs):
        """
        Args:
            extension: Split extension datum to verify.
        """
        self.extension = extension
        super().__init__(**kwargs)

    def execute(self) -> list[CheckResult]:
        logger.info(f"▶ Checking extension {self.extension.name}")
        report = theorem_identities_report(
            self.extension, seed=self.flags.seed, samples=self.flags.samples
        )
        return [*report, check_ideal(build_total(self.extension))]

    def analyze(self, results: list[CheckResult]) -> list[CheckResult]:
        return results

    def summarize(self, results: list[CheckResult]) -> dict:
        ext = self.extension
        return {
            "extension": ext.name,
            "lprime": [e.name for e in ext.l_prime.l_basis],
            "ldoubleprime": [e.name for e in ext.l_double_prime.l_basis],
        }


class TotalBuild(Scenario):
    """Assemble the middle algebra ``L = L' + L''`` and verify it."""

    name = "build-extension"

    def __init__(self, extension: ExtensionData, **kwargs):
        self.extension = extension
        super().__init__(**kwargs)

    def execute(self):
        logger.info(f"▶ Building the total algebra of {self.extension.name}")
        return build_total(self.extension)

    def analyze(self, results) -> list[CheckResult]:
        return [*check_axioms(results).prefixed("axioms"), check_ideal(results)]

    def summarize(self, results) -> dict:
        return {
            "dimension": results.dim,
            "split": results.split,
            "algebra_source": algebra_source(results),
        }


class CurvatureComputation(Scenario):
    """Curvature ``[omega(a), omega(b)] - omega([a, b])`` of a connection.

    Without shifts the connection is the canonical inclusion of ``L''``,
    whose curvature must reproduce the declared ``Omega``.
    """

    name = "curvature"

    def __init__(
        self,
        extension: ExtensionData,
        shifts: Mapping[Var, Poly] | None = None,
        **kwargs,
    ):
        """
        Args:
            extension: Split extension datum.
            shifts: ``L'`` valued shift of the section per ``L''`` basis element.
        """
        self.extension = extension
        self.shifts = dict(shifts or {})
        super().__init__(**kwargs)

    def execute(self) -> tuple[ConnectionMap, Curvature]:
        total = build_total(self.extension)
        if self.shifts:
            connection = ConnectionMap.shifted(total, self.shifts)
        else:
            connection = ConnectionMap.canonical(total)
        logger.info(f"▶ Curvature of {self.extension.name}")
        return connection, curvature_of(total, connection)

    def _element(self, coefficients) -> Poly:
        return sum(
            (c * Poly.var(e) for c, e in zip(coefficients, self.extension.l_prime.l_basis)),
            Poly.zero(),
        )

    def analyze(self, results: tuple[ConnectionMap, Curvature]) -> list[CheckResult]:
        _, curvature = results
        ldp = self.extension.l_double_prime
        checks = []
        alternating = CheckResult.ok(
            "curvature_alternating", "Omega(a, b) = -Omega(b, a)"
        )
        for j, k in itertools.product(range(ldp.dim), repeat=2):
            if curvature[j][k] != tuple(-c for c in curvature[k][j]):
                alternating = CheckResult.failed(
                    "curvature_alternating",
                    "curvature is not alternating",
                    witness=[f"({ldp.l_basis[j]}, {ldp.l_basis[k]})"],
                )
                break
        checks.append(alternating)
        if not self.shifts:
            matches = CheckResult.ok(
                "curvature_matches_omega",
                "curvature of the canonical section equals the declared Omega",
            )
            for j, k in itertools.combinations(range(ldp.dim), 2):
                found = self._element(curvature[j][k])
                declared = self.extension.omega_element(j, k)
                if found != declared:
                    matches = CheckResult.failed(
                        "curvature_matches_omega",
                        "curvature differs from the declared Omega",
                        witness=[
                            f"({ldp.l_basis[j]}, {ldp.l_basis[k]})",
                            str(found),
                            str(declared),
                        ],
                    )
                    break
            checks.append(matches)
        return checks

    def summarize(self, results: tuple[ConnectionMap, Curvature]) -> dict:
        connection, curvature = results
        ldp = self.extension.l_double_prime
        return {
            "connection": {
                e.name: str(connection.image(j)) for j, e in enumerate(ldp.l_basis)
            },
            "curvature": {
                f"[{ldp.l_basis[j]}, {ldp.l_basis[k]}]": str(
                    self._element(curvature[j][k])
                )
                for j, k in itertools.combinations(range(ldp.dim), 2)
            },
        }


class ExtensionReconstruction(Scenario):
    """Recover ``(L', L'', nabla, Omega)`` from the tautological brackets of ``L``."""

    name = "reconstruct-extension"

    def __init__(self, extension: ExtensionData, **kwargs):
        self.extension = extension
        super().__init__(**kwargs)

    def execute(self) -> ExtensionData:
        logger.info(f"↺ Reconstructing extension {self.extension.name}")
        recovered, _ = reconstruct_extension(build_total(self.extension))
        return recovered

    def analyze(self, results: ExtensionData) -> list[CheckResult]:
        ext = self.extension
        checks = [
            same_presentation(ext.l_prime, results.l_prime).model_copy(
                update={"name": "roundtrip_lprime"}
            ),
            same_presentation(ext.l_double_prime, results.l_double_prime).model_copy(
                update={"name": "roundtrip_ldoubleprime"}
            ),
            CheckResult.from_condition(
                "roundtrip_nabla", ext.nabla == results.nabla, "nabla reproduced exactly"
            ),
            CheckResult.from_condition(
                "roundtrip_omega", ext.omega == results.omega, "Omega reproduced exactly"
            ),
        ]
        return checks

    def summarize(self, results: ExtensionData) -> dict:
        ldp = results.l_double_prime
        return {
            "omega": {
                f"[{ldp.l_basis[j]}, {ldp.l_basis[k]}]": str(results.omega_element(j, k))
                for j, k in itertools.combinations(range(ldp.dim), 2)
            },
            "nabla": {
                f"{ldp.l_basis[j]}({e})": str(results.nabla_element(j, k))
                for j in range(ldp.dim)
                for k, e in enumerate(results.l_prime.l_basis)
            },
        }

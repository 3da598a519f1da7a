"""Suites behind ``rinehart demo``, each built from shipped presets."""

from rinehart.model.poly import Var
from rinehart.presets import (
    atiyah_connection_shifts,
    atiyah_extension,
    heisenberg_extension,
    so3,
    vect_model,
)
from rinehart.scenario import Scenario, Suite
from rinehart.scenarios.algebra import AlgebraCheck, BracketComputation, Reconstruction
from rinehart.scenarios.extension import (
    CurvatureComputation,
    ExtensionCheck,
    ExtensionReconstruction,
    TotalBuild,
)
from rinehart.scenarios.invariant import HomogeneousGap


class HeisenbergDemo(Suite):
    """Heisenberg-type extension: identities, total algebra, curvature and reconstruction."""

    name = "heisenberg"

    def build_parts(self) -> list[tuple[str, Scenario]]:
        ext = heisenberg_extension()
        return [
            ("check", ExtensionCheck(ext, flags=self.flags)),
            ("build-extension", TotalBuild(ext, flags=self.flags)),
            ("curvature", CurvatureComputation(ext, flags=self.flags)),
            ("reconstruct-extension", ExtensionReconstruction(ext, flags=self.flags)),
        ]


class AtiyahDemo(Suite):
    """Atiyah-type extension with ``so(3)`` kernel, canonical and shifted connections."""

    name = "atiyah"

    def build_parts(self) -> list[tuple[str, Scenario]]:
        ext = atiyah_extension()
        return [
            ("check", ExtensionCheck(ext, flags=self.flags)),
            ("curvature", CurvatureComputation(ext, flags=self.flags)),
            (
                "shifted-curvature",
                CurvatureComputation(
                    ext, shifts=atiyah_connection_shifts(), flags=self.flags
                ),
            ),
        ]


class VectDemo(Suite):
    """Vector fields on the line: axioms, the bracket ``{e^2, x^2}`` and reconstruction."""

    name = "vect"

    def build_parts(self) -> list[tuple[str, Scenario]]:
        pres = vect_model()
        x, e = Var.base("x").poly, Var.fiber("e").poly
        return [
            ("check", AlgebraCheck(pres, flags=self.flags)),
            ("bracket", BracketComputation(pres, e * e, x * x, flags=self.flags)),
            ("reconstruct", Reconstruction(pres, flags=self.flags)),
        ]


class So3Demo(Suite):
    """``so(3)`` as a Lie-Rinehart algebra over ``Q`` and its Lie-Poisson Casimirs."""

    name = "so3"

    def build_parts(self) -> list[tuple[str, Scenario]]:
        pres = so3()
        return [
            ("check", AlgebraCheck(pres, flags=self.flags)),
            ("reconstruct", Reconstruction(pres, flags=self.flags)),
            (
                "casimirs",
                HomogeneousGap(
                    preset="gxg-so3",
                    degree_bound=2,
                    casimir_algebra=pres,
                    flags=self.flags,
                ),
            ),
        ]

"""Scenarios over dual pair scenes and reductive pairs."""

import logging
from collections.abc import Sequence
from typing import Any

from rinehart.errors import SpanError
from rinehart.invariants import (
    angular_momenta,
    check_invariance,
    closure_table,
    hilbert_map,
    hilbert_preimage,
    homogeneous_invariant_gap,
    kinetic_energy,
    lie_poisson_casimirs,
    momentum_matrix,
    momentum_property_check,
    sal_deficiency_report,
    verify_sp_isomorphism,
)
from rinehart.invariants.hilbert import gram_check
from rinehart.invariants.momentum import momentum_point_check
from rinehart.model.poly import render_rational, to_rational
from rinehart.model.presentation import LieRinehartPresentation
from rinehart.model.report import CheckReport, CheckResult
from rinehart.model.scene import DualPairScene, ReductivePair, SymMatrixQ
from rinehart.presets import REDUCTIVE_PAIRS
from rinehart.sampling import make_rng
from rinehart.scenario import Scenario
from rinehart.tautological import poly_bracket

logger = logging.getLogger(__name__)

MOMENTUM_SWEEP_LIMIT = 2
"""Largest ``l`` for which the full sp basis sweep of the momentum property runs."""

POINT_RANGE = (-3, 4)


def random_points(seed: int, count: int, size: int) -> list[list[int]]:
    """``count`` seeded integer points with coordinates in ``[-3, 3]``."""
    rng = make_rng(seed)
    return [
        [int(x) for x in rng.integers(*POINT_RANGE, size=size)] for _ in range(count)
    ]


def _render_point(point: Sequence[Any]) -> list[str]:
    return [render_rational(to_rational(x)) for x in point]


class ClosureComputation(Scenario):
    """Closure table of the quadratic ``O(s)`` invariants and its match with ``sp(l)``."""

    name = "closure"

    def __init__(self, scene: DualPairScene, **kwargs):
        """
        Args:
            scene: ``O(s)`` acting on ``l`` copies of ``R^s``.
        """
        self.scene = scene
        super().__init__(**kwargs)

    def execute(self) -> dict[str, Any]:
        logger.info(f"▶ Closure table of {self.scene.label}")
        try:
            table = closure_table(self.scene)
        except SpanError as ex:
            logger.warning(f"✖ {ex}")
            table = None
        report, images = verify_sp_isomorphism(self.scene, table)
        return {"table": table, "isomorphism": report, "images": images}

    def analyze(self, results: dict[str, Any]) -> list[CheckResult]:
        return list(results["isomorphism"])

    def summarize(self, results: dict[str, Any]) -> dict[str, Any]:
        table = results["table"]
        summary: dict[str, Any] = {
            "scene": self.scene.label,
            "s": self.scene.s,
            "l": self.scene.ell,
        }
        if table is not None:
            summary["dimension"] = table.dimension
            summary["closure_table"] = table.rendered()
        summary["sp_images"] = {
            label: image.render() for label, image in results["images"].items()
        }
        return summary


class DualPairAnalysis(ClosureComputation):
    """Dual pair ``O(s) x Sp(l)``: invariance, closure, momentum mapping and deficiency."""

    name = "dual-pair"

    def __init__(
        self,
        scene: DualPairScene | None = None,
        s: int = 1,
        ell: int = 1,
        caveat: str | None = None,
        **kwargs,
    ):
        """
        Args:
            scene: The scene; built from ``s`` and ``ell`` when omitted.
            s: Dimension of ``R^s``.
            ell: Number of copies.
            caveat: Note carried into the report.
        """
        self.caveat = caveat
        super().__init__(scene=scene or DualPairScene(s=s, ell=ell), **kwargs)

    def execute(self) -> dict[str, Any]:
        results = super().execute()
        scene = self.scene
        results["invariance"] = check_invariance(scene)
        if scene.ell <= MOMENTUM_SWEEP_LIMIT:
            results["momentum"] = momentum_property_check(scene)
        else:
            logger.info(
                f"Momentum property sweep skipped for l = {scene.ell} > "
                f"{MOMENTUM_SWEEP_LIMIT}"
            )
        results["deficiency"] = sal_deficiency_report(scene)
        return results

    def analyze(self, results: dict[str, Any]) -> list[CheckResult]:
        checks = [*results["invariance"], *super().analyze(results)]
        if "momentum" in results:
            checks.append(results["momentum"])
        return [*checks, *results["deficiency"]]

    def summarize(self, results: dict[str, Any]) -> dict[str, Any]:
        summary = super().summarize(results)
        summary["angular_momenta"] = {
            name: str(value) for name, value in angular_momenta(self.scene).items()
        }
        summary["kinetic_energy"] = str(kinetic_energy(self.scene))
        if self.caveat:
            summary["caveat"] = self.caveat
        return summary


class HilbertImage(Scenario):
    """Hilbert map ``q -> [q_j . q_k]`` at points, with a preimage of every image.

    Without an explicit point, ``samples`` seeded integer points are used.
    """

    name = "hilbert"

    def __init__(
        self,
        s: int,
        ell: int,
        point: Sequence[Any] | None = None,
        **kwargs,
    ):
        self.scene = DualPairScene(s=s, ell=ell)
        self.point = list(point) if point is not None else None
        super().__init__(**kwargs)

    def points(self) -> list[list[Any]]:
        if self.point is not None:
            return [self.point]
        size = self.scene.s * self.scene.ell
        return random_points(self.flags.seed, self.flags.samples, size)

    def execute(self) -> list[tuple[list[Any], SymMatrixQ, CheckResult]]:
        logger.info(f"▶ Hilbert map of {self.scene.label}")
        return [
            (point, hilbert_map(self.scene, point), gram_check(self.scene, point))
            for point in self.points()
        ]

    def analyze(self, results) -> list[CheckResult]:
        if len(results) == 1:
            point, gram, check = results[0]
            return [check, hilbert_preimage(gram, self.scene.s).to_check()]
        image = CheckResult.ok(
            "hilbert_image",
            f"{len(results)} Gram matrices are PSD of rank <= "
            f"{min(self.scene.s, self.scene.ell)}",
            points=len(results),
        )
        preimage = CheckResult.ok(
            "hilbert_preimage", f"{len(results)} images factor through R^{self.scene.s}"
        )
        for point, gram, check in results:
            if not check.passed:
                image = check.model_copy(
                    update={"witness": [*_render_point(point), *check.witness]}
                )
                break
        for point, gram, _ in results:
            factored = hilbert_preimage(gram, self.scene.s).to_check()
            if not factored.passed:
                preimage = factored.model_copy(
                    update={"witness": [*_render_point(point), *factored.witness]}
                )
                break
        return [image, preimage]

    def summarize(self, results) -> dict[str, Any]:
        summary: dict[str, Any] = {"s": self.scene.s, "l": self.scene.ell}
        if len(results) == 1:
            point, gram, _ = results[0]
            summary["point"] = _render_point(point)
            summary["gram"] = gram.render()
        else:
            summary["points"] = len(results)
        return summary


class HilbertFactorization(Scenario):
    """Factor a symmetric matrix as the Gram matrix of ``l`` vectors in ``R^s``."""

    name = "hilbert-preimage"

    def __init__(self, s: int, matrix: Sequence[Sequence[Any]], **kwargs):
        self.s = s
        self.matrix = SymMatrixQ(entries=matrix)
        super().__init__(**kwargs)

    def execute(self):
        logger.info(f"▶ Factoring a {self.matrix.size}x{self.matrix.size} matrix")
        return hilbert_preimage(self.matrix, self.s)

    def analyze(self, results) -> list[CheckResult]:
        return [results.to_check()]

    def summarize(self, results) -> dict[str, Any]:
        return {"s": self.s, "matrix": self.matrix.render(), "rank": results.rank}


class MomentumMap(Scenario):
    """The ``Sp(l)`` momentum matrix at a point and its postconditions."""

    name = "momentum"

    def __init__(
        self,
        s: int,
        ell: int,
        point: Sequence[Any] | None = None,
        **kwargs,
    ):
        self.scene = DualPairScene(s=s, ell=ell)
        self.point = list(point) if point is not None else None
        super().__init__(**kwargs)

    def execute(self) -> tuple[list[Any], CheckReport]:
        point = self.point
        if point is None:
            size = 2 * self.scene.s * self.scene.ell
            (point,) = random_points(self.flags.seed, 1, size)
        logger.info(f"▶ Momentum matrix of {self.scene.label}")
        return point, momentum_point_check(self.scene, point)

    def analyze(self, results: tuple[list[Any], CheckReport]) -> list[CheckResult]:
        return list(results[1])

    def summarize(self, results: tuple[list[Any], CheckReport]) -> dict[str, Any]:
        point, _ = results
        return {
            "s": self.scene.s,
            "l": self.scene.ell,
            "point": _render_point(point),
            "mu": momentum_matrix(self.scene, point).render(),
        }


class HomogeneousGap(Scenario):
    """Invariants of ``H`` on ``S[q]`` against ``S[q^H]`` for a reductive pair ``g = h + q``."""

    name = "homogeneous"

    def __init__(
        self,
        pair: ReductivePair | None = None,
        preset: str = "so3-so2",
        degree_bound: int = 4,
        casimir_algebra: LieRinehartPresentation | None = None,
        casimir_degree: int = 2,
        **kwargs,
    ):
        """
        Args:
            pair: The pair; taken from the named ``preset`` when omitted.
            preset: One of the shipped reductive pairs.
            degree_bound: Highest polynomial degree compared.
            casimir_algebra: Lie algebra whose Lie-Poisson Casimirs are reported.
            casimir_degree: Degree of those Casimirs.
        """
        if pair is None:
            if preset not in REDUCTIVE_PAIRS:
                raise ValueError(
                    f"unknown preset '{preset}', choose one of "
                    f"{', '.join(REDUCTIVE_PAIRS)}"
                )
            pair = REDUCTIVE_PAIRS[preset]()
        self.pair = pair
        self.degree_bound = degree_bound
        self.casimir_algebra = casimir_algebra
        self.casimir_degree = casimir_degree
        super().__init__(**kwargs)

    def execute(self) -> dict[str, Any]:
        logger.info(f"▶ Invariant gap of {self.pair.name} up to degree {self.degree_bound}")
        results: dict[str, Any] = {
            "gap": homogeneous_invariant_gap(self.pair, self.degree_bound)
        }
        if self.casimir_algebra is not None:
            results["casimirs"] = lie_poisson_casimirs(
                self.casimir_algebra, self.casimir_degree
            )
        return results

    def _casimir_check(self, casimirs) -> CheckResult:
        pres = self.casimir_algebra
        for f in casimirs:
            for e in pres.l_basis:
                value = poly_bracket(pres, e.poly, f)
                if value:
                    return CheckResult.failed(
                        "casimirs",
                        "Casimir does not commute with a generator",
                        witness=[str(f), e.name, str(value)],
                    )
        return CheckResult.from_condition(
            "casimirs",
            bool(casimirs),
            f"{len(casimirs)} degree-{self.casimir_degree} Casimirs of "
            f"{pres.name} commute with every generator",
        )

    def analyze(self, results: dict[str, Any]) -> list[CheckResult]:
        checks = list(results["gap"])
        if "casimirs" in results:
            checks.append(self._casimir_check(results["casimirs"]))
        return checks

    def summarize(self, results: dict[str, Any]) -> dict[str, Any]:
        degrees = results["gap"]["invariant_gap"].details.get("degrees", [])
        summary: dict[str, Any] = {
            "pair": self.pair.name,
            "dimensions": {
                str(d["degree"]): [d["invariant_dim"], d["q_h_dim"]] for d in degrees
            },
        }
        if "casimirs" in results:
            summary["casimirs"] = [str(f) for f in results["casimirs"]]
        return summary

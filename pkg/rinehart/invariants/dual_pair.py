"""Quadratic invariants of the dual pair ``O(s) x Sp(l)`` on ``T*(R^s)^l``."""

import itertools
import logging
from collections.abc import Sequence

from pydantic import Field
from sympy import QQ

from rinehart.errors import SpanError
from rinehart.linalg import SpanSolver
from rinehart.model.base import MainModel
from rinehart.model.poly import Poly, Rational, render_rational
from rinehart.model.presentation import LieRinehartPresentation
from rinehart.model.report import CheckReport, CheckResult
from rinehart.model.scene import DualPairScene, QuadraticInvariant
from rinehart.tautological import poly_bracket

logger = logging.getLogger(__name__)


def invariant_generators(scene: DualPairScene) -> list[QuadraticInvariant]:
    """All ``l(2l+1)`` generators, ordered QQ, QP, PP."""
    pairs = [(j, k) for j in scene.copies for k in scene.copies if j <= k]
    generators = [QuadraticInvariant.build(scene, "QQ", j, k) for j, k in pairs]
    generators += [
        QuadraticInvariant.build(scene, "QP", j, k)
        for j in scene.copies
        for k in scene.copies
    ]
    generators += [QuadraticInvariant.build(scene, "PP", j, k) for j, k in pairs]
    return generators


def angular_momenta(scene: DualPairScene) -> dict[str, Poly]:
    """``L_ab = sum_j q{j}_a p{j}_b - q{j}_b p{j}_a`` for ``a < b``."""
    result = {}
    for a, b in itertools.combinations(scene.coordinates, 2):
        value = Poly.zero()
        for j in scene.copies:
            value = value + Poly.var(scene.q(j, a)) * Poly.var(scene.p(j, b))
            value = value - Poly.var(scene.q(j, b)) * Poly.var(scene.p(j, a))
        result[f"L{a}{b}"] = value
    return result


def kinetic_energy(scene: DualPairScene) -> Poly:
    """``T = sum_j p_j . p_j``."""
    return sum(
        (QuadraticInvariant.build(scene, "PP", j, j).value for j in scene.copies),
        Poly.zero(),
    )


def reflection(scene: DualPairScene, alpha: int) -> dict:
    """Substitution of the reflection ``x_alpha -> -x_alpha`` in every copy."""
    mapping = {}
    for j in scene.copies:
        mapping[scene.q(j, alpha)] = -Poly.var(scene.q(j, alpha))
        mapping[scene.p(j, alpha)] = -Poly.var(scene.p(j, alpha))
    return mapping


def check_invariance(scene: DualPairScene) -> CheckReport:
    """Infinitesimal ``so(s)`` invariance and invariance under reflections.

    Together they give invariance under all of ``O(s)``, whose non-identity
    component is reached by one reflection.
    """
    pres = scene.presentation
    generators = invariant_generators(scene)
    momenta = angular_momenta(scene)

    rotation = CheckResult.ok(
        "so_invariance",
        f"{len(generators)} invariants commute with {len(momenta)} angular momenta",
    )
    for invariant, (name, momentum) in itertools.product(generators, momenta.items()):
        value = poly_bracket(pres, invariant.value, momentum)
        if value:
            rotation = CheckResult.failed(
                "so_invariance",
                "Invariant does not commute with an angular momentum",
                witness=[invariant.label, name, str(value)],
            )
            break

    mirror = CheckResult.ok(
        "reflection_invariance", "Invariants are fixed by coordinate reflections"
    )
    for invariant, alpha in itertools.product(generators, scene.coordinates):
        image = invariant.value.substitute(reflection(scene, alpha))
        if image != invariant.value:
            mirror = CheckResult.failed(
                "reflection_invariance",
                "Invariant changes under a reflection",
                witness=[invariant.label, f"x{alpha} -> -x{alpha}", str(image)],
            )
            break
    return CheckReport(checks=[rotation, mirror])


def render_combination(coords: list[Rational], labels: list[str]) -> str:
    pieces = []
    for coeff, label in zip(coords, labels, strict=True):
        if not coeff:
            continue
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        body = label if magnitude == 1 else f"{render_rational(magnitude)}*{label}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces) or "0"


class ClosureTable(MainModel):
    """Brackets of the quadratic invariants expressed in the invariant basis.

    ``constants[a][b][c]`` is the coefficient of generator ``c`` in
    ``{I_a, I_b}``.
    """

    labels: list[str]
    constants: list[list[list[Rational]]] = Field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def entry(self, a: int, b: int) -> str:
        return render_combination(self.constants[a][b], self.labels)

    def lookup(self, left: str, right: str) -> str:
        return self.entry(self.labels.index(left), self.labels.index(right))

    def rendered(self) -> dict[str, dict[str, str]]:
        return {
            self.labels[a]: {
                self.labels[b]: self.entry(a, b) for b in range(self.dimension)
            }
            for a in range(self.dimension)
        }

    def is_antisymmetric(self) -> bool:
        n = self.dimension
        return all(
            self.constants[a][b][c] == -self.constants[b][a][c]
            for a in range(n)
            for b in range(n)
            for c in range(n)
        )

    def _bracket(self, x: list[Rational], y: list[Rational]) -> list[Rational]:
        n = self.dimension
        result = [QQ(0)] * n
        for a in range(n):
            if not x[a]:
                continue
            for b in range(n):
                if not y[b]:
                    continue
                for c in range(n):
                    result[c] += x[a] * y[b] * self.constants[a][b][c]
        return result

    def jacobi_defect(self) -> tuple[int, int, int] | None:
        """First triple of generators violating Jacobi, if any."""
        n = self.dimension
        units = [[QQ(int(i == j)) for j in range(n)] for i in range(n)]
        for a, b, c in itertools.combinations(range(n), 3):
            x, y, z = units[a], units[b], units[c]
            total = [
                sum(values)
                for values in zip(
                    self._bracket(x, self._bracket(y, z)),
                    self._bracket(y, self._bracket(z, x)),
                    self._bracket(z, self._bracket(x, y)),
                    strict=True,
                )
            ]
            if any(total):
                return a, b, c
        return None


def closure_table(scene: DualPairScene) -> ClosureTable:
    """Pairwise brackets of the invariants, re-expressed in the invariant basis.

    Raises:
        SpanError: If a bracket leaves the span of the invariants.
    """
    pres = scene.presentation
    generators = invariant_generators(scene)
    solver = SpanSolver([g.value for g in generators])
    if solver.dimension != len(generators):
        raise SpanError("quadratic invariants are linearly dependent")
    n = len(generators)
    constants: list[list[list[Rational]]] = [[[] for _ in range(n)] for _ in range(n)]
    logger.debug("▶ Closure table of %s (%d generators)", scene.label, n)
    for a, b in itertools.product(range(n), repeat=2):
        if b < a:
            constants[a][b] = [-c for c in constants[b][a]]
            continue
        value = poly_bracket(pres, generators[a].value, generators[b].value)
        try:
            constants[a][b] = solver.coordinates(value)
        except SpanError as ex:
            raise SpanError(
                f"{{{generators[a].label}, {generators[b].label}}} = {value} "
                "leaves the span of the invariants"
            ) from ex
    return ClosureTable(labels=[g.label for g in generators], constants=constants)


def generated_span(
    pres: LieRinehartPresentation, generators: Sequence[Poly]
) -> tuple[SpanSolver, int]:
    """Span of the Lie subalgebra generated by ``generators``.

    Brackets of the newest elements with the generators are added until no
    new direction appears; by Jacobi this spans every iterated bracket. Also
    returns the number of bracket levels taken.
    """
    spanning = list(generators)
    solver = SpanSolver(spanning)
    frontier = list(generators)
    levels = 0
    while frontier:
        levels += 1
        fresh = []
        for x in frontier:
            for y in generators:
                value = poly_bracket(pres, x, y)
                if not solver.contains(value):
                    spanning.append(value)
                    solver = SpanSolver(spanning)
                    fresh.append(value)
        frontier = fresh
    logger.debug("generated span of dimension %d after %d levels", solver.dimension, levels)
    return solver, levels


def sal_deficiency_report(scene: DualPairScene) -> CheckReport:
    """Show that ``QQ`` and ``QP`` invariants do not generate the ``PP`` ones.

    Every generator is homogeneous of degree 2 and so are their brackets,
    so the generated Lie subalgebra is the span computed by
    :func:`generated_span`. Membership of each ``p_j.p_k`` is decided in that
    finite-dimensional space.
    """
    pres = scene.presentation
    generators = invariant_generators(scene)
    base = [g for g in generators if g.kind == "QQ"]
    linear = [g for g in generators if g.kind == "QP"]
    quadratic = [g for g in generators if g.kind == "PP"]
    solver, levels = generated_span(pres, [g.value for g in (*base, *linear)])

    members = [g.label for g in linear if not solver.contains(g.value)]
    qp_members = CheckResult.from_condition(
        "qp_members",
        not members,
        "q.p invariants lie in the generated subalgebra",
        witness=members,
    )
    present = [g.label for g in quadratic if solver.contains(g.value)]
    missing = [g.label for g in quadratic if g.label not in present]
    pp_missing = CheckResult.from_condition(
        "pp_missing",
        not present,
        f"{len(missing)} of {len(quadratic)} p.p invariants are not generated",
        witness=present,
        missing=missing,
        degree_two_dimension=solver.dimension,
        bracket_levels=levels,
    )

    base_solver = SpanSolver([g.value for g in base])
    defects = []
    for x, y in itertools.combinations(base, 2):
        if poly_bracket(pres, x.value, y.value):
            defects.append(f"{{{x.label}, {y.label}}}")
    for x, y in itertools.product(linear, base):
        if not base_solver.contains(poly_bracket(pres, x.value, y.value)):
            defects.append(f"{{{x.label}, {y.label}}}")
    base_action = CheckResult.from_condition(
        "base_action",
        not defects,
        "q.q invariants commute and q.p invariants act on their span",
        witness=defects,
    )

    energy = kinetic_energy(scene)
    pp_solver = SpanSolver([g.value for g in quadratic])
    kinetic = CheckResult.from_condition(
        "kinetic_energy",
        pp_solver.contains(energy) and not solver.contains(energy),
        "kinetic energy is a p.p invariant outside the generated subalgebra",
        value=str(energy),
    )
    return CheckReport(checks=[qp_members, pp_missing, base_action, kinetic])

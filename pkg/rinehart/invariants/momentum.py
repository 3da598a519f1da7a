"""The ``Sp(l)`` momentum mapping of a dual pair scene.

``mu = [[q_j.p_k, -q_j.q_k], [p_j.p_k, -p_j.q_k]]`` factors as
``mu = Z (J Z)^t`` with ``Z = [Q; P]``, hence ``mu J`` is the Gram matrix of
the rows of ``Z``. This gives the sp membership, positivity of ``mu J`` and
the rank bound ``min(s, 2l)`` checked at points.
"""

import itertools
import logging
from collections.abc import Sequence
from typing import Any

from sympy import QQ

from rinehart.errors import SpanError
from rinehart.invariants.dual_pair import (
    ClosureTable,
    closure_table,
    invariant_generators,
)
from rinehart.linalg import classify_psd, to_matrix
from rinehart.model.poly import Poly, Rational, render_rational
from rinehart.model.report import CheckReport, CheckResult
from rinehart.model.scene import (
    DualPairScene,
    QuadraticInvariant,
    SpElement,
    canonical_j,
    mat_mul,
    render_matrix,
)
from rinehart.tautological import poly_bracket

logger = logging.getLogger(__name__)


def _unit(n: int, j: int, k: int) -> list[list[Rational]]:
    return [[QQ(int(r == j and c == k)) for c in range(n)] for r in range(n)]


def _blocks(ell: int, a=None, b=None, c=None, d=None) -> SpElement:
    zero = [[QQ(0)] * ell for _ in range(ell)]
    a, b, c, d = (block if block is not None else zero for block in (a, b, c, d))
    rows = [ra + rb for ra, rb in zip(a, b, strict=True)]
    rows += [rc + rd for rc, rd in zip(c, d, strict=True)]
    return SpElement(entries=rows)


def _symmetric_unit(ell: int, j: int, k: int) -> list[list[Rational]]:
    if j == k:
        return _unit(ell, j, j)
    return [
        [x + y for x, y in zip(r1, r2, strict=True)]
        for r1, r2 in zip(_unit(ell, j, k), _unit(ell, k, j), strict=True)
    ]


def standard_sp_basis(ell: int) -> dict[str, SpElement]:
    """Basis of ``sp(l)``: ``A{j}{k}``, then ``B{j}{k}`` and ``C{j}{k}`` for ``j <= k``.

    ``A{j}{k} = [[E_jk, 0], [0, -E_kj]]``, ``B{j}{k}`` is the symmetric unit in
    the upper right block and ``C{j}{k}`` the one in the lower left block.
    Labels are 1-based.
    """
    basis: dict[str, SpElement] = {}
    for j, k in itertools.product(range(ell), repeat=2):
        negative_transpose = [[-x for x in row] for row in _unit(ell, k, j)]
        basis[f"A{j + 1}{k + 1}"] = _blocks(ell, a=_unit(ell, j, k), d=negative_transpose)
    for j, k in itertools.combinations_with_replacement(range(ell), 2):
        basis[f"B{j + 1}{k + 1}"] = _blocks(ell, b=_symmetric_unit(ell, j, k))
    for j, k in itertools.combinations_with_replacement(range(ell), 2):
        basis[f"C{j + 1}{k + 1}"] = _blocks(ell, c=_symmetric_unit(ell, j, k))
    return basis


def symbolic_momentum(scene: DualPairScene) -> list[list[Poly]]:
    """``mu`` with quadratic polynomial entries."""
    ell = scene.ell

    def dot(kind: str, j: int, k: int) -> Poly:
        if kind != "QP" and j > k:
            j, k = k, j
        return QuadraticInvariant.build(scene, kind, j, k).value

    rows = []
    for j in range(1, ell + 1):
        rows.append(
            [dot("QP", j, k) for k in range(1, ell + 1)]
            + [-dot("QQ", j, k) for k in range(1, ell + 1)]
        )
    for j in range(1, ell + 1):
        rows.append(
            [dot("PP", j, k) for k in range(1, ell + 1)]
            + [-dot("QP", k, j) for k in range(1, ell + 1)]
        )
    return rows


def pairing(scene: DualPairScene, x: SpElement) -> Poly:
    """``<mu, X> = 1/2 tr(mu X)``."""
    mu = symbolic_momentum(scene)
    n = 2 * scene.ell
    result = Poly.zero()
    for a, b in itertools.product(range(n), repeat=2):
        coefficient = x.entries[b][a]
        if coefficient:
            result = result + mu[a][b] * coefficient
    return result / 2


def momentum_values(scene: DualPairScene, point: Sequence[Any]) -> list[list[Rational]]:
    """Entries of ``mu`` at ``(q, p)``; coordinates are all q's then all p's."""
    values = scene.point(point, momenta=True)
    return [[entry.evaluate(values) for entry in row] for row in symbolic_momentum(scene)]


def momentum_matrix(scene: DualPairScene, point: Sequence[Any]) -> SpElement:
    """``mu`` at ``(q, p)`` as an element of ``sp(l)``."""
    return SpElement(entries=momentum_values(scene, point))


def sp_membership_check(entries: Sequence[Sequence[Rational]], ell: int) -> CheckResult:
    """``M J - (M J)^t = 0``; the witness is the first nonzero lower entry.

    ``details["defect"]`` holds the whole antisymmetric part when it is nonzero.
    """
    product = mat_mul(entries, canonical_j(ell))
    n = len(product)
    defect = [[product[i][j] - product[j][i] for j in range(n)] for i in range(n)]
    offending = next(
        ((i, j) for i in range(n) for j in range(i) if defect[i][j]), None
    )
    if offending is None:
        return CheckResult.ok("sp_membership", "mu J - (mu J)^t = 0")
    i, j = offending
    return CheckResult.failed(
        "sp_membership",
        "mu J is not symmetric",
        witness=[f"({i}, {j})", render_rational(defect[i][j])],
        defect=render_matrix(defect),
    )


def momentum_point_check(scene: DualPairScene, point: Sequence[Any]) -> CheckReport:
    """Postconditions of :func:`momentum_matrix` at one point."""
    mu = momentum_values(scene, point)
    rank = to_matrix(mu).rank()
    bound = min(scene.s, 2 * scene.ell)
    membership = sp_membership_check(mu, scene.ell)
    if membership.passed:
        psd = classify_psd(mat_mul(mu, canonical_j(scene.ell)))
        positivity = CheckResult.from_condition(
            "mu_j_psd",
            psd.psd,
            "mu J is positive semidefinite",
            rank=psd.rank,
        )
    else:
        positivity = CheckResult.failed(
            "mu_j_psd", "mu J is not symmetric", witness=membership.witness
        )
    return CheckReport(
        checks=[
            membership,
            CheckResult.from_condition(
                "rank_bound",
                rank <= bound,
                f"rank {rank} <= min(s, 2l) = {bound}",
                rank=rank,
            ),
            positivity,
        ]
    )


def momentum_property_check(scene: DualPairScene) -> CheckResult:
    """``{<mu,X>, <mu,Y>} = <mu,[X,Y]>`` for all ordered basis pairs."""
    basis = standard_sp_basis(scene.ell)
    pres = scene.presentation
    hamiltonians = {label: pairing(scene, x) for label, x in basis.items()}
    count = 0
    for (lx, x), (ly, y) in itertools.product(basis.items(), repeat=2):
        count += 1
        lhs = poly_bracket(pres, hamiltonians[lx], hamiltonians[ly])
        rhs = pairing(scene, x.bracket(y))
        if lhs != rhs:
            return CheckResult.failed(
                "momentum_property",
                "pairing with mu is not a Lie algebra morphism",
                witness=[f"({lx}, {ly})", str(lhs), str(rhs)],
            )
    return CheckResult.ok(
        "momentum_property",
        f"{{<mu,X>, <mu,Y>}} = <mu,[X,Y]> on {count} basis pairs",
        pairs=count,
    )


def invariant_to_sp(scene: DualPairScene, invariant: QuadraticInvariant) -> SpElement:
    """Inverse of :func:`pairing` on the invariant basis."""
    basis = standard_sp_basis(scene.ell)
    j, k = invariant.indices
    if invariant.kind == "QP":
        return basis[f"A{k}{j}"]
    scale = 2 if j == k else 1
    if invariant.kind == "PP":
        return basis[f"B{j}{k}"].scaled(scale)
    return basis[f"C{j}{k}"].scaled(-scale)


def verify_sp_isomorphism(
    scene: DualPairScene, table: ClosureTable | None = None
) -> tuple[CheckReport, dict[str, SpElement]]:
    """Check that the invariants span a copy of ``sp(l)``.

    The map sends ``q_j.p_k`` to ``A{k}{j}``, ``p_j.p_k`` to ``B{j}{k}`` and
    ``q_j.q_k`` to ``-C{j}{k}`` (doubled on the diagonal). It is a Lie algebra
    isomorphism iff it is bijective and matches the closure table.
    """
    generators = invariant_generators(scene)
    images = {g.label: invariant_to_sp(scene, g) for g in generators}
    expected_dim = scene.ell * (2 * scene.ell + 1)
    try:
        if table is None:
            table = closure_table(scene)
    except SpanError as ex:
        failed = CheckResult.failed("closure", str(ex))
        return CheckReport(checks=[failed]), images

    flat = [[x for row in images[g.label].entries for x in row] for g in generators]
    rank = to_matrix(flat).rank()
    bijective = CheckResult.from_condition(
        "bijective",
        rank == expected_dim == len(generators),
        f"{len(generators)} invariants map onto sp({scene.ell}) of dimension "
        f"{expected_dim}",
        dimension=len(generators),
        rank=rank,
    )

    labels = table.labels
    morphism = CheckResult.ok(
        "bracket_tables_match", "closure table matches the sp(l) brackets"
    )
    for a, b in itertools.combinations(range(len(labels)), 2):
        lhs = images[labels[a]].bracket(images[labels[b]])
        rhs = None
        for coeff, label in zip(table.constants[a][b], labels, strict=True):
            if coeff:
                term = images[label].scaled(coeff)
                rhs = term if rhs is None else rhs + term
        rhs_entries = rhs.entries if rhs is not None else _zero(scene.ell)
        if lhs.entries != rhs_entries:
            morphism = CheckResult.failed(
                "bracket_tables_match",
                "closure table differs from the sp(l) brackets",
                witness=[f"({labels[a]}, {labels[b]})", table.entry(a, b)],
            )
            break
    closure = CheckResult.from_condition(
        "closure",
        table.is_antisymmetric() and table.jacobi_defect() is None,
        f"closure table is an antisymmetric {table.dimension}x{table.dimension} "
        "Lie algebra table",
    )
    return CheckReport(checks=[closure, bijective, morphism]), images


def _zero(ell: int):
    return tuple(tuple(QQ(0) for _ in range(2 * ell)) for _ in range(2 * ell))

"""Split extensions of Lie-Rinehart algebras, connections and curvature."""

import itertools
import logging

from rinehart.errors import ExtensionError
from rinehart.lie_rinehart import check_axioms, lie_bracket
from rinehart.model.extension import (
    L_DOUBLE_PRIME,
    L_PRIME,
    ConnectionMap,
    ExtensionData,
)
from rinehart.model.poly import Poly
from rinehart.model.presentation import LieRinehartPresentation
from rinehart.model.report import CheckReport, CheckResult
from rinehart.sampling import make_rng, random_poly
from rinehart.tautological import algebra_of, random_triples, reconstruct

logger = logging.getLogger(__name__)


def build_total(ext: ExtensionData) -> LieRinehartPresentation:
    """Middle algebra ``L = L' + L''`` with

    * ``[e'_a, e'_b]`` from ``L'``,
    * ``[e''_j, e''_k] = [e''_j, e''_k]_{L''} + Omega(e''_j, e''_k)``,
    * ``[e''_j, e'_k] = nabla_{e''_j} e'_k``,

    and anchor zero on ``L'``. With ``nabla = 0`` this is the plain
    curvature-twisted bracket.
    """
    lp, ldp = ext.l_prime, ext.l_double_prime
    if lp.base_vars != ldp.base_vars:
        raise ExtensionError("L' and L'' must share the base variables")
    m1, m2 = lp.dim, ldp.dim
    basis = (*lp.l_basis, *ldp.l_basis)
    m = m1 + m2
    anchor = tuple(
        (tuple(Poly.zero() for _ in lp.base_vars),) * m1
    ) + tuple(ldp.anchor)
    table = [[[Poly.zero()] * m for _ in range(m)] for _ in range(m)]
    for a, b, i in itertools.product(range(m1), repeat=3):
        table[a][b][i] = lp.structure[a][b][i]
    for j, k in itertools.product(range(m2), repeat=2):
        for i in range(m2):
            table[m1 + j][m1 + k][m1 + i] = ldp.structure[j][k][i]
        for i in range(m1):
            table[m1 + j][m1 + k][i] = ext.omega[j][k][i]
    for j, k, i in itertools.product(range(m2), range(m1), range(m1)):
        table[m1 + j][k][i] = ext.nabla[j][k][i]
        table[k][m1 + j][i] = -ext.nabla[j][k][i]
    total = LieRinehartPresentation(
        name=ext.name,
        base_vars=lp.base_vars,
        l_basis=basis,
        anchor=anchor,
        structure=tuple(tuple(tuple(cell) for cell in row) for row in table),
        split=m1,
    )
    logger.debug("Built total %s with split %d", total, m1)
    return total


def _require_split(total: LieRinehartPresentation) -> int:
    if total.split is None:
        raise ExtensionError(f"{total.name} declares no L'/L'' split")
    return total.split


def check_ideal(total: LieRinehartPresentation) -> CheckResult:
    """``L'`` has zero anchor and ``[L, L'] ⊂ L'``."""
    split = _require_split(total)
    for a in range(split):
        if any(total.anchor[a]):
            return CheckResult.failed(
                "ideal",
                "L' acts non-trivially on A",
                witness=[total.l_basis[a].name],
            )
    for j in range(total.dim):
        for a in range(split):
            outside = [
                total.structure[j][a][i] * Poly.var(total.l_basis[i])
                for i in range(split, total.dim)
                if total.structure[j][a][i]
            ]
            if outside:
                return CheckResult.failed(
                    "ideal",
                    "L' is not an ideal",
                    witness=[
                        f"({total.l_basis[j]}, {total.l_basis[a]})",
                        str(sum(outside, Poly.zero())),
                    ],
                )
    return CheckResult.ok("ideal", "L' is an ideal with zero anchor")


def _project(total: LieRinehartPresentation, value: Poly) -> tuple[Poly, Poly]:
    """Split a fiber-linear element into its ``L'`` and ``L''`` parts."""
    split = total.split or 0
    prime = sum(
        (value.coefficient(e) * Poly.var(e) for e in total.l_basis[:split]),
        Poly.zero(),
    )
    return prime, value - prime


def curvature_of(total: LieRinehartPresentation, conn: ConnectionMap):
    """``Omega(a, b) = [omega(a), omega(b)] - omega([a, b]_{L''})``.

    Returns the ``m2 x m2 x m1`` tensor of ``L'`` coefficients.

    Raises:
        ExtensionError: If a curvature value leaves the ``L'`` span.
    """
    split = _require_split(total)
    if conn.total != total:
        raise ExtensionError("connection belongs to a different presentation")
    m2 = total.dim - split
    prime_basis = total.l_basis[:split]
    result = []
    for j in range(m2):
        row = []
        for k in range(m2):
            _, quotient = _project(
                total, total.structure_element(split + j, split + k)
            )
            lifted = Poly.zero()
            for i in range(m2):
                coefficient = quotient.coefficient(total.l_basis[split + i])
                if coefficient:
                    lifted = lifted + coefficient * conn.image(i)
            value = lie_bracket(total, conn.image(j), conn.image(k)) - lifted
            prime, rest = _project(total, value)
            if rest:
                raise ExtensionError(
                    f"curvature at ({total.l_basis[split + j]}, "
                    f"{total.l_basis[split + k]}) leaves the L' span: {rest}"
                )
            row.append(tuple(prime.coefficient(e) for e in prime_basis))
        result.append(tuple(row))
    return tuple(result)


def _compare(name: str, message: str, cases) -> CheckResult:
    count = 0
    for label, lhs, rhs in cases:
        count += 1
        if lhs != rhs:
            return CheckResult.failed(
                name, f"{message} fails", witness=[label, str(lhs), str(rhs)]
            )
    return CheckResult.ok(name, f"{message} holds", cases=count)


def theorem_identities_report(
    ext: ExtensionData, seed: int = 0, samples: int = 16
) -> CheckReport:
    """Brackets of generators in ``S_A[L]`` against the extension data.

    Each identity is a separate check; the axioms of the total algebra are
    reported alongside as their precondition.
    """
    total = build_total(ext)
    engine = algebra_of(total)
    lp, ldp = ext.l_prime, ext.l_double_prime
    m1 = lp.dim
    rng = make_rng(seed)
    coefficients = [x.poly for x in total.base_vars] + [
        random_poly(rng, total.base_vars) for _ in range(2)
    ]

    prime_pairs = [
        (f"{{{lp.l_basis[a]}, {lp.l_basis[b]}}}",
         engine.bracket(lp.basis_element(a), lp.basis_element(b)),
         lp.structure_element(a, b))
        for a, b in itertools.combinations(range(m1), 2)
    ]
    double_pairs = [
        (f"{{{ldp.l_basis[j]}, {ldp.l_basis[k]}}}",
         engine.bracket(ldp.basis_element(j), ldp.basis_element(k)),
         ldp.structure_element(j, k) + ext.omega_element(j, k))
        for j, k in itertools.combinations(range(ldp.dim), 2)
    ]
    double_anchor = [
        (f"{{{e}, {a}}}", engine.bracket(e.poly, a), _anchor_of(ldp, j, a))
        for j, e in enumerate(ldp.l_basis)
        for a in coefficients
    ]
    prime_anchor = [
        (f"{{{e}, {a}}}", engine.bracket(e.poly, a), Poly.zero())
        for e in lp.l_basis
        for a in coefficients
    ]
    mixed = [
        (f"{{{ldp.l_basis[j]}, {lp.l_basis[k]}}}",
         engine.bracket(ldp.basis_element(j), lp.basis_element(k)),
         ext.nabla_element(j, k))
        for j in range(ldp.dim)
        for k in range(m1)
    ]
    leibniz = [
        (f"sample {n}", engine.bracket(u, v * w),
         engine.bracket(u, v) * w + v * engine.bracket(u, w))
        for n, (u, v, w) in enumerate(random_triples(total, seed, samples))
    ]
    checks = [
        *check_axioms(total).prefixed("axioms"),
        _compare("prime_bracket", "{a', b'} = [a', b']", prime_pairs),
        _compare(
            "double_prime_bracket",
            "{a'', b''} = [a'', b''] + Omega(a'', b'')",
            double_pairs,
        ),
        _compare("double_prime_anchor", "{a'', f} = a''(f)", double_anchor),
        _compare("prime_anchor", "{a', f} = 0", prime_anchor),
        _compare("leibniz", "{u, vw} = {u, v}w + v{u, w}", leibniz),
        _compare("mixed_bracket", "{a'', b'} = nabla_a''(b')", mixed),
    ]
    return CheckReport(checks=checks)


def _anchor_of(pres: LieRinehartPresentation, j: int, a: Poly) -> Poly:
    return pres.anchor_of(j)(a)


def reconstruct_extension(
    total: LieRinehartPresentation,
) -> tuple[ExtensionData, ConnectionMap]:
    """Recover ``(L', L'', nabla, Omega)`` from the tautological brackets.

    Raises:
        ExtensionError: If the declared ``L'`` has non-zero anchor or is not
            an ideal.
    """
    split = _require_split(total)
    ideal = check_ideal(total)
    if not ideal.passed:
        raise ExtensionError(f"{ideal.message}: {' '.join(ideal.witness)}")
    rec = reconstruct(total)
    m, m2 = rec.dim, rec.dim - split
    prime_basis, quotient_basis = rec.l_basis[:split], rec.l_basis[split:]
    l_prime = LieRinehartPresentation(
        name=L_PRIME,
        base_vars=rec.base_vars,
        l_basis=prime_basis,
        anchor=rec.anchor[:split],
        structure=tuple(
            tuple(rec.structure[a][b][:split] for b in range(split))
            for a in range(split)
        ),
    )
    l_double_prime = LieRinehartPresentation(
        name=L_DOUBLE_PRIME,
        base_vars=rec.base_vars,
        l_basis=quotient_basis,
        anchor=rec.anchor[split:],
        structure=tuple(
            tuple(rec.structure[j][k][split:] for k in range(split, m))
            for j in range(split, m)
        ),
    )
    ext = ExtensionData(
        name=total.name,
        l_prime=l_prime,
        l_double_prime=l_double_prime,
        nabla=tuple(
            tuple(rec.structure[split + j][k][:split] for k in range(split))
            for j in range(m2)
        ),
        omega=tuple(
            tuple(rec.structure[split + j][split + k][:split] for k in range(m2))
            for j in range(m2)
        ),
    )
    return ext, ConnectionMap.canonical(total)

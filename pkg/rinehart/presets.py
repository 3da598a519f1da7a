"""Named presentations, extensions, scenes and reductive pairs shipped as demos."""

import logging

from rinehart.invariants.homogeneous import g_times_g_pair
from rinehart.model.extension import L_DOUBLE_PRIME, L_PRIME, ExtensionData
from rinehart.model.poly import Poly, Var, variables
from rinehart.model.presentation import KaehlerPresentation, LieRinehartPresentation
from rinehart.model.scene import DualPairScene, ReductivePair

logger = logging.getLogger(__name__)

SO3_R3_CAVEAT = (
    "The origin of R^3 is removed in the smooth picture; puncturing affects "
    "only the manifold statement, not the polynomial algebra computed here."
)


def _so3_brackets(e1: Var, e2: Var, e3: Var) -> dict[tuple[Var, Var], Poly]:
    return {(e1, e2): e3.poly, (e2, e3): e1.poly, (e3, e1): e2.poly}


def vect_model() -> LieRinehartPresentation:
    """``A = Q[x]`` with one generator ``e`` acting as ``d/dx``."""
    (x,) = variables("x")
    (e,) = variables("e", kind="fiber")
    return LieRinehartPresentation.from_brackets(
        [x], [e], anchors={e: {x: Poly.one()}}, name="vect"
    )


def so3() -> LieRinehartPresentation:
    """``so(3)`` as a Lie algebra over ``Q``: ``[e1, e2] = e3`` and cyclic."""
    e1, e2, e3 = variables("e1 e2 e3", kind="fiber")
    return LieRinehartPresentation.from_brackets(
        [], [e1, e2, e3], brackets=_so3_brackets(e1, e2, e3), name="so3"
    )


def so3_corrupted() -> LieRinehartPresentation:
    """``so(3)`` with ``[e2, e3] = e1 + e2``; its Jacobi defect is ``e3``."""
    e1, e2, e3 = variables("e1 e2 e3", kind="fiber")
    brackets = _so3_brackets(e1, e2, e3)
    brackets[e2, e3] = e1.poly + e2.poly
    return LieRinehartPresentation.from_brackets(
        [], [e1, e2, e3], brackets=brackets, name="so3-corrupted"
    )


def anchor_mutant() -> LieRinehartPresentation:
    """``rho(e1) = d/dx``, ``rho(e2) = x d/dy`` but ``[e1, e2] = 0``."""
    x, y = variables("x y")
    e1, e2 = variables("e1 e2", kind="fiber")
    return LieRinehartPresentation.from_brackets(
        [x, y],
        [e1, e2],
        anchors={e1: {x: Poly.one()}, e2: {y: x.poly}},
        name="anchor-mutant",
    )


def _coordinate_quotient(count: int) -> LieRinehartPresentation:
    xs = variables([f"x{n}" for n in range(1, count + 1)])
    es = variables([f"e{n}" for n in range(1, count + 1)], kind="fiber")
    return LieRinehartPresentation.from_brackets(
        xs,
        es,
        anchors={e: {x: Poly.one()} for e, x in zip(es, xs, strict=True)},
        name=L_DOUBLE_PRIME,
    )


def _central(base: list[Var], name: str = "c") -> LieRinehartPresentation:
    (c,) = variables(name, kind="fiber")
    return LieRinehartPresentation.from_brackets(base, [c], name=L_PRIME)


def heisenberg_extension() -> ExtensionData:
    """Abelian ``e1, e2`` with anchors ``d/dx1, d/dx2`` twisted by ``Omega = c``."""
    quotient = _coordinate_quotient(2)
    kernel = _central(list(quotient.base_vars))
    e1, e2 = quotient.l_basis
    (c,) = kernel.l_basis
    return ExtensionData.from_relations(
        kernel, quotient, omega={(e1, e2): c.poly}, name="heisenberg"
    )


def direct_product_extension() -> ExtensionData:
    quotient = _coordinate_quotient(2)
    kernel = _central(list(quotient.base_vars))
    return ExtensionData.from_relations(kernel, quotient, name="direct-product")


def non_closed_extension() -> ExtensionData:
    """``Omega(e1, e2) = x3 c`` on three generators, which is not closed.

    The Jacobi defect at ``(e1, e2, e3)`` is ``c``.
    """
    quotient = _coordinate_quotient(3)
    kernel = _central(list(quotient.base_vars))
    e1, e2, _ = quotient.l_basis
    (c,) = kernel.l_basis
    x3 = quotient.base_vars[2]
    return ExtensionData.from_relations(
        kernel, quotient, omega={(e1, e2): x3.poly * c.poly}, name="non-closed"
    )


def atiyah_extension() -> ExtensionData:
    """Trivial bundle shadow: ``L' = A (x) so(3)`` and ``L'' = span(d1, d2)``."""
    quotient = _coordinate_quotient(2)
    l1, l2, l3 = variables("L1 L2 L3", kind="fiber")
    kernel = LieRinehartPresentation.from_brackets(
        list(quotient.base_vars),
        [l1, l2, l3],
        brackets=_so3_brackets(l1, l2, l3),
        name=L_PRIME,
    )
    return ExtensionData.from_relations(kernel, quotient, name="atiyah")


def atiyah_connection_shifts() -> dict[Var, Poly]:
    """``omega(e2) = e2 + x1 L3``; its curvature at ``(e1, e2)`` is ``L3``."""
    e2, x1, l3 = Var.fiber("e2"), Var.base("x1"), Var.fiber("L3")
    return {e2: x1.poly * l3.poly}


def symplectic_plane() -> KaehlerPresentation:
    q, p = variables("q p")
    return KaehlerPresentation.from_brackets([q, p], {(q, p): Poly.one()}, name="symplectic")


def so3_lie_poisson() -> KaehlerPresentation:
    x, y, z = variables("x y z")
    return KaehlerPresentation.from_brackets(
        [x, y, z], {(x, y): z.poly, (y, z): x.poly, (z, x): y.poly}, name="so3*"
    )


def corrupted_lie_poisson() -> KaehlerPresentation:
    """``{z, x} = x`` instead of ``y``; the table violates Jacobi."""
    x, y, z = variables("x y z")
    return KaehlerPresentation.from_brackets(
        [x, y, z], {(x, y): z.poly, (y, z): x.poly, (z, x): x.poly}, name="so3*-corrupted"
    )


def so3_r3_scene() -> DualPairScene:
    return DualPairScene(s=3, ell=1, name="so3-r3")


SO3_STRUCTURE = (
    ((0, 0, 0), (0, 0, 1), (0, -1, 0)),
    ((0, 0, -1), (0, 0, 0), (1, 0, 0)),
    ((0, 1, 0), (-1, 0, 0), (0, 0, 0)),
)
"""``so(3)`` structure constants: ``[L_i, L_j] = eps_ijk L_k``."""


def so3_so2_pair() -> ReductivePair:
    """``so(3) = so(2) + R^2`` with ``h = L3``."""
    return ReductivePair.from_brackets(
        name="so3-so2",
        basis=["L1", "L2", "L3"],
        brackets={
            ("L1", "L2"): {"L3": 1},
            ("L2", "L3"): {"L1": 1},
            ("L3", "L1"): {"L2": 1},
        },
        h=["L3"],
    )


def gxg_so3_pair() -> ReductivePair:
    return g_times_g_pair("gxg-so3", ["L1", "L2", "L3"], SO3_STRUCTURE)


def b2_mutant_pair() -> ReductivePair:
    """Upper triangular ``2x2`` matrices with ``h = E11``; ``[q, q]`` leaves ``h``."""
    return ReductivePair.from_brackets(
        name="b2-mutant",
        basis=["E11", "E12", "E22"],
        brackets={("E11", "E12"): {"E12": 1}, ("E12", "E22"): {"E12": 1}},
        h=["E11"],
    )


PRESENTATIONS = {
    "vect": vect_model,
    "so3": so3,
    "so3-corrupted": so3_corrupted,
    "anchor-mutant": anchor_mutant,
}

EXTENSIONS = {
    "heisenberg": heisenberg_extension,
    "direct-product": direct_product_extension,
    "non-closed": non_closed_extension,
    "atiyah": atiyah_extension,
}

REDUCTIVE_PAIRS = {
    "so3-so2": so3_so2_pair,
    "gxg-so3": gxg_so3_pair,
    "b2-mutant": b2_mutant_pair,
}

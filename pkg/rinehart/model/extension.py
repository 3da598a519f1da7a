import logging
from collections.abc import Mapping

from pydantic import Field, model_validator

from rinehart.model.base import MainModel
from rinehart.model.poly import Poly, Var
from rinehart.model.presentation import (
    LieRinehartPresentation,
    PolyMatrix,
    PolyTensor,
)

logger = logging.getLogger(__name__)

L_PRIME = "lprime"
L_DOUBLE_PRIME = "ldoubleprime"


def _tensor(shape: tuple[int, int, int], values: dict[tuple[int, int, int], Poly]):
    a, b, c = shape
    return tuple(
        tuple(
            tuple(values.get((j, k, i), Poly.zero()) for i in range(c))
            for k in range(b)
        )
        for j in range(a)
    )


class ExtensionData(MainModel):
    """Split extension datum ``0 -> L' -> L -> L'' -> 0``.

    ``nabla[j][k][i]`` is the coefficient of ``e'_i`` in the action of
    ``e''_j`` on ``e'_k``; ``omega[j][k][i]`` is the coefficient of ``e'_i``
    in ``Omega(e''_j, e''_k)``.
    """

    name: str = Field(default="L")
    l_prime: LieRinehartPresentation = Field(..., description="Kernel, zero anchor.")
    l_double_prime: LieRinehartPresentation = Field(..., description="Quotient.")
    nabla: PolyTensor = Field(..., description="Action of L'' on L'.")
    omega: PolyTensor = Field(..., description="Curvature, alternating.")

    @model_validator(mode="after")
    def validate_extension(self) -> "ExtensionData":
        lp, ldp = self.l_prime, self.l_double_prime
        if lp.base_vars != ldp.base_vars:
            raise ValueError("L' and L'' must share the base variables")
        if any(entry for row in lp.anchor for entry in row):
            raise ValueError("L' must act trivially on A (non-zero anchor)")
        shared = set(lp.l_basis) & set(ldp.l_basis)
        if shared:
            names = ", ".join(sorted(var.name for var in shared))
            raise ValueError(f"L' and L'' bases overlap: {names}")
        m1, m2 = lp.dim, ldp.dim
        if len(self.nabla) != m2 or any(
            len(row) != m1 or any(len(cell) != m1 for cell in row)
            for row in self.nabla
        ):
            raise ValueError(f"nabla must be a {m2}x{m1}x{m1} tensor")
        if len(self.omega) != m2 or any(
            len(row) != m2 or any(len(cell) != m1 for cell in row)
            for row in self.omega
        ):
            raise ValueError(f"omega must be a {m2}x{m2}x{m1} tensor")
        for j in range(m2):
            for k in range(m2):
                for i in range(m1):
                    if self.omega[j][k][i] != -self.omega[k][j][i]:
                        raise ValueError(
                            f"omega not alternating at "
                            f"({ldp.l_basis[j]}, {ldp.l_basis[k]})"
                        )
        base = set(lp.base_vars)
        entries = [p for t in (self.nabla, self.omega) for r in t for c in r for p in c]
        if any(var not in base for p in entries for var in p.variables()):
            raise ValueError("nabla and omega entries must be over base vars")
        return self

    @classmethod
    def from_relations(
        cls,
        l_prime: LieRinehartPresentation,
        l_double_prime: LieRinehartPresentation,
        nabla: Mapping[tuple[Var, Var], Poly] | None = None,
        omega: Mapping[tuple[Var, Var], Poly] | None = None,
        name: str = "L",
    ) -> "ExtensionData":
        """Build from ``{(e''_j, e'_k): value}`` and ``{(e''_j, e''_k): value}``.

        Values must be linear in the ``L'`` basis; ``omega`` is completed by
        antisymmetry.
        """
        m1, m2 = l_prime.dim, l_double_prime.dim
        nabla_values: dict[tuple[int, int, int], Poly] = {}
        for (e2, e1), value in (nabla or {}).items():
            j, k = l_double_prime.basis_index(e2), l_prime.basis_index(e1)
            for i, target in enumerate(l_prime.l_basis):
                nabla_values[j, k, i] = Poly.coerce(value).coefficient(target)
        omega_values: dict[tuple[int, int, int], Poly] = {}
        for (left, right), value in (omega or {}).items():
            j, k = l_double_prime.basis_index(left), l_double_prime.basis_index(right)
            for i, target in enumerate(l_prime.l_basis):
                coefficient = Poly.coerce(value).coefficient(target)
                omega_values[j, k, i] = coefficient
                omega_values[k, j, i] = -coefficient
        return cls(
            name=name,
            l_prime=l_prime,
            l_double_prime=l_double_prime,
            nabla=_tensor((m2, m1, m1), nabla_values),
            omega=_tensor((m2, m2, m1), omega_values),
        )

    def omega_element(self, j: int, k: int) -> Poly:
        return sum(
            (c * Poly.var(e) for c, e in zip(self.omega[j][k], self.l_prime.l_basis)),
            Poly.zero(),
        )

    def nabla_element(self, j: int, k: int) -> Poly:
        return sum(
            (c * Poly.var(e) for c, e in zip(self.nabla[j][k], self.l_prime.l_basis)),
            Poly.zero(),
        )


class ConnectionMap(MainModel):
    """A-linear section ``omega: L'' -> L`` of a split total presentation.

    ``section[j]`` lists the coefficients of ``omega(e''_j)`` over the full
    basis of ``total``, whose first ``total.split`` elements span ``L'``.
    """

    total: LieRinehartPresentation
    section: PolyMatrix

    @model_validator(mode="after")
    def validate_section(self) -> "ConnectionMap":
        split = self.total.split
        if split is None:
            raise ValueError(f"{self.total.name} carries no L'/L'' split")
        m2 = self.total.dim - split
        if len(self.section) != m2 or any(
            len(row) != self.total.dim for row in self.section
        ):
            raise ValueError(f"section must be a {m2}x{self.total.dim} matrix")
        for j, row in enumerate(self.section):
            for k in range(m2):
                if row[split + k] != (1 if j == k else 0):
                    raise ValueError(
                        "projection after section is not the identity at "
                        f"'{self.total.l_basis[split + j]}'"
                    )
        return self

    @classmethod
    def canonical(cls, total: LieRinehartPresentation) -> "ConnectionMap":
        """The inclusion ``e''_j -> e''_j``."""
        return cls.shifted(total, {})

    @classmethod
    def shifted(
        cls, total: LieRinehartPresentation, shifts: Mapping[Var, Poly]
    ) -> "ConnectionMap":
        """``omega(e''_j) = e''_j + shifts[e''_j]`` with shifts in the ``L'`` span."""
        split = total.split or 0
        rows = []
        for j, e in enumerate(total.l_basis[split:]):
            shift = Poly.coerce(shifts.get(e, Poly.zero()))
            row = [shift.coefficient(f) for f in total.l_basis[:split]]
            row += [Poly.one() if k == j else Poly.zero() for k in range(total.dim - split)]
            if shift.fiber_degree_part(1) != shift or any(
                shift.coefficient(f) for f in total.l_basis[split:]
            ):
                raise ValueError(f"shift of '{e}' must lie in the L' span")
            rows.append(tuple(row))
        return cls(total=total, section=tuple(rows))

    @property
    def split(self) -> int:
        return self.total.split or 0

    def image(self, j: int) -> Poly:
        """``omega(e''_j)`` as a fiber-linear polynomial."""
        return sum(
            (c * Poly.var(e) for c, e in zip(self.section[j], self.total.l_basis)),
            Poly.zero(),
        )

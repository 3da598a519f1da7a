import logging
from collections.abc import Mapping, Sequence

from pydantic import Field, model_validator

from rinehart.model.base import MainModel
from rinehart.model.poly import Poly, Var

logger = logging.getLogger(__name__)

PolyMatrix = tuple[tuple[Poly, ...], ...]
PolyTensor = tuple[tuple[tuple[Poly, ...], ...], ...]


def zero_tensor(*shape: int):
    if len(shape) == 1:
        return tuple(Poly.zero() for _ in range(shape[0]))
    return tuple(zero_tensor(*shape[1:]) for _ in range(shape[0]))


def _involves_only(poly: Poly, allowed: set[Var]) -> bool:
    return all(var in allowed for var in poly.variables())


class Derivation(MainModel):
    """A derivation of ``A = Q[x_1..x_n]`` given by its images on generators.

    Missing generators are mapped to zero; the extension to all of ``A`` is
    computed by the Leibniz rule when the derivation is applied.
    """

    images: dict[Var, Poly] = Field(default_factory=dict)

    def __call__(self, a: Poly) -> Poly:
        result = Poly.zero()
        for var in a.variables():
            image = self.images.get(var)
            if image:
                result = result + image * a.partial(var)
        return result

    def nonzero_images(self) -> dict[Var, Poly]:
        return {var: image for var, image in self.images.items() if image}

    def commutator(self, other: "Derivation") -> "Derivation":
        """``[D1, D2] = D1 D2 - D2 D1``, evaluated on generators."""
        generators = set(self.images) | set(other.images)
        return Derivation(
            images={
                var: self(other(var.poly)) - other(self(var.poly))
                for var in generators
            }
        )

    def scaled(self, factor: Poly) -> "Derivation":
        return Derivation(
            images={var: factor * image for var, image in self.images.items()}
        )

    def __add__(self, other: "Derivation") -> "Derivation":
        generators = set(self.images) | set(other.images)
        zero = Poly.zero()
        return Derivation(
            images={
                var: self.images.get(var, zero) + other.images.get(var, zero)
                for var in generators
            }
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + other.scaled(Poly.const(-1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.nonzero_images() == other.nonzero_images()

    def __hash__(self) -> int:
        return hash(frozenset(self.nonzero_images().items()))

    def __str__(self) -> str:
        parts = [
            f"({image})*d/d{var}"
            for var, image in sorted(
                self.nonzero_images().items(), key=lambda kv: kv[0].sort_key
            )
        ]
        return " + ".join(parts) or "0"


class LieRinehartPresentation(MainModel):
    """Finite free presentation of an ``(R, A)``-Lie algebra.

    ``A = Q[base_vars]`` and ``L`` is the free ``A``-module on ``l_basis``.
    Row ``j`` of ``anchor`` gives ``rho(e_j) = sum_s anchor[j][s] d/dx_s``
    and ``[e_j, e_k] = sum_i structure[j][k][i] e_i``.
    """

    name: str = Field(default="L", description="Name of the presentation.")
    base_vars: tuple[Var, ...] = Field(default=(), description="Generators of A.")
    l_basis: tuple[Var, ...] = Field(..., description="Free basis of L.")
    anchor: PolyMatrix = Field(..., description="m x n matrix over A.")
    structure: PolyTensor = Field(..., description="m x m x m tensor over A.")
    split: int | None = Field(
        default=None,
        description="Number of leading basis elements spanning L' in a split extension.",
    )

    @model_validator(mode="after")
    def validate_presentation(self) -> "LieRinehartPresentation":
        """Check kinds, shapes, base-only entries and antisymmetry.

        Raises:
            ValueError: For any violated invariant.
        """
        if any(var.kind != "base" for var in self.base_vars):
            raise ValueError("base variables must have kind 'base'")
        if any(var.kind != "fiber" for var in self.l_basis):
            raise ValueError("basis variables must have kind 'fiber'")
        names = [var.name for var in (*self.base_vars, *self.l_basis)]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate variable names: {', '.join(duplicates)}")

        m, n = len(self.l_basis), len(self.base_vars)
        if len(self.anchor) != m or any(len(row) != n for row in self.anchor):
            raise ValueError(f"anchor must be a {m}x{n} matrix")
        if len(self.structure) != m or any(
            len(row) != m or any(len(cell) != m for cell in row)
            for row in self.structure
        ):
            raise ValueError(f"structure must be a {m}x{m}x{m} tensor")

        base = set(self.base_vars)
        entries = [p for row in self.anchor for p in row] + [
            p for row in self.structure for cell in row for p in cell
        ]
        if not all(_involves_only(p, base) for p in entries):
            raise ValueError("anchor and structure entries must be over base vars")

        for j in range(m):
            for k in range(m):
                for i in range(m):
                    if self.structure[j][k][i] != -self.structure[k][j][i]:
                        raise ValueError(
                            f"structure not antisymmetric at "
                            f"[{self.l_basis[j]}, {self.l_basis[k]}]"
                        )
        if self.split is not None and not 0 <= self.split <= m:
            raise ValueError(f"split must lie in [0, {m}]")
        return self

    @classmethod
    def from_brackets(
        cls,
        base_vars: Sequence[Var],
        l_basis: Sequence[Var],
        anchors: Mapping[Var, Mapping[Var, Poly]] | None = None,
        brackets: Mapping[tuple[Var, Var], Poly] | None = None,
        name: str = "L",
        split: int | None = None,
    ) -> "LieRinehartPresentation":
        """Build a presentation from sparse anchor rows and bracket values.

        Args:
            anchors: ``{e_j: {x_s: coefficient}}``; missing entries are zero.
            brackets: ``{(e_j, e_k): value}`` where ``value`` is linear in the
                basis; ``(e_k, e_j)`` is filled in by antisymmetry.
        """
        base_vars, l_basis = tuple(base_vars), tuple(l_basis)
        anchors = anchors or {}
        index = {var: i for i, var in enumerate(l_basis)}
        anchor = tuple(
            tuple(
                Poly.coerce(anchors.get(e, {}).get(x, Poly.zero()))
                for x in base_vars
            )
            for e in l_basis
        )
        m = len(l_basis)
        table = [[[Poly.zero()] * m for _ in range(m)] for _ in range(m)]
        for (left, right), value in (brackets or {}).items():
            j, k = index[left], index[right]
            value = Poly.coerce(value)
            if value.fiber_degree_part(1) != value:
                raise ValueError(f"[{left}, {right}] must be linear in the basis")
            for i, e in enumerate(l_basis):
                coefficient = value.coefficient(e)
                table[j][k][i] = coefficient
                table[k][j][i] = -coefficient
        structure = tuple(tuple(tuple(cell) for cell in row) for row in table)
        return cls(
            name=name,
            base_vars=base_vars,
            l_basis=l_basis,
            anchor=anchor,
            structure=structure,
            split=split,
        )

    @property
    def dim(self) -> int:
        return len(self.l_basis)

    def basis_index(self, var: Var | str) -> int:
        name = var if isinstance(var, str) else var.name
        for i, e in enumerate(self.l_basis):
            if e.name == name:
                return i
        raise KeyError(name)

    def basis_element(self, j: int) -> Poly:
        return Poly.var(self.l_basis[j])

    def structure_element(self, j: int, k: int) -> Poly:
        """``[e_j, e_k]`` as a fiber-linear polynomial."""
        result = Poly.zero()
        for i, e in enumerate(self.l_basis):
            coefficient = self.structure[j][k][i]
            if coefficient:
                result = result + coefficient * Poly.var(e)
        return result

    def anchor_of(self, j: int) -> Derivation:
        return Derivation(
            images={x: self.anchor[j][s] for s, x in enumerate(self.base_vars)}
        )

    def symbols(self) -> dict[str, Var]:
        return {var.name: var for var in (*self.base_vars, *self.l_basis)}

    def __str__(self) -> str:
        return (
            f"{self.name}[base={','.join(map(str, self.base_vars))}; "
            f"basis={','.join(map(str, self.l_basis))}]"
        )


class KaehlerPresentation(MainModel):
    """A Poisson polynomial algebra with its module of formal differentials.

    ``generators`` are the ``u_i``; ``table[i][j] = {u_i, u_j}``. The module
    ``D_A`` is free over the source algebra on the symbols ``du_i``, which are
    represented as fiber variables named ``d<u_i>``.
    """

    name: str = Field(default="P")
    generators: tuple[Var, ...] = Field(..., description="The u_i.")
    table: PolyMatrix = Field(..., description="Bracket table {u_i, u_j}.")

    @model_validator(mode="after")
    def validate_table(self) -> "KaehlerPresentation":
        n = len(self.generators)
        if any(var.kind != "base" for var in self.generators):
            raise ValueError("generators must have kind 'base'")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"bracket table must be {n}x{n}")
        allowed = set(self.generators)
        for i in range(n):
            for j in range(n):
                if not _involves_only(self.table[i][j], allowed):
                    raise ValueError("bracket table entries must be over generators")
                if self.table[i][j] != -self.table[j][i]:
                    raise ValueError(
                        f"bracket table not antisymmetric at "
                        f"{{{self.generators[i]}, {self.generators[j]}}}"
                    )
        return self

    @classmethod
    def from_brackets(
        cls,
        generators: Sequence[Var],
        brackets: Mapping[tuple[Var, Var], Poly],
        name: str = "P",
    ) -> "KaehlerPresentation":
        generators = tuple(generators)
        index = {var: i for i, var in enumerate(generators)}
        n = len(generators)
        table = [[Poly.zero()] * n for _ in range(n)]
        for (left, right), value in brackets.items():
            i, j = index[left], index[right]
            table[i][j] = Poly.coerce(value)
            table[j][i] = -Poly.coerce(value)
        return cls(
            name=name,
            generators=generators,
            table=tuple(tuple(row) for row in table),
        )

    @property
    def differentials(self) -> tuple[Var, ...]:
        return tuple(Var.fiber(f"d{u.name}") for u in self.generators)

    def poisson_bracket(self, f: Poly, g: Poly) -> Poly:
        """``{f, g} = sum_ij df/du_i * dg/du_j * {u_i, u_j}``."""
        result = Poly.zero()
        for i, u in enumerate(self.generators):
            df = f.partial(u)
            if not df:
                continue
            for j, v in enumerate(self.generators):
                entry = self.table[i][j]
                if entry:
                    result = result + df * g.partial(v) * entry
        return result

    def differential(self, f: Poly) -> Poly:
        """``df = sum_i df/du_i du_i`` as a polynomial linear in the ``du_i``."""
        result = Poly.zero()
        for u, du in zip(self.generators, self.differentials, strict=True):
            result = result + f.partial(u) * Poly.var(du)
        return result

    def hamiltonian(self, u: Poly) -> Derivation:
        """``pi_sharp(du) = {u, -}`` as a derivation."""
        return Derivation(
            images={v: self.poisson_bracket(u, v.poly) for v in self.generators}
        )

    def to_lie_rinehart(self) -> LieRinehartPresentation:
        """The Lie-Rinehart algebra ``(A, D_A)`` with anchor ``pi_sharp``.

        ``rho(du_i) = {u_i, -}`` and ``[du_i, du_j] = d{u_i, u_j}``.
        """
        anchors = {
            du: {v: self.table[i][j] for j, v in enumerate(self.generators)}
            for i, du in enumerate(self.differentials)
        }
        brackets = {
            (self.differentials[i], self.differentials[j]): self.differential(
                self.table[i][j]
            )
            for i in range(len(self.generators))
            for j in range(i + 1, len(self.generators))
        }
        return LieRinehartPresentation.from_brackets(
            base_vars=self.generators,
            l_basis=self.differentials,
            anchors=anchors,
            brackets=brackets,
            name=f"D({self.name})",
        )

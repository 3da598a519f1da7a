import functools
import logging
from collections.abc import Sequence
from typing import Any, Literal

from pydantic import Field, PositiveInt, field_validator, model_validator

from rinehart.model.base import MainModel
from rinehart.model.poly import Poly, Rational, Var, render_rational, to_rational
from rinehart.model.presentation import LieRinehartPresentation

logger = logging.getLogger(__name__)

RationalMatrix = tuple[tuple[Rational, ...], ...]
InvariantKind = Literal["QQ", "QP", "PP"]


def rational_matrix(rows: Sequence[Sequence[Any]]) -> RationalMatrix:
    return tuple(tuple(to_rational(value) for value in row) for row in rows)


def render_matrix(rows: RationalMatrix) -> list[list[str]]:
    return [[render_rational(value) for value in row] for row in rows]


class DualPairScene(MainModel):
    """``O(s)`` acting diagonally on ``l`` copies of ``R^s`` and their momenta.

    Positions ``q{j}_{a}`` are the base variables and momenta ``p{j}_{a}`` the
    fiber variables of the cotangent model, so that ``{q{j}_{a}, p{k}_{b}}``
    is ``1`` exactly when ``j = k`` and ``a = b``.
    """

    s: PositiveInt = Field(..., description="Dimension of E.")
    ell: PositiveInt = Field(..., description="Number of copies of E.")
    name: str = Field(default="")

    def q(self, j: int, alpha: int) -> Var:
        return Var.base(f"q{j}_{alpha}")

    def p(self, j: int, alpha: int) -> Var:
        return Var.fiber(f"p{j}_{alpha}")

    @property
    def copies(self) -> range:
        return range(1, self.ell + 1)

    @property
    def coordinates(self) -> range:
        return range(1, self.s + 1)

    @property
    def q_vars(self) -> tuple[Var, ...]:
        return tuple(self.q(j, a) for j in self.copies for a in self.coordinates)

    @property
    def p_vars(self) -> tuple[Var, ...]:
        return tuple(self.p(j, a) for j in self.copies for a in self.coordinates)

    @property
    def presentation(self) -> LieRinehartPresentation:
        return scene_presentation(self.s, self.ell)

    @property
    def label(self) -> str:
        return self.name or f"dual-pair(s={self.s}, l={self.ell})"

    def point(self, values: Sequence[Any], momenta: bool = False) -> dict[Var, Rational]:
        """Assign ``values`` to the q variables, followed by the p variables."""
        variables = (*self.q_vars, *self.p_vars) if momenta else self.q_vars
        if len(values) != len(variables):
            raise ValueError(
                f"expected {len(variables)} coordinates, got {len(values)}"
            )
        return {var: to_rational(v) for var, v in zip(variables, values, strict=True)}


@functools.lru_cache(maxsize=16)
def scene_presentation(s: int, ell: int) -> LieRinehartPresentation:
    """Cotangent model: ``rho(p{j}_{a}) = -d/dq{j}_{a}`` and zero brackets."""
    scene = DualPairScene(s=s, ell=ell)
    q_vars, p_vars = scene.q_vars, scene.p_vars
    anchors = {p: {q: Poly.const(-1)} for q, p in zip(q_vars, p_vars, strict=True)}
    return LieRinehartPresentation.from_brackets(
        base_vars=q_vars,
        l_basis=p_vars,
        anchors=anchors,
        name=f"T*(R^{s})^{ell}",
    )


class QuadraticInvariant(MainModel):
    """One of ``q_j.q_k``, ``q_j.p_k`` or ``p_j.p_k``."""

    kind: InvariantKind
    indices: tuple[int, int]
    value: Poly

    @model_validator(mode="after")
    def validate_indices(self) -> "QuadraticInvariant":
        j, k = self.indices
        if self.kind != "QP" and j > k:
            raise ValueError(f"{self.kind} invariants need j <= k, got ({j}, {k})")
        return self

    @classmethod
    def build(
        cls, scene: DualPairScene, kind: InvariantKind, j: int, k: int
    ) -> "QuadraticInvariant":
        left = scene.p if kind == "PP" else scene.q
        right = scene.q if kind == "QQ" else scene.p
        value = Poly.zero()
        for alpha in scene.coordinates:
            value = value + Poly.var(left(j, alpha)) * Poly.var(right(k, alpha))
        return cls(kind=kind, indices=(j, k), value=value)

    @property
    def label(self) -> str:
        j, k = self.indices
        first, second = {"QQ": ("q", "q"), "QP": ("q", "p"), "PP": ("p", "p")}[
            self.kind
        ]
        return f"{first}{j}.{second}{k}"

    def __str__(self) -> str:
        return self.label


class SymMatrixQ(MainModel):
    """Exact symmetric rational matrix, e.g. a Gram matrix."""

    entries: RationalMatrix

    @field_validator("entries", mode="before")
    @classmethod
    def convert_entries(cls, value: Any) -> RationalMatrix:
        return rational_matrix(value)

    @model_validator(mode="after")
    def validate_symmetric(self) -> "SymMatrixQ":
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        return self

    @property
    def size(self) -> int:
        return len(self.entries)

    def render(self) -> list[list[str]]:
        return render_matrix(self.entries)


def canonical_j(ell: int) -> RationalMatrix:
    """``J = [[0, I], [-I, 0]]``."""
    n = 2 * ell
    return rational_matrix(
        [
            [
                1 if c == r + ell else -1 if r == c + ell else 0
                for c in range(n)
            ]
            for r in range(n)
        ]
    )


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return tuple(
        tuple(sum((a[r][i] * b[i][c] for i in range(len(b))), to_rational(0))
              for c in range(len(b[0])))
        for r in range(len(a))
    )


class SpElement(MainModel):
    """``2l x 2l`` rational matrix ``M`` with ``M J`` symmetric."""

    entries: RationalMatrix

    @field_validator("entries", mode="before")
    @classmethod
    def convert_entries(cls, value: Any) -> RationalMatrix:
        return rational_matrix(value)

    @model_validator(mode="after")
    def validate_symplectic(self) -> "SpElement":
        n = len(self.entries)
        if n % 2 or any(len(row) != n for row in self.entries):
            raise ValueError("sp elements are square of even size")
        product = mat_mul(self.entries, canonical_j(n // 2))
        for i in range(n):
            for j in range(i):
                if product[i][j] != product[j][i]:
                    raise ValueError("M J is not symmetric")
        return self

    @property
    def ell(self) -> int:
        return len(self.entries) // 2

    def __add__(self, other: "SpElement") -> "SpElement":
        return SpElement(
            entries=[
                [x + y for x, y in zip(r1, r2, strict=True)]
                for r1, r2 in zip(self.entries, other.entries, strict=True)
            ]
        )

    def scaled(self, factor: Any) -> "SpElement":
        factor = to_rational(factor)
        return SpElement(entries=[[x * factor for x in row] for row in self.entries])

    def bracket(self, other: "SpElement") -> "SpElement":
        """Matrix commutator ``[X, Y] = XY - YX``."""
        xy = mat_mul(self.entries, other.entries)
        yx = mat_mul(other.entries, self.entries)
        return SpElement(
            entries=[
                [a - b for a, b in zip(r1, r2, strict=True)]
                for r1, r2 in zip(xy, yx, strict=True)
            ]
        )

    def render(self) -> list[list[str]]:
        return render_matrix(self.entries)


class ReductivePair(MainModel):
    """Lie algebra ``g`` with a decomposition ``g = h + q``.

    ``structure[i][j][k]`` is the coefficient of basis element ``k`` in
    ``[b_i, b_j]``. ``h_action_on_q[n][a][b]`` is the coefficient of
    ``q_a`` in ``[h_n, q_b]``.
    """

    name: str
    basis: tuple[str, ...]
    structure: tuple[RationalMatrix, ...]
    h_basis: tuple[int, ...]
    q_basis: tuple[int, ...]

    @model_validator(mode="after")
    def validate_pair(self) -> "ReductivePair":
        n = len(self.basis)
        if len(self.structure) != n or any(
            len(row) != n or any(len(cell) != n for cell in row)
            for row in self.structure
        ):
            raise ValueError(f"structure must be a {n}x{n}x{n} tensor")
        if sorted((*self.h_basis, *self.q_basis)) != list(range(n)):
            raise ValueError("h and q must partition the basis")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.structure[i][j][k] != -self.structure[j][i][k]:
                        raise ValueError(
                            f"structure not antisymmetric at "
                            f"[{self.basis[i]}, {self.basis[j]}]"
                        )
        return self

    @classmethod
    def from_brackets(
        cls,
        name: str,
        basis: Sequence[str],
        brackets: dict[tuple[str, str], dict[str, Any]],
        h: Sequence[str],
    ) -> "ReductivePair":
        """``brackets[(x, y)] = {z: coefficient}``; completed by antisymmetry."""
        index = {b: i for i, b in enumerate(basis)}
        n = len(basis)
        table = [[[to_rational(0)] * n for _ in range(n)] for _ in range(n)]
        for (x, y), value in brackets.items():
            for z, coefficient in value.items():
                table[index[x]][index[y]][index[z]] = to_rational(coefficient)
                table[index[y]][index[x]][index[z]] = -to_rational(coefficient)
        h_basis = tuple(index[x] for x in h)
        return cls(
            name=name,
            basis=tuple(basis),
            structure=tuple(tuple(tuple(cell) for cell in row) for row in table),
            h_basis=h_basis,
            q_basis=tuple(i for i in range(n) if i not in h_basis),
        )

    @property
    def h_action_on_q(self) -> tuple[RationalMatrix, ...]:
        return tuple(
            tuple(
                tuple(self.structure[h][q_b][q_a] for q_b in self.q_basis)
                for q_a in self.q_basis
            )
            for h in self.h_basis
        )

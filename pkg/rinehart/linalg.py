"""Exact linear algebra over ``QQ`` on top of sympy matrices."""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
from pydantic import Field
from sympy import Matrix, QQ, Rational as SympyRational, integer_nthroot

from rinehart.errors import SpanError
from rinehart.model.base import MainModel
from rinehart.model.poly import Monomial, Poly, Rational, render_rational, to_rational

logger = logging.getLogger(__name__)

NUMERIC_TOLERANCE = 1e-12


def to_sympy(value: Any) -> SympyRational:
    return QQ.to_sympy(to_rational(value))


def to_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    if not rows:
        return Matrix(0, 0, [])
    return Matrix([[to_sympy(value) for value in row] for row in rows])


def from_matrix(matrix: Matrix) -> tuple[tuple[Rational, ...], ...]:
    return tuple(
        tuple(to_rational(matrix[r, c]) for c in range(matrix.cols))
        for r in range(matrix.rows)
    )


def _monomial_key(mono: Monomial) -> tuple:
    return tuple((var.sort_key, exp) for var, exp in mono)


def coefficient_matrix(
    polys: Sequence[Poly], monomials: Sequence[Monomial] | None = None
) -> tuple[Matrix, list[Monomial]]:
    """Matrix whose column ``c`` holds the coefficients of ``polys[c]``."""
    if monomials is None:
        found = {mono for poly in polys for mono, _ in poly.items()}
        monomials = sorted(found, key=_monomial_key)
    index = {mono: r for r, mono in enumerate(monomials)}
    matrix = Matrix.zeros(len(monomials), len(polys))
    for c, poly in enumerate(polys):
        for mono, coeff in poly.items():
            if mono not in index:
                raise SpanError(f"monomial outside the given support in '{poly}'")
            matrix[index[mono], c] = QQ.to_sympy(coeff)
    return matrix, list(monomials)


class SpanSolver:
    """Coordinates of polynomials in the span of a spanning list.

    The spanning list may be dependent; :attr:`independent` lists the indices
    of the pivot elements actually used as a basis.
    """

    def __init__(self, spanning: Sequence[Poly]) -> None:
        self.spanning = tuple(spanning)
        matrix, monomials = coefficient_matrix(self.spanning)
        if not self.spanning or not monomials:
            self.independent: tuple[int, ...] = ()
            self._rows: list[Monomial] = []
            self._inverse = Matrix(0, 0, [])
            return
        _, pivot_cols = matrix.rref()
        self.independent = tuple(pivot_cols)
        basis = matrix.extract(list(range(matrix.rows)), list(self.independent))
        _, pivot_rows = basis.T.rref()
        self._rows = [monomials[r] for r in pivot_rows]
        self._inverse = basis.extract(
            list(pivot_rows), list(range(basis.cols))
        ).inv()

    @property
    def basis(self) -> tuple[Poly, ...]:
        return tuple(self.spanning[i] for i in self.independent)

    @property
    def dimension(self) -> int:
        return len(self.independent)

    def coordinates(self, target: Poly) -> list[Rational]:
        """Coordinates of ``target`` over :attr:`basis`.

        Raises:
            SpanError: If ``target`` is not in the span.
        """
        if not self.independent:
            if target:
                raise SpanError(f"'{target}' is not in the zero span")
            return []
        terms = dict(target.items())
        vector = Matrix([to_sympy(terms.get(mono, 0)) for mono in self._rows])
        coords = [to_rational(x) for x in self._inverse * vector]
        rebuilt = Poly.zero()
        for coeff, poly in zip(coords, self.basis, strict=True):
            rebuilt = rebuilt + poly * coeff
        if rebuilt != target:
            raise SpanError(f"'{target}' is not in the span")
        return coords

    def contains(self, target: Poly) -> bool:
        try:
            self.coordinates(target)
        except SpanError:
            return False
        return True


def nullspace(matrix: Matrix) -> list[tuple[Rational, ...]]:
    return [tuple(to_rational(x) for x in vector) for vector in matrix.nullspace()]


def nullity(matrix: Matrix) -> int:
    return matrix.cols - matrix.rank()


def rational_sqrt(value: Rational) -> Rational | None:
    """Exact square root of a non-negative rational, or ``None``."""
    numerator, numerator_exact = integer_nthroot(int(value.numerator), 2)
    denominator, denominator_exact = integer_nthroot(int(value.denominator), 2)
    if numerator_exact and denominator_exact:
        return QQ(numerator, denominator)
    return None


class PsdClassification(MainModel):
    """Outcome of :func:`classify_psd`.

    ``pivots`` are the congruence pivots ``(index, d)`` and ``transform`` the
    matrix ``T`` with ``T m T^t`` diagonal on the pivot rows and zero elsewhere.
    """

    size: int
    rank: int
    psd: bool
    witness: tuple[Rational, ...] | None = None
    witness_value: Rational | None = None
    pivots: tuple[tuple[int, Rational], ...] = ()
    transform: tuple[tuple[Rational, ...], ...] = Field(default=())

    def factor(self) -> tuple[tuple[Rational, ...], ...] | None:
        """Exact ``V`` with ``V V^t = m`` if every pivot is a rational square."""
        roots = [rational_sqrt(d) for _, d in self.pivots]
        if any(root is None for root in roots):
            return None
        inverse = to_matrix(self.transform).inv() if self.size else Matrix(0, 0, [])
        return tuple(
            tuple(
                to_rational(inverse[r, index]) * root
                for (index, _), root in zip(self.pivots, roots, strict=True)
            )
            for r in range(self.size)
        )

    def numeric_factor(self) -> np.ndarray:
        """Floating ``V`` with ``V V^t = m`` up to rounding."""
        inverse = to_matrix(self.transform).inv() if self.size else Matrix(0, 0, [])
        columns = [
            np.array([float(inverse[r, index]) for r in range(self.size)])
            * np.sqrt(float(d))
            for index, d in self.pivots
        ]
        if not columns:
            return np.zeros((self.size, 0))
        return np.column_stack(columns)


def classify_psd(rows: Sequence[Sequence[Any]]) -> PsdClassification:
    """Exact congruence diagonalization with symmetric pivoting.

    At every step the largest positive diagonal entry of ``W = T m T^t`` is
    eliminated. A negative diagonal entry ``W_ii`` gives the witness ``T_i``;
    a zero diagonal with ``W_ij != 0`` gives ``T_i + t T_j`` with
    ``t = -sign(W_ij)``. Both witnesses satisfy ``v^t m v < 0``.
    """
    m = to_matrix(rows)
    n = m.rows
    if m != m.T:
        raise ValueError("matrix is not symmetric")
    transform = Matrix.eye(n)
    active = list(range(n))
    pivots: list[tuple[int, Rational]] = []

    def classification(witness=None, value=None) -> PsdClassification:
        return PsdClassification(
            size=n,
            rank=len(pivots),
            psd=witness is None,
            witness=witness,
            witness_value=value,
            pivots=tuple(pivots),
            transform=from_matrix(transform),
        )

    while active:
        w = transform * m * transform.T
        negative = [i for i in active if w[i, i] < 0]
        if negative:
            i = negative[0]
            vector = tuple(to_rational(x) for x in transform.row(i))
            return classification(vector, to_rational(w[i, i]))
        positive = [i for i in active if w[i, i] > 0]
        if not positive:
            for i in active:
                for j in active:
                    if i < j and w[i, j] != 0:
                        t = -1 if w[i, j] > 0 else 1
                        row = transform.row(i) + t * transform.row(j)
                        value = (row * m * row.T)[0, 0]
                        vector = tuple(to_rational(x) for x in row)
                        return classification(vector, to_rational(value))
            break
        p = max(positive, key=lambda i: (to_rational(w[i, i]), -i))
        d = w[p, p]
        for i in active:
            if i != p and w[i, p] != 0:
                transform[i, :] = transform.row(i) - (w[i, p] / d) * transform.row(p)
        active.remove(p)
        pivots.append((p, to_rational(d)))
    return classification()


def render_vector(values: Sequence[Rational]) -> str:
    return "(" + ", ".join(render_rational(to_rational(v)) for v in values) + ")"

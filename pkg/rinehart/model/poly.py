"""Exact multivariate polynomials over the rationals.

Every algebra in the package is carried by :class:`Poly`. Variables are
:class:`Var` instances of kind ``base`` (generators of ``A``) or ``fiber``
(basis elements of ``L`` viewed inside ``S_A[L]``). Coefficients are elements
of sympy's ``QQ`` field, so numerators and denominators are arbitrary
precision integers.
"""

import logging
from collections.abc import Iterable, Iterator, Mapping
from typing import Any, Literal

from pydantic import Field
from sympy import QQ
from sympy import Rational as SympyRational

from rinehart.model.base import MainModel

logger = logging.getLogger(__name__)

Rational = type(QQ(1))
"""Element type of the rational field ``QQ`` (gmpy2 ``mpq`` when available)."""

VarKind = Literal["base", "fiber"]


def to_rational(value: Any) -> Rational:
    """Convert ints, ``"3/2"`` strings, fractions and sympy rationals to ``QQ``."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        numerator, _, denominator = value.strip().partition("/")
        if denominator and int(denominator) == 0:
            raise ValueError(f"zero denominator in '{value.strip()}'")
        return QQ(int(numerator), int(denominator or 1))
    if isinstance(value, SympyRational):
        return QQ(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    return QQ.convert(value)


def render_rational(value: Rational) -> str:
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


class Var(MainModel):
    """A named polynomial variable."""

    name: str = Field(
        ...,
        pattern=r"^[A-Za-z_][A-Za-z0-9_]*$",
        description="Identifier, unique within a presentation.",
    )
    kind: VarKind = Field(
        default="base",
        description="'base' for generators of A, 'fiber' for L-basis elements.",
    )

    @classmethod
    def base(cls, name: str) -> "Var":
        return cls(name=name, kind="base")

    @classmethod
    def fiber(cls, name: str) -> "Var":
        return cls(name=name, kind="fiber")

    @property
    def is_fiber(self) -> bool:
        return self.kind == "fiber"

    @property
    def sort_key(self) -> tuple[bool, str]:
        """Base variables precede fiber variables, then by name."""
        return (self.kind == "fiber", self.name)

    @property
    def poly(self) -> "Poly":
        return Poly.var(self)

    def __hash__(self) -> int:
        return hash((self.name, self.kind))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Var):
            return NotImplemented
        return self.name == other.name and self.kind == other.kind

    def __lt__(self, other: "Var") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Var({self.name!r}, {self.kind!r})"


Monomial = tuple[tuple[Var, int], ...]
"""Sorted tuple of ``(variable, exponent)`` pairs, exponents positive."""

ONE: Monomial = ()


def _var_key(item: tuple[Var, int]) -> tuple[bool, str]:
    var = item[0]
    return (var.kind == "fiber", var.name)


def monomial(powers: Mapping[Var, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in powers.items() if e), key=_var_key))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for var, exp in b:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items(), key=_var_key))


def monomial_degree(mono: Monomial, fiber: bool | None = None) -> int:
    """Total degree; restricted to fiber (``True``) or base (``False``) vars."""
    return sum(
        exp for var, exp in mono if fiber is None or var.is_fiber == fiber
    )


def split_leading(mono: Monomial) -> tuple[Var, Monomial]:
    """Split off one power of the leading variable: ``m = var * rest``."""
    var, exp = mono[0]
    rest = mono[1:] if exp == 1 else ((var, exp - 1), *mono[1:])
    return var, rest


def _term_order(item: tuple[Monomial, Rational]) -> tuple:
    mono = item[0]
    return (
        -monomial_degree(mono),
        tuple((var.sort_key, -exp) for var, exp in mono),
    )


class Poly:
    """Immutable polynomial in canonical form.

    The term map never stores zero coefficients, so two polynomials are equal
    iff their term maps are identical. Iteration and rendering use the
    degree-lexicographic order with base variables before fiber variables.
    """

    __slots__ = ("_hash", "_terms")

    def __init__(self, terms: Mapping[Monomial, Any] | None = None) -> None:
        clean: dict[Monomial, Rational] = {}
        for mono, coeff in (terms or {}).items():
            value = to_rational(coeff)
            if value:
                clean[mono] = value
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[Monomial, Rational]) -> "Poly":
        """Adopt an already clean term map without copying."""
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "Poly":
        return cls._wrap({})

    @classmethod
    def const(cls, value: Any) -> "Poly":
        return cls({ONE: value})

    @classmethod
    def one(cls) -> "Poly":
        return cls.const(1)

    @classmethod
    def var(cls, var: Var) -> "Poly":
        return cls._wrap({((var, 1),): QQ(1)})

    @classmethod
    def from_monomial(cls, mono: Monomial, coeff: Any = 1) -> "Poly":
        return cls({mono: coeff})

    @classmethod
    def coerce(cls, value: Any) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, Var):
            return cls.var(value)
        return cls.const(value)

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Rational]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=_term_order)

    def items(self) -> Iterable[tuple[Monomial, Rational]]:
        """Terms in storage order (cheaper than :meth:`terms`)."""
        return self._terms.items()

    def __iter__(self) -> Iterator[tuple[Monomial, Rational]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> tuple[Var, ...]:
        found = {var for mono in self._terms for var, _ in mono}
        return tuple(sorted(found, key=lambda v: v.sort_key))

    @property
    def total_degree(self) -> int:
        """Total degree, ``-1`` for the zero polynomial."""
        return max((monomial_degree(m) for m in self._terms), default=-1)

    @property
    def fiber_degree(self) -> int:
        """Maximal fiber degree, ``-1`` for the zero polynomial."""
        return max(
            (monomial_degree(m, fiber=True) for m in self._terms), default=-1
        )

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    @property
    def is_base_only(self) -> bool:
        return self.fiber_degree <= 0

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m) for m in self._terms}) <= 1

    def constant_term(self) -> Rational:
        return self._terms.get(ONE, QQ(0))

    def coefficient(self, var: Var) -> "Poly":
        """Coefficient of the first power of ``var``.

        For ``p = sum_i a_i * e_i`` with ``a_i`` free of the ``e``'s this
        returns ``a_i``; higher powers of ``var`` are ignored.
        """
        result: dict[Monomial, Rational] = {}
        for mono, coeff in self._terms.items():
            powers = dict(mono)
            if powers.get(var) != 1:
                continue
            del powers[var]
            rest = monomial(powers)
            result[rest] = result.get(rest, QQ(0)) + coeff
        return Poly(result)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Any) -> "Poly":
        other = Poly.coerce(other)
        if not other._terms:
            return self
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = terms.get(mono, 0) + coeff
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return Poly._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly | Var):
            scalar = to_rational(other)
            if not scalar:
                return Poly.zero()
            return Poly._wrap({m: c * scalar for m, c in self._terms.items()})
        other = Poly.coerce(other)
        terms: dict[Monomial, Rational] = {}
        for mono_a, coeff_a in self._terms.items():
            for mono_b, coeff_b in other._terms.items():
                mono = monomial_mul(mono_a, mono_b)
                terms[mono] = terms.get(mono, 0) + coeff_a * coeff_b
        return Poly._wrap({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Poly":
        divisor = to_rational(other)
        if not divisor:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (QQ(1) / divisor)

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponents are not polynomial")
        result = Poly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def partial(self, var: Var) -> "Poly":
        """Formal partial derivative with respect to ``var``."""
        terms: dict[Monomial, Rational] = {}
        for mono, coeff in self._terms.items():
            powers = dict(mono)
            exp = powers.get(var)
            if not exp:
                continue
            powers[var] = exp - 1
            rest = monomial(powers)
            terms[rest] = terms.get(rest, 0) + coeff * exp
        return Poly._wrap({m: c for m, c in terms.items() if c})

    def fiber_degree_part(self, degree: int) -> "Poly":
        """Sum of the terms whose fiber degree is exactly ``degree``."""
        return Poly._wrap(
            {
                m: c
                for m, c in self._terms.items()
                if monomial_degree(m, fiber=True) == degree
            }
        )

    def degree_part(self, degree: int) -> "Poly":
        """Sum of the terms of total degree exactly ``degree``."""
        return Poly._wrap(
            {m: c for m, c in self._terms.items() if monomial_degree(m) == degree}
        )

    def substitute(self, mapping: Mapping[Var, Any]) -> "Poly":
        """Replace variables by polynomials; unmapped variables stay."""
        images = {var: Poly.coerce(value) for var, value in mapping.items()}
        result = Poly.zero()
        for mono, coeff in self._terms.items():
            term = Poly.const(coeff)
            for var, exp in mono:
                image = images.get(var)
                factor = Poly.var(var) if image is None else image
                term = term * (factor**exp)
            result = result + term
        return result

    def evaluate(self, values: Mapping[Var, Any]) -> Rational:
        """Evaluate at a rational point; every variable must be assigned."""
        total = QQ(0)
        for mono, coeff in self._terms.items():
            value = coeff
            for var, exp in mono:
                try:
                    value *= to_rational(values[var]) ** exp
                except KeyError as ex:
                    raise ValueError(f"no value for variable '{var}'") from ex
            total += value
        return total

    # -- comparison and rendering ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, int | Rational):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)!r})"


def render_monomial(mono: Monomial) -> str:
    return "*".join(
        var.name if exp == 1 else f"{var.name}^{exp}" for var, exp in mono
    )


def render(poly: Poly) -> str:
    """Canonical rendering, e.g. ``3/2*x^2*e1 + y``."""
    pieces: list[str] = []
    for mono, coeff in poly.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if not mono:
            body = render_rational(magnitude)
        elif magnitude == 1:
            body = render_monomial(mono)
        else:
            body = f"{render_rational(magnitude)}*{render_monomial(mono)}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces) or "0"


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def partial(p: Poly, v: Var) -> Poly:
    return p.partial(v)


def fiber_degree_part(p: Poly, d: int) -> Poly:
    return p.fiber_degree_part(d)


def variables(names: str | Iterable[str], kind: VarKind = "base") -> list[Var]:
    """``variables("x y z")`` -> three base variables."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return [Var(name=name, kind=kind) for name in names]

"""The tautological Poisson algebra ``S_A[L]`` of a Lie-Rinehart algebra.

The bracket is the unique biderivation with

* ``{e_j, e_k} = [e_j, e_k]``,
* ``{e_j, a} = rho(e_j)(a)`` and ``{a, e_j} = -rho(e_j)(a)``,
* ``{a, b} = 0`` for ``a, b`` in ``A``.

It is evaluated by splitting off the leading variable of a monomial and
applying the Leibniz rule, memoized on pairs of monomials.
"""

import functools
import itertools
import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from typing import Any

import numpy as np
from pydantic import Field, model_validator

from rinehart.errors import ContextMismatchError, PresentationError
from rinehart.model.base import MainModel
from rinehart.model.poly import ONE, Monomial, Poly, Var, split_leading
from rinehart.model.presentation import LieRinehartPresentation
from rinehart.model.report import CheckReport, CheckResult
from rinehart.sampling import make_rng, random_poly

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 64


class TautologicalAlgebra:
    """Bracket engine of ``S_A[L]`` for one presentation.

    The memo table only grows and every entry is a pure function of the
    presentation, so sharing an engine between callers is safe.
    """

    def __init__(self, pres: LieRinehartPresentation) -> None:
        self.pres = pres
        self._fiber_index = {e: j for j, e in enumerate(pres.l_basis)}
        self._base_index = {x: s for s, x in enumerate(pres.base_vars)}
        self._memo: dict[tuple[Monomial, Monomial], Poly] = {}

    def generator_bracket(self, x: Var, y: Var) -> Poly:
        pres = self.pres
        if x.is_fiber and y.is_fiber:
            return pres.structure_element(self._fiber_index[x], self._fiber_index[y])
        if x.is_fiber:
            return pres.anchor[self._fiber_index[x]][self._base_index[y]]
        if y.is_fiber:
            return -pres.anchor[self._fiber_index[y]][self._base_index[x]]
        return Poly.zero()

    def monomial_bracket(self, left: Monomial, right: Monomial) -> Poly:
        if left == ONE or right == ONE:
            return Poly.zero()
        key = (left, right)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if len(left) > 1 or left[0][1] > 1:
            # {x r, m} = x {r, m} + r {x, m}
            var, rest = split_leading(left)
            result = Poly.var(var) * self.monomial_bracket(
                rest, right
            ) + Poly.from_monomial(rest) * self.monomial_bracket(((var, 1),), right)
        elif len(right) > 1 or right[0][1] > 1:
            var, rest = split_leading(right)
            result = Poly.var(var) * self.monomial_bracket(
                left, rest
            ) + Poly.from_monomial(rest) * self.monomial_bracket(left, ((var, 1),))
        else:
            result = self.generator_bracket(left[0][0], right[0][0])
        self._memo[key] = result
        return result

    def bracket(self, u: Poly, v: Poly) -> Poly:
        terms: dict[Monomial, Any] = {}
        for mono_u, coeff_u in u.items():
            for mono_v, coeff_v in v.items():
                scale = coeff_u * coeff_v
                for mono, coeff in self.monomial_bracket(mono_u, mono_v).items():
                    terms[mono] = terms.get(mono, 0) + coeff * scale
        return Poly(terms)

    def check_membership(self, value: Poly) -> None:
        allowed = set(self.pres.base_vars) | set(self.pres.l_basis)
        stray = [var for var in value.variables() if var not in allowed]
        if stray:
            raise ContextMismatchError(
                f"variable '{stray[0]}' does not belong to {self.pres.name}"
            )


@functools.lru_cache(maxsize=64)
def algebra_of(pres: LieRinehartPresentation) -> TautologicalAlgebra:
    return TautologicalAlgebra(pres)


class PoissonElement(MainModel):
    """An element of ``S_A[L]`` tied to the presentation it lives over."""

    value: Poly = Field(..., description="Polynomial in base and fiber vars.")
    context: LieRinehartPresentation = Field(..., description="Owning algebra.")

    @model_validator(mode="after")
    def validate_variables(self) -> "PoissonElement":
        allowed = set(self.context.base_vars) | set(self.context.l_basis)
        stray = [var for var in self.value.variables() if var not in allowed]
        if stray:
            raise ValueError(
                f"variable '{stray[0]}' does not belong to {self.context.name}"
            )
        return self

    @classmethod
    def of(cls, context: LieRinehartPresentation, value: Any) -> "PoissonElement":
        return cls(value=Poly.coerce(value), context=context)

    @property
    def fiber_degree(self) -> int:
        return self.value.fiber_degree

    def fiber_part(self, degree: int) -> "PoissonElement":
        return PoissonElement(
            value=self.value.fiber_degree_part(degree), context=self.context
        )

    def _same_context(self, other: "PoissonElement") -> None:
        if other.context != self.context:
            raise ContextMismatchError(
                f"elements of {self.context.name} and {other.context.name} "
                "cannot be combined"
            )

    def __add__(self, other: "PoissonElement") -> "PoissonElement":
        self._same_context(other)
        return PoissonElement(value=self.value + other.value, context=self.context)

    def __mul__(self, other: "PoissonElement") -> "PoissonElement":
        self._same_context(other)
        return PoissonElement(value=self.value * other.value, context=self.context)

    def __str__(self) -> str:
        return str(self.value)


def bracket(u: PoissonElement, v: PoissonElement) -> PoissonElement:
    """The tautological Poisson bracket ``{u, v}``.

    Raises:
        ContextMismatchError: If ``u`` and ``v`` live over different algebras.
    """
    if u.context != v.context:
        raise ContextMismatchError(
            f"cannot bracket elements of {u.context.name} and {v.context.name}"
        )
    value = algebra_of(u.context).bracket(u.value, v.value)
    return PoissonElement(value=value, context=u.context)


def poly_bracket(pres: LieRinehartPresentation, u: Poly, v: Poly) -> Poly:
    engine = algebra_of(pres)
    engine.check_membership(u)
    engine.check_membership(v)
    return engine.bracket(u, v)


def random_elements(
    ctx: LieRinehartPresentation,
    rng: np.random.Generator,
    count: int,
    max_fiber_degree: int = 3,
    max_base_degree: int = 3,
) -> list[Poly]:
    """``count`` seeded random elements of bounded fiber and base degree."""
    return [
        random_poly(
            rng,
            ctx.base_vars,
            ctx.l_basis,
            max_base_degree=max_base_degree,
            max_fiber_degree=max_fiber_degree,
        )
        for _ in range(count)
    ]


def random_triples(
    ctx: LieRinehartPresentation, seed: int, samples: int = DEFAULT_SAMPLES
) -> list[tuple[Poly, Poly, Poly]]:
    elements = random_elements(ctx, make_rng(seed), 3 * samples)
    return [tuple(elements[3 * n : 3 * n + 3]) for n in range(samples)]


def _as_poly(value: PoissonElement | Poly) -> Poly:
    return value.value if isinstance(value, PoissonElement) else value


SAMPLING_NOTE = (
    "exact arithmetic: a single failing sample is a proof, "
    "passing samples accumulate confidence only"
)


def check_jacobi_sampled(
    ctx: LieRinehartPresentation,
    samples: Iterable[Sequence[PoissonElement | Poly]],
) -> CheckResult:
    """Cyclic sum ``{u,{v,w}} + {v,{w,u}} + {w,{u,v}}`` on every sample."""
    engine = algebra_of(ctx)
    count = 0
    for n, triple in enumerate(samples):
        u, v, w = (_as_poly(x) for x in triple)
        for x in (u, v, w):
            engine.check_membership(x)
        defect = (
            engine.bracket(u, engine.bracket(v, w))
            + engine.bracket(v, engine.bracket(w, u))
            + engine.bracket(w, engine.bracket(u, v))
        )
        count += 1
        if defect:
            logger.debug("Jacobi witness at sample %d: %s", n, defect)
            return CheckResult.failed(
                "jacobi_sampled",
                f"Jacobi identity fails; {SAMPLING_NOTE}",
                witness=[str(u), str(v), str(w), str(defect)],
                sample=n,
            )
    return CheckResult.ok(
        "jacobi_sampled",
        f"Jacobi identity holds on {count} triples; {SAMPLING_NOTE}",
        samples=count,
    )


def _check_antisymmetry(engine, pairs) -> CheckResult:
    for n, (u, v) in enumerate(pairs):
        defect = engine.bracket(u, v) + engine.bracket(v, u)
        if defect:
            return CheckResult.failed(
                "antisymmetry",
                "Bracket is not antisymmetric",
                witness=[str(u), str(v), str(defect)],
                sample=n,
            )
    return CheckResult.ok("antisymmetry", "{u,v} + {v,u} = 0 on all samples")


def _check_leibniz(engine, triples) -> CheckResult:
    for n, (u, v, w) in enumerate(triples):
        defect = engine.bracket(u, v * w) - (
            engine.bracket(u, v) * w + v * engine.bracket(u, w)
        )
        if defect:
            return CheckResult.failed(
                "leibniz",
                "Bracket is not a derivation in its second argument",
                witness=[str(u), str(v), str(w), str(defect)],
                sample=n,
            )
    return CheckResult.ok("leibniz", "{u,vw} = {u,v}w + v{u,w} on all samples")


def _check_grading(engine, pairs) -> CheckResult:
    for n, (u, v) in enumerate(pairs):
        value = engine.bracket(u, v)
        if u.is_base_only and v.is_base_only:
            bad = bool(value)
        else:
            bad = value.fiber_degree > u.fiber_degree + v.fiber_degree - 1
        if bad:
            return CheckResult.failed(
                "grading",
                "Bracket raises the fiber degree",
                witness=[str(u), str(v), str(value)],
                sample=n,
            )
    return CheckResult.ok(
        "grading", "fiber degree of {u,v} is at most deg u + deg v - 1"
    )


def check_bracket_laws(
    ctx: LieRinehartPresentation, seed: int = 0, samples: int = DEFAULT_SAMPLES
) -> CheckReport:
    """Antisymmetry, Leibniz, grading and Jacobi on seeded random samples."""
    engine = algebra_of(ctx)
    triples = random_triples(ctx, seed, samples)
    pairs = [(u, v) for u, v, _ in triples]
    logger.debug("▶ Sampling %d triples over %s (seed %d)", samples, ctx.name, seed)
    return CheckReport(
        checks=[
            _check_antisymmetry(engine, pairs),
            _check_leibniz(engine, triples),
            _check_grading(engine, pairs),
            check_jacobi_sampled(ctx, triples),
        ]
    )


def _generator(ctx: LieRinehartPresentation, gen: Var | str) -> Var:
    symbols = ctx.symbols()
    name = gen if isinstance(gen, str) else gen.name
    if name not in symbols:
        raise PresentationError(f"'{name}' is not a generator of {ctx.name}")
    return symbols[name]


def two_form(
    ctx: LieRinehartPresentation, gen1: Var | str, gen2: Var | str
) -> PoissonElement:
    """``pi(dx, dy)`` on generators: ``[a,b]``, ``alpha(b)`` or ``0``."""
    x, y = _generator(ctx, gen1), _generator(ctx, gen2)
    value = algebra_of(ctx).generator_bracket(x, y)
    return PoissonElement(value=value, context=ctx)


def poisson_potential(ctx: LieRinehartPresentation, f: Poly) -> Poly:
    """``theta(df) = sum_j e_j * df/de_j``, so ``theta(d alpha) = alpha``."""
    result = Poly.zero()
    for e in ctx.l_basis:
        derivative = f.partial(e)
        if derivative:
            result = result + Poly.var(e) * derivative
    return result


def potential_differential(ctx: LieRinehartPresentation, x: Var, y: Var) -> Poly:
    """``(d theta)(dx, dy) = {x, theta dy} - {y, theta dx} - theta(d{x, y})``."""
    engine = algebra_of(ctx)
    return (
        engine.bracket(x.poly, poisson_potential(ctx, y.poly))
        - engine.bracket(y.poly, poisson_potential(ctx, x.poly))
        - poisson_potential(ctx, engine.generator_bracket(x, y))
    )


def check_potential(ctx: LieRinehartPresentation) -> CheckResult:
    """Check ``d theta = pi`` on every ordered pair of generators."""
    generators = (*ctx.base_vars, *ctx.l_basis)
    engine = algebra_of(ctx)
    pairs = list(itertools.combinations(generators, 2))
    for x, y in pairs:
        lhs = potential_differential(ctx, x, y)
        rhs = engine.generator_bracket(x, y)
        if lhs != rhs:
            return CheckResult.failed(
                "potential",
                "d(theta) differs from the Poisson 2-form",
                witness=[f"({x}, {y})", str(lhs), str(rhs)],
            )
    return CheckResult.ok(
        "potential",
        f"theta is a Poisson potential on {len(pairs)} generator pairs",
        pairs=len(pairs),
    )


def reconstruct(ctx: LieRinehartPresentation) -> LieRinehartPresentation:
    """Read anchor and structure functions back off the tautological bracket."""
    engine = algebra_of(ctx)
    anchor = tuple(
        tuple(engine.bracket(e.poly, x.poly) for x in ctx.base_vars)
        for e in ctx.l_basis
    )
    structure = tuple(
        tuple(
            tuple(
                engine.bracket(e_j.poly, e_k.poly).fiber_degree_part(1).coefficient(e_i)
                for e_i in ctx.l_basis
            )
            for e_k in ctx.l_basis
        )
        for e_j in ctx.l_basis
    )
    return LieRinehartPresentation(
        name=ctx.name,
        base_vars=ctx.base_vars,
        l_basis=ctx.l_basis,
        anchor=anchor,
        structure=structure,
        split=ctx.split,
    )


def induced_map(
    source: LieRinehartPresentation,
    target: LieRinehartPresentation,
    phi: Mapping[Var, Var],
) -> Callable[[Poly], Poly]:
    """``S_A[L1] -> S_A[L2]`` induced by a basis-to-basis morphism ``phi``.

    Raises:
        PresentationError: If ``phi`` does not commute with anchors and brackets.
    """
    if source.base_vars != target.base_vars:
        raise PresentationError("source and target must share the base algebra")
    missing = [e for e in source.l_basis if e not in phi]
    if missing:
        raise PresentationError(f"no image for basis element '{missing[0]}'")
    images = {e: Poly.var(phi[e]) for e in source.l_basis}

    def apply(u: Poly) -> Poly:
        return u.substitute(images)

    for j, e_j in enumerate(source.l_basis):
        k = target.basis_index(phi[e_j])
        if source.anchor[j] != target.anchor[k]:
            raise PresentationError(f"phi does not commute with the anchor at '{e_j}'")
    for j, k in itertools.combinations(range(source.dim), 2):
        lhs = apply(source.structure_element(j, k))
        rhs = poly_bracket(target, images[source.l_basis[j]], images[source.l_basis[k]])
        if lhs != rhs:
            raise PresentationError(
                f"phi does not preserve [{source.l_basis[j]}, {source.l_basis[k]}]"
            )
    return apply

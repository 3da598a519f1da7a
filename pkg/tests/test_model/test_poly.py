import pytest
from hypothesis import given
from hypothesis import strategies as st

from rinehart.model.poly import Poly, Var, render_rational, to_rational, variables

x, y = variables("x y")
e1, e2 = variables("e1 e2", kind="fiber")
X, Y, E1, E2 = (v.poly for v in (x, y, e1, e2))
VARS = [x, y, e1, e2]

monomials = st.dictionaries(st.sampled_from(VARS), st.integers(1, 3), max_size=3)
polys = st.lists(
    st.tuples(monomials, st.integers(-5, 5)), max_size=4
).map(
    lambda terms: sum(
        (
            Poly.const(c) * _product(powers)
            for powers, c in terms
        ),
        Poly.zero(),
    )
)


def _product(powers: dict[Var, int]) -> Poly:
    result = Poly.one()
    for var, exp in powers.items():
        result = result * var.poly**exp
    return result


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero()


@given(polys, polys)
def test_partial_is_a_derivation(p, q):
    for var in VARS:
        assert (p * q).partial(var) == p.partial(var) * q + p * q.partial(var)


@given(polys)
def test_fiber_degree_parts_sum_to_poly(p):
    parts = [p.fiber_degree_part(d) for d in range(max(p.fiber_degree, 0) + 1)]
    assert sum(parts, Poly.zero()) == p


@pytest.mark.parametrize(
    "poly,expected",
    [
        (Poly.zero(), "0"),
        (Poly.const(-3), "-3"),
        (Poly.const("3/2") * x, "3/2*x"),
        (4 * X * e1, "4*x*e1"),
        (e1.poly * x.poly, "x*e1"),
        (x.poly**2 - y.poly + 1, "x^2 - y + 1"),
        (e2.poly - e1.poly * y.poly**2, "-y^2*e1 + e2"),
    ],
)
def test_render(poly, expected):
    assert str(poly) == expected


@pytest.mark.parametrize(
    "value,expected",
    [(3, "3"), ("3/2", "3/2"), ("6/4", "3/2"), ("-2/1", "-2"), (" 7 ", "7")],
)
def test_to_rational(value, expected):
    assert render_rational(to_rational(value)) == expected


def test_booleans_are_not_coefficients():
    with pytest.raises(TypeError):
        to_rational(True)


@pytest.mark.parametrize("value", ["1/0", "-3/0", "2/ 0"])
def test_zero_denominator(value):
    with pytest.raises(ValueError, match="zero denominator"):
        to_rational(value)


def test_zero_coefficients_are_dropped():
    assert len(Poly({((x, 1),): 0, (): 2})) == 1
    assert Poly({((x, 1),): 0}) == 0


def test_coefficient_ignores_higher_powers():
    p = 3 * X * E1 + E1**2 + Y * E2
    assert p.coefficient(e1) == 3 * X
    assert p.coefficient(e2) == Y


def test_degrees():
    p = X**3 + X * E1
    assert p.total_degree == 3
    assert p.fiber_degree == 1
    assert Poly.zero().total_degree == -1
    assert not p.is_homogeneous()
    assert (X * E1 + Y * E2).is_homogeneous()


def test_substitute_and_evaluate():
    p = X**2 + X * Y
    assert p.substitute({x: Y + 1}) == (Y + 1) ** 2 + (Y + 1) * Y
    assert p.evaluate({x: 2, y: "1/2"}) == to_rational(5)
    with pytest.raises(ValueError, match="no value for variable 'y'"):
        p.evaluate({x: 1})


def test_power_and_division():
    assert (X + 1) ** 0 == Poly.one()
    assert ((X + 1) ** 2).total_degree == 2
    assert str(X / 2) == "1/2*x"
    with pytest.raises(ValueError):
        X ** -1
    with pytest.raises(ZeroDivisionError):
        X / 0


def test_variables_and_kinds():
    assert [v.name for v in variables("a, b c")] == ["a", "b", "c"]
    assert Var.base("x") != Var.fiber("x")
    assert (X * E1 + Y).variables() == (x, y, e1)

import pytest

from rinehart.errors import ContextMismatchError, PresentationError
from rinehart.model.poly import Poly
from rinehart.extensions import build_total
from rinehart.presets import EXTENSIONS, PRESENTATIONS, so3, vect_model
from rinehart.tautological import (
    PoissonElement,
    bracket,
    check_bracket_laws,
    check_jacobi_sampled,
    check_potential,
    induced_map,
    poisson_potential,
    poly_bracket,
    random_triples,
    reconstruct,
    two_form,
)


@pytest.fixture
def vect():
    pres = vect_model()
    return pres, pres.base_vars[0].poly, pres.l_basis[0].poly


@pytest.mark.parametrize(
    "left,right,expected",
    [
        ("e", "x", "1"),
        ("x", "e", "-1"),
        ("x", "x^2", "0"),
        ("e", "e", "0"),
        ("e^2", "x^2", "4*x*e"),
        ("x*e", "e", "-e"),
        ("e^2", "x*e", "2*e^2"),
    ],
)
def test_vect_brackets(vect, left, right, expected):
    pres, x, e = vect
    env = {"x": x, "e": e}

    def build(text: str) -> Poly:
        factors = []
        for factor in text.split("*"):
            name, _, power = factor.partition("^")
            factors.append(env[name] ** int(power or 1))
        result = Poly.one()
        for factor in factors:
            result = result * factor
        return result

    assert str(poly_bracket(pres, build(left), build(right))) == expected


def test_so3_generator_brackets():
    pres = so3()
    e1, e2, e3 = (e.poly for e in pres.l_basis)
    assert poly_bracket(pres, e1, e2) == e3
    assert poly_bracket(pres, e3, e1) == e2
    # the Casimir e1^2 + e2^2 + e3^2 is central
    casimir = e1**2 + e2**2 + e3**2
    assert all(poly_bracket(pres, e, casimir) == 0 for e in (e1, e2, e3))


def test_poisson_elements_share_context(vect):
    pres, x, e = vect
    u = PoissonElement.of(pres, e * e)
    v = PoissonElement.of(pres, x)
    assert str(bracket(u, v)) == "2*e"
    assert bracket(u, v).fiber_degree == 1
    other = PoissonElement.of(so3(), Poly.one())
    with pytest.raises(ContextMismatchError):
        bracket(u, other)
    with pytest.raises(ContextMismatchError):
        u + other


def test_stray_variables_are_rejected(vect):
    pres, _, _ = vect
    stranger = so3().basis_element(0)
    with pytest.raises(ValueError, match="does not belong to vect"):
        PoissonElement.of(pres, stranger)
    with pytest.raises(ContextMismatchError):
        poly_bracket(pres, stranger, stranger)


@pytest.mark.parametrize("name", ["vect", "so3"])
def test_bracket_laws_hold(name):
    report = check_bracket_laws(PRESENTATIONS[name](), seed=7, samples=6)
    assert report.ok
    assert [c.name for c in report] == [
        "antisymmetry",
        "leibniz",
        "grading",
        "jacobi_sampled",
    ]
    assert report["jacobi_sampled"].details["samples"] == 6


def test_sampled_jacobi_finds_corruption():
    pres = PRESENTATIONS["so3-corrupted"]()
    e1, e2, e3 = (e.poly for e in pres.l_basis)
    check = check_jacobi_sampled(pres, [(e1, e2, e3)])
    assert not check.passed
    assert check.witness[-1] == "e3"
    assert "single failing sample is a proof" in check.message


def test_random_triples_are_seeded():
    pres = vect_model()
    assert random_triples(pres, 11, 5) == random_triples(pres, 11, 5)
    assert len(random_triples(pres, 11, 5)) == 5


def test_two_form_on_generators(vect):
    pres, _, _ = vect
    assert str(two_form(pres, "e", "x")) == "1"
    assert str(two_form(pres, "x", "x")) == "0"
    with pytest.raises(PresentationError, match="'y' is not a generator"):
        two_form(pres, "y", "x")


def test_potential_is_euler_operator(vect):
    pres, x, e = vect
    assert poisson_potential(pres, x**2 * e**3) == 3 * x**2 * e**3
    assert poisson_potential(pres, x) == 0


@pytest.mark.parametrize("name", ["vect", "so3", "anchor-mutant"])
def test_potential_check(name):
    check = check_potential(PRESENTATIONS[name]())
    assert check.passed


@pytest.mark.parametrize("name", list(PRESENTATIONS))
def test_reconstruct_roundtrip(name):
    pres = PRESENTATIONS[name]()
    assert reconstruct(pres) == pres


def test_induced_map_identity():
    pres = so3()
    apply = induced_map(pres, pres, {e: e for e in pres.l_basis})
    e1 = pres.basis_element(0)
    assert apply(e1 * e1) == e1 * e1


def test_induced_map_rejects_non_morphism():
    pres = so3()
    e1, e2, e3 = pres.l_basis
    with pytest.raises(PresentationError):
        induced_map(pres, pres, {e1: e2, e2: e1, e3: e3})


@pytest.mark.parametrize("name", ["heisenberg", "direct-product", "atiyah"])
def test_extension_totals_satisfy_bracket_laws(name):
    total = build_total(EXTENSIONS[name]())
    report = check_bracket_laws(total, seed=0, samples=64)
    assert report.ok, [c.witness for c in report if not c.passed]
    assert report["jacobi_sampled"].details["samples"] == 64
    assert check_potential(total).passed


def test_induced_map_cyclic_automorphism():
    pres = so3()
    e1, e2, e3 = pres.l_basis
    apply = induced_map(pres, pres, {e1: e2, e2: e3, e3: e1})
    assert apply(e1.poly) == e2.poly
    assert apply(e1.poly * e3.poly) == e2.poly * e1.poly
    for u, v, _ in random_triples(pres, 5, 32):
        assert apply(poly_bracket(pres, u, v)) == poly_bracket(pres, apply(u), apply(v))

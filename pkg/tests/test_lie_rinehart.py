import pytest

from rinehart.errors import FiberVariableError, PresentationError
from rinehart.lie_rinehart import (
    apply_anchor,
    check_axioms,
    check_leibniz_rule,
    check_pi_sharp_morphism,
    kaehler_bracket,
    lie_bracket,
)
from rinehart.presets import (
    PRESENTATIONS,
    anchor_mutant,
    corrupted_lie_poisson,
    so3_corrupted,
    so3_lie_poisson,
    symplectic_plane,
    vect_model,
)


@pytest.mark.parametrize("name", ["vect", "so3"])
def test_presets_satisfy_axioms(name):
    report = check_axioms(PRESENTATIONS[name]())
    assert report.ok
    assert report.jacobi_ok and report.anchor_morphism_ok
    assert report.witnesses == {}


def test_corrupted_so3_jacobi_witness():
    report = check_axioms(so3_corrupted())
    assert not report.jacobi_ok
    assert report.anchor_morphism_ok
    assert report["jacobi"].witness == ["(e1, e2, e3)", "e3"]
    assert report["jacobi"].details["indices"] == [0, 1, 2]


def test_anchor_mutant_witness():
    report = check_axioms(anchor_mutant())
    assert report.jacobi_ok
    assert not report.anchor_morphism_ok
    witness = report.witnesses["anchor_morphism"]
    assert witness[0] == "(e1, e2)"
    assert "d/dy" in witness[1]


def test_extended_bracket_obeys_leibniz():
    pres = vect_model()
    x, e = pres.base_vars[0].poly, pres.l_basis[0].poly
    assert lie_bracket(pres, e, x * e) == e
    assert lie_bracket(pres, x * e, e) == -e
    assert lie_bracket(pres, x**2 * e, x * e) == -(x**2) * e


@pytest.mark.parametrize("name", ["vect", "so3", "anchor-mutant"])
def test_leibniz_rule_on_random_coefficients(name):
    check = check_leibniz_rule(PRESENTATIONS[name](), seed=3, samples=4)
    assert check.passed


def test_apply_anchor():
    pres = anchor_mutant()
    x, y = (v.poly for v in pres.base_vars)
    assert apply_anchor(pres, 1, x * y**2) == 2 * x**2 * y
    with pytest.raises(FiberVariableError):
        apply_anchor(pres, 0, pres.basis_element(0))


def test_bracket_rejects_non_linear_elements():
    pres = vect_model()
    e = pres.basis_element(0)
    with pytest.raises(PresentationError, match="is not an element of"):
        lie_bracket(pres, e * e, e)


@pytest.mark.parametrize("factory", [symplectic_plane, so3_lie_poisson])
def test_pi_sharp_is_a_morphism(factory):
    report = check_pi_sharp_morphism(factory())
    assert report.ok, [c.witness for c in report if not c.passed]


def test_pi_sharp_fails_for_non_poisson_table():
    report = check_pi_sharp_morphism(corrupted_lie_poisson())
    assert not report.ok


def test_kaehler_bracket_of_differentials():
    kp = symplectic_plane()
    q, p = (g.poly for g in kp.generators)
    one = q**0
    # [dq, dp] = d{q, p} = d1 = 0
    assert kaehler_bracket(kp, one, q, one, p) == 0
    # [q dq, dp] = q{q, 1} dp + {q, p} dq + q d{q, p} = dq
    dq = kp.differential(q)
    assert kaehler_bracket(kp, q, q, one, p) == dq

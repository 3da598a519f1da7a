import pytest

from rinehart.model.poly import Poly, Var, variables
from rinehart.model.presentation import Derivation, LieRinehartPresentation
from rinehart.presets import so3, so3_lie_poisson, symplectic_plane, vect_model

x, y = variables("x y")
e1, e2 = variables("e1 e2", kind="fiber")


def test_from_brackets_fills_antisymmetry():
    pres = so3()
    assert pres.dim == 3
    assert str(pres.structure_element(0, 1)) == "e3"
    assert str(pres.structure_element(1, 0)) == "-e3"
    assert pres.structure_element(2, 2) == Poly.zero()


def test_symbols_and_basis_index():
    pres = vect_model()
    assert set(pres.symbols()) == {"x", "e"}
    assert pres.basis_index("e") == 0
    with pytest.raises(KeyError):
        pres.basis_index("f")


def test_anchor_of_is_a_derivation():
    pres = vect_model()
    d = pres.anchor_of(0)
    assert d(x.poly**3) == 3 * x.poly**2
    assert str(d) == "(1)*d/dx"


@pytest.mark.parametrize(
    "kwargs,message",
    [
        ({"base_vars": [e1], "l_basis": [e2]}, "base variables must have kind"),
        ({"base_vars": [x], "l_basis": [x]}, "basis variables must have kind"),
        (
            {"base_vars": [x], "l_basis": [e1], "anchors": {e1: {x: e2.poly}}},
            "must be over base vars",
        ),
        (
            {"base_vars": [x, Var.base("e1")], "l_basis": [e1]},
            "duplicate variable names: e1",
        ),
        ({"base_vars": [], "l_basis": [e1], "split": 2}, "split must lie in"),
    ],
)
def test_invalid_presentations(kwargs, message):
    with pytest.raises(ValueError, match=message):
        LieRinehartPresentation.from_brackets(**kwargs)


def test_bracket_values_must_be_linear():
    with pytest.raises(ValueError, match="must be linear in the basis"):
        LieRinehartPresentation.from_brackets(
            [x], [e1, e2], brackets={(e1, e2): e1.poly * e2.poly}
        )


def test_derivation_commutator():
    d1 = Derivation(images={x: Poly.one()})
    d2 = Derivation(images={y: x.poly})
    assert d1.commutator(d2) == Derivation(images={y: Poly.one()})
    assert d1 - d1 == Derivation()


def test_kaehler_presentation_of_symplectic_plane():
    kp = symplectic_plane()
    q, p = kp.generators
    assert kp.poisson_bracket(q.poly**2, p.poly) == 2 * q.poly
    lr = kp.to_lie_rinehart()
    assert [e.name for e in lr.l_basis] == ["dq", "dp"]
    assert lr.anchor_of(0)(p.poly) == Poly.one()


def test_lie_poisson_table_is_antisymmetric():
    kp = so3_lie_poisson()
    x_, y_, z_ = (g.poly for g in kp.generators)
    assert kp.poisson_bracket(x_, y_) == z_
    assert kp.poisson_bracket(y_, x_) == -z_

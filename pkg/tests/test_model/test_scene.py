import pytest

from rinehart.model.poly import render_rational, to_rational
from rinehart.model.scene import (
    DualPairScene,
    QuadraticInvariant,
    SpElement,
    SymMatrixQ,
    canonical_j,
    scene_presentation,
)
from rinehart.presets import b2_mutant_pair, so3_so2_pair


def test_scene_variables():
    scene = DualPairScene(s=2, ell=2)
    assert [v.name for v in scene.q_vars] == ["q1_1", "q1_2", "q2_1", "q2_2"]
    assert all(v.is_fiber for v in scene.p_vars)
    assert scene.label == "dual-pair(s=2, l=2)"
    assert DualPairScene(s=3, ell=1, name="rotations").label == "rotations"


def test_cotangent_anchor_is_minus_d_dq():
    pres = scene_presentation(1, 1)
    (q,), (p,) = pres.base_vars, pres.l_basis
    assert pres.anchor_of(0)(q.poly) == -1
    assert pres.structure_element(0, 0) == 0
    assert p.name == "p1_1"


def test_scene_point():
    scene = DualPairScene(s=1, ell=2)
    values = scene.point(["1", "3/2"])
    assert values[scene.q(2, 1)] == to_rational("3/2")
    with pytest.raises(ValueError, match="expected 4 coordinates, got 2"):
        scene.point([1, 2], momenta=True)


@pytest.mark.parametrize(
    "kind,j,k,label,rendered",
    [
        ("QQ", 1, 2, "q1.q2", "q1_1*q2_1 + q1_2*q2_2"),
        ("QP", 2, 1, "q2.p1", "q2_1*p1_1 + q2_2*p1_2"),
        ("PP", 1, 1, "p1.p1", "p1_1^2 + p1_2^2"),
    ],
)
def test_quadratic_invariants(kind, j, k, label, rendered):
    invariant = QuadraticInvariant.build(DualPairScene(s=2, ell=2), kind, j, k)
    assert invariant.label == label
    assert str(invariant.value) == rendered


def test_symmetric_kinds_need_ordered_indices():
    with pytest.raises(ValueError, match="need j <= k"):
        QuadraticInvariant.build(DualPairScene(s=1, ell=2), "PP", 2, 1)


def test_sym_matrix_validation():
    assert SymMatrixQ(entries=[["1", 0], [0, "1/2"]]).render() == [["1", "0"], ["0", "1/2"]]
    with pytest.raises(ValueError, match="not symmetric"):
        SymMatrixQ(entries=[[1, 2], [3, 4]])
    with pytest.raises(ValueError, match="must be square"):
        SymMatrixQ(entries=[[1, 2]])


def test_sp_elements():
    j = canonical_j(1)
    assert SpElement(entries=[[1, 0], [0, -1]]).ell == 1
    assert [[render_rational(x) for x in row] for row in j] == [["0", "1"], ["-1", "0"]]
    with pytest.raises(ValueError, match="M J is not symmetric"):
        SpElement(entries=[[1, 0], [0, 1]])
    h = SpElement(entries=[[1, 0], [0, -1]])
    e = SpElement(entries=[[0, 1], [0, 0]])
    assert h.bracket(e).entries == e.scaled(2).entries


def test_reductive_pair_action():
    pair = so3_so2_pair()
    assert pair.h_basis == (2,)
    assert pair.q_basis == (0, 1)
    ((row1, row2),) = pair.h_action_on_q
    # [L3, L1] = L2 and [L3, L2] = -L1
    assert [render_rational(x) for x in row1] == ["0", "-1"]
    assert [render_rational(x) for x in row2] == ["1", "0"]


def test_reductive_pair_needs_partition():
    pair = b2_mutant_pair()
    with pytest.raises(ValueError, match="partition the basis"):
        pair.model_validate(pair.model_dump() | {"h_basis": (0, 1)})

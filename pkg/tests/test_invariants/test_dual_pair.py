import itertools

import pytest

from rinehart.invariants import (
    angular_momenta,
    check_invariance,
    closure_table,
    invariant_generators,
    kinetic_energy,
    sal_deficiency_report,
    verify_sp_isomorphism,
)
from rinehart.invariants.dual_pair import generated_span
from rinehart.model.scene import DualPairScene
from rinehart.presets import so3

GRID = list(itertools.product((1, 2, 3), repeat=2))


@pytest.mark.parametrize("ell,count", [(1, 3), (2, 10), (3, 21)])
def test_generator_count(ell, count):
    generators = invariant_generators(DualPairScene(s=1, ell=ell))
    assert len(generators) == count == ell * (2 * ell + 1)


def test_generator_order():
    labels = [g.label for g in invariant_generators(DualPairScene(s=2, ell=1))]
    assert labels == ["q1.q1", "q1.p1", "p1.p1"]


@pytest.mark.parametrize("s,ell", [(1, 1), (2, 2), (3, 1)])
def test_invariance(s, ell):
    report = check_invariance(DualPairScene(s=s, ell=ell))
    assert report.ok
    assert [c.name for c in report] == ["so_invariance", "reflection_invariance"]


def test_angular_momenta_and_kinetic_energy():
    scene = DualPairScene(s=2, ell=1)
    assert {k: str(v) for k, v in angular_momenta(scene).items()} == {
        "L12": "q1_1*p1_2 - q1_2*p1_1"
    }
    assert list(angular_momenta(DualPairScene(s=3, ell=2))) == ["L12", "L13", "L23"]
    assert str(kinetic_energy(scene)) == "p1_1^2 + p1_2^2"


@pytest.mark.parametrize("s", [1, 2])
def test_closure_table_l1(s):
    table = closure_table(DualPairScene(s=s, ell=1))
    assert table.dimension == 3
    assert table.lookup("q1.q1", "p1.p1") == "4*q1.p1"
    assert table.lookup("q1.p1", "q1.q1") == "-2*q1.q1"
    assert table.lookup("q1.q1", "q1.p1") == "2*q1.q1"
    assert table.lookup("p1.p1", "p1.p1") == "0"
    assert table.is_antisymmetric()
    assert table.jacobi_defect() is None


@pytest.mark.parametrize("s,ell", GRID)
def test_closure_dimension(s, ell):
    table = closure_table(DualPairScene(s=s, ell=ell))
    assert table.dimension == ell * (2 * ell + 1)
    assert table.is_antisymmetric()
    assert table.jacobi_defect() is None


def test_closure_table_rendering_is_json_ready():
    rendered = closure_table(DualPairScene(s=2, ell=2)).rendered()
    assert len(rendered) == 10
    assert all(isinstance(v, str) for row in rendered.values() for v in row.values())


@pytest.mark.parametrize("s,ell", GRID)
def test_sp_isomorphism(s, ell):
    report, images = verify_sp_isomorphism(DualPairScene(s=s, ell=ell))
    assert report.ok, [c.witness for c in report if not c.passed]
    assert report["bijective"].details["rank"] == ell * (2 * ell + 1)
    generators = invariant_generators(DualPairScene(s=s, ell=ell))
    assert set(images) == {g.label for g in generators}


def test_qp_invariants_map_to_gl_block():
    _, images = verify_sp_isomorphism(DualPairScene(s=1, ell=1))
    assert images["q1.p1"].render() == [["1", "0"], ["0", "-1"]]
    assert images["p1.p1"].render() == [["0", "2"], ["0", "0"]]
    assert images["q1.q1"].render() == [["0", "0"], ["-2", "0"]]


@pytest.mark.parametrize("s,ell,dimension", [(1, 1, 2), (2, 2, 7)])
def test_deficiency_report(s, ell, dimension):
    report = sal_deficiency_report(DualPairScene(s=s, ell=ell))
    assert report.ok
    pp = report["pp_missing"]
    assert pp.details["degree_two_dimension"] == dimension
    assert len(pp.details["missing"]) == ell * (ell + 1) // 2
    assert report["kinetic_energy"].passed


@pytest.mark.parametrize("s,ell", [(1, 1), (2, 2)])
def test_deficiency_span_closes_after_one_level(s, ell):
    pp = sal_deficiency_report(DualPairScene(s=s, ell=ell))["pp_missing"]
    assert pp.details["bracket_levels"] == 1


def test_generated_span_iterates_brackets():
    pres = so3()
    e1, e2, _ = (e.poly for e in pres.l_basis)
    solver, levels = generated_span(pres, [e1, e2])
    assert solver.dimension == 3
    assert levels == 2


def test_generated_span_of_a_single_element():
    pres = so3()
    solver, levels = generated_span(pres, [pres.l_basis[0].poly])
    assert (solver.dimension, levels) == (1, 1)

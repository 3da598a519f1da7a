import itertools

import pytest

from rinehart.errors import ExtensionError
from rinehart.extensions import (
    build_total,
    check_ideal,
    curvature_of,
    reconstruct_extension,
    theorem_identities_report,
)
from rinehart.lie_rinehart import check_axioms
from rinehart.model.extension import ConnectionMap, ExtensionData
from rinehart.model.poly import Poly, Var, render_rational
from rinehart.presets import (
    EXTENSIONS,
    atiyah_connection_shifts,
    atiyah_extension,
    heisenberg_extension,
    non_closed_extension,
    so3,
)
from rinehart.scenarios.algebra import same_presentation
from rinehart.tautological import poly_bracket


def _rendered(tensor_entry) -> list[str]:
    return [str(p) for p in tensor_entry]


def test_heisenberg_total_algebra():
    total = build_total(heisenberg_extension())
    assert [e.name for e in total.l_basis] == ["c", "e1", "e2"]
    assert total.split == 1
    assert str(total.structure_element(1, 2)) == "c"
    assert check_axioms(total).ok
    assert check_ideal(total).passed


@pytest.mark.parametrize("name", ["heisenberg", "direct-product", "atiyah"])
def test_identities_hold_on_presets(name):
    report = theorem_identities_report(EXTENSIONS[name](), seed=1, samples=4)
    failures = {c.name: c.witness for c in report if not c.passed}
    assert report.ok, failures
    assert report["axioms/jacobi"].passed
    assert report["mixed_bracket"].details["cases"] > 0


def test_non_closed_curvature_breaks_jacobi():
    report = theorem_identities_report(non_closed_extension(), seed=1, samples=2)
    assert not report.ok
    jacobi = report["axioms/jacobi"]
    assert jacobi.witness == ["(e1, e2, e3)", "c"]
    # the generator identities themselves still hold
    assert report["double_prime_bracket"].passed


def test_heisenberg_curvature_is_c():
    ext = heisenberg_extension()
    total = build_total(ext)
    curvature = curvature_of(total, ConnectionMap.canonical(total))
    assert _rendered(curvature[0][1]) == ["1"]
    assert _rendered(curvature[1][0]) == ["-1"]
    assert _rendered(curvature[0][0]) == ["0"]


def test_atiyah_canonical_connection_is_flat():
    total = build_total(atiyah_extension())
    curvature = curvature_of(total, ConnectionMap.canonical(total))
    assert all(not any(cell) for row in curvature for cell in row)


def test_atiyah_shifted_connection_curvature():
    total = build_total(atiyah_extension())
    connection = ConnectionMap.shifted(total, atiyah_connection_shifts())
    assert str(connection.image(1)) == "x1*L3 + e2"
    curvature = curvature_of(total, connection)
    assert _rendered(curvature[0][1]) == ["0", "0", "1"]


def test_shift_must_lie_in_kernel():
    total = build_total(atiyah_extension())
    e1, e2 = total.l_basis[3:]
    with pytest.raises(ValueError, match="must lie in the L' span"):
        ConnectionMap.shifted(total, {e2: e1.poly})


def test_connection_of_another_presentation():
    total = build_total(heisenberg_extension())
    other = build_total(atiyah_extension())
    with pytest.raises(ExtensionError, match="different presentation"):
        curvature_of(total, ConnectionMap.canonical(other))


@pytest.mark.parametrize("name", list(EXTENSIONS))
def test_reconstruct_extension_roundtrip(name):
    ext = EXTENSIONS[name]()
    recovered, connection = reconstruct_extension(build_total(ext))
    assert same_presentation(ext.l_prime, recovered.l_prime).passed
    assert same_presentation(ext.l_double_prime, recovered.l_double_prime).passed
    assert recovered.nabla == ext.nabla
    assert recovered.omega == ext.omega
    assert connection.split == ext.l_prime.dim


def test_reconstruct_needs_split():
    with pytest.raises(ExtensionError, match="declares no"):
        reconstruct_extension(so3())


def test_reconstruct_rejects_non_ideal():
    pres = so3().model_copy(update={"split": 1})
    with pytest.raises(ExtensionError, match="not an ideal"):
        reconstruct_extension(pres)


def test_kernel_must_act_trivially():
    ext = heisenberg_extension()
    ldp = ext.l_double_prime
    with pytest.raises(ValueError, match="L' must act trivially"):
        ExtensionData.from_relations(ldp, ldp)


def test_omega_is_alternating():
    ext = heisenberg_extension()
    assert ext.omega_element(0, 1) == -ext.omega_element(1, 0)
    assert render_rational(ext.omega[0][1][0].constant_term()) == "1"
    assert ext.omega_element(0, 0) == Poly.zero()


def _element(total, cell) -> Poly:
    return sum(
        (c * Poly.var(e) for c, e in zip(cell, total.l_basis[: total.split])),
        Poly.zero(),
    )


def _coboundary(ext, total, shifts, j, k) -> Poly:
    """``nabla_a phi(b) - nabla_b phi(a) + [phi(a), phi(b)] - phi([a, b]'')``."""
    ldp = ext.l_double_prime

    def phi(e: Var) -> Poly:
        return Poly.coerce(shifts.get(e, Poly.zero()))

    a, b = ldp.l_basis[j], ldp.l_basis[k]
    lifted = sum(
        (ldp.structure_element(j, k).coefficient(e) * phi(e) for e in ldp.l_basis),
        Poly.zero(),
    )
    return (
        poly_bracket(total, a.poly, phi(b))
        - poly_bracket(total, b.poly, phi(a))
        + poly_bracket(total, phi(a), phi(b))
        - lifted
    )


def _heisenberg_shifts():
    return {Var.fiber("e1"): Var.base("x2").poly * Var.fiber("c").poly}


def _atiyah_twisted_shifts():
    e1, x2, l1 = Var.fiber("e1"), Var.base("x2"), Var.fiber("L1")
    return {e1: x2.poly * l1.poly, **atiyah_connection_shifts()}


@pytest.mark.parametrize(
    "name,make_shifts",
    [
        ("heisenberg", _heisenberg_shifts),
        ("atiyah", atiyah_connection_shifts),
        ("atiyah", _atiyah_twisted_shifts),
    ],
)
def test_shifted_section_changes_curvature_by_coboundary(name, make_shifts):
    ext = EXTENSIONS[name]()
    total = build_total(ext)
    shifts = make_shifts()
    recovered, canonical = reconstruct_extension(total)
    before = curvature_of(total, canonical)
    after = curvature_of(total, ConnectionMap.shifted(total, shifts))
    m2 = total.dim - total.split
    for j, k in itertools.product(range(m2), repeat=2):
        assert _element(total, before[j][k]) == recovered.omega_element(j, k)
        assert _element(total, after[j][k]) - _element(
            total, before[j][k]
        ) == _coboundary(ext, total, shifts, j, k)


def test_heisenberg_curvature_is_exact():
    total = build_total(heisenberg_extension())
    connection = ConnectionMap.shifted(total, _heisenberg_shifts())
    curvature = curvature_of(total, connection)
    assert all(not any(cell) for row in curvature for cell in row)

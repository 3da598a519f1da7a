import itertools

import numpy as np
import pytest

from rinehart.invariants import hilbert_map, hilbert_preimage
from rinehart.invariants.hilbert import HilbertPreimage, gram_check
from rinehart.linalg import NUMERIC_TOLERANCE, classify_psd
from rinehart.model.poly import to_rational
from rinehart.model.scene import DualPairScene, SymMatrixQ
from rinehart.sampling import make_rng

GRID = list(itertools.product((1, 2, 3), repeat=2))


@pytest.mark.parametrize(
    "s,ell,point,gram",
    [
        (2, 2, [1, 2, 3, 4], [["5", "11"], ["11", "25"]]),
        (1, 2, [1, 2], [["1", "2"], ["2", "4"]]),
        (3, 1, ["1/2", 0, 1], [["5/4"]]),
    ],
)
def test_hilbert_map(s, ell, point, gram):
    assert hilbert_map(DualPairScene(s=s, ell=ell), point).render() == gram


def test_hilbert_map_needs_all_coordinates():
    with pytest.raises(ValueError, match="expected 4 coordinates, got 3"):
        hilbert_map(DualPairScene(s=2, ell=2), [1, 2, 3])


@pytest.mark.parametrize(
    "rows,s,vectors",
    [
        ([[1, 0], [0, 1]], 2, ["(1, 0)", "(0, 1)"]),
        ([[1, 0], [0, 1]], 3, ["(1, 0, 0)", "(0, 1, 0)"]),
        ([[4, 2], [2, 1]], 1, ["(2)", "(1)"]),
    ],
)
def test_exact_preimage(rows, s, vectors):
    preimage = hilbert_preimage(rows, s)
    assert preimage.feasible and preimage.exact
    check = preimage.to_check()
    assert check.passed
    assert check.details["vectors"] == vectors


def test_rank_excess_is_infeasible():
    check = hilbert_preimage([[1, 0], [0, 1]], 1).to_check()
    assert check.verdict == "infeasible"
    assert check.witness == ["rank excess", "rank 2 > s = 1"]
    assert check.details == {"rank": 2, "s": 1}


def test_indefinite_is_infeasible():
    check = hilbert_preimage(SymMatrixQ(entries=[[1, 2], [2, 1]]), 2).to_check()
    assert check.verdict == "infeasible"
    assert check.witness == ["indefinite", "(-2, 1)", "-3"]


def test_numeric_preimage():
    preimage = hilbert_preimage([[2]], 1)
    assert preimage.feasible
    assert not preimage.exact
    assert np.isclose(preimage.numeric[0][0], np.sqrt(2))
    check = preimage.to_check()
    assert check.passed
    assert check.details["numeric"] is True
    assert check.details["residual"] <= NUMERIC_TOLERANCE


def test_non_symmetric_input():
    with pytest.raises(ValueError, match="not symmetric"):
        hilbert_preimage([[1, 2], [3, 1]], 2)


@pytest.mark.parametrize(
    "s,ell,point,rank",
    [(2, 2, [1, 2, 3, 4], 2), (1, 2, [1, 2], 1), (1, 3, [0, 0, 0], 0)],
)
def test_gram_check(s, ell, point, rank):
    check = gram_check(DualPairScene(s=s, ell=ell), point)
    assert check.passed
    assert check.details["rank"] == rank


def gram(vectors) -> list[list[int]]:
    """Integer Gram matrix of the rows of ``vectors``."""
    product = np.asarray(vectors, dtype=np.int64) @ np.asarray(vectors, dtype=np.int64).T
    return [[int(x) for x in row] for row in product]


def quadratic_form(rows, vector):
    return sum(
        to_rational(rows[i][j]) * vector[i] * vector[j]
        for i in range(len(rows))
        for j in range(len(rows))
    )


def test_badly_conditioned_numeric_preimage():
    preimage = hilbert_preimage([[10**8 + 1, 3], [3, 2]], 2)
    assert preimage.feasible
    assert not preimage.exact
    assert preimage.residual <= NUMERIC_TOLERANCE
    assert preimage.to_check().passed


def test_numeric_residual_above_tolerance_fails():
    preimage = HilbertPreimage(
        feasible=True, s=1, rank=1, numeric=((1.0,),), residual=1e-6
    )
    check = preimage.to_check()
    assert check.verdict == "fail"
    assert check.witness == ["residual 1.000e-06 > 1e-12"]
    assert check.details["residual"] == 1e-6


@pytest.mark.parametrize("s,ell", GRID)
def test_hilbert_image_is_psd_of_bounded_rank(s, ell):
    scene = DualPairScene(s=s, ell=ell)
    rng = make_rng(10 * s + ell)
    for _ in range(200):
        point = [int(x) for x in rng.integers(-3, 4, size=s * ell)]
        check = gram_check(scene, point)
        assert check.passed, point
        assert check.details["rank"] <= min(s, ell)


def test_seeded_psd_matrices_have_preimages():
    rng = make_rng(7)
    for _ in range(50):
        s, ell = (int(x) for x in rng.integers(1, 4, size=2))
        width = int(rng.integers(0, min(s, ell) + 1))
        rows = gram(rng.integers(-3, 4, size=(ell, width)))
        preimage = hilbert_preimage(rows, s)
        check = preimage.to_check()
        assert check.passed, rows
        if preimage.exact:
            vectors = preimage.vectors
            assert all(len(v) == s for v in vectors)
            assert [
                [sum(a * b for a, b in zip(u, v, strict=True)) for v in vectors]
                for u in vectors
            ] == [[to_rational(x) for x in row] for row in rows]
        else:
            assert preimage.residual <= NUMERIC_TOLERANCE
            numeric = np.array(preimage.numeric)
            assert numeric.shape == (ell, s)
            assert np.allclose(numeric @ numeric.T, np.array(rows, dtype=float))


def test_seeded_indefinite_matrices_are_infeasible():
    rng = make_rng(11)
    for _ in range(10):
        ell = int(rng.integers(1, 4))
        v = rng.integers(-3, 4, size=(ell, 2))
        w = rng.integers(-3, 4, size=ell)
        w[0] = int(rng.integers(1, 4))
        weight = int(np.sum((v.T @ w) ** 2)) + 1
        rows = [
            [value - weight * int(w[i]) * int(w[j]) for j, value in enumerate(row)]
            for i, row in enumerate(gram(v))
        ]
        check = hilbert_preimage(rows, 3).to_check()
        assert check.verdict == "infeasible", rows
        assert check.witness[0] == "indefinite"

        classification = classify_psd(rows)
        value = quadratic_form(rows, classification.witness)
        assert value < 0
        assert value == classification.witness_value


@pytest.mark.parametrize("s", [1, 2])
def test_seeded_rank_excess_is_infeasible(s):
    rng = make_rng(s)
    found = 0
    while found < 5:
        rows = gram(rng.integers(-3, 4, size=(3, s + 1)))
        if classify_psd(rows).rank != s + 1:
            continue
        found += 1
        check = hilbert_preimage(rows, s).to_check()
        assert check.verdict == "infeasible"
        assert check.witness == ["rank excess", f"rank {s + 1} > s = {s}"]

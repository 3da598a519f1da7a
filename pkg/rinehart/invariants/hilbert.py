"""Hilbert map of the ``O(s)`` action and its semialgebraic image."""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
from pydantic import Field
from sympy import QQ

from rinehart.linalg import NUMERIC_TOLERANCE, classify_psd, render_vector
from rinehart.model.base import MainModel
from rinehart.model.poly import Rational, render_rational
from rinehart.model.report import CheckResult
from rinehart.model.scene import DualPairScene, QuadraticInvariant, SymMatrixQ

logger = logging.getLogger(__name__)


def hilbert_map(scene: DualPairScene, point: Sequence[Any]) -> SymMatrixQ:
    """Gram matrix ``[q_j . q_k]`` of the position vectors at ``point``."""
    values = scene.point(point)
    ell = scene.ell
    rows = [[0] * ell for _ in range(ell)]
    for j in scene.copies:
        for k in scene.copies:
            if j <= k:
                value = QuadraticInvariant.build(scene, "QQ", j, k).value
                rows[j - 1][k - 1] = rows[k - 1][j - 1] = value.evaluate(values)
    return SymMatrixQ(entries=rows)


class HilbertPreimage(MainModel):
    """Vectors ``q_1 .. q_l`` in ``R^s`` with prescribed Gram matrix, if any.

    ``exact`` preimages have rational coordinates; otherwise ``numeric``
    holds a floating factorization. ``residual`` is the largest entry of
    ``|V V^t - m|`` divided by the largest entry of ``|m|`` (at least 1); a
    numeric preimage only passes while it stays within ``NUMERIC_TOLERANCE``.
    """

    feasible: bool
    s: int
    rank: int
    exact: bool = False
    vectors: tuple[tuple[Rational, ...], ...] | None = None
    numeric: tuple[tuple[float, ...], ...] | None = None
    residual: float = 0.0
    witness: list[str] = Field(default_factory=list)

    def to_check(self, name: str = "hilbert_preimage") -> CheckResult:
        if not self.feasible:
            return CheckResult(
                name=name,
                verdict="infeasible",
                message="matrix is not the Gram matrix of vectors in R^s",
                witness=self.witness,
                details={"rank": self.rank, "s": self.s},
            )
        if self.exact:
            rendered = [render_vector(v) for v in self.vectors or ()]
            return CheckResult.ok(
                name, "exact rational preimage", vectors=rendered, rank=self.rank
            )
        return CheckResult.from_condition(
            name,
            self.residual <= NUMERIC_TOLERANCE,
            f"numeric preimage, residual {self.residual:.3e}",
            [f"residual {self.residual:.3e} > {NUMERIC_TOLERANCE:.0e}"],
            vectors=[list(v) for v in self.numeric or ()],
            residual=self.residual,
            numeric=True,
            rank=self.rank,
        )


def hilbert_preimage(m: SymMatrixQ | Sequence[Sequence[Any]], s: int) -> HilbertPreimage:
    """Factor ``m = V V^t`` with ``V`` of width ``s``.

    Indefinite matrices are infeasible with a witness ``v`` satisfying
    ``v^t m v < 0``; PSD matrices of rank above ``s`` are infeasible by
    rank excess.
    """
    matrix = m if isinstance(m, SymMatrixQ) else SymMatrixQ(entries=m)
    classification = classify_psd(matrix.entries)
    if not classification.psd:
        witness = classification.witness or ()
        return HilbertPreimage(
            feasible=False,
            s=s,
            rank=classification.rank,
            witness=[
                "indefinite",
                render_vector(witness),
                render_rational(classification.witness_value),
            ],
        )
    if classification.rank > s:
        return HilbertPreimage(
            feasible=False,
            s=s,
            rank=classification.rank,
            witness=["rank excess", f"rank {classification.rank} > s = {s}"],
        )
    pad = s - classification.rank
    factor = classification.factor()
    if factor is not None:
        vectors = tuple(tuple(row) + (QQ(0),) * pad for row in factor)
        return HilbertPreimage(
            feasible=True, s=s, rank=classification.rank, exact=True, vectors=vectors
        )
    numeric = classification.numeric_factor()
    target = np.array([[float(x) for x in row] for row in matrix.entries])
    residual = 0.0
    if matrix.size:
        scale = max(1.0, float(np.max(np.abs(target))))
        residual = float(np.max(np.abs(numeric @ numeric.T - target))) / scale
    if residual > NUMERIC_TOLERANCE:
        logger.warning("✖ Numeric factorization residual %.3e too large", residual)
    padded = np.hstack([numeric, np.zeros((matrix.size, pad))])
    return HilbertPreimage(
        feasible=True,
        s=s,
        rank=classification.rank,
        numeric=tuple(tuple(float(x) for x in row) for row in padded),
        residual=residual,
    )


def gram_check(scene: DualPairScene, point: Sequence[Any]) -> CheckResult:
    """The image of ``point`` is PSD of rank at most ``min(s, l)``."""
    gram = hilbert_map(scene, point)
    classification = classify_psd(gram.entries)
    bound = min(scene.s, scene.ell)
    return CheckResult.from_condition(
        "hilbert_image",
        classification.psd and classification.rank <= bound,
        f"Gram matrix PSD of rank {classification.rank} <= {bound}",
        gram=gram.render(),
        rank=classification.rank,
    )

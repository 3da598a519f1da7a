from rinehart.scenarios.algebra import AlgebraCheck, BracketComputation, Reconstruction
from rinehart.scenarios.demo import AtiyahDemo, HeisenbergDemo, So3Demo, VectDemo
from rinehart.scenarios.extension import (
    CurvatureComputation,
    ExtensionCheck,
    ExtensionReconstruction,
    TotalBuild,
)
from rinehart.scenarios.invariant import (
    ClosureComputation,
    DualPairAnalysis,
    HilbertFactorization,
    HilbertImage,
    HomogeneousGap,
    MomentumMap,
)

__all__ = [
    "AlgebraCheck",
    "AtiyahDemo",
    "BracketComputation",
    "ClosureComputation",
    "CurvatureComputation",
    "DualPairAnalysis",
    "ExtensionCheck",
    "ExtensionReconstruction",
    "HeisenbergDemo",
    "HilbertFactorization",
    "HilbertImage",
    "HomogeneousGap",
    "MomentumMap",
    "Reconstruction",
    "So3Demo",
    "TotalBuild",
    "VectDemo",
]

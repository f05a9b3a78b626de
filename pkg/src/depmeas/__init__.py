"""Interpretable dependence measures: prediction, efficiency, entropy, curves."""

__version__ = "0.1.0"

from .core import (
    DepValue,
    InfoValue,
    InformationMeasure,
    axiom_check,
    normalize,
    symmetrize_arithmetic,
    symmetrize_geometric,
)
from .discrete import (
    JointPMF,
    correlation_ratio_pmf,
    empirical_joint,
    empirical_triplet,
    entropy_ratio_pmf,
    zero_one_ratio_pmf,
)
from .efficiency import (
    FisherPair,
    MCARGaussianModel,
    binary_r2,
    efficiency_ratio,
    mc_fisher_mcar,
    mcar_measure,
)
from .functional import (
    CurveSet,
    EigenSystem,
    ScoreModel,
    center,
    covariance,
    fit_flm,
    fpca,
    functional_measures,
    project,
    trapezoid_weights,
)
from .prediction import Penalty, Predictor, fit_conditional, fit_constant, prediction_measure
from .report import MeasureReport, build_artifact, canonical_json
from .tables import SampleTable

__all__ = [
    "__version__",
    "DepValue",
    "InfoValue",
    "InformationMeasure",
    "axiom_check",
    "normalize",
    "symmetrize_arithmetic",
    "symmetrize_geometric",
    "JointPMF",
    "correlation_ratio_pmf",
    "empirical_joint",
    "empirical_triplet",
    "entropy_ratio_pmf",
    "zero_one_ratio_pmf",
    "FisherPair",
    "MCARGaussianModel",
    "binary_r2",
    "efficiency_ratio",
    "mc_fisher_mcar",
    "mcar_measure",
    "CurveSet",
    "EigenSystem",
    "ScoreModel",
    "center",
    "covariance",
    "fit_flm",
    "fpca",
    "functional_measures",
    "project",
    "trapezoid_weights",
    "Penalty",
    "Predictor",
    "fit_conditional",
    "fit_constant",
    "prediction_measure",
    "MeasureReport",
    "build_artifact",
    "canonical_json",
    "SampleTable",
]

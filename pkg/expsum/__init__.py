"""
Recovery of proper and extended exponential sums from their Fourier
coefficients via AAA rational approximation.
"""
from loguru import logger

from expsum.core.config import settings
from expsum.core.exceptions import (
    ConvergenceError,
    ExpSumError,
    NumericalError,
    PoleComputationError,
    QuadratureError,
    RankDeficiencyError,
    RecoveryError,
    ValidationError,
)
from expsum.schemas.fourier import (
    ConfluentPartialFraction,
    FourierDataset,
    PartialFractionCluster,
)
from expsum.schemas.model import ExponentialSumModel, ExpTerm, ModelDistance
from expsum.schemas.rational import (
    AaaDiagnostics,
    BarycentricRational,
    PoleCluster,
    PoleClusterSet,
)
from expsum.schemas.recovery import RecoveryMode, RecoveryOptions, RecoveryReport
from expsum.services.aaa import aaa_fit, bary_eval, prune_zero_weights
from expsum.services.fourier import (
    coeff_model,
    coeff_monomial_exp,
    coeff_proper,
    coeff_quadrature_oracle,
    coeff_quadrature_oracle_many,
    coeff_real_proper,
    confluent_params,
    eval_partial_fraction,
    make_dataset,
)
from expsum.services.model import (
    canonicalize,
    cosine_sum_model,
    evaluate,
    model_distance,
)
from expsum.services.partial_fractions import (
    cluster_poles,
    poles,
    solve_residues_confluent,
    solve_residues_simple,
)
from expsum.services.recovery import (
    freqs_from_poles,
    gammas_from_A,
    gammas_from_Astar,
    recover,
    recover_real_proper,
)

# Silent as a library; setup_logging() turns output on
logger.disable("expsum")

__version__ = settings.PROJECT_VERSION

__all__ = [
    "AaaDiagnostics",
    "aaa_fit",
    "BarycentricRational",
    "bary_eval",
    "canonicalize",
    "cluster_poles",
    "coeff_model",
    "coeff_monomial_exp",
    "coeff_proper",
    "coeff_quadrature_oracle",
    "coeff_quadrature_oracle_many",
    "coeff_real_proper",
    "ConfluentPartialFraction",
    "confluent_params",
    "ConvergenceError",
    "cosine_sum_model",
    "evaluate",
    "eval_partial_fraction",
    "ExponentialSumModel",
    "ExpSumError",
    "ExpTerm",
    "FourierDataset",
    "freqs_from_poles",
    "gammas_from_A",
    "gammas_from_Astar",
    "make_dataset",
    "ModelDistance",
    "model_distance",
    "NumericalError",
    "PartialFractionCluster",
    "PoleCluster",
    "PoleClusterSet",
    "PoleComputationError",
    "poles",
    "prune_zero_weights",
    "QuadratureError",
    "RankDeficiencyError",
    "recover",
    "RecoveryError",
    "RecoveryMode",
    "RecoveryOptions",
    "RecoveryReport",
    "recover_real_proper",
    "settings",
    "solve_residues_confluent",
    "solve_residues_simple",
    "ValidationError",
]

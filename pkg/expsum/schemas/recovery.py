from enum import Enum
from typing import Optional, Tuple

from pydantic import Field, validator

from expsum.core.config import settings
from expsum.schemas.base import FrozenModel, to_complex_tuple
from expsum.schemas.model import ExponentialSumModel, ModelDistance
from expsum.schemas.rational import AaaDiagnostics, PoleClusterSet


class RecoveryMode(str, Enum):
    AUTO = "auto"
    PROPER = "proper"
    REAL_PROPER = "real_proper"
    EXTENDED = "extended"


class RecoveryOptions(FrozenModel):
    tol: float = Field(default_factory=lambda: settings.AAA_TOL)
    jmax: Optional[int] = None
    merge_tol: float = Field(default_factory=lambda: settings.POLE_MERGE_TOL)
    zero_weight_tol: float = Field(default_factory=lambda: settings.ZERO_WEIGHT_TOL)
    integer_tol: float = Field(default_factory=lambda: settings.INTEGER_TOL)
    model_merge_tol: float = Field(default_factory=lambda: settings.MODEL_MERGE_TOL)
    mode: RecoveryMode = RecoveryMode.AUTO

    @validator("tol", "merge_tol", "integer_tol")
    def positive(cls, v):
        if not v > 0:
            raise ValueError("tolerances must be positive")
        return v

    @validator("zero_weight_tol", "model_merge_tol")
    def non_negative(cls, v):
        if v < 0:
            raise ValueError("tolerances must be non-negative")
        return v

    @validator("jmax")
    def positive_jmax(cls, v):
        if v is not None and v < 1:
            raise ValueError("jmax must be >= 1")
        return v

    @property
    def resolved_mode(self) -> RecoveryMode:
        if self.mode == RecoveryMode.AUTO:
            return RecoveryMode.EXTENDED
        return self.mode


class RecoveryReport(FrozenModel):
    """
    Result of a recovery run: the canonical model plus everything needed to
    judge it (AAA diagnostics, pole clusters, recovered periodic indices).
    """

    model: ExponentialSumModel
    period: float
    mode: RecoveryMode
    sigma: Tuple[int, ...] = ()
    pruned: Tuple[complex, ...] = ()
    aaa: AaaDiagnostics
    clusters: PoleClusterSet
    condition_estimate: Optional[float] = None
    error_estimate: Optional[float] = None
    reference_distance: Optional[ModelDistance] = None
    warnings: Tuple[str, ...] = ()

    @validator("pruned", pre=True)
    def coerce_pruned(cls, v):
        return to_complex_tuple(v)

    @property
    def iterations(self) -> int:
        return self.aaa.iterations

    @property
    def residual(self) -> float:
        return self.aaa.final_residual

    @property
    def M2(self) -> int:
        """Number of recovered P-periodic terms."""
        return len(self.sigma)

    @property
    def M1(self) -> int:
        return self.model.length - self.M2

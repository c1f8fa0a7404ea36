from typing import Tuple

import numpy as np
from pydantic import root_validator, validator

from expsum.schemas.base import FrozenModel, to_complex, to_complex_tuple


class BarycentricRational(FrozenModel):
    """
    r(z) = sum_j w_j f_j / (z - z_j)  /  sum_j w_j / (z - z_j)
    """

    support: Tuple[complex, ...]
    values: Tuple[complex, ...]
    weights: Tuple[complex, ...]

    @validator("support", "values", "weights", pre=True)
    def coerce_arrays(cls, v):
        return to_complex_tuple(v)

    @root_validator(skip_on_failure=True)
    def check_lengths(cls, values):
        n = len(values["support"])
        if n == 0:
            raise ValueError("a barycentric rational needs at least one support point")
        if len(values["values"]) != n or len(values["weights"]) != n:
            raise ValueError("support, values and weights differ in length")
        if len(set(values["support"])) != n:
            raise ValueError("support points must be pairwise distinct")
        return values

    @property
    def degree(self) -> int:
        return len(self.support) - 1

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (
            np.asarray(self.support, dtype=complex),
            np.asarray(self.values, dtype=complex),
            np.asarray(self.weights, dtype=complex),
        )


class AaaDiagnostics(FrozenModel):
    iterations: int
    final_residual: float
    residual_history: Tuple[float, ...] = ()
    converged: bool
    # iterations that fell back to a single singular vector
    degenerate_steps: Tuple[int, ...] = ()
    scale: float = 1.0

    @validator("iterations")
    def at_least_one(cls, v):
        if v < 1:
            raise ValueError("iterations must be >= 1")
        return v


class PoleCluster(FrozenModel):
    center: complex
    count: int

    @validator("center", pre=True)
    def coerce_center(cls, v):
        return to_complex(v)

    @validator("count")
    def positive_count(cls, v):
        if v < 1:
            raise ValueError("count must be >= 1")
        return v


class PoleClusterSet(FrozenModel):
    raw_poles: Tuple[complex, ...] = ()
    clusters: Tuple[PoleCluster, ...] = ()
    merge_tol: float = 0.0

    @validator("raw_poles", pre=True)
    def coerce_poles(cls, v):
        return to_complex_tuple(v)

    @root_validator(skip_on_failure=True)
    def counts_match(cls, values):
        if sum(c.count for c in values["clusters"]) != len(values["raw_poles"]):
            raise ValueError("cluster counts must add up to the number of poles")
        return values

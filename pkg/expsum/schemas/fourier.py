from typing import List, Optional, Set, Tuple

from pydantic import root_validator, validator

from expsum.schemas.base import FrozenModel, to_complex, to_complex_tuple


class FourierDataset(FrozenModel):
    """
    Fourier coefficients c_k of a signal on [0, period] for an index set.

    Indices and coefficients are stored as parallel tuples; ``entries``
    gives the (k, c_k) view.
    """

    period: float
    indices: Tuple[int, ...]
    coefficients: Tuple[complex, ...]

    @validator("period")
    def positive_period(cls, v):
        if not v > 0:
            raise ValueError("period must be positive")
        return v

    @validator("coefficients", pre=True)
    def coerce_coefficients(cls, v):
        return to_complex_tuple(v)

    @root_validator(skip_on_failure=True)
    def check_entries(cls, values):
        indices = values["indices"]
        if len(indices) != len(values["coefficients"]):
            raise ValueError("indices and coefficients differ in length")
        if len(set(indices)) != len(indices):
            raise ValueError("indices must be pairwise distinct")
        return values

    @property
    def entries(self) -> List[Tuple[int, complex]]:
        return list(zip(self.indices, self.coefficients))


class PartialFractionCluster(FrozenModel):
    """
    Terms coefficients[l] / (k - pole)^(l+1). Periodic clusters sit at an
    integer pole and carry n_j coefficients; others carry n_j + 1.
    """

    pole: complex
    coefficients: Tuple[complex, ...]
    periodic: bool = False

    @validator("pole", pre=True)
    def coerce_pole(cls, v):
        return to_complex(v)

    @validator("coefficients", pre=True)
    def coerce_coefficients(cls, v):
        return to_complex_tuple(v)

    @root_validator(skip_on_failure=True)
    def check_length(cls, values):
        if not values["periodic"] and not values["coefficients"]:
            raise ValueError("non-periodic clusters need at least one coefficient")
        return values

    @property
    def index(self) -> Optional[int]:
        """Fourier index of a periodic cluster."""
        if not self.periodic:
            return None
        return int(round(self.pole.real))


class ConfluentPartialFraction(FrozenModel):
    clusters: Tuple[PartialFractionCluster, ...] = ()
    condition_estimate: Optional[float] = None
    warnings: Tuple[str, ...] = ()

    @property
    def periodic_flags(self) -> Tuple[bool, ...]:
        return tuple(cluster.periodic for cluster in self.clusters)

    @property
    def sigma(self) -> Set[int]:
        return {c.index for c in self.clusters if c.index is not None}

    @property
    def order(self) -> int:
        return sum(
            len(c.coefficients) + (1 if c.periodic else 0) for c in self.clusters
        )

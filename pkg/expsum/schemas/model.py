from typing import Tuple

from pydantic import Field, validator

from expsum.schemas.base import FrozenModel, to_complex, to_complex_tuple


class ExpTerm(FrozenModel):
    """
    One summand (sum_m gammas[m] t^m) exp(2 pi lambda t).
    """

    lambda_: complex = Field(..., alias="lambda")
    gammas: Tuple[complex, ...]

    @validator("lambda_", pre=True)
    def coerce_lambda(cls, v):
        return to_complex(v)

    @validator("gammas", pre=True)
    def coerce_gammas(cls, v):
        gammas = to_complex_tuple(v)
        if not gammas:
            raise ValueError("gammas must not be empty")
        return gammas

    @property
    def degree(self) -> int:
        return len(self.gammas) - 1


class ExponentialSumModel(FrozenModel):
    terms: Tuple[ExpTerm, ...] = ()

    @property
    def order(self) -> int:
        return sum(1 + term.degree for term in self.terms)

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def frequencies(self) -> Tuple[complex, ...]:
        return tuple(term.lambda_ for term in self.terms)


class ModelDistance(FrozenModel):
    freq_err: float
    coef_err: float
    matched: bool

    @validator("freq_err", "coef_err")
    def non_negative(cls, v):
        if v < 0:
            raise ValueError("errors must be non-negative")
        return v

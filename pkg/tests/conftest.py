import math
from pathlib import Path

import numpy as np
import pytest
from loguru import logger

from expsum.schemas.model import ExponentialSumModel, ExpTerm
from expsum.services.fourier import make_dataset

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def build_model(terms):
    return ExponentialSumModel(
        terms=tuple(ExpTerm(lambda_=lam, gammas=gammas) for lam, gammas in terms)
    )


def y1_model():
    return build_model(
        [
            (-1.095 + math.sqrt(0.0101) * 1j, [3.2 + 4.5j]),
            (-2.647j, [-0.55]),
            (1.3711j, [-3.4 + 0.1j]),
            (-math.sqrt(1.89), [-0.88]),
            (-math.sqrt(0.47) + 3.217j, [0.542 + 7.1j]),
            (-2j, [-0.96 + 1.06j]),
        ]
    )


def y2_model():
    alphas = (-6.74, -3.187, -1.312, -1.212, 0.223)
    gammas = (-0.00572, 0.1074, -0.685, -0.4264, 0.4605)
    return build_model([(a, [g]) for a, g in zip(alphas, gammas)])


def y3_model():
    return build_model(
        [
            (-0.1236 + 2.2371j, [3.1 + 0.5j, 0.5, -0.002, 1.6, 0.55 - 4.23j]),
            (0.011 - math.sqrt(2.2) * 1j, [-15.02]),
        ]
    )


def y4_model():
    return build_model(
        [
            (-0.1 - 0.73j, [3.46 - 0.5j, -1.6 + 7.3j, -2.4]),
            (0.05 - math.sqrt(10.11) * 1j, [-3.8 - 1.999j, -0.2 - 0.4j]),
            (1.5j, [-7.33 + 7.033j, 3.89, 2.48 - 0.45j, -5.3 + 0.01j]),
        ]
    )


@pytest.fixture
def y1():
    return y1_model()


@pytest.fixture
def y2():
    return y2_model()


@pytest.fixture
def y3():
    return y3_model()


@pytest.fixture
def y4():
    return y4_model()


@pytest.fixture
def y1_data(y1):
    return make_dataset(y1, 6.0, range(-29, 30))


@pytest.fixture
def y2_data(y2):
    return make_dataset(y2, 3.0, range(1, 41))


@pytest.fixture
def y3_data(y3):
    return make_dataset(y3, 8.0, range(-29, 30))


@pytest.fixture
def y4_data(y4):
    return make_dataset(y4, 8.0, range(-47, 48))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(autouse=True)
def quiet_logging():
    yield
    # CLI tests attach sinks to captured streams
    logger.remove()
    logger.disable("expsum")

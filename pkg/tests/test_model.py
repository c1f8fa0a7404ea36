import cmath
import math

import numpy as np
import pydantic
import pytest

from expsum.core.exceptions import ValidationError
from expsum.schemas.model import ExponentialSumModel, ExpTerm
from expsum.services.model import (
    canonicalize,
    cosine_sum_model,
    evaluate,
    evaluate_many,
    model_distance,
)
from tests.conftest import build_model


def random_model(rng, max_order=8):
    terms = []
    order = 0
    while True:
        degree = int(rng.integers(0, 3))
        if order + degree + 1 > max_order:
            break
        lam = complex(rng.uniform(-0.5, 0.5), rng.uniform(-3, 3))
        gammas = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        terms.append((lam, list(gammas)))
        order += degree + 1
    return build_model(terms)


def test_evaluate_constant():
    assert evaluate(build_model([(0, [1])]), 5.0) == pytest.approx(1)


def test_evaluate_unit_circle():
    value = evaluate(build_model([(1j, [1])]), 0.25)
    assert abs(value - 1j) < 1e-15


def test_evaluate_y2_at_zero(y2):
    # sum of the amplitudes, -0.54922
    assert evaluate(y2, 0.0) == pytest.approx(-0.00572 + 0.1074 - 0.685 - 0.4264 + 0.4605, abs=1e-12)


def test_evaluate_polynomial_part():
    model = build_model([(0.1 - 0.2j, [1, 2, 3])])
    t = 0.7
    expected = (1 + 2 * t + 3 * t**2) * cmath.exp(2 * math.pi * (0.1 - 0.2j) * t)
    assert abs(evaluate(model, t) - expected) < 1e-14


def test_evaluate_many_matches_pointwise(y3):
    ts = np.linspace(0, 8, 17)
    values = evaluate_many(y3, ts)
    for t, v in zip(ts, values):
        assert abs(v - evaluate(y3, t)) <= 1e-12 * max(1.0, abs(v))


def test_canonicalize_cancellation():
    model = build_model([(0.3j, [1]), (0.3j, [-1])])
    assert canonicalize(model).terms == ()


def test_canonicalize_drops_zero_leading_coefficient():
    result = canonicalize(build_model([(1, [2, 0])]))
    assert result.terms[0].gammas == (2,)


def test_canonicalize_merges_close_frequencies():
    model = build_model([(1, [1, 2]), (1 + 1e-15, [3])])
    result = canonicalize(model, merge_tol=1e-12)
    assert result.length == 1
    assert result.terms[0].gammas == (4, 2)


def test_canonicalize_sorts_terms():
    model = build_model([(1 + 1j, [1]), (-1, [1]), (1 - 1j, [1])])
    lambdas = [term.lambda_ for term in canonicalize(model).terms]
    assert lambdas == [-1, 1 - 1j, 1 + 1j]


def test_canonicalize_negative_tolerance():
    with pytest.raises(ValidationError):
        canonicalize(build_model([(0, [1])]), merge_tol=-1)


def test_canonicalize_idempotent_and_value_preserving(rng):
    ts = np.linspace(0, 1, 100)
    for _ in range(20):
        model = random_model(rng)
        once = canonicalize(model)
        assert canonicalize(once) == once
        before = evaluate_many(model, ts)
        after = evaluate_many(once, ts)
        assert np.all(np.abs(before - after) <= 1e-12 * np.maximum(1.0, np.abs(before)))


def test_model_distance_identical(y3):
    distance = model_distance(y3, y3)
    assert distance.freq_err == 0
    assert distance.coef_err == 0
    assert distance.matched


def test_model_distance_count_mismatch(y3, y4):
    distance = model_distance(canonicalize(y3), canonicalize(y4))
    assert not distance.matched
    assert math.isinf(distance.freq_err)


def test_model_distance_matches_nearest_frequency():
    a = build_model([(1j, [1]), (2j, [2])])
    b = build_model([(2j + 1e-3, [2.1]), (1j, [1])])
    distance = model_distance(a, b)
    assert distance.matched
    assert distance.freq_err == pytest.approx(1e-3)
    assert distance.coef_err == pytest.approx(0.1)


def test_model_distance_degree_mismatch():
    a = build_model([(1j, [1, 0.5])])
    b = build_model([(1j, [1])])
    distance = model_distance(a, b)
    assert not distance.matched
    assert distance.coef_err == pytest.approx(0.5)


def test_cosine_sum_model_is_real():
    model = cosine_sum_model([[1.0, 0.5], [2.0]], [0.3, 0.0], phases=[0.4, 0.0], dampings=[-0.05, -0.2])
    assert model.length == 3
    for t in np.linspace(0, 4, 9):
        expected = (1 + 0.5 * t) * math.exp(-0.1 * math.pi * t) * math.cos(0.6 * math.pi * t + 0.4)
        expected += 2 * math.exp(-0.4 * math.pi * t)
        value = evaluate(model, t)
        assert abs(value.imag) < 1e-12
        assert value.real == pytest.approx(expected, abs=1e-12)


def test_exp_term_parses_json_pairs():
    term = ExpTerm.parse_obj({"lambda": [0.5, -1.0], "gammas": [[1, 2], 3]})
    assert term.lambda_ == 0.5 - 1j
    assert term.gammas == (1 + 2j, 3)
    assert term.degree == 1


def test_exp_term_rejects_empty_gammas():
    with pytest.raises(pydantic.ValidationError):
        ExpTerm(lambda_=0, gammas=[])


def test_model_json_uses_pairs(y4):
    text = y4.json(by_alias=True)
    assert '"lambda": [' in text
    assert ExponentialSumModel.parse_raw(text) == y4
    assert y4.order == 3 + 2 + 4

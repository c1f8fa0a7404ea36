import numpy as np
import pytest

from expsum.core.exceptions import ValidationError
from expsum.schemas.model import ExponentialSumModel
from expsum.services.fourier import (
    coeff_jacobian,
    coeff_model,
    coeff_monomial_exp,
    coeff_proper,
    coeff_quadrature_oracle,
    coeff_quadrature_oracle_many,
    coeff_real_proper,
    confluent_params,
    eval_partial_fraction,
    make_dataset,
    periodic_index,
)
from expsum.services.model import evaluate_many
from tests.conftest import build_model


def random_model(rng, max_order=6):
    """Order <= max_order, |Re lambda| <= 1, |Im lambda| <= 5, multiplicities up to 3."""
    terms = []
    order = 0
    target = int(rng.integers(1, max_order + 1))
    while order < target:
        degree = int(rng.integers(0, min(3, target - order)))
        lam = complex(rng.uniform(-1, 1), rng.uniform(-5, 5))
        gammas = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        terms.append((lam, list(gammas)))
        order += degree + 1
    return build_model(terms)


def data_scale(model, P):
    return max(1.0, float(np.max(np.abs(evaluate_many(model, np.linspace(0, P, 401))))))


def test_periodic_branch_at_own_index():
    P = 1.0
    n = 3
    assert coeff_monomial_exp(1, 2, 1j * n / P, P, n) == pytest.approx(1 / 3)


def test_periodic_branch_formula():
    # (1/P) int_0^P t e^{2 pi i (n - k) t / P} dt = P / (2 pi i (n - k))
    P, n, k = 2.0, 1, 4
    expected = P / (2j * np.pi * (n - k))
    assert coeff_monomial_exp(1, 1, 1j * n / P, P, k) == pytest.approx(expected, rel=1e-14)


def test_periodic_proper_term_is_a_kronecker_spike():
    P = 5.0
    lam = 2j / P
    assert coeff_proper(3, lam, P, 2) == 3
    assert coeff_proper(3, lam, P, 7) == 0
    assert coeff_monomial_exp(1, 0, 1j * 4 / P, P, 1) == 0


def test_monomial_m0_agrees_with_proper():
    assert coeff_monomial_exp(1, 0, -0.3, 2.0, 1) == coeff_proper(1, -0.3, 2.0, 1)


def test_real_proper_agrees_with_complex_formula():
    for alpha, k in [(0.223, 5), (-1.312, 1), (-6.74, 40), (0.7, 0)]:
        real = coeff_real_proper(0.4605, alpha, 3.0, k)
        complex_ = coeff_proper(0.4605, alpha, 3.0, k)
        assert abs(real - complex_) <= 1e-12 * abs(complex_)


def test_real_proper_conjugate_symmetry():
    for k in range(1, 10):
        assert coeff_real_proper(0.3, -1.1, 3.0, k).conjugate() == coeff_real_proper(0.3, -1.1, 3.0, -k)


def test_real_proper_needs_nonzero_alpha():
    with pytest.raises(ValidationError):
        coeff_real_proper(1.0, 0.0, 3.0, 1)


def test_period_must_be_positive():
    with pytest.raises(ValidationError):
        coeff_proper(1, 0.1, 0.0, 1)
    with pytest.raises(ValidationError):
        coeff_model(ExponentialSumModel(), -1.0, 0)


def test_near_integer_frequency_routed_to_periodic_branch():
    P = 4.0
    assert periodic_index(1j * 3 / P + 1e-12, P) == 3
    assert periodic_index(0.1 + 0.7j, P) is None


def test_empty_model_has_zero_coefficients():
    assert coeff_model(ExponentialSumModel(), 3.0, 4) == 0


def test_single_term_model_sums_over_powers():
    model = build_model([(0.1 + 0.4j, [1, -2j, 0.5])])
    expected = sum(coeff_monomial_exp(g, m, 0.1 + 0.4j, 2.0, 3) for m, g in enumerate([1, -2j, 0.5]))
    assert coeff_model(model, 2.0, 3) == expected


def test_make_dataset(y2):
    data = make_dataset(y2, 3.0, range(1, 41))
    assert data.period == 3.0
    assert data.indices == tuple(range(1, 41))
    assert dict(data.entries)[5] == coeff_model(y2, 3.0, 5)


def test_oracle_constant_model():
    model = build_model([(0, [2 - 1j])])
    assert coeff_quadrature_oracle(model, 3.0, 0) == pytest.approx(2 - 1j, abs=1e-10)
    assert abs(coeff_quadrature_oracle(model, 3.0, 4)) < 1e-10


def test_monomial_matches_oracle():
    model = build_model([(0.1 + 0.7j, [0, 0, 0, 2 - 1j])])
    scale = data_scale(model, 4.0)
    closed = coeff_monomial_exp(2 - 1j, 3, 0.1 + 0.7j, 4.0, 5)
    oracle = coeff_quadrature_oracle(model, 4.0, 5, tol=1e-13 * scale)
    assert abs(closed - oracle) <= 1e-10 * scale


def test_real_proper_matches_oracle():
    model = build_model([(0.223, [1])])
    scale = data_scale(model, 3.0)
    oracle = coeff_quadrature_oracle(model, 3.0, 5, tol=1e-13 * scale)
    assert abs(coeff_real_proper(1, 0.223, 3.0, 5) - oracle) <= 1e-10 * scale


def test_y1_matches_oracle(y1):
    scale = data_scale(y1, 6.0)
    oracle = coeff_quadrature_oracle(y1, 6.0, 8, tol=1e-13 * scale)
    assert abs(coeff_model(y1, 6.0, 8) - oracle) <= 1e-10 * scale


def test_random_models_match_oracle(rng):
    ks = np.arange(-20, 21)
    periods = (1.0, 3.0, 8.0, 2 * np.pi)
    for trial in range(50):
        P = periods[trial % len(periods)]
        model = random_model(rng)
        # exp(2 pi Re(lambda) P) reaches e^50: compare relative to the signal size
        scale = data_scale(model, P)
        oracle = coeff_quadrature_oracle_many(model, P, ks, tol=1e-12 * scale)
        closed = np.array([coeff_model(model, P, int(k)) for k in ks])
        assert np.max(np.abs(closed - oracle)) <= 1e-9 * scale


def test_near_periodic_frequency_matches_oracle():
    P = 2.0
    for gap in (1e-2, 1e-4, 1e-7):
        lam = 3j / P + gap
        model = build_model([(lam, [0, 0, 0, 0, 1.5 - 0.5j])])
        scale = data_scale(model, P)
        oracle = coeff_quadrature_oracle_many(model, P, [2, 3, 4], tol=1e-13 * scale)
        closed = [coeff_monomial_exp(1.5 - 0.5j, 4, lam, P, k) for k in (2, 3, 4)]
        assert np.max(np.abs(closed - oracle)) <= 1e-10 * scale
        assert coeff_proper(1.0, lam, P, 3) == pytest.approx(
            complex(coeff_quadrature_oracle(build_model([(lam, [1.0])]), P, 3)), abs=1e-10
        )


def test_confluent_params_single_proper_term():
    P, gamma, lam = 2.0, 1.5 - 0.5j, -0.2 + 0.3j
    pf = confluent_params(build_model([(lam, [gamma])]), P)
    (cluster,) = pf.clusters
    assert not cluster.periodic
    assert cluster.pole == pytest.approx(-1j * lam * P)
    expected = gamma * (1 - np.exp(2 * np.pi * lam * P)) / (2j * np.pi)
    assert cluster.coefficients[0] == pytest.approx(expected, rel=1e-14)


def test_confluent_params_periodic_proper_term():
    pf = confluent_params(build_model([(3j / 4.0, [2.0])]), 4.0)
    (cluster,) = pf.clusters
    assert cluster.periodic
    assert cluster.coefficients == ()
    assert pf.sigma == {3}


def test_confluent_params_y4(y4):
    pf = confluent_params(y4, 8.0)
    poles = [c.pole for c in pf.clusters]
    assert poles[0] == pytest.approx(-5.84 + 0.8j)
    assert poles[1] == pytest.approx(-25.437 - 0.4j, abs=1e-3)
    assert poles[2] == 12
    assert [len(c.coefficients) for c in pf.clusters] == [3, 2, 3]
    assert pf.periodic_flags == (False, False, True)
    assert pf.order == 9


def test_partial_fraction_reproduces_coefficients(rng, y4):
    models = [(y4, 8.0)] + [(random_model(rng), P) for P in (1.0, 3.0, 8.0)]
    for model, P in models:
        pf = confluent_params(model, P)
        for k in range(-20, 21):
            if k in pf.sigma:
                continue
            expected = coeff_model(model, P, k)
            assert abs(eval_partial_fraction(pf, k) - expected) <= 1e-10 * max(1.0, abs(expected))


def test_periodic_spike_is_exact():
    model = build_model([(5j / 3.0, [1.7 - 0.2j])])
    for k in range(-20, 21):
        if k != 5:
            assert coeff_model(model, 3.0, k) == 0


def test_eval_partial_fraction_rejects_pole():
    pf = confluent_params(build_model([(-0.2 + 0.3j, [1])]), 1.0)
    with pytest.raises(ValidationError):
        eval_partial_fraction(pf, pf.clusters[0].pole)


def test_coeff_jacobian_matches_finite_differences():
    P = 2.0
    lam, gammas = 0.1 + 0.4j, [1 - 0.5j, 0.3j]
    ks = [-2, 0, 1, 3, 5]

    def coefficients(shifted):
        model = build_model([(shifted, gammas), (3j / P, [0.7])])
        return np.array([coeff_model(model, P, k) for k in ks])

    J = coeff_jacobian(build_model([(lam, gammas), (3j / P, [0.7])]), P, ks)
    # frequency and two gammas, then only the gamma of the periodic term
    assert J.shape == (5, 4)
    h = 1e-6
    assert np.allclose(J[:, 0], (coefficients(lam + h) - coefficients(lam - h)) / (2 * h), rtol=1e-7)
    assert np.allclose(J[:, 2], [coeff_monomial_exp(1.0, 1, lam, P, k) for k in ks])
    assert list(J[:, 3]) == [1 if k == 3 else 0 for k in ks]
    assert coeff_jacobian(ExponentialSumModel(), P, ks).shape == (5, 0)

from math import comb, factorial
from typing import Iterable, Optional

import numpy as np
from scipy import integrate

from expsum.core.config import settings
from expsum.core.exceptions import QuadratureError, ValidationError
from expsum.core.logging import app_logger
from expsum.schemas.fourier import (
    ConfluentPartialFraction,
    FourierDataset,
    PartialFractionCluster,
)
from expsum.schemas.model import ExponentialSumModel
from expsum.services.model import evaluate

TWO_PI_I = 2j * np.pi


def _check_period(P: float) -> None:
    if not P > 0:
        raise ValidationError(f"period must be positive, got {P}")


def periodic_index(lam: complex, P: float, tol: Optional[float] = None) -> Optional[int]:
    """
    Return n when -i lambda P is the integer n (within tol), else None.
    """
    tol = settings.PERIODICITY_TOL if tol is None else tol
    shift = -1j * lam * P
    n = round(shift.real)
    gap = abs(shift - n)
    if gap > tol:
        return None
    if gap > 0:
        app_logger.warning(
            f"Frequency {lam} is {gap:.2e} away from P-periodic; treated as periodic index {n}"
        )
    return int(n)


def _exp_tail(z: complex, m: int, terms: int = 30) -> complex:
    # sum_{j>=0} z^j / (j+m+1)!, for small |z|
    term = 1.0 / factorial(m + 1)
    total = term + 0j
    for j in range(1, terms):
        term *= z / (j + m + 1)
        total += term
    return total


def _exp_partial_sum(z: complex, m: int) -> complex:
    # sum_{l=0}^{m} z^l / l!
    s = 1 + 0j
    for ell in range(m, 0, -1):
        s = 1 + z * s / ell
    return s


def coeff_monomial_exp(
    gamma: complex, m: int, lam: complex, P: float, k: int
) -> complex:
    """
    c_k of gamma t^m exp(2 pi lambda t) on [0, P].
    """
    _check_period(P)
    if m < 0:
        raise ValidationError("m must be non-negative")
    if m == 0:
        return coeff_proper(gamma, lam, P, k)

    n = periodic_index(lam, P)
    if n is not None:
        if k == n:
            return gamma * P**m / (m + 1)
        z = TWO_PI_I * (k - n)
        return -gamma * factorial(m) * P**m / z ** (m + 1) * (_exp_partial_sum(z, m) - 1)

    z = TWO_PI_I * (k + 1j * lam * P)
    E = np.exp(2 * np.pi * lam * P)
    if abs(z) < 1:
        # E = exp(-z) turns 1 - E S_m(z) into E z^(m+1) times the tail of exp(z)
        return complex(gamma * factorial(m) * P**m * E * _exp_tail(z, m))
    return complex(
        gamma * factorial(m) * P**m / z ** (m + 1) * (1 - E * _exp_partial_sum(z, m))
    )


def coeff_proper(gamma: complex, lam: complex, P: float, k: int) -> complex:
    """
    c_k of gamma exp(2 pi lambda t); a Kronecker spike for P-periodic lambda.
    """
    _check_period(P)
    n = periodic_index(lam, P)
    if n is not None:
        return complex(gamma) if k == n else 0j
    z = TWO_PI_I * (k + 1j * lam * P)
    E = np.exp(2 * np.pi * lam * P)
    if abs(z) < 1:
        return complex(gamma * E * _exp_tail(z, 0))
    return complex(gamma * (1 - E) / z)


def coeff_real_proper(gamma: float, alpha: float, P: float, k: int) -> complex:
    """
    c_k of the real term gamma exp(2 pi alpha t), alpha != 0.
    """
    _check_period(P)
    if alpha == 0:
        raise ValidationError("alpha must be nonzero")
    x = np.pi * alpha * P
    scale = gamma * np.exp(x) * np.sinh(x) / (np.pi * (alpha**2 * P**2 + k**2))
    return complex(scale * P * alpha, scale * k)


def coeff_model(model: ExponentialSumModel, P: float, k: int) -> complex:
    _check_period(P)
    total = 0j
    for term in model.terms:
        for m, gamma in enumerate(term.gammas):
            total += coeff_monomial_exp(gamma, m, term.lambda_, P, k)
    return total


def make_dataset(
    model: ExponentialSumModel, P: float, indices: Iterable[int]
) -> FourierDataset:
    ks = [int(k) for k in indices]
    return FourierDataset(
        period=P, indices=ks, coefficients=[coeff_model(model, P, k) for k in ks]
    )


def confluent_params(model: ExponentialSumModel, P: float) -> ConfluentPartialFraction:
    """
    Partial-fraction form of k -> c_k(y).

    A term with C = -i lambda P not an integer contributes
    sum_{l=0}^{n} A_l / (k - C)^(l+1); a P-periodic term contributes the
    n coefficients A*_0..A*_{n-1} plus its value at k = C.
    """
    _check_period(P)
    clusters = []
    for term in model.terms:
        C = complex(-1j * term.lambda_ * P)
        gammas = term.gammas
        n_j = term.degree
        n = periodic_index(term.lambda_, P)

        if n is not None:
            coefficients = []
            for ell in range(n_j):
                tail = sum(P**m * comb(m, ell) * gammas[m] for m in range(ell + 1, n_j + 1))
                coefficients.append(-factorial(ell) / TWO_PI_I ** (ell + 1) * tail)
            clusters.append(
                PartialFractionCluster(pole=complex(n), coefficients=coefficients, periodic=True)
            )
            continue

        E = np.exp(TWO_PI_I * C)
        coefficients = []
        for ell in range(n_j + 1):
            tail = sum(P**m * comb(m, ell) * gammas[m] for m in range(ell + 1, n_j + 1))
            coefficients.append(
                factorial(ell)
                / TWO_PI_I ** (ell + 1)
                * (gammas[ell] * P**ell * (1 - E) - E * tail)
            )
        clusters.append(PartialFractionCluster(pole=C, coefficients=coefficients))
    return ConfluentPartialFraction(clusters=tuple(clusters))


def eval_partial_fraction(pf: ConfluentPartialFraction, k: complex) -> complex:
    """
    sum over clusters of sum_l A_l / (k - C)^(l+1).
    """
    total = 0j
    for cluster in pf.clusters:
        if not cluster.coefficients:
            continue
        shift = k - cluster.pole
        if shift == 0:
            raise ValidationError(f"point {k} coincides with the pole {cluster.pole}")
        for ell, a in enumerate(cluster.coefficients):
            total += a / shift ** (ell + 1)
    return total


def coeff_quadrature_oracle(
    model: ExponentialSumModel, P: float, k: int, tol: Optional[float] = None
) -> complex:
    """
    (1/P) int_0^P y(t) exp(-2 pi i k t / P) dt by adaptive Gauss-Kronrod
    quadrature, evaluating y pointwise.
    """
    return complex(coeff_quadrature_oracle_many(model, P, [k], tol)[0])


def coeff_quadrature_oracle_many(
    model: ExponentialSumModel, P: float, indices: Iterable[int], tol: Optional[float] = None
) -> np.ndarray:
    """
    Quadrature coefficients for several indices at once: one adaptive
    Gauss-Kronrod integration of the vector of real and imaginary parts,
    split into panels at least as fine as the fastest oscillation.
    """
    _check_period(P)
    tol = settings.QUAD_TOL if tol is None else tol
    if not tol > 0:
        raise ValidationError("tol must be positive")
    ks = np.asarray([int(k) for k in indices], dtype=float)
    if ks.size == 0:
        return np.zeros(0, dtype=complex)

    panels = max(16, 4 * int(np.abs(ks).max()))
    edges = np.linspace(0.0, P, panels + 1)

    def integrand(t: float) -> np.ndarray:
        values = evaluate(model, t) * np.exp(-TWO_PI_I * ks * t / P)
        return np.concatenate([values.real, values.imag])

    result, error, info = integrate.quad_vec(
        integrand,
        0.0,
        P,
        epsabs=tol * P,
        epsrel=0.0,
        norm="max",
        limit=settings.QUAD_LIMIT * panels,
        points=edges[1:-1],
        full_output=True,
    )
    error /= P
    if info.status != 0 and error > tol:
        raise QuadratureError(
            f"Quadrature for k={ks.astype(int).tolist()} reached error {error:.2e} > {tol:.2e}: "
            f"{info.message}"
        )
    return (result[: ks.size] + 1j * result[ks.size :]) / P


def coeff_jacobian(model: ExponentialSumModel, P: float, indices: Iterable[int]) -> np.ndarray:
    """
    Derivatives of c_k(y) with respect to the free parameters of the model:
    for each term its frequency (unless P-periodic, where it is pinned to an
    integer index) followed by gamma_0..gamma_n.

    d c_k / d lambda = 2 pi sum_m gamma_m c_k[t^(m+1) exp(2 pi lambda t)].
    """
    _check_period(P)
    ks = [int(k) for k in indices]
    columns = []
    for term in model.terms:
        lam = term.lambda_
        if periodic_index(lam, P) is None:
            columns.append(
                [
                    2 * np.pi
                    * sum(coeff_monomial_exp(g, m + 1, lam, P, k) for m, g in enumerate(term.gammas))
                    for k in ks
                ]
            )
        for m in range(len(term.gammas)):
            columns.append([coeff_monomial_exp(1.0, m, lam, P, k) for k in ks])
    if not columns:
        return np.zeros((len(ks), 0), dtype=complex)
    return np.array(columns, dtype=complex).T

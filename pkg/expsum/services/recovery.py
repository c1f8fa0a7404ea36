from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from expsum.core.config import settings
from expsum.core.exceptions import ConvergenceError, RecoveryError, ValidationError
from expsum.core.logging import app_logger
from expsum.schemas.fourier import (
    ConfluentPartialFraction,
    FourierDataset,
)
from expsum.schemas.model import ExponentialSumModel, ExpTerm
from expsum.schemas.rational import (
    AaaDiagnostics,
    BarycentricRational,
    PoleCluster,
    PoleClusterSet,
)
from expsum.schemas.recovery import RecoveryMode, RecoveryOptions, RecoveryReport
from expsum.services.aaa import aaa_fit, bary_eval, prune_zero_weights
from expsum.services.fourier import TWO_PI_I, coeff_jacobian, coeff_model, eval_partial_fraction
from expsum.services.model import canonicalize, model_distance
from expsum.services.partial_fractions import (
    cluster_poles,
    integer_gap,
    poles,
    solve_residues_confluent,
    solve_residues_simple,
)

REPRODUCTION_TOL = 1e-6


def freqs_from_poles(C: complex, P: float) -> complex:
    """lambda = i C / P, the inverse of C = -i lambda P."""
    if not P > 0:
        raise ValidationError("period must be positive")
    return complex(1j * C / P)


def gammas_from_A(A: Sequence[complex], C: complex, P: float) -> Tuple[complex, ...]:
    """
    Polynomial coefficients of a non-periodic term from its partial-fraction
    coefficients A_0..A_n by back substitution in the upper triangular map

        A_l = l!/(2 pi i)^(l+1) (gamma_l P^l (1-E) - E sum_{m>l} C(m,l) P^m gamma_m),

    E = exp(2 pi i C).
    """
    n = len(A) - 1
    if n < 0:
        raise ValidationError("A must not be empty")
    E = np.exp(TWO_PI_I * C)
    if abs(1 - E) < 1e-12:
        raise RecoveryError(f"pole {C} is numerically periodic; cannot invert")

    T = np.zeros((n + 1, n + 1), dtype=complex)
    for ell in range(n + 1):
        factor = factorial(ell) / TWO_PI_I ** (ell + 1)
        T[ell, ell] = factor * P**ell * (1 - E)
        for m in range(ell + 1, n + 1):
            T[ell, m] = -factor * E * comb(m, ell) * P**m
    gammas = scipy.linalg.solve_triangular(T, np.asarray(A, dtype=complex))
    return tuple(complex(g) for g in gammas)


def gammas_from_Astar(
    Astar: Sequence[complex], c_breve: complex, P: float
) -> Tuple[complex, ...]:
    """
    Polynomial coefficients of a P-periodic term from A*_0..A*_{n-1} and
    c_breve, its own contribution to the Fourier coefficient at its index.
    """
    n = len(Astar)
    if n == 0:
        return (complex(c_breve),)

    M = np.zeros((n, n), dtype=complex)
    for ell in range(n):
        factor = -factorial(ell) / TWO_PI_I ** (ell + 1)
        for m in range(ell + 1, n + 1):
            M[ell, m - 1] = factor * comb(m, ell) * P**m
    upper = scipy.linalg.solve_triangular(M, np.asarray(Astar, dtype=complex))
    first_row = np.array([P**m / (m + 1) for m in range(1, n + 1)])
    gamma0 = c_breve - first_row @ upper
    return (complex(gamma0),) + tuple(complex(g) for g in upper)


def _fit(
    points: np.ndarray, values: np.ndarray, opts: RecoveryOptions
) -> Tuple[BarycentricRational, AaaDiagnostics]:
    L = len(points)
    if L < 3:
        raise ConvergenceError(
            f"only {L} coefficients given: insufficient coefficients for recovery"
        )
    jmax = opts.jmax if opts.jmax is not None else L // 2
    r, diagnostics = aaa_fit(points, values, tol=opts.tol, jmax=jmax)
    if not diagnostics.converged:
        raise ConvergenceError(
            f"AAA stopped after {diagnostics.iterations} steps with residual "
            f"{diagnostics.final_residual:.3e}: insufficient coefficients for the signal order"
        )
    app_logger.info(
        f"AAA converged in {diagnostics.iterations} steps (residual {diagnostics.final_residual:.3e})"
    )
    return r, diagnostics


def _reproduction_warnings(
    model: ExponentialSumModel, dataset: FourierDataset
) -> List[str]:
    values = np.asarray(dataset.coefficients, dtype=complex)
    recovered = np.array([coeff_model(model, dataset.period, k) for k in dataset.indices])
    scale = max(1.0, float(np.max(np.abs(values))))
    mismatch = float(np.max(np.abs(recovered - values))) / scale
    if not mismatch <= REPRODUCTION_TOL:
        message = f"Recovered model reproduces the input coefficients only to {mismatch:.2e}"
        app_logger.warning(message)
        return [message]
    return []


def _fit_warnings(diagnostics: AaaDiagnostics, L: int, opts: RecoveryOptions) -> List[str]:
    warnings = []
    jmax = opts.jmax if opts.jmax is not None else L // 2
    if diagnostics.iterations >= jmax:
        warnings.append(
            f"AAA converged only at the last allowed step (jmax={jmax}); "
            f"too few coefficients remain to validate the fit"
        )
    resolution = opts.tol * diagnostics.scale
    if resolution > settings.RESOLUTION_WARN:
        warnings.append(
            f"Stop rule resolves coefficients only to {resolution:.2e}; "
            f"terms contributing less are not recoverable"
        )
    for message in warnings:
        app_logger.warning(message)
    return warnings


def _weight_warnings(r: BarycentricRational, zero_tol: float) -> List[str]:
    _, _, w = r.arrays()
    ratios = np.abs(w) / np.abs(w).max()
    warnings = []
    for z, ratio in zip(r.support, ratios):
        if zero_tol < ratio <= np.sqrt(zero_tol):
            message = (
                f"Support point {z.real:g} has relative weight {ratio:.2e}, close to the "
                f"zero-weight threshold; periodic classification is uncertain"
            )
            app_logger.warning(message)
            warnings.append(message)
    return warnings


def error_estimate(
    model: ExponentialSumModel, dataset: FourierDataset, diagnostics: AaaDiagnostics
) -> float:
    """
    First-order bound on the parameter error: the fit residual (at least a
    few ulps of the data scale) over the smallest singular value of the
    coefficient Jacobian.
    """
    noise = max(diagnostics.final_residual, 16 * np.finfo(float).eps * diagnostics.scale)
    J = coeff_jacobian(model, dataset.period, dataset.indices)
    rows, cols = J.shape
    if cols == 0:
        return 0.0
    if rows < cols or not np.all(np.isfinite(J)):
        return float("inf")
    smallest = float(np.linalg.svd(J, compute_uv=False)[-1])
    if smallest == 0:
        return float("inf")
    return float(np.sqrt(rows) * noise / smallest)


def _check_finite(terms: Sequence[ExpTerm]) -> None:
    for term in terms:
        if not all(np.isfinite(x) for x in (term.lambda_,) + term.gammas):
            raise RecoveryError(f"recovered term with frequency {term.lambda_} is not finite")


def _finish(
    dataset: FourierDataset,
    opts: RecoveryOptions,
    mode: RecoveryMode,
    terms: List[ExpTerm],
    reference: Optional[ExponentialSumModel],
    **fields,
) -> RecoveryReport:
    _check_finite(terms)
    model = canonicalize(ExponentialSumModel(terms=tuple(terms)), opts.model_merge_tol)
    diagnostics: AaaDiagnostics = fields["aaa"]
    warnings = list(fields.pop("warnings", ()))
    warnings += _fit_warnings(diagnostics, len(dataset.indices), opts)
    warnings += _reproduction_warnings(model, dataset)

    estimate = error_estimate(model, dataset, diagnostics)
    if not estimate <= settings.SENSITIVITY_WARN:
        message = f"Recovered parameters are sensitive to the data: estimated error {estimate:.2e}"
        app_logger.warning(message)
        warnings.append(message)

    distance = None
    if reference is not None:
        distance = model_distance(canonicalize(reference, opts.model_merge_tol), model)
        app_logger.info(
            f"Distance to reference: freq {distance.freq_err:.3e}, coef {distance.coef_err:.3e}"
        )
    return RecoveryReport(
        model=model,
        period=dataset.period,
        mode=mode,
        reference_distance=distance,
        error_estimate=estimate,
        warnings=tuple(warnings),
        **fields,
    )


def _periodic_sigma(
    dataset: FourierDataset, pf: ConfluentPartialFraction, pruned: Sequence[complex]
) -> List[int]:
    sigma = set(pf.sigma) | {int(round(p.real)) for p in pruned}
    missing = sorted(k for k in sigma if k not in dataset.indices)
    if missing:
        raise RecoveryError(f"periodic indices {missing} are not among the given coefficients")
    return sorted(sigma)


def _coherence_warnings(
    r: BarycentricRational,
    dataset: FourierDataset,
    sigma: Sequence[int],
    tol: float,
    scale: float,
) -> List[str]:
    worst = 0.0
    for k, c in dataset.entries:
        if k in sigma:
            continue
        worst = max(worst, abs(bary_eval(r, k) - c))
    if worst > 10 * tol * scale:
        message = f"Rational fit deviates from the data by {worst:.2e} off the periodic indices"
        app_logger.warning(message)
        return [message]
    return []


def _recover_extended(
    dataset: FourierDataset, opts: RecoveryOptions, reference: Optional[ExponentialSumModel]
) -> RecoveryReport:
    P = dataset.period
    values = np.asarray(dataset.coefficients, dtype=complex)
    points = np.asarray(dataset.indices, dtype=complex)

    # Step 1: rational fit and non-achievable values
    r, diagnostics = _fit(points, values, opts)
    pruned_r, pruned = prune_zero_weights(r, opts.zero_weight_tol)

    # Step 2: poles, multiplicities, partial fraction
    raw = poles(pruned_r) if pruned_r.degree >= 1 else ()
    clusters = cluster_poles(raw, opts.merge_tol)
    periodic_centers = {
        int(round(c.center.real))
        for c in clusters.clusters
        if integer_gap(c.center) <= opts.integer_tol
    }
    exclude = [complex(k) for k in periodic_centers | {int(round(p.real)) for p in pruned}]
    pf = solve_residues_confluent(
        pruned_r.support, pruned_r.values, clusters, exclude=exclude, integer_tol=opts.integer_tol
    )
    sigma = _periodic_sigma(dataset, pf, pruned)
    if sigma:
        app_logger.info(f"Periodic indices: {sigma}")

    # Step 3: non-periodic terms
    terms: List[ExpTerm] = []
    non_periodic = [c for c in pf.clusters if not c.periodic]
    periodic = [c for c in pf.clusters if c.periodic]
    for cluster in non_periodic:
        terms.append(
            ExpTerm(
                lambda_=freqs_from_poles(cluster.pole, P),
                gammas=gammas_from_A(cluster.coefficients, cluster.pole, P),
            )
        )

    # Step 4: periodic terms from the remaining part of c_k
    lookup: Dict[int, complex] = dict(dataset.entries)
    rest_pf = ConfluentPartialFraction(clusters=tuple(non_periodic))
    for cluster in periodic:
        k = cluster.index
        others = ConfluentPartialFraction(
            clusters=tuple(c for c in periodic if c is not cluster)
        )
        c_breve = (
            lookup[k] - eval_partial_fraction(rest_pf, k) - eval_partial_fraction(others, k)
        )
        terms.append(
            ExpTerm(
                lambda_=1j * k / P,
                gammas=gammas_from_Astar(cluster.coefficients, c_breve, P),
            )
        )

    # proper periodic terms leave a pruned point but no pole
    for k in sigma:
        if k in pf.sigma:
            continue
        gamma = lookup[k] - bary_eval(pruned_r, k)
        terms.append(ExpTerm(lambda_=1j * k / P, gammas=(gamma,)))

    warnings = list(pf.warnings) + _weight_warnings(r, opts.zero_weight_tol)
    warnings += _coherence_warnings(pruned_r, dataset, sigma, opts.tol, diagnostics.scale)
    return _finish(
        dataset,
        opts,
        RecoveryMode.EXTENDED,
        terms,
        reference,
        sigma=tuple(sigma),
        pruned=pruned,
        aaa=diagnostics,
        clusters=clusters,
        condition_estimate=pf.condition_estimate,
        warnings=warnings,
    )


def _singletons(raw: Sequence[complex]) -> PoleClusterSet:
    return PoleClusterSet(
        raw_poles=raw,
        clusters=tuple(PoleCluster(center=p, count=1) for p in raw),
        merge_tol=0.0,
    )


def _recover_proper(
    dataset: FourierDataset, opts: RecoveryOptions, reference: Optional[ExponentialSumModel]
) -> RecoveryReport:
    P = dataset.period
    values = np.asarray(dataset.coefficients, dtype=complex)
    points = np.asarray(dataset.indices, dtype=complex)

    r, diagnostics = _fit(points, values, opts)
    pruned_r, pruned = prune_zero_weights(r, opts.zero_weight_tol)
    raw = poles(pruned_r) if pruned_r.degree >= 1 else ()
    for rho in raw:
        if integer_gap(rho) <= opts.integer_tol:
            raise RecoveryError(
                f"pole {rho} is an integer; the signal needs the extended recovery"
            )
    residues = solve_residues_simple(pruned_r, raw) if raw else ()

    sigma = sorted({int(round(p.real)) for p in pruned})
    missing = [k for k in sigma if k not in dataset.indices]
    if missing:
        raise RecoveryError(f"periodic indices {missing} are not among the given coefficients")

    terms = [
        ExpTerm(lambda_=freqs_from_poles(rho, P), gammas=gammas_from_A([g], rho, P))
        for rho, g in zip(raw, residues)
    ]
    lookup = dict(dataset.entries)
    for k in sigma:
        terms.append(ExpTerm(lambda_=1j * k / P, gammas=(lookup[k] - bary_eval(pruned_r, k),)))

    warnings = _weight_warnings(r, opts.zero_weight_tol)
    warnings += _coherence_warnings(pruned_r, dataset, sigma, opts.tol, diagnostics.scale)
    return _finish(
        dataset,
        opts,
        RecoveryMode.PROPER,
        terms,
        reference,
        sigma=tuple(sigma),
        pruned=pruned,
        aaa=diagnostics,
        clusters=_singletons(raw),
        warnings=warnings,
    )


def recover_real_proper(
    dataset: FourierDataset,
    opts: Optional[RecoveryOptions] = None,
    reference: Optional[ExponentialSumModel] = None,
) -> RecoveryReport:
    """
    Recovery of a real sum y(t) = sum_j gamma_j exp(2 pi alpha_j t) from
    c_k, k >= 1. The modified coefficients Re c_k + (i/k) Im c_k are a
    rational function of k^2 with poles -(alpha_j P)^2 and residues
    A_j + i B_j, A_j = alpha_j P B_j. |alpha_j| is read off the pole and
    its sign off A_j / B_j.
    """
    opts = opts or RecoveryOptions(mode=RecoveryMode.REAL_PROPER)
    P = dataset.period
    ks = np.asarray(dataset.indices, dtype=float)
    if ks.size and ks.min() < 1:
        raise ValidationError("real recovery needs indices k >= 1")
    c = np.asarray(dataset.coefficients, dtype=complex)
    modified = c.real + 1j * c.imag / ks

    z = ks**2
    r, diagnostics = _fit(z, modified, opts)
    raw = poles(r)
    # every coefficient enters the residue fit
    residues = solve_residues_simple(r, raw, points=z, values=modified)

    terms: List[ExpTerm] = []
    warnings: List[str] = []
    for rho, g in zip(raw, residues):
        if abs(rho.imag) > settings.IMAG_DROP_TOL * (1 + abs(rho)):
            raise RecoveryError(f"pole {rho} is not real; data is not a real proper sum")
        C = -rho.real
        if C <= 0:
            raise RecoveryError(f"pole {rho} is not negative; data is not a real proper sum")
        A, B = g.real, g.imag
        if abs(B) <= 1e-12 * abs(A):
            raise RecoveryError(f"residue {g} has vanishing imaginary part; alpha undefined")
        ratio = A / B
        if abs(C - ratio**2) > 1e-6 * (1 + abs(C)):
            message = f"Pole {C:.6g} disagrees with (A/B)^2 = {ratio**2:.6g}"
            app_logger.warning(message)
            warnings.append(message)
        # |alpha P| from the pole, its sign from the residue
        alpha = np.copysign(np.sqrt(C), ratio) / P
        x = np.pi * alpha * P
        gamma = B * np.pi / (np.exp(x) * np.sinh(x))
        terms.append(ExpTerm(lambda_=complex(alpha), gammas=(complex(gamma),)))

    return _finish(
        dataset,
        opts,
        RecoveryMode.REAL_PROPER,
        terms,
        reference,
        aaa=diagnostics,
        clusters=_singletons(raw),
        warnings=warnings,
    )


def recover(
    dataset: FourierDataset,
    opts: Optional[RecoveryOptions] = None,
    reference: Optional[ExponentialSumModel] = None,
) -> RecoveryReport:
    """
    Recover an exponential sum from its Fourier coefficients on [0, P].

    ``auto`` and ``extended`` run the general pipeline that handles
    multiple poles and P-periodic terms; ``proper`` assumes simple poles;
    ``real_proper`` dispatches to recover_real_proper.
    """
    opts = opts or RecoveryOptions()
    mode = opts.resolved_mode
    app_logger.info(
        f"Recovering from {len(dataset.indices)} coefficients (P={dataset.period}, mode={mode.value})"
    )
    if mode == RecoveryMode.REAL_PROPER:
        return recover_real_proper(dataset, opts, reference)
    if mode == RecoveryMode.PROPER:
        return _recover_proper(dataset, opts, reference)
    return _recover_extended(dataset, opts, reference)

from typing import List, Optional, Sequence, Tuple

import numpy as np

from expsum.core.config import settings
from expsum.core.exceptions import ValidationError
from expsum.schemas.model import ExponentialSumModel, ExpTerm, ModelDistance


def evaluate(model: ExponentialSumModel, t: float) -> complex:
    """
    y(t) = sum_j (sum_m gamma_jm t^m) exp(2 pi lambda_j t).

    Extreme Re(lambda) * t overflows to an infinite value.
    """
    total = 0j
    with np.errstate(over="ignore", invalid="ignore"):
        for term in model.terms:
            # np.polyval expects the highest power first (Horner)
            poly = np.polyval(term.gammas[::-1], t)
            total += complex(poly * np.exp(2 * np.pi * term.lambda_ * t))
    return total


def evaluate_many(model: ExponentialSumModel, ts: Sequence[float]) -> np.ndarray:
    t = np.asarray(ts, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        for term in model.terms:
            out += np.polyval(term.gammas[::-1], t) * np.exp(2 * np.pi * term.lambda_ * t)
    return out


def _trim_leading(gammas: List[complex], rel_tol: float) -> List[complex]:
    scale = max((abs(g) for g in gammas), default=0.0)
    if scale == 0.0:
        return []
    trimmed = list(gammas)
    while trimmed and abs(trimmed[-1]) <= rel_tol * scale:
        trimmed.pop()
    return trimmed


def canonicalize(
    model: ExponentialSumModel, merge_tol: Optional[float] = None
) -> ExponentialSumModel:
    """
    Merge terms whose frequencies lie within merge_tol, drop vanishing
    leading coefficients and empty terms, sort by (Re lambda, Im lambda).
    """
    tol = settings.MODEL_MERGE_TOL if merge_tol is None else merge_tol
    if tol < 0:
        raise ValidationError("merge_tol must be non-negative")

    # each group keeps the frequency of its first member
    groups: List[Tuple[complex, List[complex]]] = []
    for term in model.terms:
        for i, (lam, gammas) in enumerate(groups):
            if abs(term.lambda_ - lam) <= tol:
                size = max(len(gammas), len(term.gammas))
                merged = [0j] * size
                for m, g in enumerate(gammas):
                    merged[m] += g
                for m, g in enumerate(term.gammas):
                    merged[m] += g
                groups[i] = (lam, merged)
                break
        else:
            groups.append((term.lambda_, list(term.gammas)))

    terms = []
    for lam, gammas in groups:
        trimmed = _trim_leading(gammas, settings.LEADING_COEF_TOL)
        if trimmed:
            terms.append(ExpTerm(lambda_=lam, gammas=trimmed))
    terms.sort(key=lambda term: (term.lambda_.real, term.lambda_.imag))
    return ExponentialSumModel(terms=tuple(terms))


def _greedy_matching(a: np.ndarray, b: np.ndarray) -> List[Tuple[int, int]]:
    dist = np.abs(a[:, None] - b[None, :])
    pairs = []
    for _ in range(min(a.size, b.size)):
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        pairs.append((int(i), int(j)))
        dist[i, :] = np.inf
        dist[:, j] = np.inf
    return pairs


def model_distance(a: ExponentialSumModel, b: ExponentialSumModel) -> ModelDistance:
    """
    Infinity-norm errors between two canonical models, terms paired by
    repeatedly taking the closest remaining pair of frequencies.
    """
    if a.length != b.length:
        return ModelDistance(freq_err=float("inf"), coef_err=float("inf"), matched=False)

    freq_err = 0.0
    coef_err = 0.0
    matched = True
    lam_a = np.asarray(a.frequencies, dtype=complex)
    lam_b = np.asarray(b.frequencies, dtype=complex)
    for i, j in _greedy_matching(lam_a, lam_b):
        ta, tb = a.terms[i], b.terms[j]
        freq_err = max(freq_err, abs(ta.lambda_ - tb.lambda_))
        if ta.degree != tb.degree:
            matched = False
        size = max(len(ta.gammas), len(tb.gammas))
        ga = np.zeros(size, dtype=complex)
        gb = np.zeros(size, dtype=complex)
        ga[: len(ta.gammas)] = ta.gammas
        gb[: len(tb.gammas)] = tb.gammas
        coef_err = max(coef_err, float(np.max(np.abs(ga - gb))))
    return ModelDistance(freq_err=freq_err, coef_err=coef_err, matched=matched)


def cosine_sum_model(
    amplitudes: Sequence[Sequence[float]],
    frequencies: Sequence[float],
    phases: Optional[Sequence[float]] = None,
    dampings: Optional[Sequence[float]] = None,
) -> ExponentialSumModel:
    """
    Real sum of damped cosines with polynomial amplitudes,

        y(t) = sum_j (sum_m a_jm t^m) exp(2 pi d_j t) cos(2 pi f_j t + b_j),

    written as an extended exponential sum with conjugate frequency pairs.
    A zero frequency gives a single real term.
    """
    count = len(frequencies)
    phases = [0.0] * count if phases is None else list(phases)
    dampings = [0.0] * count if dampings is None else list(dampings)
    if not (len(amplitudes) == len(phases) == len(dampings) == count):
        raise ValidationError("amplitudes, frequencies, phases and dampings differ in length")

    terms = []
    for amp, freq, phase, damp in zip(amplitudes, frequencies, phases, dampings):
        amp = [complex(a) for a in amp]
        if freq == 0:
            terms.append(ExpTerm(lambda_=complex(damp), gammas=[a * np.cos(phase) for a in amp]))
            continue
        half = 0.5 * np.exp(1j * phase)
        terms.append(ExpTerm(lambda_=complex(damp, freq), gammas=[a * half for a in amp]))
        terms.append(
            ExpTerm(lambda_=complex(damp, -freq), gammas=[a * np.conj(half) for a in amp])
        )
    return canonicalize(ExponentialSumModel(terms=tuple(terms)))

from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from expsum.core.config import settings
from expsum.core.exceptions import ValidationError
from expsum.core.logging import app_logger
from expsum.schemas.rational import AaaDiagnostics, BarycentricRational


def _side_condition_weights(
    fs: np.ndarray, loewner: np.ndarray, degenerate_tol: float
) -> Tuple[np.ndarray, bool]:
    """
    Unit vector in the span of the right singular vectors of the two
    smallest singular values that satisfies w^T f_S = 0 (plain transpose).
    """
    _, _, vh = scipy.linalg.svd(loewner, full_matrices=True)
    v = vh.conj().T
    v1, v2 = v[:, -1], v[:, -2]
    a, b = v1 @ fs, v2 @ fs
    norm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if norm < degenerate_tol * np.linalg.norm(fs):
        return v1, True
    w = b * v1 - a * v2
    return w / np.linalg.norm(w), False


def aaa_fit(
    points: Sequence[complex],
    values: Sequence[complex],
    tol: Optional[float] = None,
    jmax: Optional[int] = None,
) -> Tuple[BarycentricRational, AaaDiagnostics]:
    """
    Modified AAA iteration with the side conditions ||w||_2 = 1 and
    w^T f_S = 0, so the result has type (j-1, j) and decays at infinity.

    Step 1 seeds the support with the two largest |f| (earliest index on
    ties); every later step adds the non-support point of largest error
    (lowest index on ties). Stops once the largest error over non-support
    points drops below tol * max(1, ||f||_inf) or after jmax steps.
    """
    tol = settings.AAA_TOL if tol is None else tol
    z = np.asarray(points, dtype=complex)
    f = np.asarray(values, dtype=complex)
    L = z.size
    if f.size != L:
        raise ValidationError("points and values differ in length")
    if L < 3:
        raise ValidationError(f"AAA needs at least 3 points, got {L}")
    if np.unique(z).size != L:
        raise ValidationError("points must be pairwise distinct")
    if not tol > 0:
        raise ValidationError("tol must be positive")
    jmax = L // 2 if jmax is None else jmax
    if not 1 <= jmax <= L - 2:
        raise ValidationError(f"jmax must lie in [1, {L - 2}], got {jmax}")

    scale = max(1.0, float(np.max(np.abs(f))))
    order = np.argsort(-np.abs(f), kind="stable")
    support: List[int] = [int(order[0]), int(order[1])]
    history: List[float] = []
    degenerate: List[int] = []
    weights = np.zeros(0, dtype=complex)
    converged = False

    for j in range(1, jmax + 1):
        mask = np.ones(L, dtype=bool)
        mask[support] = False
        rest = np.flatnonzero(mask)
        zs, fs = z[support], f[support]

        cauchy = 1.0 / (z[rest, None] - zs[None, :])
        loewner = (f[rest, None] - fs[None, :]) * cauchy
        weights, flagged = _side_condition_weights(fs, loewner, settings.DEGENERATE_TOL)
        if flagged:
            degenerate.append(j)
            app_logger.warning(f"AAA step {j}: degenerate singular pair, using one vector")

        with np.errstate(divide="ignore", invalid="ignore"):
            r = (cauchy @ (weights * fs)) / (cauchy @ weights)
        err = np.abs(r - f[rest])
        err = np.where(np.isfinite(err), err, np.inf)
        residual = float(err.max())
        history.append(residual)
        app_logger.debug(f"AAA step {j}: support size {len(support)}, residual {residual:.3e}")

        if residual < tol * scale:
            converged = True
            break
        if j < jmax:
            support.append(int(rest[np.argmax(err)]))

    if not converged:
        app_logger.info(
            f"AAA reached jmax={jmax} with residual {history[-1]:.3e} (tol {tol * scale:.3e})"
        )

    rational = BarycentricRational(
        support=z[support], values=f[support], weights=weights
    )
    diagnostics = AaaDiagnostics(
        iterations=len(history),
        final_residual=history[-1],
        residual_history=history,
        converged=converged,
        degenerate_steps=degenerate,
        scale=scale,
    )
    return rational, diagnostics


def bary_eval(r: BarycentricRational, z: complex) -> complex:
    """
    Evaluate r at z. At a support point the stored value is returned, or
    the limit without that node when its weight is zero.
    """
    zs, fs, w = r.arrays()
    diff = z - zs
    hit = np.flatnonzero(diff == 0)
    if hit.size:
        j = int(hit[0])
        if w[j] != 0:
            return complex(fs[j])
        keep = np.arange(zs.size) != j
        zs, fs, w, diff = zs[keep], fs[keep], w[keep], diff[keep]
        if zs.size == 0:
            return complex(np.nan, np.nan)
    cauchy = 1.0 / diff
    with np.errstate(divide="ignore", invalid="ignore"):
        return complex((cauchy @ (w * fs)) / (cauchy @ w))


def bary_eval_many(r: BarycentricRational, zs: Sequence[complex]) -> np.ndarray:
    return np.array([bary_eval(r, z) for z in zs], dtype=complex)


def prune_zero_weights(
    r: BarycentricRational, zero_tol: Optional[float] = None
) -> Tuple[BarycentricRational, Tuple[complex, ...]]:
    """
    Drop support nodes with |w_j| <= zero_tol * max|w| and renormalize.
    The dropped points are the non-achievable values of the fit.
    """
    zero_tol = settings.ZERO_WEIGHT_TOL if zero_tol is None else zero_tol
    if zero_tol < 0:
        raise ValidationError("zero_tol must be non-negative")
    zs, fs, w = r.arrays()
    magnitude = np.abs(w)
    keep = magnitude > zero_tol * magnitude.max()
    if not keep.any():
        raise ValidationError("every barycentric weight is zero")
    removed = tuple(complex(p) for p in zs[~keep])
    if not removed:
        return r, ()
    app_logger.info(f"Pruned zero-weight support points: {[p.real for p in removed]}")
    kept = w[keep]
    pruned = BarycentricRational(
        support=zs[keep], values=fs[keep], weights=kept / np.linalg.norm(kept)
    )
    return pruned, removed

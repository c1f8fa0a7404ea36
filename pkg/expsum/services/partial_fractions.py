from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from expsum.core.config import settings
from expsum.core.exceptions import (
    PoleComputationError,
    RankDeficiencyError,
    ValidationError,
)
from expsum.core.logging import app_logger
from expsum.schemas.fourier import ConfluentPartialFraction, PartialFractionCluster
from expsum.schemas.rational import BarycentricRational, PoleCluster, PoleClusterSet


def poles(r: BarycentricRational) -> Tuple[complex, ...]:
    """
    Zeros of the barycentric denominator from the arrowhead pencil

        [0  w^T      ]         [0  0]
        [1  diag(z)  ]  - x *  [0  I]

    which has two infinite eigenvalues next to the J finite ones.
    """
    zs, _, w = r.arrays()
    m = zs.size
    if m < 2:
        raise ValidationError("poles need at least two support points")
    J = m - 1

    E = np.zeros((m + 1, m + 1), dtype=complex)
    E[0, 1:] = w
    E[1:, 0] = 1.0
    E[1:, 1:] = np.diag(zs)
    B = np.eye(m + 1, dtype=complex)
    B[0, 0] = 0.0

    eig = scipy.linalg.eigvals(E, B)
    bound = settings.INFINITE_EIG_FACTOR * max(1.0, float(np.max(np.abs(zs))))
    finite = eig[np.isfinite(eig)]
    finite = finite[np.abs(finite) <= bound]
    if finite.size < J:
        raise PoleComputationError(
            f"found {finite.size} finite eigenvalues, expected {J}"
        )
    if finite.size > J:
        finite = finite[np.argsort(np.abs(finite), kind="stable")[:J]]
    return tuple(sorted((complex(p) for p in finite), key=lambda p: (p.real, p.imag)))


def cluster_poles(raw: Sequence[complex], merge_tol: Optional[float] = None) -> PoleClusterSet:
    """
    Single-linkage clustering: poles closer than merge_tol (transitively)
    form one multiple pole located at their mean.
    """
    merge_tol = settings.POLE_MERGE_TOL if merge_tol is None else merge_tol
    if not merge_tol > 0:
        raise ValidationError("merge_tol must be positive")
    p = np.asarray(raw, dtype=complex)
    if p.size == 0:
        return PoleClusterSet(raw_poles=(), clusters=(), merge_tol=merge_tol)

    adjacency = csr_matrix(np.abs(p[:, None] - p[None, :]) < merge_tol)
    count, labels = connected_components(adjacency, directed=False)
    clusters = [
        PoleCluster(center=complex(p[labels == i].mean()), count=int(np.sum(labels == i)))
        for i in range(count)
    ]
    clusters.sort(key=lambda c: (c.center.real, c.center.imag))
    return PoleClusterSet(raw_poles=p, clusters=tuple(clusters), merge_tol=merge_tol)


def least_squares(matrix: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Column-pivoted QR solve. Returns the solution and the 2-norm condition
    number of the matrix.
    """
    rows, cols = matrix.shape
    if cols == 0:
        return np.zeros(0, dtype=complex), 1.0
    if rows < cols:
        raise RankDeficiencyError(f"{cols} unknowns but only {rows} conditions")

    q, r, piv = scipy.linalg.qr(matrix, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag[-1] <= np.finfo(float).eps * max(rows, cols) * diag[0]:
        raise RankDeficiencyError(
            f"least-squares matrix is rank deficient (|R| ratio {diag[-1] / diag[0]:.2e})"
        )
    y = scipy.linalg.solve_triangular(r, q.conj().T @ rhs)
    x = np.empty(cols, dtype=complex)
    x[piv] = y
    return x, float(np.linalg.cond(matrix))


def solve_residues_simple(
    r: BarycentricRational,
    pole_list: Sequence[complex],
    points: Optional[np.ndarray] = None,
    values: Optional[np.ndarray] = None,
) -> Tuple[complex, ...]:
    """
    Residues of r at simple poles, fitted on the support values or, when
    given, on all of points / values.
    """
    zs, fs, _ = r.arrays()
    rho = np.asarray(pole_list, dtype=complex)
    if rho.size != zs.size - 1:
        raise ValidationError(f"expected {zs.size - 1} poles, got {rho.size}")
    if points is not None:
        zs = np.asarray(points, dtype=complex)
        fs = np.asarray(values, dtype=complex)
    cauchy = 1.0 / (zs[:, None] - rho[None, :])
    g, cond = least_squares(cauchy, fs)
    if cond > settings.CONDITION_WARN:
        app_logger.warning(f"Residue system is ill-conditioned (cond {cond:.2e})")
    return tuple(complex(x) for x in g)


def integer_gap(center: complex) -> float:
    return abs(center - round(center.real))


def solve_residues_confluent(
    support: Sequence[complex],
    support_values: Sequence[complex],
    clusters: PoleClusterSet,
    exclude: Iterable[complex] = (),
    integer_tol: Optional[float] = None,
) -> ConfluentPartialFraction:
    """
    Fit sum_j sum_l A_jl / (z - C_j)^(l+1) to the support values.

    A cluster of count c contributes c unknowns. Clusters centred on an
    integer are P-periodic: they are snapped to that integer and their
    coefficients are the A*_0..A*_{c-1}.
    """
    integer_tol = settings.INTEGER_TOL if integer_tol is None else integer_tol
    excluded = {complex(x) for x in exclude}
    z = np.asarray(support, dtype=complex)
    f = np.asarray(support_values, dtype=complex)
    keep = np.array([complex(x) not in excluded for x in z], dtype=bool)
    z, f = z[keep], f[keep]

    warnings: List[str] = []
    poles_: List[Tuple[complex, bool, int]] = []
    for cluster in clusters.clusters:
        gap = integer_gap(cluster.center)
        periodic = gap <= integer_tol
        if integer_tol < gap <= settings.AMBIGUITY_TOL:
            message = (
                f"Pole cluster at {cluster.center} is {gap:.2e} from an integer; "
                f"classified as non-periodic"
            )
            app_logger.warning(message)
            warnings.append(message)
        pole = complex(round(cluster.center.real)) if periodic else cluster.center
        poles_.append((pole, periodic, cluster.count))

    columns = []
    for pole, _, count in poles_:
        for ell in range(count):
            columns.append(1.0 / (z - pole) ** (ell + 1))
    matrix = np.column_stack(columns) if columns else np.zeros((z.size, 0), dtype=complex)
    x, cond = least_squares(matrix, f)
    if cond > settings.CONDITION_WARN:
        message = f"Confluent system is ill-conditioned (cond {cond:.2e})"
        app_logger.warning(message)
        warnings.append(message)

    result = []
    offset = 0
    for pole, periodic, count in poles_:
        coefficients = x[offset : offset + count]
        offset += count
        result.append(
            PartialFractionCluster(pole=pole, coefficients=coefficients, periodic=periodic)
        )

    # Froissart doublet suspicion: negligible top-order coefficient
    scale = float(np.max(np.abs(x))) if x.size else 0.0
    for cluster in result:
        if cluster.coefficients and abs(cluster.coefficients[-1]) < settings.ZERO_WEIGHT_TOL * scale:
            message = f"Pole {cluster.pole} has a negligible coefficient (possible Froissart doublet)"
            app_logger.warning(message)
            warnings.append(message)

    return ConfluentPartialFraction(
        clusters=tuple(result), condition_estimate=cond, warnings=tuple(warnings)
    )

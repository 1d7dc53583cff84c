"""Scalar evaluations: sparsity, mutual coherence, CR, SNR, RMS, kurtosis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParameterError, UndefinedMetricError
from .measure import DEFAULT_CAP_ENTRIES, MatrixSpec, materialize
from .transforms import BasisSpec, CoefficientVector, analyze_array

__all__ = [
    "MetricReport",
    "sparsity_fraction",
    "coherence",
    "compression_ratio",
    "snr_db",
    "rms",
    "kurtosis",
]


@dataclass(frozen=True, eq=False)
class MetricReport:
    """One named metric value plus free-form context for report rows."""

    name: str
    value: float
    context: dict = field(default_factory=dict)


def _as_samples(x, name: str) -> np.ndarray:
    # accepts plain arrays and anything with a .samples attribute (io.Signal)
    arr = np.asarray(getattr(x, "samples", x), dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be a 1-D signal, got shape {arr.shape}")
    return arr


def sparsity_fraction(s: CoefficientVector | np.ndarray, threshold_rel: float = 0.01) -> float:
    """Fraction of coefficients below ``threshold_rel`` of the peak magnitude.

    Magnitudes are used for complex coefficients; an all-zero vector returns
    0 by convention.
    """
    if not 0.0 < threshold_rel < 1.0:
        raise ParameterError(f"threshold must be in (0, 1), got {threshold_rel}")
    values = s.values if isinstance(s, CoefficientVector) else np.asarray(s)
    if values.size == 0:
        raise ParameterError("cannot measure sparsity of an empty vector")
    mags = np.abs(values)
    peak = mags.max()
    if peak == 0.0:
        return 0.0
    return float(np.count_nonzero(mags < threshold_rel * peak) / mags.size)


def _basis_transform_rows(rows: np.ndarray, basis: BasisSpec | np.ndarray) -> np.ndarray:
    """|<row_j, psi_k>| for every row and basis column, as an (m, n) array."""
    if isinstance(basis, BasisSpec):
        # row of products = analysis transform of the row (conjugation drops
        # under the absolute value)
        return np.abs(analyze_array(rows, basis))
    psi = np.asarray(basis)
    if psi.ndim != 2 or psi.shape[0] != rows.shape[1]:
        raise DimensionError(f"basis matrix must be {rows.shape[1]} x k, got {psi.shape}")
    col_norms = np.linalg.norm(psi, axis=0)
    if np.any(col_norms == 0.0):
        raise ParameterError("basis matrix has a zero column")
    return np.abs(rows @ np.conj(psi)) / col_norms


def coherence(
    matrix: MatrixSpec | np.ndarray,
    basis: BasisSpec | np.ndarray,
    cap_entries: int = DEFAULT_CAP_ENTRIES,
) -> float:
    """Mutual coherence sqrt(n) * max |<phi_j_hat, psi_k>|.

    Rows of the measurement matrix are L2-normalized and basis columns are
    unit norm, so the value lives in [1, sqrt(n)] and is invariant to any
    positive rescaling of the matrix.  Both arguments also accept explicit
    dense arrays (rows / columns respectively) for oracle checks.
    """
    rows = materialize(matrix, cap_entries) if isinstance(matrix, MatrixSpec) else np.asarray(matrix, dtype=np.float64)
    if rows.ndim != 2:
        raise DimensionError(f"expected an m x n matrix, got shape {rows.shape}")
    n = rows.shape[1]
    if isinstance(basis, BasisSpec) and basis.n != n:
        raise DimensionError(f"matrix n={n} does not match basis n={basis.n}")
    row_norms = np.linalg.norm(rows, axis=1, keepdims=True)
    if np.any(row_norms == 0.0):
        raise ParameterError("measurement matrix has a zero row")
    products = _basis_transform_rows(rows / row_norms, basis)
    return float(np.sqrt(n) * products.max())


def compression_ratio(m: int, n: int) -> float:
    """Percentage of measurements retained: 100 m / n."""
    if m < 1 or m > n:
        raise ParameterError(f"need 1 <= m <= n, got m={m} n={n}")
    return 100.0 * m / n


def snr_db(x: np.ndarray, x_hat: np.ndarray) -> float:
    """Reconstruction SNR: 10 log10(sum x^2 / sum (x - x_hat)^2), in dB.

    Returns +inf when the error energy underflows to zero (perfect
    reconstruction sentinel).
    """
    x = _as_samples(x, "x")
    x_hat = _as_samples(x_hat, "x_hat")
    if x.shape != x_hat.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {x_hat.shape}")
    signal_energy = float(np.sum(x * x))
    if signal_energy == 0.0:
        raise UndefinedMetricError("SNR is undefined for an all-zero reference signal")
    error = x - x_hat
    error_energy = float(np.sum(error * error))
    if error_energy == 0.0:
        return math.inf
    return 10.0 * math.log10(signal_energy / error_energy)


def rms(x: np.ndarray) -> float:
    """Root mean square."""
    x = _as_samples(x, "x")
    if x.size == 0:
        raise ParameterError("RMS of an empty signal is undefined")
    return float(np.sqrt(np.mean(x * x)))


def kurtosis(x: np.ndarray) -> float:
    """Non-excess kurtosis m4 / m2^2 of the mean-removed signal.

    Biased moment estimator; a Gaussian gives 3, a pure sine 1.5. Affine
    transforms a*x + b (a != 0) leave the value unchanged.
    """
    x = _as_samples(x, "x")
    if x.size < 4:
        raise ParameterError(f"kurtosis needs at least 4 samples, got {x.size}")
    centered = x - x.mean()
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        raise UndefinedMetricError("kurtosis is undefined for a zero-variance signal")
    m4 = float(np.mean(centered**4))
    return m4 / (m2 * m2)

"""Measurement matrices and their application to signal blocks.

Three kinds are supported:

* GAUSSIAN: i.i.d. normal entries, mean 0, variance 1/m.
* BERNOULLI: +-1/sqrt(m) entries, equiprobable.
* WANG: m distinct rows of the N x N identity, drawn without replacement and
  kept in draw order. Each measurement is one raw input sample; applying the
  matrix performs no floating-point arithmetic at all.

The scaling makes E[||Phi x||^2] == ||x||^2 for the two dense kinds.  A
matrix is a *descriptor* (kind, m, n, seed): dense entries regenerate
bit-identically from the seed via the package RNG, and only Wang's row
indices are ever stored explicitly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import DimensionError, ParameterError, ResourceError
from .transforms import BasisKind, BasisSpec, analyze_array, basis_column

__all__ = [
    "MatrixKind",
    "MatrixSpec",
    "MeasurementVector",
    "build_matrix",
    "apply",
    "materialize",
    "sensing_column",
    "sensing_dictionary",
    "derive_measurement_count",
]

DEFAULT_CAP_ENTRIES = 1 << 24

# entries are generated row-major in chunks of at most this many values
_CHUNK_ENTRIES = 1 << 22


class MatrixKind(enum.Enum):
    GAUSSIAN = "gaussian"
    BERNOULLI = "bernoulli"
    WANG = "wang"


@dataclass(frozen=True)
class MatrixSpec:
    """Deterministic descriptor of an m x n measurement matrix."""

    kind: MatrixKind
    m: int
    n: int
    seed: int
    wang_indices: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.kind, MatrixKind):
            object.__setattr__(self, "kind", MatrixKind(self.kind))
        if self.m < 1 or self.m > self.n:
            raise ParameterError(f"need 1 <= m <= n, got m={self.m} n={self.n}")
        if not 0 <= self.seed <= 0xFFFFFFFFFFFFFFFF:
            raise ParameterError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.kind is MatrixKind.WANG:
            if self.wang_indices is None:
                raise ParameterError("WANG spec requires explicit row indices")
            idx = tuple(int(i) for i in self.wang_indices)
            if len(idx) != self.m:
                raise ParameterError(f"expected {self.m} Wang indices, got {len(idx)}")
            if len(set(idx)) != len(idx):
                raise ParameterError("Wang indices must be distinct")
            if any(i < 0 or i >= self.n for i in idx):
                raise ParameterError(f"Wang indices must lie in [0, {self.n})")
            object.__setattr__(self, "wang_indices", idx)
        elif self.wang_indices is not None:
            raise ParameterError(f"{self.kind.value} spec must not carry Wang indices")


@dataclass(frozen=True, eq=False)
class MeasurementVector:
    """Compressed measurements y plus the spec that produced them."""

    values: np.ndarray
    spec: MatrixSpec

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] != self.spec.m:
            raise DimensionError(
                f"measurements must be length {self.spec.m}, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)


def build_matrix(kind: MatrixKind, m: int, n: int, seed: int) -> MatrixSpec:
    """Create a matrix descriptor; Wang row indices are drawn here."""
    kind = MatrixKind(kind)
    if kind is MatrixKind.WANG:
        if m < 1 or m > n:
            raise ParameterError(f"need 1 <= m <= n, got m={m} n={n}")
        indices = tuple(rng.subset_without_replacement(seed, m, n))
        return MatrixSpec(kind, m, n, seed, indices)
    return MatrixSpec(kind, m, n, seed)


def _dense_rows(spec: MatrixSpec, row_start: int, row_count: int) -> np.ndarray:
    """Regenerate rows [row_start, row_start+row_count) of the dense matrix."""
    n = spec.n
    offset = row_start * n
    count = row_count * n
    if spec.kind is MatrixKind.GAUSSIAN:
        flat = rng.gaussians(spec.seed, count, offset) / np.sqrt(spec.m)
    elif spec.kind is MatrixKind.BERNOULLI:
        flat = rng.signs(spec.seed, count, offset) / np.sqrt(spec.m)
    else:
        rows = np.zeros((row_count, n))
        cols = np.asarray(spec.wang_indices[row_start : row_start + row_count])
        rows[np.arange(row_count), cols] = 1.0
        return rows
    return flat.reshape(row_count, n)


def materialize(spec: MatrixSpec, cap_entries: int = DEFAULT_CAP_ENTRIES) -> np.ndarray:
    """Dense m x n matrix. Intended for oracles, coherence, and small solves."""
    if spec.m * spec.n > cap_entries:
        raise ResourceError(
            f"materializing {spec.m}x{spec.n} exceeds the cap of {cap_entries} entries"
        )
    return _dense_rows(spec, 0, spec.m)


def apply(spec: MatrixSpec, x: np.ndarray) -> MeasurementVector:
    """Measure one block: y = Phi x.

    Wang measurements are plain sample picks (bitwise, no arithmetic); dense
    kinds regenerate their rows from the seed in bounded chunks.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != spec.n:
        raise DimensionError(f"expected a block of length {spec.n}, got shape {x.shape}")
    if spec.kind is MatrixKind.WANG:
        return MeasurementVector(x[list(spec.wang_indices)], spec)
    rows_per_chunk = max(1, _CHUNK_ENTRIES // spec.n)
    out = np.empty(spec.m)
    for start in range(0, spec.m, rows_per_chunk):
        stop = min(start + rows_per_chunk, spec.m)
        out[start:stop] = _dense_rows(spec, start, stop - start) @ x
    return MeasurementVector(out, spec)


def sensing_column(spec: MatrixSpec, basis: BasisSpec, k: int) -> np.ndarray:
    """Column k of the sensing dictionary A = Phi Psi."""
    if spec.n != basis.n:
        raise DimensionError(f"matrix n={spec.n} does not match basis n={basis.n}")
    atom = basis_column(basis, k)
    if spec.kind is MatrixKind.WANG:
        # row i of Phi is e_{wang_indices[i]}: subsample the atom directly
        return atom[list(spec.wang_indices)]
    if np.iscomplexobj(atom):
        real = apply(spec, atom.real).values
        imag = apply(spec, atom.imag).values
        return real + 1j * imag
    return apply(spec, atom).values


def sensing_dictionary(
    spec: MatrixSpec, basis: BasisSpec, cap_entries: int = DEFAULT_CAP_ENTRIES
) -> np.ndarray:
    """Full m x n sensing dictionary A = Phi Psi, assembled row-wise.

    Row j of A is the analysis transform of row j of Phi (conjugated for the
    DFT), so no dense n x n basis matrix is ever formed.
    """
    if spec.n != basis.n:
        raise DimensionError(f"matrix n={spec.n} does not match basis n={basis.n}")
    phi = materialize(spec, cap_entries)
    coeffs = analyze_array(phi, basis)
    if basis.kind is BasisKind.DFT:
        return np.conj(coeffs)
    return coeffs


def derive_measurement_count(cr_percent: float, n: int) -> int:
    """Measurement count for a requested compression ratio (percent).

    Truncates ``cr * n / 100`` toward zero and requires the result to stay in
    [1, n]; a ratio too small to keep even one sample is a parameter error.
    """
    if not 0.0 < cr_percent <= 100.0:
        raise ParameterError(f"compression ratio must be in (0, 100], got {cr_percent}")
    m = int(cr_percent * n / 100.0)
    if m < 1:
        raise ParameterError(
            f"cr={cr_percent}% of n={n} yields zero measurements after rounding"
        )
    return min(m, n)

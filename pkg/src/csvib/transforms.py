"""Orthonormal sparse bases: DCT, unitary DFT, and Daubechies wavelets.

Every basis is an exactly orthonormal N x N synthesis operator. A coefficient
vector s maps to a time block x = Psi s with ||x|| == ||s||, and analysis is
the adjoint map s = Psi^H x. Conventions:

* DCT: orthonormal DCT-II analysis / DCT-III synthesis.
* DFT: unitary scaling (1/sqrt(n) both directions). Coefficients are complex;
  real signals give conjugate-symmetric coefficients and synthesis enforces
  that symmetry before discarding the (tiny) imaginary residue.
* DB2/DB8: Daubechies filters with 2 resp. 8 vanishing moments (4/16 taps),
  periodized filter bank, full dyadic decomposition down to a single scaling
  coefficient. Periodization keeps the operator exactly orthonormal for any
  power-of-two block length. Coefficient layout: index 0 is the coarsest
  scaling coefficient, followed by detail bands from coarsest (length 1) to
  finest (length n/2).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .errors import DimensionError, ParameterError, SymmetryError

__all__ = [
    "BasisKind",
    "BasisSpec",
    "CoefficientVector",
    "analyze",
    "synthesize",
    "basis_column",
]


class BasisKind(enum.Enum):
    DCT = "dct"
    DFT = "dft"
    DB2 = "db2"
    DB8 = "db8"


# Daubechies lowpass filters (analysis), K vanishing moments, length 2K.
# Standard minimum-phase coefficients, cf. Daubechies, "Ten Lectures on
# Wavelets", SIAM 1992, Table 6.1; regenerated here by spectral factorization
# of the Daubechies polynomial at 60-digit precision and rounded to double.
_DB2_LOWPASS = (
    0.48296291314453414,
    0.83651630373780791,
    0.22414386804201338,
    -0.12940952255126038,
)
_DB8_LOWPASS = (
    0.05441584224310401,
    0.31287159091429997,
    0.67563073629728981,
    0.58535468365420671,
    -0.015829105256349306,
    -0.28401554296154693,
    0.00047248457391328277,
    0.12874742662047846,
    -0.017369301001807546,
    -0.044088253930794752,
    0.013981027917398282,
    0.0087460940474057767,
    -0.0048703529934515743,
    -0.00039174037337694705,
    0.00067544940645056937,
    -0.00011747678412476953,
)

_WAVELET_FILTERS = {BasisKind.DB2: _DB2_LOWPASS, BasisKind.DB8: _DB8_LOWPASS}

# Relative tolerance for the conjugate-symmetry check on DFT synthesis input.
_SYMMETRY_RTOL = 1e-8


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class BasisSpec:
    """An orthonormal basis family plus its block length."""

    kind: BasisKind
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.kind, BasisKind):
            object.__setattr__(self, "kind", BasisKind(self.kind))
        if self.n < 2:
            raise ParameterError(f"block length must be >= 2, got {self.n}")
        if self.kind in _WAVELET_FILTERS and not _is_power_of_two(self.n):
            raise ParameterError(
                f"{self.kind.value} needs a power-of-two block length, got {self.n}"
            )

    @property
    def is_complex(self) -> bool:
        return self.kind is BasisKind.DFT


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Transform-domain coefficients tied to the basis that produced them."""

    values: np.ndarray
    basis: BasisSpec

    def __post_init__(self) -> None:
        values = np.asarray(self.values)
        if values.ndim != 1 or values.shape[0] != self.basis.n:
            raise DimensionError(
                f"coefficients must be length {self.basis.n}, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)


# -- wavelet filter bank -----------------------------------------------------


def _qmf_highpass(lowpass: np.ndarray) -> np.ndarray:
    # alternating-flip quadrature mirror: g[k] = (-1)^k h[L-1-k]
    g = lowpass[::-1].copy()
    g[1::2] *= -1.0
    return g


def _dwt_forward(x: np.ndarray, lowpass: np.ndarray) -> np.ndarray:
    """Full periodized dyadic decomposition along the last axis."""
    h = lowpass
    g = _qmf_highpass(h)
    taps = len(h)
    approx = x
    details = []
    while approx.shape[-1] > 1:
        size = approx.shape[-1]
        idx = (2 * np.arange(size // 2)[:, None] + np.arange(taps)[None, :]) % size
        windows = approx[..., idx]
        details.append(windows @ g)
        approx = windows @ h
    # layout: [a_J, d_J, d_{J-1}, ..., d_1]
    return np.concatenate([approx] + details[::-1], axis=-1)


def _dwt_inverse(c: np.ndarray, lowpass: np.ndarray) -> np.ndarray:
    """Adjoint of _dwt_forward (equal to the inverse, by orthonormality)."""
    h = lowpass
    g = _qmf_highpass(h)
    taps = len(h)
    n = c.shape[-1]
    approx = c[..., :1]
    pos = 1
    length = 1
    while pos < n:
        detail = c[..., pos : pos + length]
        pos += length
        size = 2 * length
        up = np.zeros(c.shape[:-1] + (size,), dtype=c.dtype)
        base = 2 * np.arange(length)
        for k in range(taps):
            # fixed k: targets (2i+k) mod size are all distinct
            up[..., (base + k) % size] += approx * h[k] + detail * g[k]
        approx = up
        length = size
    return approx


# -- array-level transforms (batched over leading axes) ----------------------


def analyze_array(x: np.ndarray, basis: BasisSpec) -> np.ndarray:
    """Adjoint (analysis) transform along the last axis; allows batches."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != basis.n:
        raise DimensionError(f"expected blocks of length {basis.n}, got {x.shape[-1]}")
    if basis.kind is BasisKind.DCT:
        return scipy.fft.dct(x, type=2, norm="ortho", axis=-1)
    if basis.kind is BasisKind.DFT:
        return np.fft.fft(x, axis=-1) / np.sqrt(basis.n)
    return _dwt_forward(x, np.asarray(_WAVELET_FILTERS[basis.kind]))


def synthesize_array(c: np.ndarray, basis: BasisSpec) -> np.ndarray:
    """Synthesis transform along the last axis; returns real blocks.

    DFT input must be conjugate-symmetric within ``1e-8`` relative to its
    largest magnitude; anything worse signals a corrupted coefficient vector.
    """
    c = np.asarray(c)
    if c.shape[-1] != basis.n:
        raise DimensionError(f"expected coefficients of length {basis.n}, got {c.shape[-1]}")
    if basis.kind is BasisKind.DFT:
        c = np.asarray(c, dtype=np.complex128)
        scale = np.max(np.abs(c))
        if scale > 0.0:
            mirrored = np.roll(c[..., ::-1], 1, axis=-1)  # mirrored[k] = c[(n-k) % n]
            asym = np.max(np.abs(c - np.conj(mirrored)))
            if asym > _SYMMETRY_RTOL * scale:
                raise SymmetryError(
                    f"DFT coefficients are not conjugate-symmetric "
                    f"(relative asymmetry {asym / scale:.3e})"
                )
        out = np.fft.ifft(c, axis=-1) * np.sqrt(basis.n)
        residue = np.max(np.abs(out.imag)) if scale > 0.0 else 0.0
        if residue > 1e-10 * max(scale, 1.0):
            raise SymmetryError(f"imaginary residue {residue:.3e} after synthesis")
        return np.ascontiguousarray(out.real)
    c = np.asarray(c, dtype=np.float64)
    if basis.kind is BasisKind.DCT:
        return scipy.fft.idct(c, type=2, norm="ortho", axis=-1)
    return _dwt_inverse(c, np.asarray(_WAVELET_FILTERS[basis.kind]))


# -- public block operations -------------------------------------------------


def analyze(x: np.ndarray, basis: BasisSpec) -> CoefficientVector:
    """Transform one time block of length ``basis.n`` into coefficients.

    Satisfies Parseval (||coefficients|| == ||x||) and round-trips through
    :func:`synthesize` to machine precision.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError(f"expected a 1-D block, got shape {x.shape}")
    return CoefficientVector(analyze_array(x, basis), basis)


def synthesize(coefficients: CoefficientVector) -> np.ndarray:
    """Map coefficients back to a real time block of length ``basis.n``."""
    values = np.asarray(coefficients.values)
    if values.ndim != 1:
        raise DimensionError(f"expected a 1-D coefficient vector, got shape {values.shape}")
    return synthesize_array(values, coefficients.basis)


def basis_column(basis: BasisSpec, k: int) -> np.ndarray:
    """Column k of the synthesis operator (the k-th unit-norm atom).

    Complex for DFT, real otherwise.
    """
    if not 0 <= k < basis.n:
        raise IndexError(f"column index {k} out of range [0, {basis.n})")
    if basis.kind is BasisKind.DFT:
        t = np.arange(basis.n)
        return np.exp(2j * np.pi * k * t / basis.n) / np.sqrt(basis.n)
    unit = np.zeros(basis.n)
    unit[k] = 1.0
    if basis.kind is BasisKind.DCT:
        return scipy.fft.idct(unit, type=2, norm="ortho")
    return _dwt_inverse(unit, np.asarray(_WAVELET_FILTERS[basis.kind]))

"""Signal ingestion, block segmentation, and the compressed container format.

Supported signal sources: CSV text (one sample per line, or the selected
column of comma-separated rows), WAV (PCM16 / PCM24 / IEEE float32, first or
selected channel, integer PCM normalized to [-1, 1]), and headerless
little-endian RAW float32/float64.

The ``CSVB`` container carries everything needed to reconstruct: basis and
matrix descriptors, sample rate, and per-segment measurement vectors.  Byte
layout (all little-endian)::

    magic "CSVB" | u16 version=1 | u8 basis | u8 matrix | u32 n | u32 m
    | u64 seed | f64 sample_rate_hz | u32 segment_count
    | [WANG only: m x u32 row indices]
    | per segment: u32 true_length, m x f64 measurements

Measurements are stored as f64 with no quantization: the compression this
toolkit studies is measured purely as m/n, never as a file-size ratio.  Wang
row indices are stored explicitly (belt and braces against generator drift)
and must match regeneration from the seed on read.
"""

from __future__ import annotations

import enum
import struct
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DataParseError,
    DimensionError,
    FormatError,
    IntegrityError,
    ParameterError,
)
from .measure import MatrixKind, MatrixSpec, build_matrix
from .transforms import BasisKind, BasisSpec

__all__ = [
    "Signal",
    "SignalFormat",
    "CompressedContainer",
    "read_signal",
    "write_signal_csv",
    "segment",
    "write_container",
    "read_container",
]

_MAGIC = b"CSVB"
_VERSION = 1

_BASIS_CODES = {BasisKind.DCT: 0, BasisKind.DFT: 1, BasisKind.DB2: 2, BasisKind.DB8: 3}
_BASIS_FROM_CODE = {v: k for k, v in _BASIS_CODES.items()}
_MATRIX_CODES = {MatrixKind.GAUSSIAN: 0, MatrixKind.BERNOULLI: 1, MatrixKind.WANG: 2}
_MATRIX_FROM_CODE = {v: k for k, v in _MATRIX_CODES.items()}


class SignalFormat(enum.Enum):
    CSV = "csv"
    WAV = "wav"
    RAW_F32 = "raw_f32"
    RAW_F64 = "raw_f64"


@dataclass(frozen=True, eq=False)
class Signal:
    """A real-valued sample sequence with rate and provenance metadata."""

    samples: np.ndarray
    sample_rate_hz: float
    source: str = ""

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise DimensionError(f"samples must be 1-D, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            bad = int(np.flatnonzero(~np.isfinite(samples))[0])
            raise ParameterError(f"non-finite sample at index {bad}")
        if not (np.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0.0):
            raise ParameterError(f"sample rate must be positive, got {self.sample_rate_hz}")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True, eq=False)
class CompressedContainer:
    """Measurements plus everything needed to reconstruct them."""

    basis: BasisSpec
    matrix: MatrixSpec
    sample_rate_hz: float
    segments: tuple[tuple[int, np.ndarray], ...]

    def __post_init__(self) -> None:
        if self.basis.n != self.matrix.n:
            raise ParameterError(
                f"basis n={self.basis.n} does not match matrix n={self.matrix.n}"
            )
        if not (np.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0.0):
            raise ParameterError(f"sample rate must be positive, got {self.sample_rate_hz}")
        cleaned = []
        last = len(self.segments) - 1
        for i, (true_length, values) in enumerate(self.segments):
            values = np.asarray(values, dtype=np.float64)
            if values.shape != (self.matrix.m,):
                raise DimensionError(
                    f"segment {i}: expected {self.matrix.m} measurements, got {values.shape}"
                )
            if not 0 <= true_length <= self.matrix.n:
                raise ParameterError(f"segment {i}: true length {true_length} outside [0, n]")
            if i != last and true_length != self.matrix.n:
                raise ParameterError(f"segment {i}: only the final segment may be partial")
            cleaned.append((int(true_length), values))
        object.__setattr__(self, "segments", tuple(cleaned))


# -- text and raw readers -----------------------------------------------------


def _read_csv_samples(path: str, column: int) -> np.ndarray:
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            fields = text.split(",")
            if column >= len(fields):
                raise DataParseError(f"{path}:{lineno}: no column {column}")
            try:
                value = float(fields[column])
            except ValueError as exc:
                raise DataParseError(f"{path}:{lineno}: {fields[column]!r} is not a number") from exc
            if not np.isfinite(value):
                raise DataParseError(f"{path}:{lineno}: non-finite sample {fields[column]!r}")
            values.append(value)
    if not values:
        warnings.warn(f"{path}: empty CSV signal", stacklevel=3)
    return np.asarray(values, dtype=np.float64)


def _read_wav_samples(path: str, channel: int) -> tuple[np.ndarray, float]:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise FormatError(f"{path}: not a RIFF/WAVE file")
    fmt = None
    frames = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (chunk_size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + chunk_size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise FormatError(f"{path}: truncated fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif chunk_id == b"data":
            frames = body
        pos += 8 + chunk_size + (chunk_size & 1)  # chunks are word-aligned
    if fmt is None or frames is None:
        raise FormatError(f"{path}: missing fmt or data chunk")
    audio_format, channels, rate, _, _, bits = fmt
    if not 0 <= channel < channels:
        raise ParameterError(f"channel {channel} out of range for {channels}-channel file")
    if audio_format == 1 and bits == 16:
        raw = np.frombuffer(frames, dtype="<i2")
        scale = 32768.0
    elif audio_format == 1 and bits == 24:
        b = np.frombuffer(frames, dtype=np.uint8)
        b = b[: (len(b) // 3) * 3].reshape(-1, 3).astype(np.int32)
        raw = b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)
        raw = np.where(raw >= 1 << 23, raw - (1 << 24), raw)
        scale = float(1 << 23)
    elif audio_format == 3 and bits == 32:
        raw = np.frombuffer(frames, dtype="<f4")
        scale = 1.0
    else:
        raise FormatError(f"{path}: unsupported WAV encoding (format={audio_format}, bits={bits})")
    usable = (len(raw) // channels) * channels
    samples = raw[:usable].reshape(-1, channels)[:, channel].astype(np.float64) / scale
    return samples, float(rate)


def read_signal(
    path: str,
    fmt: SignalFormat,
    sample_rate_override: float | None = None,
    channel: int = 0,
) -> Signal:
    """Load a signal file.

    CSV and WAV default their sample rate (CSV to 1 Hz when no override is
    given); RAW formats carry no header, so an override is mandatory.
    """
    fmt = SignalFormat(fmt)
    if fmt is SignalFormat.CSV:
        samples = _read_csv_samples(path, channel)
        rate = sample_rate_override if sample_rate_override is not None else 1.0
    elif fmt is SignalFormat.WAV:
        samples, rate = _read_wav_samples(path, channel)
        if sample_rate_override is not None:
            rate = sample_rate_override
    else:
        if sample_rate_override is None:
            raise ParameterError(f"{fmt.value} input needs an explicit sample rate")
        if channel != 0:
            raise ParameterError("raw input is single-channel; channel must be 0")
        dtype = "<f4" if fmt is SignalFormat.RAW_F32 else "<f8"
        samples = np.fromfile(path, dtype=dtype).astype(np.float64)
        if samples.size == 0:
            warnings.warn(f"{path}: empty raw signal", stacklevel=2)
        rate = sample_rate_override
    return Signal(samples, rate, source=f"{fmt.value}:{path}")


def write_signal_csv(path: str, signal: Signal) -> None:
    """One sample per line at 17 significant digits (lossless round-trip)."""
    with open(path, "w", encoding="utf-8") as fh:
        for value in signal.samples:
            fh.write(f"{value:.17g}\n")


def segment(signal: Signal, n: int) -> tuple[np.ndarray, list[int]]:
    """Split into consecutive non-overlapping length-n blocks.

    Returns (blocks, true_lengths): a (k, n) array with the final partial
    block zero-padded, plus each block's unpadded sample count.
    """
    if n < 2:
        raise ParameterError(f"block length must be >= 2, got {n}")
    samples = signal.samples
    total = samples.shape[0]
    if total == 0:
        return np.zeros((0, n)), []
    count = (total + n - 1) // n
    blocks = np.zeros((count, n))
    blocks.reshape(-1)[:total] = samples
    true_lengths = [n] * count
    true_lengths[-1] = total - n * (count - 1)
    return blocks, true_lengths


# -- container serialization ---------------------------------------------------


def write_container(path: str, container: CompressedContainer) -> None:
    """Serialize to the CSVB byte layout (bit-exact round trip)."""
    basis_code = _BASIS_CODES[container.basis.kind]
    matrix_code = _MATRIX_CODES[container.matrix.kind]
    header = _MAGIC + struct.pack(
        "<HBBIIQdI",
        _VERSION,
        basis_code,
        matrix_code,
        container.matrix.n,
        container.matrix.m,
        container.matrix.seed,
        container.sample_rate_hz,
        len(container.segments),
    )
    parts = [header]
    if container.matrix.kind is MatrixKind.WANG:
        parts.append(struct.pack(f"<{container.matrix.m}I", *container.matrix.wang_indices))
    for true_length, values in container.segments:
        parts.append(struct.pack("<I", true_length))
        parts.append(values.astype("<f8").tobytes())
    with open(path, "wb") as fh:
        fh.write(b"".join(parts))


def read_container(path: str) -> CompressedContainer:
    """Parse and validate a CSVB file.

    Structural problems (bad magic, version, codes, sizes, truncation) raise
    FormatError; a container that parses but contradicts itself (Wang indices
    that do not regenerate from the seed) raises IntegrityError.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    header_size = 4 + struct.calcsize("<HBBIIQdI")
    if len(data) < header_size:
        raise FormatError(f"{path}: truncated header ({len(data)} bytes)")
    if data[:4] != _MAGIC:
        raise FormatError(f"{path}: bad magic {data[:4]!r}")
    version, basis_code, matrix_code, n, m, seed, rate, segment_count = struct.unpack_from(
        "<HBBIIQdI", data, 4
    )
    if version != _VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    if basis_code not in _BASIS_FROM_CODE:
        raise FormatError(f"{path}: unknown basis code {basis_code}")
    if matrix_code not in _MATRIX_FROM_CODE:
        raise FormatError(f"{path}: unknown matrix code {matrix_code}")
    if not (np.isfinite(rate) and rate > 0.0):
        raise FormatError(f"{path}: invalid sample rate {rate}")
    if m < 1 or m > n:
        raise FormatError(f"{path}: invalid sizes m={m} n={n}")
    try:
        basis = BasisSpec(_BASIS_FROM_CODE[basis_code], n)
    except ParameterError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    matrix_kind = _MATRIX_FROM_CODE[matrix_code]
    pos = header_size
    if matrix_kind is MatrixKind.WANG:
        if pos + 4 * m > len(data):
            raise FormatError(f"{path}: truncated Wang index table")
        stored = struct.unpack_from(f"<{m}I", data, pos)
        pos += 4 * m
        try:
            matrix = MatrixSpec(matrix_kind, m, n, seed, stored)
        except ParameterError as exc:
            raise IntegrityError(f"{path}: corrupt Wang indices ({exc})") from exc
        regenerated = build_matrix(MatrixKind.WANG, m, n, seed)
        if regenerated.wang_indices != matrix.wang_indices:
            raise IntegrityError(
                f"{path}: stored Wang indices do not regenerate from seed {seed}"
            )
    else:
        try:
            matrix = MatrixSpec(matrix_kind, m, n, seed)
        except ParameterError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    segments = []
    for i in range(segment_count):
        if pos + 4 + 8 * m > len(data):
            raise FormatError(f"{path}: truncated at segment {i}")
        (true_length,) = struct.unpack_from("<I", data, pos)
        pos += 4
        if not 0 <= true_length <= n or (i != segment_count - 1 and true_length != n):
            raise FormatError(f"{path}: segment {i} has invalid true length {true_length}")
        values = np.frombuffer(data, dtype="<f8", count=m, offset=pos).copy()
        pos += 8 * m
        segments.append((true_length, values))
    if pos != len(data):
        raise FormatError(f"{path}: {len(data) - pos} trailing bytes")
    return CompressedContainer(basis, matrix, rate, tuple(segments))

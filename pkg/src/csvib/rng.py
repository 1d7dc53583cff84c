"""Deterministic random streams shared by matrix generation and synthesis.

All randomness in the package flows through a single fully specified
generator so that anything derived from a 64-bit seed regenerates
bit-identically on a fresh process: SplitMix64 for the raw 64-bit stream,
Box-Muller on consecutive output pairs for Gaussians, the top output bit for
signs, and a partial Fisher-Yates shuffle for subsets without replacement.

SplitMix64 output i depends only on ``mix(seed + (i+1)*GAMMA)`` (Steele,
Lea & Flood, OOPSLA 2014), so streams are generated vectorized without
carrying state.
"""

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U64 = np.uint64


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _U64(_MIX1)
    z = (z ^ (z >> _U64(27))) * _U64(_MIX2)
    return z ^ (z >> _U64(31))


def mix64(value: int) -> int:
    """SplitMix64 finalizer on a plain integer (used for seed derivation)."""
    z = value & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_stream_seed(seed: int, salt: int) -> int:
    """Seed for an independent substream (noise vs. matrices never alias)."""
    return mix64((seed ^ salt) & _MASK)


def raw_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """uint64 outputs at positions ``offset .. offset+count-1`` of the stream."""
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    return _mix_array(_U64(seed & _MASK) + idx * _U64(_GAMMA))


def uniforms(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Doubles in [0, 1): top 53 bits of each raw output."""
    return (raw_stream(seed, count, offset) >> _U64(11)) * 2.0**-53


def gaussians(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Standard normals via Box-Muller on consecutive output pairs.

    Pair (2i, 2i+1) yields ``r*cos(theta), r*sin(theta)`` with
    ``r = sqrt(-2 ln u1)``, ``u1 in (0, 1]`` from output 2i and
    ``theta = 2 pi u2``, ``u2 in [0, 1)`` from output 2i+1.  A stream
    position therefore always advances by two per pair, so entry k of a
    large fill is reproducible no matter the chunking.
    """
    pairs = (count + 1) // 2
    bits = raw_stream(seed, 2 * pairs, offset)
    u1 = ((bits[0::2] >> _U64(11)) + _U64(1)) * 2.0**-53
    u2 = (bits[1::2] >> _U64(11)) * 2.0**-53
    radius = np.sqrt(-2.0 * np.log(u1))
    theta = (2.0 * np.pi) * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(theta)
    out[1::2] = radius * np.sin(theta)
    return out[:count]


def signs(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """+1.0/-1.0 equiprobable from the top bit of each raw output."""
    top = raw_stream(seed, count, offset) >> _U64(63)
    return np.where(top == _U64(1), 1.0, -1.0)


def subset_without_replacement(seed: int, m: int, n: int) -> list[int]:
    """First m entries of a Fisher-Yates shuffle of range(n), in draw order.

    Draw i swaps position i with ``i + (output_i mod (n - i))``; exactly m
    raw outputs are consumed.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m} n={n}")
    draws = raw_stream(seed, m)
    arr = list(range(n))
    for i in range(m):
        j = i + int(draws[i]) % (n - i)
        arr[i], arr[j] = arr[j], arr[i]
    return arr[:m]

"""Deterministic synthetic vibration signals: tones, noise, fault impulses.

Stands in for proprietary gearbox recordings in tests and desk experiments;
tone mixtures play the role of gear-mesh lines, one-sided decaying
exponentials the role of local-fault impacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import ParameterError
from .sigio import Signal

__all__ = ["SynthSpec", "generate"]

# salt mixed into the seed so signal noise never aliases matrix entries
_NOISE_STREAM_SALT = 0x5349474E414C5253  # "SIGNALRS"


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a synthetic signal.

    tones: (frequency_hz, amplitude, phase_rad) triples, all below Nyquist.
    noise_db: white-noise power relative to the mean-square power of the
        strongest tone (amplitude 1 reference when there are no tones);
        -inf disables noise.
    impulses: (position_sample, amplitude, decay_per_sample) triples; each
        contributes amplitude * exp(-decay * (t - position)) for t >= position.
    """

    n: int
    sample_rate_hz: float
    tones: tuple[tuple[float, float, float], ...] = ()
    noise_db: float = -math.inf
    impulses: tuple[tuple[int, float, float], ...] = ()
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ParameterError(f"need at least 2 samples, got {self.n}")
        if self.sample_rate_hz <= 0.0:
            raise ParameterError(f"sample rate must be positive, got {self.sample_rate_hz}")
        object.__setattr__(
            self, "tones", tuple((float(f), float(a), float(p)) for f, a, p in self.tones)
        )
        object.__setattr__(
            self, "impulses", tuple((int(t), float(a), float(d)) for t, a, d in self.impulses)
        )
        nyquist = self.sample_rate_hz / 2.0
        for freq, _, _ in self.tones:
            if not 0.0 <= freq < nyquist:
                raise ParameterError(f"tone at {freq} Hz aliases (Nyquist {nyquist} Hz)")
        for pos, _, decay in self.impulses:
            if not 0 <= pos < self.n:
                raise ParameterError(f"impulse position {pos} outside [0, {self.n})")
            if decay < 0.0:
                raise ParameterError(f"impulse decay must be >= 0, got {decay}")


def generate(spec: SynthSpec) -> Signal:
    """Render the spec: sum of cosines + seeded white noise + impulse tails."""
    t = np.arange(spec.n)
    x = np.zeros(spec.n)
    for freq, amp, phase in spec.tones:
        x += amp * np.cos(2.0 * np.pi * freq * t / spec.sample_rate_hz + phase)
    if spec.noise_db != -math.inf:
        ref_amp = max((abs(a) for _, a, _ in spec.tones), default=1.0)
        noise_power = (ref_amp**2 / 2.0) * 10.0 ** (spec.noise_db / 10.0)
        noise_seed = rng.derive_stream_seed(spec.seed, _NOISE_STREAM_SALT)
        x += math.sqrt(noise_power) * rng.gaussians(noise_seed, spec.n)
    for pos, amp, decay in spec.impulses:
        x[pos:] += amp * np.exp(-decay * np.arange(spec.n - pos))
    tone_desc = ",".join(f"{f:g}Hz" for f, _, _ in spec.tones) or "none"
    source = f"synth(n={spec.n},tones={tone_desc},seed={spec.seed})"
    return Signal(x, spec.sample_rate_hz, source)

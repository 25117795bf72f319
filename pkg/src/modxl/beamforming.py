"""Receive beamforming: weight vectors, the resulting SNR, and a seeded
Monte-Carlo uplink simulation for empirical validation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ArrayResponse, LinkBudget
from .numerics import compensated_sum

#: Fixed Monte-Carlo batch size so the RNG stream layout never depends on the
#: caller's environment; identical seeds give bit-identical estimates.
_BATCH = 8192

# Unit-modulus symbol alphabet on the axes: |s|^2 == 1.0 exactly in floats.
_SYMBOLS = np.array([1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j])


@dataclass(frozen=True, eq=False)
class BeamformingWeights:
    "Unit-norm complex receive weight vector."

    weights: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.weights, dtype=np.complex128)
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"weights must have unit norm, got {norm!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class UplinkSimulation:
    """Monte-Carlo uplink setup: number of symbol draws, noise power, transmit
    power (so transmit_power/noise_power is the transmit SNR), and RNG seed."""

    sample_count: int
    noise_power: float
    transmit_power: float
    seed: int

    def __post_init__(self) -> None:
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if not self.noise_power > 0:
            raise ValueError("noise_power must be positive")
        if not self.transmit_power > 0:
            raise ValueError("transmit_power must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def mrc_weights(response: ArrayResponse) -> BeamformingWeights:
    "Maximal-ratio combining weights: the response normalised to unit norm."
    norm = np.linalg.norm(response.coefficients)
    if norm == 0:
        raise ValueError("cannot normalise a zero response vector")
    return BeamformingWeights(response.coefficients / norm)


def snr(weights: BeamformingWeights, response: ArrayResponse, link: LinkBudget) -> float:
    """Linear SNR after receive beamforming: transmit SNR times the squared
    magnitude of the combined channel."""
    if len(weights) != len(response):
        raise ValueError(
            f"weights length {len(weights)} != response length {len(response)}"
        )
    return link.transmit_snr * abs(np.vdot(weights.weights, response.coefficients)) ** 2


def complex_gaussian(
    rng: np.random.Generator, shape: tuple, variance: float
) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples of the given total
    variance: two independent real normal draws per component, each scaled by
    sqrt(variance/2)."""
    scale = math.sqrt(variance / 2.0)
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return scale * (real + 1j * imag)


def uplink_power_estimates(
    response: ArrayResponse, weights: BeamformingWeights, sim: UplinkSimulation
) -> tuple:
    """Empirical (signal power, noise power) after beamforming.

    Draws ``sample_count`` realisations of the combined received sample
    g*sqrt(P)*s + w^H z with unit-power symbols s and white complex Gaussian
    noise z.  Signal and noise powers are accumulated separately, which keeps
    the estimator variance down to the noise term alone.
    """
    if len(weights) != len(response):
        raise ValueError(
            f"weights length {len(weights)} != response length {len(response)}"
        )
    gain = np.vdot(weights.weights, response.coefficients)
    conj_weights = np.conj(weights.weights)
    count = sim.sample_count

    signal_samples = np.empty(count)
    noise_samples = np.empty(count)
    rng = np.random.Generator(np.random.PCG64(sim.seed))
    for start in range(0, count, _BATCH):
        stop = min(start + _BATCH, count)
        block = stop - start
        symbols = _SYMBOLS[rng.integers(0, 4, size=block)]
        noise = complex_gaussian(rng, (block, len(response)), sim.noise_power)
        combined_noise = noise @ conj_weights
        signal_samples[start:stop] = sim.transmit_power * np.abs(gain * symbols) ** 2
        noise_samples[start:stop] = np.abs(combined_noise) ** 2

    signal_power = compensated_sum(signal_samples) / count
    noise_power = compensated_sum(noise_samples) / count
    return signal_power, noise_power


def simulate_uplink(
    response: ArrayResponse, weights: BeamformingWeights, sim: UplinkSimulation
) -> float:
    "Empirical linear SNR estimate; deterministic for a fixed seed."
    signal_power, noise_power = uplink_power_estimates(response, weights, sim)
    return signal_power / noise_power

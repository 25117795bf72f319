"""Complex array response vectors for line-of-sight propagation.

Two models are provided: the non-uniform spherical wave (NUSW) response, in
which amplitude and phase both follow the exact per-element distance, and the
uniform plane wave (UPW) response, in which the amplitude is constant and the
phase progresses linearly across the array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ArrayGeometry, UserLocation, distances, element_offsets

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LinkBudget:
    """Link-level constants: carrier wavelength (metres), channel power gain at
    the 1 m reference distance, and transmit SNR (both linear).

    Only the product ``transmit_snr * reference_gain`` enters any SNR formula;
    it is exposed as :attr:`effective_power`.
    """

    wavelength_m: float
    reference_gain: float = 1.0
    transmit_snr: float = 1.0

    def __post_init__(self) -> None:
        if not self.wavelength_m > 0:
            raise ValueError("wavelength_m must be positive")
        if not self.reference_gain > 0:
            raise ValueError("reference_gain must be positive")
        if not self.transmit_snr > 0:
            raise ValueError("transmit_snr must be positive")

    @property
    def effective_power(self) -> float:
        return self.transmit_snr * self.reference_gain


@dataclass(frozen=True, eq=False)
class ArrayResponse:
    """Per-element channel coefficients in module-major order (modules
    ascending, elements ascending within each module)."""

    coefficients: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.coefficients, dtype=np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "coefficients", arr)

    def __len__(self) -> int:
        return len(self.coefficients)


def _wrap_phase(phase: np.ndarray) -> np.ndarray:
    # Reduce mod 2*pi before exp() so large path lengths stay well conditioned.
    return np.mod(phase, _TWO_PI)


def array_response_nusw(
    geom: ArrayGeometry, user: UserLocation, link: LinkBudget
) -> ArrayResponse:
    """Spherical-wave response: coefficient sqrt(gain)/r_e * exp(-j*2*pi*r_e/wl)
    with r_e the exact element-to-user distance."""
    r = distances(geom, user)
    amplitude = math.sqrt(link.reference_gain) / r
    phase = _wrap_phase(_TWO_PI * r / link.wavelength_m)
    return ArrayResponse(amplitude * np.exp(-1j * phase))


def array_response_upw(
    geom: ArrayGeometry, user: UserLocation, link: LinkBudget
) -> ArrayResponse:
    """Plane-wave response: constant amplitude sqrt(gain)/range and linear
    phase progression from the element axis offsets."""
    path = user.range_m - element_offsets(geom) * geom.element_spacing * math.sin(
        user.angle_rad
    )
    amplitude = math.sqrt(link.reference_gain) / user.range_m
    phase = _wrap_phase(_TWO_PI * path / link.wavelength_m)
    return ArrayResponse(amplitude * np.exp(-1j * phase))

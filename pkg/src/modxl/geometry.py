"""Modular uniform-linear-array layout: element indexing, positions, spans,
and element-to-user distances.

The array lies on the y axis, symmetric about the origin.  A layout consists
of ``module_count`` modules of ``elements_per_module`` antenna elements each.
Elements inside a module are ``element_spacing`` metres apart, and the gap
from the last element of one module to the first element of the next is
``separation_ratio`` element spacings (the module separation).  Element and
module indices are centred so that every position formula is antisymmetric;
for even counts the centred indices are half-integers.

All operations are pure functions of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from .errors import DegenerateGeometryError, ElementIndexError

#: Element-to-user distances below this floor (metres) are rejected: the 1/r
#: free-space amplitude model diverges as the user reaches an element.
DISTANCE_FLOOR_M = 1e-9


def _centered(count: int) -> np.ndarray:
    "Centred unit-step index values for ``count`` positions."
    return np.arange(count) - 0.5 * (count - 1)


@dataclass(frozen=True)
class ArrayGeometry:
    """Geometry of a modular uniform linear array.

    Parameters
    ----------
    elements_per_module :
        Number of antenna elements per module (>= 1).
    module_count :
        Number of modules (>= 1).
    element_spacing :
        Spacing between adjacent elements within a module, metres.
    separation_ratio :
        Module separation in units of the element spacing (>= 1, real).
        A ratio of 1 collapses the layout to a conventional collocated array.
    """

    elements_per_module: int
    module_count: int
    element_spacing: float
    separation_ratio: float = 1.0

    def __post_init__(self) -> None:
        if self.elements_per_module < 1:
            raise ValueError("elements_per_module must be >= 1")
        if self.module_count < 1:
            raise ValueError("module_count must be >= 1")
        if not self.element_spacing > 0:
            raise ValueError("element_spacing must be positive")
        if not self.separation_ratio >= 1:
            raise ValueError("separation_ratio must be >= 1")

    @property
    def module_separation(self) -> float:
        "Gap between adjacent modules, metres."
        return self.separation_ratio * self.element_spacing

    @property
    def stride(self) -> float:
        """Module-to-module index stride: the pitch between like elements of
        adjacent modules, in units of the element spacing."""
        return self.elements_per_module + self.separation_ratio - 1.0

    @property
    def total_elements(self) -> int:
        return self.elements_per_module * self.module_count


@dataclass(frozen=True)
class ElementIndex:
    """Centred (element, module) index pair.

    ``element`` ranges over M centred unit steps, ``module`` over N; both are
    half-integers when the respective count is even.
    """

    element: float
    module: float


@dataclass(frozen=True)
class UserLocation:
    """Polar user position: ``range_m`` metres from the array centre at
    ``angle_rad`` radians off broadside (the positive x axis)."""

    range_m: float
    angle_rad: float = 0.0

    def __post_init__(self) -> None:
        if not self.range_m > 0:
            raise ValueError("range_m must be positive")
        if not abs(self.angle_rad) <= 0.5 * math.pi:
            raise ValueError("angle_rad must lie in [-pi/2, pi/2]")

    @property
    def position(self) -> np.ndarray:
        "Cartesian coordinates [x, y] in metres."
        return np.array([
            self.range_m * math.cos(self.angle_rad),
            self.range_m * math.sin(self.angle_rad),
        ])


def _checked_offset(value: float, count: int, what: str) -> float:
    "Validate one centred index against its count; return it unchanged."
    shifted = value + 0.5 * (count - 1)
    if not (float(shifted).is_integer() and 0 <= shifted < count):
        raise ElementIndexError(
            f"{what} index {value} invalid for count {count}: expected one of "
            f"the {count} centred unit steps"
        )
    return value


def element_index_offset(geom: ArrayGeometry, idx: ElementIndex) -> float:
    "Axis offset of an element in units of the element spacing."
    m = _checked_offset(idx.element, geom.elements_per_module, "element")
    n = _checked_offset(idx.module, geom.module_count, "module")
    return geom.stride * n + m


def element_position(geom: ArrayGeometry, idx: ElementIndex) -> np.ndarray:
    "Cartesian position [0, y] of one array element, metres."
    return np.array([0.0, element_index_offset(geom, idx) * geom.element_spacing])


def element_indices(geom: ArrayGeometry) -> Iterator[ElementIndex]:
    """All element indices in module-major order: modules ascending, elements
    ascending within each module."""
    for n in _centered(geom.module_count):
        for m in _centered(geom.elements_per_module):
            yield ElementIndex(element=float(m), module=float(n))


def element_offsets(geom: ArrayGeometry) -> np.ndarray:
    "Axis offsets of all elements in module-major order, units of the spacing."
    m = _centered(geom.elements_per_module)
    n = _centered(geom.module_count)
    return (geom.stride * n[:, None] + m[None, :]).ravel()


def aperture(geom: ArrayGeometry) -> Tuple[float, float]:
    """Physical spans of the array, metres.

    Returns the end-to-end aperture and the augmented span (aperture plus one
    module width plus one module separation) that drives the closed-form SNR.
    """
    d = geom.element_spacing
    span = (geom.stride * (geom.module_count - 1) + (geom.elements_per_module - 1)) * d
    augmented = span + geom.elements_per_module * d + geom.module_separation
    return span, augmented


def normalized_spacing(geom: ArrayGeometry, user: UserLocation) -> float:
    "Element spacing over user range; the small parameter of the far models."
    return geom.element_spacing / user.range_m


def _distance_ratios(offsets: np.ndarray, user: UserLocation, spacing: float) -> np.ndarray:
    """Element-to-user distances over the user range for given axis offsets.

    Evaluates sqrt(1 - 2*u*eps*sin + (u*eps)^2) in the cancellation-free
    grouping hypot(1 - u*eps*sin, u*eps*cos), which is algebraically identical
    but keeps full precision when the user is nearly collinear with the array.
    """
    ue = offsets * (spacing / user.range_m)
    return np.hypot(1.0 - ue * math.sin(user.angle_rad), ue * math.cos(user.angle_rad))


def distance(geom: ArrayGeometry, user: UserLocation, idx: ElementIndex) -> float:
    "Distance from the user to one array element, metres."
    u = element_index_offset(geom, idx)
    value = user.range_m * float(
        _distance_ratios(np.array([u]), user, geom.element_spacing)[0]
    )
    if value < DISTANCE_FLOOR_M:
        raise DegenerateGeometryError(
            f"user lies on array element ({idx.element}, {idx.module}): "
            f"distance {value:.3e} m below floor {DISTANCE_FLOOR_M:.0e} m"
        )
    return value


def distances(geom: ArrayGeometry, user: UserLocation) -> np.ndarray:
    "Distances from the user to every element, module-major order, metres."
    ratios = _distance_ratios(element_offsets(geom), user, geom.element_spacing)
    values = user.range_m * ratios
    smallest = values.min()
    if smallest < DISTANCE_FLOOR_M:
        raise DegenerateGeometryError(
            f"user lies on the array: minimum element distance {smallest:.3e} m "
            f"below floor {DISTANCE_FLOOR_M:.0e} m"
        )
    return values

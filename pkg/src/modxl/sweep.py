"""Declarative parameter sweeps over the SNR models.

A sweep takes a base scenario, varies one quantity between two bounds, and
evaluates a chosen set of models at every point.  Points are pure functions
of the sweep definition, may run on a thread pool, and are always emitted
in index order, so output is deterministic regardless of worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, Iterable, List, Tuple

from .channel import LinkBudget
from .errors import SweepPointError
from .geometry import ArrayGeometry, UserLocation
from .snr_models import (
    SnrModel,
    SnrReport,
    snr_asymptotic,
    snr_closed_form,
    snr_collocated,
    snr_double_integral,
    snr_exact_sum,
    snr_upw,
)

#: Canonical model ordering used for serialized output.
MODEL_ORDER: Tuple[SnrModel, ...] = (
    SnrModel.EXACT_SUM,
    SnrModel.CLOSED_FORM,
    SnrModel.COLLOCATED,
    SnrModel.ASYMPTOTIC,
    SnrModel.UPW,
    SnrModel.INTEGRAL,
)

_EVALUATORS: Dict[SnrModel, Callable] = {
    SnrModel.EXACT_SUM: snr_exact_sum,
    SnrModel.CLOSED_FORM: snr_closed_form,
    SnrModel.COLLOCATED: snr_collocated,
    SnrModel.ASYMPTOTIC: snr_asymptotic,
    SnrModel.UPW: snr_upw,
    SnrModel.INTEGRAL: snr_double_integral,
}


@dataclass(frozen=True)
class Scenario:
    "A complete evaluation context: array, user position, link budget."

    geometry: ArrayGeometry
    user: UserLocation
    link: LinkBudget


class SweepVariable(Enum):
    MODULE_COUNT = "module_count"
    SEPARATION = "separation"
    THETA = "theta"
    RANGE = "range"
    ELEMENT_SPACING = "element_spacing"


class SweepScale(Enum):
    LINEAR = "linear"
    LOGARITHMIC = "logarithmic"


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over a base scenario.

    ``start``/``stop`` are in the variable's native unit: counts for
    ``module_count``, meters for ``separation``, ``range`` and
    ``element_spacing``, radians for ``theta``.
    """

    base: Scenario
    variable: SweepVariable
    start: float
    stop: float
    steps: int = 40
    scale: SweepScale = SweepScale.LINEAR
    models: frozenset = frozenset({SnrModel.EXACT_SUM, SnrModel.CLOSED_FORM})

    def __post_init__(self) -> None:
        object.__setattr__(self, "models", frozenset(self.models))
        if not self.models:
            raise ValueError("models must be a nonempty set")
        for model in self.models:
            if not isinstance(model, SnrModel):
                raise ValueError(f"unknown model {model!r}")
        if not (isinstance(self.steps, int) and self.steps >= 2):
            raise ValueError(f"steps must be an integer >= 2, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(
                f"start must be below stop, got [{self.start}, {self.stop}]"
            )
        if self.scale is SweepScale.LOGARITHMIC and self.start <= 0:
            raise ValueError("logarithmic scale needs a positive start")
        if self.variable is SweepVariable.MODULE_COUNT and self.start < 1:
            raise ValueError("module_count sweeps start at 1 or above")
        if (
            self.variable is SweepVariable.SEPARATION
            and self.start < self.base.geometry.element_spacing
        ):
            raise ValueError(
                "separation sweeps must keep the module separation at or "
                "above the element spacing"
            )
        if (
            self.variable in (SweepVariable.RANGE, SweepVariable.ELEMENT_SPACING)
            and self.start <= 0
        ):
            raise ValueError(f"{self.variable.value} sweeps need a positive start")

    def point_value(self, index: int) -> float:
        "Variable value at a 0-based point index; endpoints are exact."
        if not 0 <= index < self.steps:
            raise IndexError(f"point index {index} outside 0..{self.steps - 1}")
        if index == 0:
            raw = self.start
        elif index == self.steps - 1:
            raw = self.stop
        elif self.scale is SweepScale.LINEAR:
            raw = self.start + index * (self.stop - self.start) / (self.steps - 1)
        else:
            raw = self.start * (self.stop / self.start) ** (index / (self.steps - 1))
        if self.variable is SweepVariable.MODULE_COUNT:
            return float(max(1, round(raw)))
        return raw


@dataclass(frozen=True)
class SweepRecord:
    "Evaluated models at one sweep point."

    index: int
    variable_value: float
    scenario: Scenario
    reports: Dict[SnrModel, SnrReport] = field(default_factory=dict)

    @property
    def validity_flags(self) -> frozenset:
        flags: set = set()
        for report in self.reports.values():
            flags |= report.validity_flags
        return frozenset(flags)


def apply_variable(
    scenario: Scenario, variable: SweepVariable, value: float
) -> Scenario:
    "Return a copy of the scenario with one swept quantity replaced."
    if variable is SweepVariable.MODULE_COUNT:
        geom = replace(scenario.geometry, module_count=int(round(value)))
        return replace(scenario, geometry=geom)
    if variable is SweepVariable.SEPARATION:
        ratio = value / scenario.geometry.element_spacing
        geom = replace(scenario.geometry, separation_ratio=ratio)
        return replace(scenario, geometry=geom)
    if variable is SweepVariable.THETA:
        return replace(scenario, user=replace(scenario.user, angle_rad=value))
    if variable is SweepVariable.RANGE:
        return replace(scenario, user=replace(scenario.user, range_m=value))
    if variable is SweepVariable.ELEMENT_SPACING:
        geom = replace(scenario.geometry, element_spacing=value)
        return replace(scenario, geometry=geom)
    raise ValueError(f"unknown sweep variable {variable!r}")


def evaluate_models(
    scenario: Scenario, models: Iterable[SnrModel]
) -> Dict[SnrModel, SnrReport]:
    "Evaluate the requested models in canonical order."
    wanted = set(models)
    out: Dict[SnrModel, SnrReport] = {}
    for model in MODEL_ORDER:
        if model in wanted:
            out[model] = _EVALUATORS[model](
                scenario.geometry, scenario.user, scenario.link
            )
    return out


def _evaluate_point(spec: SweepSpec, index: int) -> SweepRecord:
    value = spec.point_value(index)
    scenario = apply_variable(spec.base, spec.variable, value)
    reports = evaluate_models(scenario, spec.models)
    return SweepRecord(index, value, scenario, reports)


def run_sweep(spec: SweepSpec, workers: int = 1) -> List[SweepRecord]:
    """Evaluate every sweep point and return records in index order.

    Any point failing with a hard error aborts the sweep; the raised
    error names the failing index.  Results do not depend on ``workers``.
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    indices = range(spec.steps)
    if workers == 1:
        futures = [(i, None) for i in indices]
        records = []
        for i, _ in futures:
            try:
                records.append(_evaluate_point(spec, i))
            except Exception as exc:
                raise SweepPointError(i, exc) from exc
        return records
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending = [(i, pool.submit(_evaluate_point, spec, i)) for i in indices]
        records = []
        for i, future in pending:
            try:
                records.append(future.result())
            except Exception as exc:
                raise SweepPointError(i, exc) from exc
    return records


def default_scenario() -> Scenario:
    """Reference configuration used across the experiment scripts: a 16-element
    module repeated 20 times at separation ratio 20, half-wavelength spacing
    at 2.4 GHz, broadside user at 35 m, 50 dB transmit SNR."""
    wavelength = 0.1256
    geom = ArrayGeometry(
        elements_per_module=16,
        module_count=20,
        element_spacing=wavelength / 2.0,
        separation_ratio=20.0,
    )
    user = UserLocation(range_m=35.0, angle_rad=0.0)
    link = LinkBudget(wavelength_m=wavelength, reference_gain=1.0, transmit_snr=1e5)
    return Scenario(geom, user, link)


def element_count_preset() -> SweepSpec:
    """Sweep the module count from 1 to 625 on the reference scenario,
    comparing the exact sum, the closed form and the plane-wave value."""
    return SweepSpec(
        base=default_scenario(),
        variable=SweepVariable.MODULE_COUNT,
        start=1.0,
        stop=625.0,
        steps=40,
        scale=SweepScale.LINEAR,
        models=frozenset(
            {SnrModel.EXACT_SUM, SnrModel.CLOSED_FORM, SnrModel.UPW}
        ),
    )


def separation_preset(theta_deg: float = 0.0) -> SweepSpec:
    """Sweep the module separation from one element spacing up to 40 spacings
    at a chosen user angle (degrees), on the reference scenario."""
    base = default_scenario()
    base = replace(
        base, user=replace(base.user, angle_rad=math.radians(theta_deg))
    )
    d = base.geometry.element_spacing
    return SweepSpec(
        base=base,
        variable=SweepVariable.SEPARATION,
        start=d,
        stop=40.0 * d,
        steps=50,
        scale=SweepScale.LINEAR,
        models=frozenset(
            {SnrModel.EXACT_SUM, SnrModel.CLOSED_FORM, SnrModel.UPW}
        ),
    )

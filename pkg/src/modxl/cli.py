"""Command-line front end.

Subcommands: ``eval`` (single-point JSON report), ``sweep`` (CSV parameter
sweep), ``plot`` (SVG chart from sweep CSV), ``verify`` (built-in check
suite).  Every subcommand accepts ``--config`` (flat ``key = value`` file,
``#`` comments, explicit flags win), ``--seed`` and ``--out``.

Exit codes: 0 success, 1 verification failure, 2 usage or invalid
configuration, 3 degenerate geometry or diverging model, 4 I/O failure,
5 malformed tabular input.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DegenerateGeometryError,
    MalformedDataError,
    SweepPointError,
)
from .channel import LinkBudget
from .geometry import ArrayGeometry, UserLocation, aperture, normalized_spacing
from .numerics import db_to_linear, linear_to_db
from .snr_models import ENDFIRE_COS_FLOOR, SnrModel
from .sweep import (
    MODEL_ORDER,
    Scenario,
    SweepScale,
    SweepSpec,
    SweepVariable,
    evaluate_models,
    run_sweep,
)
from .svgchart import ChartSeries, render_line_chart
from .verify import run_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4
EXIT_MALFORMED = 5

CSV_HEADER = (
    "index,var_name,var_value,M,N,d_m,D_m,r_m,theta_rad,txsnr_db,"
    "snr_exact_db,snr_closed_db,snr_collocated_db,snr_asymptotic_db,"
    "snr_upw_db,snr_integral_db,flags"
)

_SPEED_OF_LIGHT = 2.99792458e8

_DEFAULT_WAVELENGTH_M = 0.1256
_DEFAULT_ELEMENTS = 16
_DEFAULT_MODULES = 20
_DEFAULT_SEPARATION_RATIO = 20.0
_DEFAULT_RANGE_M = 35.0
_DEFAULT_THETA_DEG = 0.0
_DEFAULT_TXSNR_DB = 50.0
_DEFAULT_SEED = 7

_MODEL_TOKENS: Dict[str, SnrModel] = {
    "exact": SnrModel.EXACT_SUM,
    "closed": SnrModel.CLOSED_FORM,
    "collocated": SnrModel.COLLOCATED,
    "asymptotic": SnrModel.ASYMPTOTIC,
    "upw": SnrModel.UPW,
    "integral": SnrModel.INTEGRAL,
}
_TOKEN_BY_MODEL = {model: token for token, model in _MODEL_TOKENS.items()}

_SNR_DB_COLUMNS = tuple(f"snr_{_TOKEN_BY_MODEL[m]}_db" for m in MODEL_ORDER)


class UsageError(ValueError):
    "Invalid flag/config combination; maps to exit code 2."


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


#: Converters for config-file values, keyed by argparse destination.
_CONFIG_TYPES = {
    "elements_per_module": int,
    "modules": int,
    "spacing_m": float,
    "spacing_wl": float,
    "separation_m": float,
    "separation_ratio": float,
    "frequency_ghz": float,
    "wavelength_m": float,
    "range_m": float,
    "theta_deg": float,
    "txsnr_db": float,
    "power_db": float,
    "ref_gain_db": float,
    "models": str,
    "preset": str,
    "var": str,
    "start": float,
    "stop": float,
    "steps": int,
    "scale": str,
    "workers": int,
    "seed": int,
    "out": str,
    "input_path": str,
    "x": str,
    "y": str,
    "logx": _parse_bool,
    "title": str,
}

_KEY_TO_DEST = {"in": "input_path"}

#: Alternative-representation families: an explicit flag from a family makes
#: the config file's values for the whole family inert.
_FLAG_FAMILIES = (
    ("spacing_m", "spacing_wl"),
    ("separation_m", "separation_ratio"),
    ("frequency_ghz", "wavelength_m"),
    ("txsnr_db", "power_db", "ref_gain_db"),
)


def _u64(raw: str) -> int:
    value = int(raw)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in unsigned 64 bits")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", metavar="PATH",
        help="flat key = value settings file; explicit flags override it",
    )
    common.add_argument(
        "--seed", type=_u64, metavar="U64",
        help="seed for the stochastic verification check",
    )
    common.add_argument("--out", metavar="PATH", help="output file path")

    scenario = argparse.ArgumentParser(add_help=False)
    group = scenario.add_argument_group("scenario")
    group.add_argument("--elements-per-module", type=int, metavar="M")
    group.add_argument("--modules", type=int, metavar="N")
    spacing = scenario.add_mutually_exclusive_group()
    spacing.add_argument(
        "--spacing-m", type=float, metavar="METERS",
        help="element spacing in meters",
    )
    spacing.add_argument(
        "--spacing-wl", type=float, metavar="WL",
        help="element spacing in wavelengths",
    )
    separation = scenario.add_mutually_exclusive_group()
    separation.add_argument(
        "--separation-m", type=float, metavar="METERS",
        help="module separation in meters",
    )
    separation.add_argument(
        "--separation-ratio", type=float, metavar="L",
        help="module separation in element spacings",
    )
    carrier = scenario.add_mutually_exclusive_group()
    carrier.add_argument("--frequency-ghz", type=float, metavar="GHZ")
    carrier.add_argument("--wavelength-m", type=float, metavar="METERS")
    group.add_argument("--range-m", type=float, metavar="METERS")
    group.add_argument(
        "--theta-deg", type=float, metavar="DEG",
        help="user direction off broadside, degrees in [-90, 90]",
    )
    group.add_argument(
        "--txsnr-db", type=float, metavar="DB",
        help="joint transmit SNR (power times reference gain), dB",
    )
    group.add_argument(
        "--power-db", type=float, metavar="DB",
        help="transmit power over noise alone, dB (advanced)",
    )
    group.add_argument(
        "--ref-gain-db", type=float, metavar="DB",
        help="reference-distance channel gain alone, dB (advanced)",
    )
    scenario.add_argument(
        "--models", metavar="LIST",
        help="comma-separated subset of exact,closed,collocated,asymptotic,"
        "upw,integral, or 'all' for every applicable model",
    )

    parser = argparse.ArgumentParser(
        prog="modxl",
        description="SNR models for modular extremely large linear arrays",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser(
        "eval", parents=[common, scenario],
        help="evaluate the requested SNR models at one configuration",
    )
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser(
        "sweep", parents=[common, scenario],
        help="sweep one variable and write a CSV of model SNRs",
    )
    p_sweep.add_argument(
        "--preset", choices=("element-count", "separation"),
        help="named sweep configuration (default: element-count)",
    )
    p_sweep.add_argument(
        "--var", choices=tuple(v.value for v in SweepVariable),
        help="swept variable",
    )
    p_sweep.add_argument(
        "--start", type=float,
        help="sweep start (degrees for theta, meters/counts otherwise)",
    )
    p_sweep.add_argument("--stop", type=float, help="sweep stop")
    p_sweep.add_argument("--steps", type=int, help="number of sweep points")
    p_sweep.add_argument("--scale", choices=("linear", "log"))
    p_sweep.add_argument(
        "--workers", type=int, help="evaluation threads (default 1)"
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_plot = sub.add_parser(
        "plot", parents=[common],
        help="render sweep CSV columns as an SVG line chart",
    )
    p_plot.add_argument("--in", dest="input_path", metavar="CSV")
    p_plot.add_argument(
        "--x", metavar="COLUMN", help="x column (default var_value)"
    )
    p_plot.add_argument(
        "--y", metavar="LIST",
        help="comma-separated y columns (default: all populated SNR columns)",
    )
    p_plot.add_argument(
        "--logx", action="store_true", default=None,
        help="logarithmic x axis",
    )
    p_plot.add_argument("--title", metavar="TEXT")
    p_plot.set_defaults(func=cmd_plot)

    p_verify = sub.add_parser(
        "verify", parents=[common],
        help="run the built-in verification checks",
    )
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _read_config_file(path: str) -> Dict[str, str]:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    entries: Dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        value = value.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        entries[key] = value
    return entries


def _apply_config(args: argparse.Namespace) -> None:
    if getattr(args, "config", None) is None:
        return
    entries = _read_config_file(args.config)
    given = {
        dest for dest in _CONFIG_TYPES
        if getattr(args, dest, None) is not None
    }
    for key, raw in entries.items():
        dest = _KEY_TO_DEST.get(key, key)
        if dest not in _CONFIG_TYPES:
            raise UsageError(f"{args.config}: unknown config key {key!r}")
        if not hasattr(args, dest):
            continue  # setting for a different subcommand
        if dest in given:
            continue  # explicit flag wins
        if any(dest in family and given & set(family) for family in _FLAG_FAMILIES):
            continue  # an explicit sibling representation wins
        try:
            value = _CONFIG_TYPES[dest](raw)
        except ValueError:
            raise UsageError(
                f"{args.config}: config key {key!r}: cannot parse {raw!r}"
            ) from None
        setattr(args, dest, value)


def _check_exclusive(args: argparse.Namespace) -> None:
    "Re-check one-of constraints after the config merge."
    pairs = (
        ("spacing_m", "spacing_wl"),
        ("separation_m", "separation_ratio"),
        ("frequency_ghz", "wavelength_m"),
    )
    for left, right in pairs:
        if getattr(args, left, None) is not None and getattr(args, right, None) is not None:
            raise UsageError(f"give only one of {left} and {right}")
    if getattr(args, "txsnr_db", None) is not None and (
        getattr(args, "power_db", None) is not None
        or getattr(args, "ref_gain_db", None) is not None
    ):
        raise UsageError("txsnr_db conflicts with power_db/ref_gain_db")


def _default(value, fallback):
    return fallback if value is None else value


def _resolve_scenario(args: argparse.Namespace) -> Scenario:
    if args.wavelength_m is not None:
        wavelength = args.wavelength_m
    elif args.frequency_ghz is not None:
        wavelength = _SPEED_OF_LIGHT / (args.frequency_ghz * 1e9)
    else:
        wavelength = _DEFAULT_WAVELENGTH_M
    if args.spacing_m is not None:
        spacing = args.spacing_m
    elif args.spacing_wl is not None:
        spacing = args.spacing_wl * wavelength
    else:
        spacing = 0.5 * wavelength
    if args.separation_ratio is not None:
        ratio = args.separation_ratio
    elif args.separation_m is not None:
        ratio = args.separation_m / spacing
    else:
        ratio = _DEFAULT_SEPARATION_RATIO
    geometry = ArrayGeometry(
        elements_per_module=_default(args.elements_per_module, _DEFAULT_ELEMENTS),
        module_count=_default(args.modules, _DEFAULT_MODULES),
        element_spacing=spacing,
        separation_ratio=ratio,
    )
    theta_deg = _default(args.theta_deg, _DEFAULT_THETA_DEG)
    user = UserLocation(
        range_m=_default(args.range_m, _DEFAULT_RANGE_M),
        angle_rad=math.radians(theta_deg),
    )
    if args.power_db is not None or args.ref_gain_db is not None:
        transmit_snr = db_to_linear(_default(args.power_db, 0.0))
        gain = db_to_linear(_default(args.ref_gain_db, 0.0))
    else:
        transmit_snr = db_to_linear(_default(args.txsnr_db, _DEFAULT_TXSNR_DB))
        gain = 1.0
    link = LinkBudget(
        wavelength_m=wavelength, reference_gain=gain, transmit_snr=transmit_snr
    )
    return Scenario(geometry, user, link)


def _resolve_models(
    models_text: Optional[str],
    scenario: Scenario,
    swept: Optional[SweepVariable],
    default_text: str,
) -> frozenset:
    text = _default(models_text, default_text)
    tokens = [t.strip().lower() for t in text.split(",") if t.strip()]
    if not tokens:
        raise UsageError("empty models list")
    chosen = set()
    for token in tokens:
        if token == "all":
            chosen |= {
                SnrModel.EXACT_SUM,
                SnrModel.CLOSED_FORM,
                SnrModel.UPW,
                SnrModel.INTEGRAL,
            }
            collocated_ok = (
                abs(scenario.geometry.separation_ratio - 1.0) <= 1e-12
                and swept is not SweepVariable.SEPARATION
            )
            if collocated_ok:
                chosen.add(SnrModel.COLLOCATED)
            asymptotic_ok = (
                abs(math.cos(scenario.user.angle_rad)) >= ENDFIRE_COS_FLOOR
                and swept is not SweepVariable.THETA
            )
            if asymptotic_ok:
                chosen.add(SnrModel.ASYMPTOTIC)
        elif token in _MODEL_TOKENS:
            chosen.add(_MODEL_TOKENS[token])
        else:
            raise UsageError(f"unknown model token {token!r}")
    return frozenset(chosen)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _fmt9(value: float) -> str:
    "Locale-independent rendering with nine significant digits."
    return f"{value:.9g}"


def cmd_eval(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args)
    models = _resolve_models(args.models, scenario, None, default_text="all")
    reports = evaluate_models(scenario, models)

    geom = scenario.geometry
    span, augmented = aperture(geom)
    snr_block: Dict[str, float] = {}
    for model in MODEL_ORDER:
        if model in reports:
            token = _TOKEN_BY_MODEL[model]
            snr_block[f"snr_{token}_linear"] = reports[model].value_linear
            snr_block[f"snr_{token}_db"] = reports[model].value_db
    flags = set()
    for report in reports.values():
        flags |= report.validity_flags
    payload = {
        "geometry": {
            "elements_per_module": geom.elements_per_module,
            "modules": geom.module_count,
            "element_spacing_m": geom.element_spacing,
            "separation_ratio": geom.separation_ratio,
            "module_separation_m": geom.module_separation,
            "stride": geom.stride,
            "total_elements": geom.total_elements,
            "aperture_m": span,
            "augmented_span_m": augmented,
        },
        "user": {
            "range_m": scenario.user.range_m,
            "theta_rad": scenario.user.angle_rad,
            "theta_deg": math.degrees(scenario.user.angle_rad),
            "normalized_spacing": normalized_spacing(geom, scenario.user),
        },
        "link": {
            "wavelength_m": scenario.link.wavelength_m,
            "txsnr_db": linear_to_db(scenario.link.effective_power),
        },
        "snr": snr_block,
        "flags": sorted(flags),
    }
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _resolve_sweep_spec(args: argparse.Namespace, scenario: Scenario) -> SweepSpec:
    d = scenario.geometry.element_spacing
    presets = {
        "element-count": (SweepVariable.MODULE_COUNT, 1.0, 625.0, 40),
        "separation": (SweepVariable.SEPARATION, d, 40.0 * d, 50),
    }
    preset_name = _default(args.preset, "element-count")
    if preset_name not in presets:
        raise UsageError(f"unknown preset {preset_name!r}")
    variable0, start0, stop0, steps0 = presets[preset_name]

    if args.var is not None:
        try:
            variable = SweepVariable(args.var)
        except ValueError:
            raise UsageError(f"unknown sweep variable {args.var!r}") from None
    else:
        variable = variable0

    if variable is variable0:
        start, stop = start0, stop0
    else:
        start = stop = None
    if args.start is not None:
        start = args.start
    if args.stop is not None:
        stop = args.stop
    if start is None or stop is None:
        raise UsageError(
            f"sweeping {variable.value} needs explicit --start and --stop"
        )
    if variable is SweepVariable.THETA:
        # CLI angles are degrees; the engine works in radians.
        start, stop = math.radians(start), math.radians(stop)

    scale_token = _default(args.scale, "linear")
    scales = {
        "linear": SweepScale.LINEAR,
        "log": SweepScale.LOGARITHMIC,
        "logarithmic": SweepScale.LOGARITHMIC,
    }
    if scale_token not in scales:
        raise UsageError(f"unknown scale {scale_token!r}")

    models = _resolve_models(
        args.models, scenario, variable, default_text="exact,closed,upw"
    )
    try:
        return SweepSpec(
            base=scenario,
            variable=variable,
            start=start,
            stop=stop,
            steps=_default(args.steps, steps0),
            scale=scales[scale_token],
            models=models,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _render_csv(spec: SweepSpec, records) -> str:
    lines = [CSV_HEADER]
    for record in records:
        sc = record.scenario
        geom = sc.geometry
        fields = [
            str(record.index),
            spec.variable.value,
            _fmt9(record.variable_value),
            str(geom.elements_per_module),
            str(geom.module_count),
            _fmt9(geom.element_spacing),
            _fmt9(geom.module_separation),
            _fmt9(sc.user.range_m),
            _fmt9(sc.user.angle_rad),
            _fmt9(linear_to_db(sc.link.effective_power)),
        ]
        for model in MODEL_ORDER:
            if model in record.reports:
                fields.append(_fmt9(record.reports[model].value_db))
            else:
                fields.append("")
        fields.append(";".join(sorted(record.validity_flags)))
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.out is None:
        raise UsageError("sweep requires --out PATH")
    scenario = _resolve_scenario(args)
    spec = _resolve_sweep_spec(args, scenario)
    workers = _default(args.workers, 1)
    records = run_sweep(spec, workers=workers)
    _write_text(args.out, _render_csv(spec, records))
    return EXIT_OK


def _read_csv_table(path: str) -> Tuple[List[str], List[List[str]]]:
    with open(path, encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise MalformedDataError(f"{path}: empty file")
    header, data = rows[0], rows[1:]
    for i, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise MalformedDataError(
                f"{path}:{i}: expected {len(header)} fields, found {len(row)}"
            )
    return header, data


def _series_from_table(
    path: str,
    header: List[str],
    data: List[List[str]],
    x_name: str,
    y_name: str,
    log_x: bool,
) -> ChartSeries:
    xi = header.index(x_name)
    yi = header.index(y_name)
    xs: List[float] = []
    ys: List[float] = []
    for i, row in enumerate(data, start=2):
        y_cell = row[yi].strip()
        if not y_cell:
            continue  # model not requested at this point
        try:
            xs.append(float(row[xi]))
            ys.append(float(y_cell))
        except ValueError:
            raise MalformedDataError(
                f"{path}:{i}: non-numeric value in {x_name!r}/{y_name!r}"
            ) from None
    if len(xs) < 2:
        raise MalformedDataError(
            f"{path}: column {y_name!r} has fewer than two plottable rows"
        )
    if log_x and min(xs) <= 0:
        raise MalformedDataError(
            f"{path}: column {x_name!r} has non-positive values; "
            "log x axis impossible"
        )
    return ChartSeries(label=y_name, x=tuple(xs), y=tuple(ys))


def cmd_plot(args: argparse.Namespace) -> int:
    if args.input_path is None:
        raise UsageError("plot requires --in CSV")
    if args.out is None:
        raise UsageError("plot requires --out PATH")
    header, data = _read_csv_table(args.input_path)

    x_name = _default(args.x, "var_value")
    if x_name not in header:
        raise UsageError(f"unknown x column {x_name!r}")
    if args.y is not None:
        y_names = [t.strip() for t in args.y.split(",") if t.strip()]
        if not y_names:
            raise UsageError("empty y column list")
        for name in y_names:
            if name not in header:
                raise UsageError(f"unknown y column {name!r}")
    else:
        y_names = [
            name
            for name in _SNR_DB_COLUMNS
            if name in header
            and any(row[header.index(name)].strip() for row in data)
        ]
        if not y_names:
            raise MalformedDataError(
                f"{args.input_path}: no populated SNR columns to plot"
            )

    log_x = bool(_default(args.logx, False))
    series = [
        _series_from_table(args.input_path, header, data, x_name, name, log_x)
        for name in y_names
    ]
    svg = render_line_chart(
        series,
        x_label=x_name,
        y_label=", ".join(y_names),
        title=_default(args.title, ""),
        log_x=log_x,
    )
    _write_text(args.out, svg)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_checks(seed=_default(args.seed, _DEFAULT_SEED))
    lines = [result.line() for result in results]
    passed = sum(1 for result in results if result.passed)
    lines.append(f"{passed}/{len(results)} checks passed")
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if passed == len(results) else EXIT_VERIFY_FAILED


def _exit_code_for(exc: Exception) -> Optional[int]:
    if isinstance(exc, SweepPointError) and exc.__cause__ is not None:
        inner = _exit_code_for(exc.__cause__)
        if inner is not None:
            return inner
    if isinstance(exc, MalformedDataError):
        return EXIT_MALFORMED
    if isinstance(exc, ValueError):
        return EXIT_USAGE  # includes UsageError and model-mismatch
    if isinstance(exc, DegenerateGeometryError):
        return EXIT_DEGENERATE
    if isinstance(exc, ArithmeticError):
        return EXIT_DEGENERATE  # unbounded limit, quadrature failure
    if isinstance(exc, OSError):
        return EXIT_IO
    return None


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        _check_exclusive(args)
        return args.func(args)
    except Exception as exc:  # mapped to documented exit codes
        code = _exit_code_for(exc)
        if code is None:
            raise
        print(f"modxl: error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())

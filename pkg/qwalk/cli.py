# -*- coding: utf-8 -*-
"""
Command-line front end.

    qwalk simulate --config run.json [--seed N] [--workers N] [--out DIR] [--format csv|json] [--plot]
    qwalk reproduce fig2a [--paper-scale]
    qwalk fit --input results/qfi.csv --t-min 10 --t-max 100 [--window 20]

Library code raises; this module is the only place exceptions become exit codes.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import AliasChoices, BaseModel, ConfigDict, Field, ValidationError, model_validator

from qwalk.analysis import detect_localization, fit_power_law, windowed_alpha
from qwalk.config import (
    CSV_COLUMNS,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_PHI,
    DEFAULT_WINDOW,
    FULL_N_MAPS,
    LOG_LEVEL,
    QFI_NEGATIVE_TOLERANCE,
)
from qwalk.ensemble import DisorderSpec, EnsembleConfig, EnsembleSeries, InitialStateSpec, run_ensemble
from qwalk.errors import ConfigError, FitError, QuantumWalkError
from qwalk.exporter import ResultExporter, read_csv_columns, read_provenance
from qwalk.hilbert import Symmetry
from qwalk.plotting import plot_alpha, plot_distribution, plot_power_law
from qwalk.presets import FitWindow, available_presets, load_figure_preset
from qwalk.twoparticle import TwoParticleExperiment, run_two_particle

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3

Experiment = Literal["qfi", "variance", "distribution", "two-particle", "fit"]

_Y_LABELS = {"qfi": "average QFI F", "variance": "position variance σ²", "two-particle": "average joint QFI F"}


class RunConfig(BaseModel):
    """One experiment run, read from a JSON file plus command-line overrides."""
    model_config = ConfigDict(extra="forbid")

    experiment: Experiment
    disorder: DisorderSpec = Field(default_factory=DisorderSpec)
    steps: Optional[int] = Field(None, ge=1, validation_alias=AliasChoices("steps", "T"))
    n_maps: int = Field(FULL_N_MAPS, ge=1, validation_alias=AliasChoices("n_maps", "M_maps"))
    phi: float = DEFAULT_PHI
    initial: InitialStateSpec = Field(default_factory=InitialStateSpec)
    # exchange statistics of the two-particle experiment
    statistics: Symmetry = Symmetry.BOSON
    master_seed: int = Field(0, ge=0)
    per_map_variance: bool = False
    phase_last: bool = False
    output: Path = DEFAULT_OUTPUT_DIR
    format: Literal["csv", "json"] = "csv"
    plot: bool = False
    fit: Optional[FitWindow] = None
    window: int = Field(DEFAULT_WINDOW, ge=1)
    input: Optional[Path] = None

    @model_validator(mode="after")
    def _check_experiment(self):
        if self.experiment == "fit":
            if self.input is None:
                raise ValueError("input: the fit experiment needs an input CSV")
            if self.fit is None:
                raise ValueError("fit: the fit experiment needs a fit window (t_min, t_max)")
            return self
        if self.steps is None:
            raise ValueError(f"steps: required for the {self.experiment} experiment")
        if self.fit is not None and self.fit.t_max > self.steps:
            raise ValueError(f"fit: window ends at {self.fit.t_max}, beyond steps = {self.steps}")
        return self

    def record(self) -> Dict[str, Any]:
        """Config dump that identifies the experiment (output location excluded)."""
        return self.model_dump(mode="json", exclude={"output", "plot"})

    def ensemble_config(self, observables: List[str]) -> EnsembleConfig:
        return EnsembleConfig(
            disorder=self.disorder,
            steps=self.steps,
            n_maps=self.n_maps,
            master_seed=self.master_seed,
            phi=self.phi,
            initial=self.initial,
            observables=observables,
            per_map_variance=self.per_map_variance,
            phase_last=self.phase_last,
        )

    def two_particle_experiment(self) -> TwoParticleExperiment:
        return TwoParticleExperiment(
            statistics=self.statistics,
            disorder=self.disorder,
            steps=self.steps,
            n_maps=self.n_maps,
            phi=self.phi,
            master_seed=self.master_seed,
            phase_last=self.phase_last,
        )


# ============================================================================
# Writers shared by `simulate` and `reproduce`
# ============================================================================

def _series_rows(experiment: str, series: EnsembleSeries):
    if experiment in ("qfi", "two-particle"):
        return CSV_COLUMNS["qfi"], zip(series.t, series.qfi_mean, series.qfi_stderr)
    if experiment == "variance":
        return CSV_COLUMNS["variance"], zip(series.t, series.variance)
    rows = (
        (t, x, p)
        for t, row in zip(series.t, series.distribution)
        for x, p in zip(series.positions, row)
    )
    return CSV_COLUMNS["distribution"], rows


def write_series(exporter: ResultExporter, stem: str, experiment: str, series: EnsembleSeries,
                 fmt: str) -> Path:
    extra = {"phi": series.config.phi, "n_maps": series.config.n_maps}
    if fmt == "json":
        payload = {"experiment": experiment, "series": series.to_dict(), "ensemble": series.provenance()}
        return exporter.write_json(f"{stem}.json", payload, **extra)
    columns, rows = _series_rows(experiment, series)
    return exporter.write_csv(f"{stem}.csv", columns, rows, **extra)


def write_alpha(exporter: ResultExporter, stem: str, alpha, fmt: str) -> Path:
    if fmt == "json":
        payload = {"window": alpha.window, "t_center": alpha.centers.tolist(),
                   "alpha": [None if np.isnan(a) else float(a) for a in alpha.alpha]}
        return exporter.write_json(f"{stem}.json", payload)
    return exporter.write_csv(f"{stem}.csv", CSV_COLUMNS["alpha"], zip(alpha.centers, alpha.alpha),
                              window=alpha.window)


def _fit_record(fit) -> Dict[str, Any]:
    return {
        "alpha": fit.alpha,
        "alpha_stderr": fit.alpha_stderr,
        "amplitude": fit.amplitude,
        "t_range": list(fit.t_range),
        "residual": fit.residual,
        "n_points": fit.n_points,
        "regime": fit.regime.value,
    }


def _primary_values(experiment: str, series: EnsembleSeries) -> np.ndarray:
    return series.variance if experiment == "variance" else series.qfi_mean


def _slug(label: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", label.lower()).strip("-")


# ============================================================================
# simulate
# ============================================================================

def _run_fit(config: RunConfig, exporter: ResultExporter) -> List[Path]:
    columns = read_csv_columns(config.input)
    value_column = next((name for name in ("qfi_mean", "variance") if name in columns), None)
    if "t" not in columns or value_column is None:
        raise ConfigError("input", f"{config.input} is not a qfi or variance CSV")
    t, values = columns["t"], columns[value_column]

    fit = fit_power_law(values, config.fit.as_tuple(), t)
    alpha = windowed_alpha(values, config.window, t)
    logger.info(f"[_run_fit] {value_column}: alpha = {fit.alpha:.4f} +- {fit.alpha_stderr:.4f} ({fit.regime.value})")

    written = [
        exporter.write_json("fit.json", {"column": value_column, "fit": _fit_record(fit)}),
        write_alpha(exporter, "alpha", alpha, config.format),
    ]
    if config.plot:
        provenance = exporter.provenance()
        written.append(plot_power_law(exporter.figure_path("fit.svg"), {value_column: (t, values)},
                                      value_column, config.input.name, {value_column: fit}, provenance))
        written.append(plot_alpha(exporter.figure_path("alpha.svg"), {value_column: alpha},
                                  "step-dependent exponent", provenance))
    return written


def run(config: RunConfig, workers: Optional[int] = None, progress: bool = False,
        archive: bool = False) -> List[Path]:
    """
    Execute one configured experiment and write its artifacts under ``config.output``.

    Returns the written paths, manifest last (archive after it when requested).
    """
    if config.experiment == "fit":
        source = read_provenance(config.input) or {}
        exporter = ResultExporter(config.output, config.record(), source.get("master_seed"),
                                  source.get("semantics"))
        written = _run_fit(config, exporter)
    else:
        exporter = ResultExporter(config.output, config.record(), config.master_seed,
                                  config.disorder.semantics.value)
        if config.experiment == "two-particle":
            series = run_two_particle(config.two_particle_experiment(), workers, progress)
        else:
            series = run_ensemble(config.ensemble_config([config.experiment]), workers, progress)
        stem = "qfi" if config.experiment == "two-particle" else config.experiment
        written = [write_series(exporter, stem, config.experiment, series, config.format)]

        fit = None
        if config.fit is not None and config.experiment != "distribution":
            fit = fit_power_law(_primary_values(config.experiment, series), config.fit.as_tuple())
            written.append(exporter.write_json("fit.json", {"fit": _fit_record(fit)}))

        if config.plot:
            label = f"{config.disorder.kind.value} p = {config.disorder.p:g}"
            if config.experiment == "distribution":
                written.append(plot_distribution(exporter.figure_path(f"{stem}.svg"),
                                                 {label: (series.positions, series.distribution)},
                                                 "average position distribution", exporter.provenance()))
            else:
                values = _primary_values(config.experiment, series)
                written.append(plot_power_law(exporter.figure_path(f"{stem}.svg"), {label: (series.t, values)},
                                              _Y_LABELS[config.experiment], config.experiment,
                                              {label: fit} if fit else None, exporter.provenance()))

    written.append(exporter.write_manifest(output=str(config.output)))
    if archive:
        written.append(exporter.write_archive())
    return written


# ============================================================================
# reproduce
# ============================================================================

def reproduce_figure(name: str, out_dir: Path = DEFAULT_OUTPUT_DIR, full_scale: bool = False,
                     workers: Optional[int] = None, progress: bool = False, fmt: str = "csv",
                     archive: bool = False) -> List[Path]:
    """
    Run every panel of a figure preset, write one data file per panel, the
    fitted exponents in ``summary.json`` and one SVG for the whole figure.
    """
    preset = load_figure_preset(name)
    n_maps = preset.ensemble_size(full_scale)
    out_dir = Path(out_dir) / name
    record = preset.model_dump(mode="json")
    record["n_maps"] = n_maps
    exporter = ResultExporter(out_dir, record, preset.master_seed, preset.panels[0].disorder.semantics.value)
    logger.info(f"[reproduce_figure] {name}: {len(preset.panels)} panel(s), {n_maps} maps, T = {preset.steps}")

    written: List[Path] = []
    curves, fits, alphas, heatmaps = {}, {}, {}, {}
    summary: Dict[str, Any] = {"figure": name, "panels": {}}
    for panel in preset.panels:
        stem = _slug(panel.label)
        if preset.experiment == "two-particle":
            experiment = TwoParticleExperiment(statistics=panel.statistics, disorder=panel.disorder,
                                               steps=preset.steps, n_maps=n_maps,
                                               master_seed=preset.master_seed)
            series = run_two_particle(experiment, workers, progress)
        else:
            config = EnsembleConfig(disorder=panel.disorder, steps=preset.steps, n_maps=n_maps,
                                    master_seed=preset.master_seed, initial=preset.initial,
                                    observables=[preset.experiment])
            series = run_ensemble(config, workers, progress)
        written.append(write_series(exporter, stem, preset.experiment, series, fmt))

        entry: Dict[str, Any] = {}
        if preset.experiment == "distribution":
            heatmaps[panel.label] = (series.positions, series.distribution)
            entry["row_sums_max_error"] = float(np.max(np.abs(series.distribution.sum(axis=1) - 1.0)))
        else:
            values = _primary_values(preset.experiment, series)
            curves[panel.label] = (series.t, values)
            if preset.fit is not None:
                try:
                    fits[panel.label] = fit_power_law(values, preset.fit.as_tuple())
                    entry["fit"] = _fit_record(fits[panel.label])
                except FitError as e:
                    logger.warning(f"[reproduce_figure] {panel.label}: fit skipped, {e}")
            if preset.plot == "alpha":
                alpha = windowed_alpha(values, preset.window)
                alphas[panel.label] = alpha
                written.append(write_alpha(exporter, f"{stem}_alpha", alpha, fmt))
                entry["localization"] = vars(detect_localization(alpha))
        summary["panels"][panel.label] = entry

    if preset.experiment == "two-particle" and len(curves) == 2:
        (_, upper), (_, lower) = curves.values()
        window = slice(2, preset.steps + 1)
        summary["indistinguishable_at_or_above"] = bool(np.all(upper[window] >= lower[window] - QFI_NEGATIVE_TOLERANCE))

    written.append(exporter.write_json("summary.json", summary))
    svg = exporter.figure_path(f"{name}.svg")
    provenance = exporter.provenance(full_scale=full_scale)
    if preset.plot == "heatmap":
        written.append(plot_distribution(svg, heatmaps, preset.description, provenance))
    elif preset.plot == "alpha":
        written.append(plot_alpha(svg, alphas, preset.description, provenance))
    else:
        written.append(plot_power_law(svg, curves, _Y_LABELS[preset.experiment], preset.description, fits,
                                      provenance))

    written.append(exporter.write_manifest(full_scale=full_scale))
    if archive:
        written.append(exporter.write_archive())
    return written


# ============================================================================
# argument parsing
# ============================================================================

def _load_config_file(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"{path} is not valid JSON ({e})")
    if not isinstance(payload, dict):
        raise ConfigError("config", "top level of the config file must be an object")
    return payload


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for err in error.errors():
        location = ".".join(str(part) for part in err["loc"]) or "config"
        parts.append(f"{location}: {err['msg']}")
    return "; ".join(parts)


def _csv_help() -> str:
    return "\n".join(f"  {name:<13} {','.join(columns)}" for name, columns in CSV_COLUMNS.items())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalk",
        description="Disordered quantum walk metrology: QFI, spreading regimes, two-walker inputs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
示例:
  qwalk simulate --config run.json --seed 7 --out results/run1 --plot
  qwalk reproduce fig2a                 # desk scale ({", ".join(available_presets())})
  qwalk reproduce fig3 --paper-scale
  qwalk fit --input results/run1/qfi.csv --t-min 10 --t-max 100

CSV columns (after one '# provenance {{...}}' comment line):
{_csv_help()}

Exit codes: {EXIT_OK} success, {EXIT_CONFIG_ERROR} config error, {EXIT_RUNTIME_ERROR} runtime error
        """,
    )
    parser.add_argument("--log-level", default=LOG_LEVEL, help="logging level (default from QWALK_LOG_LEVEL)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None, help="joblib worker count (-1 = all cores)")
    common.add_argument("--out", type=Path, default=None, help="output directory")
    common.add_argument("--format", choices=["csv", "json"], default=None, help="data file format")
    common.add_argument("--archive", action="store_true", help="also write run.zip with every artifact")

    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", parents=[common], help="run one configured experiment")
    simulate.add_argument("--config", type=Path, required=True, help="JSON run configuration")
    simulate.add_argument("--seed", type=int, default=None, help="override master_seed")
    simulate.add_argument("--plot", action="store_true", help="emit an SVG plot")

    reproduce = commands.add_parser("reproduce", parents=[common], help="reproduce a published figure")
    reproduce.add_argument("name", help="figure preset name")
    reproduce.add_argument("--paper-scale", action="store_true", help="10^4 phase maps instead of 10^3")

    fit = commands.add_parser("fit", parents=[common], help="fit a qfi or variance CSV")
    fit.add_argument("--input", type=Path, required=True)
    fit.add_argument("--t-min", type=int, required=True)
    fit.add_argument("--t-max", type=int, required=True)
    fit.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    fit.add_argument("--plot", action="store_true", help="emit SVG plots")
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if args.out is not None:
        overrides["output"] = str(args.out)
    if args.format is not None:
        overrides["format"] = args.format
    if getattr(args, "plot", False):
        overrides["plot"] = True
    return overrides


def _dispatch(args: argparse.Namespace) -> List[Path]:
    if args.command == "reproduce":
        return reproduce_figure(args.name, args.out or DEFAULT_OUTPUT_DIR, args.paper_scale,
                                args.workers, progress=True, fmt=args.format or "csv",
                                archive=args.archive)

    if args.command == "simulate":
        data = _load_config_file(args.config)
        if args.seed is not None:
            data["master_seed"] = args.seed
    else:
        data = {
            "experiment": "fit",
            "input": str(args.input),
            "fit": {"t_min": args.t_min, "t_max": args.t_max},
            "window": args.window,
        }
    data.update(_overrides(args))
    config = RunConfig.model_validate(data)
    return run(config, args.workers, progress=True, archive=args.archive)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level)
    try:
        written = _dispatch(args)
    except ValidationError as e:
        print(f"❌ config error: {_format_validation_error(e)}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ConfigError as e:
        print(f"❌ config error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (QuantumWalkError, ValueError, OSError) as e:
        logger.exception(f"[main] {args.command} failed")
        print(f"❌ runtime error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR

    for path in written:
        print(f"📁 {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

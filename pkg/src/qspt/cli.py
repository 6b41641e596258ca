"""Batch front end: scenario configs, presets, CSV/SVG artifacts.

Configs are flat ``key = value`` text files ('#' starts a comment).  All
numeric output goes to CSV with 17 significant digits so identical configs
produce byte-identical files; figures are rendered best-effort and never
affect the exit status.  Exit codes: 0 success, 2 config error, 3 computation
error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .analysis import bracket_scan, pulse_metrics
from .atomic import (
    DEFAULT_ADIABATIC_FLOOR,
    AtomSpecies,
    load_species,
    scaled_problem_from_eta,
    sodium_preset,
)
from .constants import BOLTZMANN, ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR, SPEED_OF_LIGHT
from .dressed import build_dressed_pair
from .errors import ConfigError, InsufficientSamples, NoModulation, QsptError, ValidationError
from .propagation import IntensityField, MediumScenario, analytic_field, propagate_numeric

OUT_DIR_ENV = "QSPT_OUT_DIR"

_MODES = ("analytic", "numeric_linear", "numeric_nonlinear")
_CONVENTIONS = ("cyclic", "angular")

_REQUIRED_KEYS = (
    "density_cm3",
    "temperature_k",
    "length_scaled",
    "carrier_over_delta0",
    "input_eta",
    "alpha",
    "beta",
    "alpha_bar",
    "beta_bar",
)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """Resolved scenario configuration."""

    density_cm3: float
    temperature_k: float
    length_scaled: float
    carrier_over_delta0: float
    input_eta: complex
    alpha: complex
    beta: complex
    alpha_bar: complex
    beta_bar: complex
    species: str = "sodium"
    frequency_convention: str = "cyclic"
    mode: str = "numeric_linear"
    zeta_points: int = 65
    tau_points: int = 769
    tau_span: float = 6.0 * math.pi
    out_dir: str = "qspt_out"
    seed: int = 2026
    rtol: float = 1e-9
    atol: float = 1e-14
    adiabatic_floor: float = DEFAULT_ADIABATIC_FLOOR

    def validate(self) -> None:
        if self.zeta_points < 2 or self.tau_points < 2:
            raise ConfigError("zeta_points and tau_points must both be >= 2")
        if self.tau_span <= 0.0:
            raise ConfigError("tau_span must be > 0")
        if self.mode not in _MODES:
            raise ConfigError(f"mode must be one of {', '.join(_MODES)}; got {self.mode!r}")
        if self.frequency_convention not in _CONVENTIONS:
            raise ConfigError(
                f"frequency_convention must be one of {', '.join(_CONVENTIONS)}; "
                f"got {self.frequency_convention!r}"
            )
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise ConfigError("rtol and atol must be > 0")


_KEY_PARSERS = {
    "species": str,
    "frequency_convention": str,
    "mode": str,
    "out_dir": str,
    "density_cm3": float,
    "temperature_k": float,
    "length_scaled": float,
    "carrier_over_delta0": float,
    "tau_span": float,
    "rtol": float,
    "atol": float,
    "adiabatic_floor": float,
    "zeta_points": int,
    "tau_points": int,
    "seed": int,
    "input_eta": complex,
    "alpha": complex,
    "beta": complex,
    "alpha_bar": complex,
    "beta_bar": complex,
}


def parse_config_text(text: str, origin: str = "<config>") -> RunConfig:
    """Parse a flat key=value config; diagnostics carry line numbers."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEY_PARSERS:
            raise ConfigError(f"{origin}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{origin}:{lineno}: duplicate key {key!r}")
        parser = _KEY_PARSERS[key]
        try:
            values[key] = parser(value.replace(" ", "")) if parser is complex else parser(value)
        except ValueError as exc:
            raise ConfigError(
                f"{origin}:{lineno}: key {key!r}: cannot parse {value!r} as {parser.__name__}"
            ) from exc

    missing = [k for k in _REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigError(f"{origin}: missing required keys: {', '.join(missing)}")
    config = RunConfig(**values)  # type: ignore[arg-type]
    config.validate()
    return config


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, origin=str(path))


def config_to_text(config: RunConfig) -> str:
    """Serialize a config back to the key=value format (17 significant digits)."""
    lines = ["# qspt scenario configuration"]
    for field in dataclasses.fields(RunConfig):
        value = getattr(config, field.name)
        if isinstance(value, complex):
            rendered = format_complex(value)
        elif isinstance(value, float):
            rendered = f"{value:.17g}"
        else:
            rendered = str(value)
        lines.append(f"{field.name} = {rendered}")
    return "\n".join(lines) + "\n"


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def fig3_config() -> RunConfig:
    """Sodium pulse-train scenario: cold, radiation-prepared vapor, exit at zeta = pi."""
    return RunConfig(
        density_cm3=4e12,
        temperature_k=1e-6,
        length_scaled=math.pi,
        carrier_over_delta0=287360.0,
        input_eta=complex(0.01),
        alpha=complex(0.5),
        beta=complex(0.0, math.sqrt(0.75)),
        alpha_bar=complex(0.0, math.sqrt(0.75)),
        beta_bar=complex(0.5),
        mode="numeric_linear",
        out_dir="qspt_fig3",
    )


FIG2_ETA_POINTS = 101


# ---------------------------------------------------------------------------
# Scenario assembly
# ---------------------------------------------------------------------------

def resolve_species(config: RunConfig) -> AtomSpecies:
    if config.species == "sodium":
        return sodium_preset(frequency_convention=config.frequency_convention)
    return load_species(config.species, frequency_convention=config.frequency_convention)


def build_scenario(config: RunConfig) -> MediumScenario:
    species = resolve_species(config)
    try:
        return MediumScenario(
            species=species,
            density=config.density_cm3,
            temperature=config.temperature_k,
            length_scaled=config.length_scaled,
            alpha=config.alpha,
            beta=config.beta,
            alpha_bar=config.alpha_bar,
            beta_bar=config.beta_bar,
            carrier_omega=config.carrier_over_delta0 * species.delta0,
            input_eta=config.input_eta,
        )
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def _grids(config: RunConfig):
    zeta = np.linspace(0.0, config.length_scaled, config.zeta_points)
    tau = np.linspace(0.0, config.tau_span, config.tau_points)
    return zeta, tau


def compute_field(config: RunConfig, ms: MediumScenario, dp) -> IntensityField:
    zeta, tau = _grids(config)
    if config.mode == "analytic":
        return analytic_field(ms, dp, zeta, tau)
    numeric_mode = config.mode.removeprefix("numeric_")
    return propagate_numeric(
        ms,
        zeta,
        tau,
        mode=numeric_mode,
        rtol=config.rtol,
        atol=config.atol,
        adiabatic_floor=config.adiabatic_floor,
    )


# ---------------------------------------------------------------------------
# Artifact writers
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _atomic_write(path: Path, data: str) -> None:
    """Write through a temp file + rename so outputs are never partial."""
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _intensity_rows(field: IntensityField):
    for i, zeta in enumerate(field.zeta_grid):
        for j, tau in enumerate(field.tau_grid):
            yield (zeta, tau, field.values[i, j])


def _dressed_pair_rows(dp):
    scalars = (
        ("p", dp.p, 0.0),
        ("q", dp.q, 0.0),
        ("lambda1", dp.lambda1, 0.0),
        ("lambda2", dp.lambda2, 0.0),
        ("a1_l1", dp.a1_l1.real, dp.a1_l1.imag),
        ("a2_l1", dp.a2_l1.real, dp.a2_l1.imag),
        ("a1_l2", dp.a1_l2.real, dp.a1_l2.imag),
        ("a2_l2", dp.a2_l2.real, dp.a2_l2.imag),
        ("b_l1", dp.b_l1.real, dp.b_l1.imag),
        ("b_l2", dp.b_l2.real, dp.b_l2.imag),
        ("bracket", dp.bracket.real, dp.bracket.imag),
    )
    for name, re, im in scalars:
        yield (name, re, im)


def _complex_json(z: complex):
    return [z.real, z.imag]


def build_manifest(config: RunConfig, ms: MediumScenario, outputs: list[str]) -> dict:
    species = ms.species
    return {
        "tool": "qspt",
        "version": __version__,
        "frequency_convention": config.frequency_convention,
        "adiabatic_floor": config.adiabatic_floor,
        "mode": config.mode,
        "constants_cgs": {
            "hbar_erg_s": HBAR,
            "elementary_charge_statC": ELEMENTARY_CHARGE,
            "electron_mass_g": ELECTRON_MASS,
            "boltzmann_erg_per_K": BOLTZMANN,
            "speed_of_light_cm_per_s": SPEED_OF_LIGHT,
        },
        "species": {
            "label": species.label,
            "delta0_rad_per_s": species.delta0,
            "omega1_rad_per_s": species.omega1,
            "omega2_rad_per_s": species.omega2,
            "d1_statC_cm": species.d1,
            "d2_statC_cm": species.d2,
            "f1": species.f1,
            "f2": species.f2,
            "ground_F_lower": species.ground_F_lower,
            "ground_F_upper": species.ground_F_upper,
        },
        "scenario": {
            "density_cm3": ms.density,
            "temperature_k": ms.temperature,
            "length_scaled": ms.length_scaled,
            "carrier_omega_rad_per_s": ms.carrier_omega,
            "carrier_over_delta0": config.carrier_over_delta0,
            "input_eta": _complex_json(ms.input_eta),
            "alpha": _complex_json(ms.alpha),
            "beta": _complex_json(ms.beta),
            "alpha_bar": _complex_json(ms.alpha_bar),
            "beta_bar": _complex_json(ms.beta_bar),
        },
        "grid": {
            "zeta_points": config.zeta_points,
            "tau_points": config.tau_points,
            "tau_span": config.tau_span,
        },
        "integration": {"rtol": config.rtol, "atol": config.atol},
        "seed": config.seed,
        "outputs": sorted(outputs),
    }


def write_manifest(path: Path, manifest: dict) -> None:
    _atomic_write(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_scenario(config: RunConfig, out_dir: Optional[Path] = None) -> dict[str, Path]:
    """Full scenario run: intensity field, exit-face metrics, plots, manifest."""
    config.validate()
    ms = build_scenario(config)
    sp = scaled_problem_from_eta(
        ms.species, ms.input_eta, ms.carrier_omega, config.adiabatic_floor
    )
    dp = build_dressed_pair(sp)
    field = compute_field(config, ms, dp)

    i0 = abs(ms.input_eta) ** 2
    status = "ok"
    metrics = None
    if i0 == 0.0:
        status = "no_modulation"
    else:
        try:
            metrics = pulse_metrics(field.tau_grid, field.values[-1] / i0, ms.species.delta0)
        except NoModulation:
            status = "no_modulation"
        except InsufficientSamples:
            status = "insufficient_samples"

    out = Path(out_dir) if out_dir is not None else Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "intensity": out / "intensity.csv",
        "metrics": out / "metrics.csv",
        "dressed_pair": out / "dressed_pair.csv",
        "config": out / "config.txt",
        "manifest": out / "manifest.json",
    }

    write_csv(paths["intensity"], ["zeta", "tau", "intensity"], _intensity_rows(field))
    nan = float("nan")
    metric_row = (
        _fmt(field.zeta_grid[-1]),
        status,
        metrics.repetition_period_scaled if metrics else nan,
        metrics.repetition_rate_hz if metrics else nan,
        metrics.fwhm_scaled if metrics else nan,
        metrics.fwhm_seconds if metrics else nan,
        metrics.modulation_depth if metrics else nan,
        metrics.peak_gain if metrics else nan,
    )
    write_csv(
        paths["metrics"],
        [
            "zeta",
            "status",
            "repetition_period_scaled",
            "repetition_rate_hz",
            "fwhm_scaled",
            "fwhm_seconds",
            "modulation_depth",
            "peak_gain",
        ],
        [metric_row],
    )
    write_csv(paths["dressed_pair"], ["field", "re", "im"], _dressed_pair_rows(dp))
    _atomic_write(paths["config"], config_to_text(config))
    manifest = build_manifest(config, ms, [p.name for p in paths.values()] + ["pulse_train.svg"])
    write_manifest(paths["manifest"], manifest)

    try:
        from .plotting import pulse_train_figure, save_figure

        if i0 > 0.0:
            fig = pulse_train_figure(
                field.tau_grid, field.values[-1] / i0, title=f"{ms.species.label} ({field.mode})"
            )
            save_figure(fig, out / "pulse_train.svg")
            paths["pulse_train"] = out / "pulse_train.svg"
    except Exception as exc:  # plotting is best-effort by contract
        print(f"warning: plot generation failed: {exc}", file=sys.stderr)

    return paths


def run_fig2_preset(out_dir: Path, config: Optional[RunConfig] = None) -> dict[str, Path]:
    """Bracket-flatness scan bundle for the sodium frequencies."""
    config = config or fig3_config()
    species = resolve_species(config)
    carrier = config.carrier_over_delta0 * species.delta0
    template = scaled_problem_from_eta(species, 1.0, carrier, config.adiabatic_floor)
    etas = np.linspace(0.0, 1.0, FIG2_ETA_POINTS)
    rows = bracket_scan(template, etas)

    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {"bracket_scan": out_dir / "bracket_scan.csv", "manifest": out_dir / "manifest.json"}
    write_csv(
        paths["bracket_scan"],
        ["eta", "bracket_abs", "lambda_gap"],
        ((r.eta, r.bracket_abs, r.lambda_gap) for r in rows),
    )
    ms = build_scenario(config)
    manifest = build_manifest(config, ms, [p.name for p in paths.values()] + ["bracket.svg"])
    manifest["scan"] = {"eta_min": 0.0, "eta_max": 1.0, "eta_points": FIG2_ETA_POINTS}
    write_manifest(paths["manifest"], manifest)

    try:
        from .plotting import bracket_figure, save_figure

        fig = bracket_figure(
            [r.eta for r in rows], [r.bracket_abs for r in rows], [r.lambda_gap for r in rows]
        )
        save_figure(fig, out_dir / "bracket.svg")
        paths["bracket_plot"] = out_dir / "bracket.svg"
    except Exception as exc:
        print(f"warning: plot generation failed: {exc}", file=sys.stderr)
    return paths


@dataclass(frozen=True)
class DeviationReport:
    pair: str
    max_rel: float
    mean_rel: float


def compare_modes(config: RunConfig, out_dir: Optional[Path] = None) -> list[DeviationReport]:
    """Run all three modes on the same grid and report pairwise deviations."""
    config.validate()
    ms = build_scenario(config)
    sp = scaled_problem_from_eta(
        ms.species, ms.input_eta, ms.carrier_omega, config.adiabatic_floor
    )
    dp = build_dressed_pair(sp)
    zeta, tau = _grids(config)

    fields = {
        "analytic": analytic_field(ms, dp, zeta, tau),
        "numeric_linear": propagate_numeric(
            ms, zeta, tau, "linear", rtol=config.rtol, atol=config.atol,
            adiabatic_floor=config.adiabatic_floor,
        ),
        "numeric_nonlinear": propagate_numeric(
            ms, zeta, tau, "nonlinear", rtol=config.rtol, atol=config.atol,
            adiabatic_floor=config.adiabatic_floor,
        ),
    }

    reports = []
    names = list(fields)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a = fields[names[i]].values
            b = fields[names[j]].values
            scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
            rel = np.abs(a - b) / scale
            reports.append(
                DeviationReport(f"{names[i]}_vs_{names[j]}", float(rel.max()), float(rel.mean()))
            )

    out = Path(out_dir) if out_dir is not None else Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(
        out / "compare.csv",
        ["pair", "max_rel_deviation", "mean_rel_deviation"],
        ((r.pair, r.max_rel, r.mean_rel) for r in reports),
    )
    return reports


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _resolve_out_dir(cli_out: Optional[str], default: str) -> Path:
    if cli_out:
        return Path(cli_out)
    env = os.environ.get(OUT_DIR_ENV)
    if env:
        return Path(env)
    return Path(default)


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qspt",
        description="Pulse-train formation in a coherently prepared three-level vapor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config")
    p_run.add_argument("config", help="path to a key=value scenario file")
    p_run.add_argument("--out", help="output directory (overrides config and environment)")

    p_preset = sub.add_parser("preset", help="run a built-in scenario")
    p_preset.add_argument("name", choices=("fig2", "fig3"))
    p_preset.add_argument("--out", help="output directory")

    p_cmp = sub.add_parser("compare", help="compare analytic and numeric modes")
    p_cmp.add_argument("config", help="path to a key=value scenario file")
    p_cmp.add_argument("--out", help="output directory (overrides config and environment)")

    p_self = sub.add_parser("selftest", help="run the built-in invariant suites")
    p_self.add_argument("--seed", type=int, default=2026)
    p_self.add_argument("--trials", type=int, default=2000)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            config = load_config(args.config)
            out = _resolve_out_dir(args.out, config.out_dir)
            paths = run_scenario(config, out)
            print(f"wrote {len(paths)} artifacts to {out}")
        elif args.command == "preset":
            if args.name == "fig3":
                config = fig3_config()
                out = _resolve_out_dir(args.out, config.out_dir)
                paths = run_scenario(config, out)
            else:
                out = _resolve_out_dir(args.out, "qspt_fig2")
                paths = run_fig2_preset(out)
            print(f"wrote {len(paths)} artifacts to {out}")
        elif args.command == "compare":
            config = load_config(args.config)
            out = _resolve_out_dir(args.out, config.out_dir)
            for report in compare_modes(config, out):
                print(
                    f"{report.pair}: max_rel={report.max_rel:.6e} mean_rel={report.mean_rel:.6e}"
                )
        elif args.command == "selftest":
            from .selftest import run_selftest

            if not run_selftest(seed=args.seed, trials=args.trials):
                return 3
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QsptError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3
    return 0


def main_entry() -> None:
    sys.exit(main())

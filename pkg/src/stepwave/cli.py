"""Command-line front end.

Subcommands: ``field`` (sample |psi|^2 along a space or time cut),
``forerunner`` (pulse-scale report), ``oracle`` (Crank-Nicolson and Talbot
cross-checks), ``reproduce`` (canonical figure datasets 1..7). Configuration
is a flat ``key = value`` file with ``#`` comments, overridable by flags of
the same names; unknown keys are rejected.

Exit codes: 0 success, 1 usage or configuration error, 2 tolerance or
physics-check failure, 3 I/O failure. Output files use fixed %.17g float
formatting and LF line endings, so identical configurations produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from stepwave import forerunner as fr
from stepwave import oracle as orc
from stepwave import wavefield as wf
from stepwave.units import (
    DegenerateScenarioError,
    Regime,
    SourceScenario,
    WrongRegimeError,
    derive_wavenumber,
    group_velocity,
    penetration_length,
    traversal_time,
    unit_system,
)

OUT_ENV_VAR = "STEPWAVE_OUT"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
EXIT_IO = 3

SQRT3 = math.sqrt(3.0)


class UsageError(ValueError):
    """Bad command line or configuration."""


class ToleranceError(RuntimeError):
    """A physics cross-check exceeded its tolerance."""


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


@dataclass
class RunConfig:
    """Flat option set shared by all subcommands; None means unset."""

    units: str = "natural"
    V0: float | None = None
    E0: float | None = None
    mass: float | None = None
    out: str | None = None
    format: str = "csv"
    prefix: str | None = None
    # field
    axis: str | None = None
    fixed: tuple[float, ...] | None = None
    x_min: float | None = None
    x_max: float | None = None
    nx: int | None = None
    t_min: float | None = None
    t_max: float | None = None
    nt: int | None = None
    # forerunner
    x_f: float | None = None
    t_f: float | None = None
    etas: tuple[float, ...] | None = None
    xr_times: tuple[float, ...] | None = None
    scaling_t0: float | None = None
    # oracle
    L: float | None = None
    dt: float | None = None
    n_steps: int | None = None
    talbot_nodes: int = 64
    n_probes: int = 32
    tol_cn: float = 1e-3
    tol_talbot: float = 1e-6
    amplitude: float = 1.0
    # reproduce
    figure: int | None = None


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise UsageError("empty value list")
    return values


_PARSERS = {
    "units": str,
    "V0": float,
    "E0": float,
    "mass": float,
    "out": str,
    "format": str,
    "prefix": str,
    "axis": str,
    "fixed": _parse_float_list,
    "x_min": float,
    "x_max": float,
    "nx": int,
    "t_min": float,
    "t_max": float,
    "nt": int,
    "x_f": float,
    "t_f": float,
    "etas": _parse_float_list,
    "xr_times": _parse_float_list,
    "scaling_t0": float,
    "L": float,
    "dt": float,
    "n_steps": int,
    "talbot_nodes": int,
    "n_probes": int,
    "tol_cn": float,
    "tol_talbot": float,
    "amplitude": float,
    "figure": int,
}


def parse_config_file(path: str | Path) -> dict:
    """Strict flat key = value parser; unknown keys are rejected."""
    values: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _PARSERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except UsageError:
            raise
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        file_values = parse_config_file(args.config)
        for key, value in file_values.items():
            setattr(cfg, key, value)
    for f in fields(RunConfig):
        flag_value = getattr(args, f.name, None)
        if flag_value is not None:
            setattr(cfg, f.name, flag_value)
    if cfg.format not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, not {cfg.format!r}")
    return cfg


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join(missing)}")


def scenario_from_config(cfg: RunConfig) -> SourceScenario:
    _require(cfg, "V0", "E0")
    try:
        units = unit_system(cfg.units, mass=cfg.mass)
        return SourceScenario(units=units, V0=cfg.V0, E0=cfg.E0)
    except (ValueError, DegenerateScenarioError) as e:
        raise UsageError(str(e)) from None


def output_dir(cfg: RunConfig) -> Path:
    base = cfg.out or os.environ.get(OUT_ENV_VAR) or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


FIELD_HEADER = "x,t,re_psi,im_psi,density,stationary_density"


def _stationary_density(x: float, s: SourceScenario) -> float:
    return abs(wf.psi_stationary(x, s)) ** 2


def write_field_csv(path: Path, grid: wf.FieldGrid) -> None:
    lines = [FIELD_HEADER]
    for smp in grid.samples:
        lines.append(
            ",".join(
                [
                    _fmt(smp.x),
                    _fmt(smp.t),
                    _fmt(smp.psi.real),
                    _fmt(smp.psi.imag),
                    _fmt(smp.density),
                    _fmt(_stationary_density(smp.x, grid.scenario)),
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n")


def write_field_json(path: Path, grid: wf.FieldGrid) -> None:
    payload = {
        "axis": grid.axis.value,
        "fixed_value": grid.fixed_value,
        "samples": [
            {
                "x": smp.x,
                "t": smp.t,
                "re_psi": smp.psi.real,
                "im_psi": smp.psi.imag,
                "density": smp.density,
                "stationary_density": _stationary_density(smp.x, grid.scenario),
            }
            for smp in grid.samples
        ],
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _scenario_meta(s: SourceScenario) -> dict:
    meta = {
        "units": s.units.label,
        "V0": s.V0,
        "E0": s.E0,
        "mass": s.mass,
        "hbar": s.hbar,
        "regime": s.regime.value,
        "wavenumber": derive_wavenumber(s),
        "group_velocity": group_velocity(s),
    }
    if s.regime is Regime.BELOW:
        meta["penetration_length"] = penetration_length(s)
        meta["onset_bound"] = fr.onset_bound(s)
    return meta


def cmd_field(cfg: RunConfig) -> int:
    s = scenario_from_config(cfg)
    _require(cfg, "axis", "fixed")
    if cfg.axis not in ("space", "time"):
        raise UsageError("axis must be 'space' or 'time'")
    out = output_dir(cfg)
    prefix = cfg.prefix or "field"
    files = []
    markers = []
    v = group_velocity(s)
    for value in cfg.fixed:
        try:
            if cfg.axis == "space":
                _require(cfg, "x_min", "x_max", "nx")
                if cfg.nx < 2:
                    raise UsageError("nx must be at least 2")
                xs = np.linspace(cfg.x_min, cfg.x_max, cfg.nx)
                grid = wf.sample_space_cut(s, value, [float(x) for x in xs])
                markers.append({"t": value, "x_semiclassical": v * value})
            else:
                _require(cfg, "t_min", "t_max", "nt")
                if cfg.nt < 2:
                    raise UsageError("nt must be at least 2")
                ts = np.linspace(cfg.t_min, cfg.t_max, cfg.nt)
                grid = wf.sample_time_cut(s, value, [float(t) for t in ts])
                markers.append({"x": value, "t_semiclassical": value / v})
        except (ValueError, WrongRegimeError) as e:
            raise UsageError(str(e)) from None
        name = f"{prefix}_{cfg.axis}_{value:g}.{cfg.format}"
        path = out / name
        if cfg.format == "csv":
            write_field_csv(path, grid)
        else:
            write_field_json(path, grid)
        files.append(name)
    sidecar = {
        "scenario": _scenario_meta(s),
        "axis": cfg.axis,
        "markers": markers,
        "files": files,
    }
    (out / f"{prefix}.meta.json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n"
    )
    print(f"wrote {len(files)} cut(s) and {prefix}.meta.json to {out}")
    return EXIT_OK


def cmd_forerunner(cfg: RunConfig) -> int:
    s = scenario_from_config(cfg)
    if s.regime is not Regime.BELOW:
        raise UsageError("forerunner analysis needs a below-the-barrier scenario")
    if cfg.format != "json":
        raise UsageError("the forerunner report is JSON; use format = json")
    _require(cfg, "x_f")
    etas = cfg.etas or (1.0, 3.333, 5.0, 10.0)
    out = output_dir(cfg)
    v = group_velocity(s)
    x0 = fr.onset_bound(s)
    if cfg.xr_times is not None:
        xr_factors = tuple(t * v / x0 for t in cfg.xr_times)
    else:
        xr_factors = (2.5, 5.0, 10.0)

    reports = {}
    for method in (fr.Method.ANALYTIC_EQ12, fr.Method.NUMERIC_EQ3):
        rep = fr.build_report(
            s,
            cfg.x_f,
            method,
            t_f=cfg.t_f,
            xr_time_factors=xr_factors,
            etas=etas,
            scaling_t0=cfg.scaling_t0,
        )
        reports[method.value] = {
            "method": method.value,
            "X0": rep.X0,
            "XR_at": [{"t": t, "XR": xr} for t, xr in rep.XR_at],
            "t_m": rep.t_m,
            "x_m": rep.x_m,
            "h_hc": rep.h_hc,
            "h_fd": rep.h_fd,
            "height_ratio": rep.height_ratio,
            "x_f": rep.x_f,
            "x_f_over_x_m": rep.x_f / rep.x_m,
            "scaling": [
                {"eta": c.eta, "max_residual": c.max_residual, "support": list(c.support)}
                for c in rep.scaling
            ],
        }
    ana = reports[fr.Method.ANALYTIC_EQ12.value]
    num = reports[fr.Method.NUMERIC_EQ3.value]
    rel = lambda a, b: abs(a - b) / abs(a) if a else math.inf
    payload = {
        "scenario": _scenario_meta(s),
        "tau": traversal_time(s, cfg.x_f),
        "analytic_eq12": ana,
        "numeric_eq3": num,
        "discrepancy": {
            "t_m": rel(ana["t_m"], num["t_m"]),
            "x_m": rel(ana["x_m"], num["x_m"]),
            "height_ratio": rel(ana["height_ratio"], num["height_ratio"]),
        },
    }
    path = output_dir(cfg) / ((cfg.prefix or "forerunner") + "_report.json")
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    s = scenario_from_config(cfg)
    _require(cfg, "L", "nx", "dt", "n_steps")
    try:
        grid = orc.GridSpec(L=cfg.L, nx=cfg.nx, dt=cfg.dt, n_steps=cfg.n_steps)
    except ValueError as e:
        raise UsageError(str(e)) from None
    orc.preflight(s, grid)  # PreflightError maps to exit code 2
    amp2 = cfg.amplitude * cfg.amplitude  # densities scale linearly in |amp|^2
    states = orc.cn_evolve(s, grid, source_amplitude=cfg.amplitude)
    final = states[-1]
    window = orc.comparison_window(s, grid)
    xs = np.linspace(0.0, grid.L, grid.nx)
    idx = np.nonzero((xs > 0) & (xs <= window))[0]
    probe_idx = idx[np.linspace(0, len(idx) - 1, min(cfg.n_probes, len(idx))).astype(int)]

    exact_density = {}
    for j in probe_idx:
        psi = wf.psi_field(float(xs[j]), final.t, s)
        exact_density[j] = amp2 * abs(psi) ** 2
    max_density = max(max(exact_density.values(), default=0.0), 1e-300)

    rows = []
    violations = []
    for j in probe_idx:
        x = float(xs[j])
        a_dens = exact_density[j]
        cn_dens = abs(final.psi[j]) ** 2
        tb_psi = orc.talbot_invert(x, final.t, s, cfg.talbot_nodes)
        tb_dens = amp2 * abs(tb_psi) ** 2
        rel_cn = abs(cn_dens - a_dens) / max_density
        rel_tb = abs(tb_dens - a_dens) / max_density
        rows.append((x, final.t, a_dens, cn_dens, tb_dens, rel_cn, rel_tb))
        if rel_cn > cfg.tol_cn or rel_tb > cfg.tol_talbot:
            violations.append(rows[-1])

    out = output_dir(cfg)
    path = out / ((cfg.prefix or "oracle") + "_comparison.csv")
    lines = ["x,t,analytic_density,cn_density,talbot_density,rel_err_cn,rel_err_talbot"]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(rows)} probes, window x <= {window:g})")
    if violations:
        for row in violations:
            print(
                f"tolerance violation at x={row[0]:g}: rel_err_cn={row[5]:.3e} "
                f"rel_err_talbot={row[6]:.3e}",
                file=sys.stderr,
            )
        raise ToleranceError(
            f"{len(violations)} probe(s) exceeded tolerances "
            f"(tol_cn={cfg.tol_cn:g}, tol_talbot={cfg.tol_talbot:g})"
        )
    return EXIT_OK


# Canonical figure datasets: the below-barrier scenario is V0 = 1 eV,
# E0 = 0.5 eV and the above one V0 = 1 eV, E0 = 2 eV, in eV-nm-fs units.
# Captions carry a unit convention that does not reproduce absolute
# positions with the free-electron mass; the manifests say so.
UNITS_NOTE = (
    "published captions for this dataset family imply a unit convention "
    "that does not match eV-nm-fs with the free electron mass; absolute "
    "positions differ while unit-free ratios (x_f/x_m = sqrt(3), "
    "height ratio 3*sqrt(3)/4, X0*q0 = 2) are convention independent"
)


def _fig_scenarios() -> tuple[SourceScenario, SourceScenario]:
    above = SourceScenario(units=unit_system("ev-nm-fs"), V0=1.0, E0=2.0)
    below = SourceScenario(units=unit_system("ev-nm-fs"), V0=1.0, E0=0.5)
    return above, below


def _space_grid(lo: float, hi: float, n: int) -> list[float]:
    return [float(x) for x in np.linspace(lo, hi, n)]


def _emit_grid(out: Path, name: str, grid: wf.FieldGrid, manifest: list, **params) -> None:
    write_field_csv(out / name, grid)
    manifest.append({"file": name, "schema": FIELD_HEADER, "params": params})


def _emit_pulse_cut(
    out: Path,
    name: str,
    s: SourceScenario,
    t: float,
    xs: list[float],
    manifest: list,
    **params,
) -> None:
    """Space cut of the closed-form pulse amplitude, FieldGrid schema."""
    lines = [FIELD_HEADER]
    for x in xs:
        psi = wf.psi_transient_pulse(x, t, s)
        lines.append(
            ",".join(
                [
                    _fmt(x),
                    _fmt(t),
                    _fmt(psi.real),
                    _fmt(psi.imag),
                    _fmt(abs(psi) ** 2),
                    _fmt(_stationary_density(x, s)),
                ]
            )
        )
    (out / name).write_text("\n".join(lines) + "\n")
    manifest.append({"file": name, "schema": FIELD_HEADER, "params": params})


def cmd_reproduce(cfg: RunConfig) -> int:
    _require(cfg, "figure")
    fig = cfg.figure
    if fig not in range(1, 8):
        raise UsageError("figure must be in 1..7")
    above, below = _fig_scenarios()
    out = output_dir(cfg) / f"fig{fig}"
    out.mkdir(parents=True, exist_ok=True)
    manifest_files: list = []
    notes = UNITS_NOTE
    v_above = group_velocity(above)
    v_below = group_velocity(below)
    markers: dict = {}

    if fig == 1:
        xs = _space_grid(0.0, 30.0, 601)
        for t in (15.0, 30.0):
            _emit_grid(
                out, f"fig1a_t{t:g}.csv", wf.sample_space_cut(above, t, xs),
                manifest_files, cut="space", t_fs=t,
            )
        ts = [float(t) for t in np.linspace(0.1, 80.0, 800)]
        for x in (5.0, 30.0):
            _emit_grid(
                out, f"fig1b_x{x:g}.csv", wf.sample_time_cut(above, x, ts),
                manifest_files, cut="time", x_nm=x,
            )
        markers = {
            "x_semiclassical_nm": {f"t={t:g}": v_above * t for t in (15.0, 30.0)},
            "t_semiclassical_fs": {f"x={x:g}": x / v_above for x in (5.0, 30.0)},
        }
    elif fig == 2:
        ts_a = [float(t) for t in np.linspace(0.05, 30.0, 600)]
        ts_b = [float(t) for t in np.linspace(0.05, 80.0, 800)]
        for x, ts in ((1.2, ts_a), (1.5, ts_a), (6.0, ts_b), (10.0, ts_b)):
            _emit_grid(
                out, f"fig2_x{x:g}.csv", wf.sample_time_cut(below, x, ts),
                manifest_files, cut="time", x_nm=x,
            )
    elif fig == 3:
        xs = _space_grid(0.001, 8.0, 801)
        xr = {}
        for t in (1.0, 3.0, 4.0, 15.0):
            _emit_grid(
                out, f"fig3_t{t:g}.csv", wf.sample_space_cut(below, t, xs),
                manifest_files, cut="space", t_fs=t,
            )
            if t > fr.onset_bound(below) / v_below:
                xr[f"t={t:g}"] = fr.crossover_position(t, below)
        markers = {"X0_nm": fr.onset_bound(below), "XR_nm": xr}
        notes += "; caption X0 = 2.134 is convention bound, here X0 = 2/q0"
    elif fig == 4:
        xs = _space_grid(0.001, 1.2, 601)
        for t in (1.0, 2.0, 3.0, 15.0):
            _emit_grid(
                out, f"fig4_t{t:g}.csv", wf.sample_space_cut(below, t, xs),
                manifest_files, cut="space", t_fs=t,
            )
        markers = {"X0_nm": fr.onset_bound(below)}
    elif fig == 5:
        t0 = 30.0
        xs = _space_grid(0.01, 160.0, 1600)
        for t in (30.0, 100.0, 150.0, 300.0):
            _emit_grid(
                out, f"fig5a_t{t:g}.csv", wf.sample_space_cut(below, t, xs),
                manifest_files, cut="space", t_fs=t,
            )
        xs_ref = np.linspace(0.05, 4.0 * v_below * t0, 1000)
        for eta in (3.333, 5.0, 10.0):
            name = f"fig5b_eta{eta:g}.csv"
            lines = ["x_scaled,eta,density_scaled,pulse_prediction"]
            for x in xs_ref:
                x = float(x)
                dens = eta * abs(wf.psi_below(eta * x, eta * t0, below)) ** 2
                lines.append(
                    ",".join(
                        [
                            _fmt(x),
                            _fmt(eta),
                            _fmt(dens),
                            _fmt(wf.pulse_density(x, t0, below)),
                        ]
                    )
                )
            (out / name).write_text("\n".join(lines) + "\n")
            manifest_files.append(
                {
                    "file": name,
                    "schema": "x_scaled,eta,density_scaled,pulse_prediction",
                    "params": {"t0_fs": t0, "eta": eta},
                }
            )
    elif fig == 6:
        x0, t0 = 8.0, 30.0
        ts = [float(t) for t in np.linspace(0.5, 80.0, 800)]
        _emit_grid(
            out, "fig6a_exact.csv", wf.sample_time_cut(below, x0, ts),
            manifest_files, cut="time", x_nm=x0,
        )
        lines = [FIELD_HEADER]
        for t in ts:
            psi = wf.psi_decomposed(x0, t, below).total
            lines.append(
                ",".join(
                    [
                        _fmt(x0), _fmt(t), _fmt(psi.real), _fmt(psi.imag),
                        _fmt(abs(psi) ** 2), _fmt(_stationary_density(x0, below)),
                    ]
                )
            )
        (out / "fig6a_decomposed.csv").write_text("\n".join(lines) + "\n")
        manifest_files.append(
            {"file": "fig6a_decomposed.csv", "schema": FIELD_HEADER,
             "params": {"cut": "time", "x_nm": x0, "content": "stationary+pulse"}}
        )
        xs = _space_grid(0.5, 4.0 * v_below * t0, 1000)
        _emit_grid(
            out, "fig6b_exact.csv", wf.sample_space_cut(below, t0, xs),
            manifest_files, cut="space", t_fs=t0,
        )
        _emit_pulse_cut(
            out, "fig6b_pulse.csv", below, t0, xs, manifest_files,
            cut="space", t_fs=t0, content="pulse only",
        )
    else:  # fig == 7
        t_m = 30.0
        t_prime = SQRT3 * t_m
        x_m = v_below * t_m
        x_f = SQRT3 * x_m
        xs = _space_grid(0.2, 4.0 * v_below * t_prime, 1200)
        _emit_pulse_cut(out, "fig7_tm.csv", below, t_m, xs, manifest_files,
                        cut="space", t_fs=t_m)
        _emit_pulse_cut(out, "fig7_tprime.csv", below, t_prime, xs, manifest_files,
                        cut="space", t_fs=t_prime)
        heights = fr.pulse_heights(x_f, below)
        markers = {
            "x_m_nm": x_m,
            "x_f_nm": x_f,
            "x_f_over_x_m": x_f / x_m,
            "h_fd": heights.h_fd,
            "h_hc": heights.h_hc,
            "height_ratio": heights.ratio,
        }
        notes += "; caption x_m = 48.639 and x_f = 84.246 are convention bound, their ratio sqrt(3) is not"

    scenario = above if fig == 1 else below
    manifest = {
        "figure": fig,
        "scenario": _scenario_meta(scenario),
        "files": manifest_files,
        "markers": markers,
        "consistency_note": notes,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(manifest_files)} file(s) and manifest.json to {out}")
    return EXIT_OK


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV_VAR} or .)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--units", choices=["natural", "ev-nm-fs"], default=None)
    p.add_argument("--V0", type=float, default=None, help="step height (energy)")
    p.add_argument("--E0", type=float, default=None, help="source energy")
    p.add_argument("--mass", type=float, default=None, help="particle mass override")
    p.add_argument("--prefix", default=None, help="output file prefix")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stepwave",
        description="Quantum waves from a sharply switched-on point source at a potential step",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="sample |psi|^2 along a space or time cut")
    _add_common_flags(p)
    p.add_argument("--axis", choices=["space", "time"], default=None)
    p.add_argument("--fixed", type=_parse_float_list, default=None,
                   help="fixed t (space cut) or x (time cut); comma list")
    p.add_argument("--x-min", dest="x_min", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--nx", type=int, default=None)
    p.add_argument("--t-min", dest="t_min", type=float, default=None)
    p.add_argument("--t-max", dest="t_max", type=float, default=None)
    p.add_argument("--nt", type=int, default=None)

    p = sub.add_parser("forerunner", help="transient-pulse scales report (JSON)")
    _add_common_flags(p)
    p.add_argument("--x-f", dest="x_f", type=float, default=None,
                   help="observation depth x_f")
    p.add_argument("--t-f", dest="t_f", type=float, default=None,
                   help="fixed time for the space-cut maximum (default tau/sqrt(3))")
    p.add_argument("--etas", type=_parse_float_list, default=None)
    p.add_argument("--xr-times", dest="xr_times", type=_parse_float_list, default=None)
    p.add_argument("--scaling-t0", dest="scaling_t0", type=float, default=None)

    p = sub.add_parser("oracle", help="Crank-Nicolson and Talbot cross-checks")
    _add_common_flags(p)
    p.add_argument("--L", type=float, default=None, help="domain length")
    p.add_argument("--nx", type=int, default=None, help="grid points")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--n-steps", dest="n_steps", type=int, default=None)
    p.add_argument("--talbot-nodes", dest="talbot_nodes", type=int, default=None)
    p.add_argument("--n-probes", dest="n_probes", type=int, default=None)
    p.add_argument("--tol-cn", dest="tol_cn", type=float, default=None)
    p.add_argument("--tol-talbot", dest="tol_talbot", type=float, default=None)
    p.add_argument("--amplitude", type=float, default=None,
                   help="source amplitude (0 gives the null field)")

    p = sub.add_parser("reproduce", help="emit a canonical figure dataset (1..7)")
    _add_common_flags(p)
    p.add_argument("--figure", type=int, default=None)

    return parser


_DISPATCH = {
    "field": cmd_field,
    "forerunner": cmd_forerunner,
    "oracle": cmd_oracle,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        cfg = build_config(args)
        return _DISPATCH[args.command](cfg)
    except (UsageError, WrongRegimeError, DegenerateScenarioError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ToleranceError, orc.PreflightError, orc.ContourError) as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_TOLERANCE
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

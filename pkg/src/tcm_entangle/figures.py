"""Dataset emission: concurrence-curve CSVs, interval tables and SVG overlays.

CSV conventions are frozen for golden-file regression: header row, LF line
endings, `.` decimal separator, 15 significant digits.  Output is fully
deterministic for a fixed configuration.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import analysis, svgplot
from .analysis import TracePath
from .config import RunConfig
from .model import Family, InitialStateSpec, ModelParams

#: alpha values plotted by default; chosen here, not prescribed upstream
FIGURE_ALPHAS = (math.pi / 12, math.pi / 8, math.pi / 4)
FIGURE_EPSILONS = (0.0, 2.0)

TRACE_AGREEMENT_TOL = 1e-9


def fmt(value: float) -> str:
    """Decimal text at 15 significant digits."""
    return format(float(value), ".15g")


def _tag(value: float) -> str:
    return fmt(value).replace("-", "m").replace(".", "p")


def write_csv(path: Path, header: list[str], columns: list[np.ndarray]):
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_csv(path: Path):
    """Parse one of our CSVs back into (header, columns of floats)."""
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, [data[:, j] for j in range(data.shape[1])]


def _traces(config: RunConfig, family: Family, alpha: float, epsilon: float):
    """Trace on the config grid; with path BOTH the two paths are checked
    against each other and the analytic result is emitted."""
    spec = InitialStateSpec(family=family, alpha=alpha)
    params = ModelParams.from_dimensionless(epsilon=epsilon)
    grid = np.linspace(0.0, config.T_max, config.n_points)
    if config.path == "ORACLE":
        return analysis.concurrence_trace(spec, params, grid, TracePath.ORACLE)
    trace = analysis.concurrence_trace(spec, params, grid, TracePath.ANALYTIC)
    if config.path == "BOTH":
        oracle = analysis.concurrence_trace(spec, params, grid, TracePath.ORACLE)
        gap = float(np.max(np.abs(trace.C - oracle.C)))
        if gap > TRACE_AGREEMENT_TOL:
            raise RuntimeError(f"analytic/oracle traces disagree by {gap:.3e}")
    return trace


def _write_metadata(out: Path, config: RunConfig, note: str):
    lines = [
        note,
        f"family = {config.family.value}",
        "alpha_list = " + ", ".join(fmt(a) for a in config.alpha_list),
        "epsilon_list = " + ", ".join(fmt(e) for e in config.epsilon_list),
        f"T_max = {fmt(config.T_max)}",
        f"n_points = {config.n_points}",
        f"path = {config.path}",
        f"zero_threshold = {fmt(config.zero_threshold)}",
    ]
    (out / "run_metadata.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def run_fig1(config: RunConfig) -> list[Path]:
    """One CSV per (alpha, epsilon) for the PSI family, plus SVG overlays.

    Columns: T, C, signed_C, x1_abs, x2_abs, x3_abs.
    """
    if config.family is not Family.PSI:
        raise ValueError("fig1 requires the PSI family")
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for eps in config.epsilon_list:
        curves = []
        for alpha in config.alpha_list:
            trace = _traces(config, Family.PSI, alpha, eps)
            path = out / f"fig1_alpha{_tag(alpha)}_eps{_tag(eps)}.csv"
            write_csv(path,
                      ["T", "C", "signed_C", "x1_abs", "x2_abs", "x3_abs"],
                      [trace.T_grid, trace.C, trace.signed_C,
                       trace.abs_amplitudes[:, 0], trace.abs_amplitudes[:, 1],
                       trace.abs_amplitudes[:, 2]])
            written.append(path)
            curves.append((f"alpha = {alpha:.4f}", trace.T_grid, trace.C))
        if config.emit_svg:
            svg = svgplot.line_chart(curves, title=f"Atom-atom concurrence, eps = {eps:g}",
                                     xlabel="T = g t", ylabel="C")
            svg_path = out / f"fig1_eps{_tag(eps)}.svg"
            svg_path.write_text(svg, encoding="utf-8")
            written.append(svg_path)
    _write_metadata(out, config, "fig1 dataset; alpha values are a library default choice")
    return written


def run_fig2(config: RunConfig) -> list[Path]:
    """PHI-family CSVs plus a companion intervals.csv of death windows.

    Curve columns: T, C, x1_abs, x2_abs, x3_abs, x5_abs, in_death_window.
    intervals.csv columns: alpha, epsilon, T_start, T_end, length, refined.
    """
    if config.family is not Family.PHI:
        raise ValueError("fig2 requires the PHI family")
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    interval_rows = []
    for eps in config.epsilon_list:
        curves = []
        for alpha in config.alpha_list:
            trace = _traces(config, Family.PHI, alpha, eps)
            intervals = analysis.detect_death_intervals(trace, config.zero_threshold)
            in_window = np.zeros(trace.T_grid.size)
            for iv in intervals:
                in_window[(trace.T_grid >= iv.T_start) & (trace.T_grid <= iv.T_end)] = 1.0
                interval_rows.append((alpha, eps, iv.T_start, iv.T_end,
                                      iv.length, float(iv.refined)))
            path = out / f"fig2_alpha{_tag(alpha)}_eps{_tag(eps)}.csv"
            write_csv(path,
                      ["T", "C", "x1_abs", "x2_abs", "x3_abs", "x5_abs",
                       "in_death_window"],
                      [trace.T_grid, trace.C,
                       trace.abs_amplitudes[:, 0], trace.abs_amplitudes[:, 1],
                       trace.abs_amplitudes[:, 2], trace.abs_amplitudes[:, 4],
                       in_window])
            written.append(path)
            curves.append((f"alpha = {alpha:.4f}", trace.T_grid, trace.C))
        if config.emit_svg:
            svg = svgplot.line_chart(curves, title=f"Atom-atom concurrence, eps = {eps:g}",
                                     xlabel="T = g t", ylabel="C")
            svg_path = out / f"fig2_eps{_tag(eps)}.svg"
            svg_path.write_text(svg, encoding="utf-8")
            written.append(svg_path)

    intervals_path = out / "intervals.csv"
    lines = ["alpha,epsilon,T_start,T_end,length,refined"]
    for row in interval_rows:
        lines.append(",".join(fmt(v) for v in row))
    intervals_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    written.append(intervals_path)
    _write_metadata(out, config, "fig2 dataset; alpha values are a library default choice")
    return written


def run_sweep(config: RunConfig) -> list[Path]:
    """Family-agnostic curve emission over the configured (alpha, eps) grid."""
    if config.family is Family.PSI:
        return run_fig1(config)
    return run_fig2(config)

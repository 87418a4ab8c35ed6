"""
实验驱动模块
把动力学 / 黑洞扫描整理成 CSV 行，求解 ρ₂(p) 的三个阈值，并统一写出 CSV

CSV 约定：逗号分隔、'\\n' 换行、必有表头；浮点按 output.float_format 输出，相同输入逐字节一致。
"""

import csv
import io
import logging
import os
from typing import Any, Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np
from scipy.optimize import brentq

from .blackhole import AccessibleCase, gbc_bound_sweep, log_temperature_grid
from .bounds import Convention, profile
from .config import get_setting
from .dynamics import bound_curve_ghz4, gmc_curve, sudden_death_threshold, uniform_p_grid
from .hilbert import fidelity
from .states import example2_phi, example2_rho, w_state
from .utils import format_float

logger = logging.getLogger(__name__)

Row = Tuple[Any, ...]

SUDDEN_DEATH_HEADER = ("p", "gmc", "thm1_bound")
BLACKHOLE_HEADER = ("T", "gbc_bound")
FIG3_HEADER = ("alpha", "p", "gmc", "thm1_bound")
FIG5_HEADER = ("T", "a_obtainable", "b_obtainable", "b_unobtainable")
THRESHOLD_HEADER = ("label", "convention", "observable", "threshold")

FIG3_FILE = "fig3.csv"
FIG5_FILE = "fig5.csv"
THRESHOLD_FILE = "example2_thresholds.csv"


# ─────────────────────────────────────────────
# 突然死亡
# ─────────────────────────────────────────────

def _sudden_death_series(alpha: float, points: int) -> List[Row]:
    grid = uniform_p_grid(points)
    gmcs = gmc_curve(alpha, grid)
    bounds = bound_curve_ghz4(alpha, grid)
    return [(p, g, report.bound_value) for (p, g), (_, report) in zip(gmcs, bounds)]


def sudden_death_footer(alpha: float) -> str:
    p_star = sudden_death_threshold(alpha)
    if p_star is None:
        return "# no sudden death"
    return f"# p* = {format_float(p_star)}"


def sudden_death_rows(alpha: float, points: Optional[int] = None) -> Tuple[Row, List[Row], str]:
    """(表头, 行, p* 脚注)；p 从 0 到 1 升序。"""
    if points is None:
        points = get_setting("dynamics", "grid_points")
    return SUDDEN_DEATH_HEADER, _sudden_death_series(alpha, points), sudden_death_footer(alpha)


def fig3_rows(alphas: Optional[Sequence[float]] = None, points: Optional[int] = None) -> Tuple[Row, List[Row]]:
    if alphas is None:
        alphas = get_setting("dynamics", "fig3_alphas")
    if points is None:
        points = get_setting("dynamics", "grid_points")
    rows: List[Row] = []
    for alpha in alphas:
        rows.extend((float(alpha),) + row for row in _sudden_death_series(alpha, points))
    return FIG3_HEADER, rows


# ─────────────────────────────────────────────
# 黑洞
# ─────────────────────────────────────────────

def _blackhole_args(theta, omega, tmin, tmax, points):
    return (
        get_setting("blackhole", "theta") if theta is None else theta,
        get_setting("blackhole", "omega") if omega is None else omega,
        log_temperature_grid(
            get_setting("blackhole", "tmin") if tmin is None else tmin,
            get_setting("blackhole", "tmax") if tmax is None else tmax,
            get_setting("blackhole", "points") if points is None else points,
        ),
    )


def blackhole_rows(case, theta=None, omega=None, tmin=None, tmax=None, points=None,
                   observable=None) -> Tuple[Row, List[Row]]:
    theta, omega, grid = _blackhole_args(theta, omega, tmin, tmax, points)
    sweep = gbc_bound_sweep(case, theta, omega, grid, observable)
    return BLACKHOLE_HEADER, [(T, report.bound_value) for T, report in sweep]


def fig5_rows(theta=None, omega=None, tmin=None, tmax=None, points=None) -> Tuple[Row, List[Row]]:
    theta, omega, grid = _blackhole_args(theta, omega, tmin, tmax, points)
    series = [gbc_bound_sweep(case, theta, omega, grid) for case in AccessibleCase]
    rows = [(float(T),) + tuple(s[i][1].bound_value for s in series) for i, T in enumerate(grid)]
    return FIG5_HEADER, rows


# ─────────────────────────────────────────────
# ρ₂(p) 阈值
# ─────────────────────────────────────────────

def _fidelity_threshold(observable, target: float) -> float:
    """解 ⟨ψ|ρ₂(p)|ψ⟩ = target，p ∈ [0, 1]。"""
    return brentq(lambda p: fidelity(observable, example2_rho(p)) - target, 0.0, 1.0, xtol=1e-14)


def example2_thresholds() -> List[Row]:
    """
    三个阈值：
    - |φ⟩ + multiset：F > λ₀^(1) = 3/4，GBC 下界转正
    - |W₃⟩：F > 2/3，GBC 下界转正（三个 γ 同时被证书覆盖）
    - |φ⟩ + distinct：F > λ₀^(2) = 1/2，即 AB|C 的逐二分证书
    """
    phi, w = example2_phi(), w_state(3)
    multiset = profile(phi, Convention.MULTISET)
    distinct = profile(phi, Convention.DISTINCT)
    w_profile = profile(w, Convention.MULTISET)
    rows = [
        ("gbc_positive", Convention.MULTISET.value, "example2-phi",
         _fidelity_threshold(phi, multiset.lambda0_1)),
        ("gbc_positive", Convention.MULTISET.value, "w:3",
         _fidelity_threshold(w, w_profile.lambda0_1)),
        ("certificate_AB|C", Convention.DISTINCT.value, "example2-phi",
         _fidelity_threshold(phi, distinct.lambda0_2)),
    ]
    for label, convention, observable, value in rows:
        logger.info("ρ₂(p) 阈值 %s (%s, %s): p > %.6f", label, convention, observable, value)
    return rows


# ─────────────────────────────────────────────
# CSV 输出
# ─────────────────────────────────────────────

def _format_cell(value: Any) -> str:
    if isinstance(value, (str, bool, int, np.integer)):
        return str(value)
    return format_float(float(value))


def write_csv(stream: TextIO, header: Row, rows: Iterable[Row], footer: Optional[str] = None) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(v) for v in row])
    if footer:
        stream.write(footer + "\n")


def render_csv(header: Row, rows: Iterable[Row], footer: Optional[str] = None) -> str:
    buffer = io.StringIO()
    write_csv(buffer, header, rows, footer)
    return buffer.getvalue()


def write_csv_file(path: str, header: Row, rows: Iterable[Row], footer: Optional[str] = None) -> str:
    with open(path, "w", encoding="utf-8", newline="") as f:
        write_csv(f, header, rows, footer)
    return path


def write_figures(outdir: str) -> List[str]:
    """在 outdir 下写出 fig3.csv / fig5.csv / example2_thresholds.csv，返回文件路径。"""
    os.makedirs(outdir, exist_ok=True)
    paths = [
        write_csv_file(os.path.join(outdir, FIG3_FILE), *fig3_rows()),
        write_csv_file(os.path.join(outdir, FIG5_FILE), *fig5_rows()),
        write_csv_file(os.path.join(outdir, THRESHOLD_FILE), THRESHOLD_HEADER, example2_thresholds()),
    ]
    logger.info("已写出 %d 个文件到 %s", len(paths), outdir)
    return paths

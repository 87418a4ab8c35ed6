"""
黑洞 Hawking 辐射模块
负责 Dirac 单模近似下的模变换、变换后的 GHZ 态、可观测模的约化态，以及 GBC 下界随 Hawking 温度的扫描

约定
----
- 单方等距映射：|0⟩ → cos r|00⟩ + sin r|11⟩，|1⟩ → |10⟩（先视界外模，后视界内模）
- cos²r = expit(ω/T)，sin²r = expit(−ω/T)，两者之和恒为 1
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit

from .bounds import BoundReport, bound_gbc
from .hilbert import DensityMatrix, PartyDims, PureState, apply_local_isometry, partial_trace
from .states import generalized_ghz

logger = logging.getLogger(__name__)


class AccessibleCase(str, Enum):
    A_OBTAINABLE = "a"
    B_OBTAINABLE = "b-obtainable"
    B_UNOBTAINABLE = "b-unobtainable"

    @classmethod
    def parse(cls, text: str) -> "AccessibleCase":
        key = str(text).strip().lower().replace("_", "-")
        if key in ("a-obtainable", "a"):
            return cls.A_OBTAINABLE
        try:
            return cls(key)
        except ValueError as exc:
            raise ValueError(f"未知的 case: {text!r}，可选 {[c.value for c in cls]}") from exc


# (源态, 保留的子系统)
_KEPT = {
    AccessibleCase.A_OBTAINABLE: ("psi_prime", (0, 1, 3)),
    AccessibleCase.B_OBTAINABLE: ("psi_double_prime", (0, 1, 2)),
    AccessibleCase.B_UNOBTAINABLE: ("psi_double_prime", (0, 1, 3)),
}


@dataclass(frozen=True)
class HawkingParams:
    """T: Hawking 温度；omega: Dirac 场频率；theta ∈ [0, π/2]。"""
    T: float
    omega: float = 1.0
    theta: float = math.pi / 4

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"Hawking 温度 T 必须为正，当前 {self.T!r}")
        if not self.omega > 0:
            raise ValueError(f"频率 omega 必须为正，当前 {self.omega!r}")
        if not -1e-12 <= self.theta <= math.pi / 2 + 1e-12:
            raise ValueError(f"theta 必须位于 [0, π/2]，当前 {self.theta!r}")

    @property
    def coefficients(self) -> Tuple[float, float]:
        return mode_transform(self.T, self.omega)


def mode_transform(T: float, omega: float) -> Tuple[float, float]:
    """返回 (cos r, sin r)，cos r = (e^{−ω/T}+1)^{−1/2}，sin r = (e^{ω/T}+1)^{−1/2}。"""
    T, omega = float(T), float(omega)
    if not T > 0 or not omega > 0:
        raise ValueError(f"T 与 omega 必须为正，当前 T={T!r}, omega={omega!r}")
    x = omega / T
    return math.sqrt(expit(x)), math.sqrt(expit(-x))


def mode_isometry(cos_r: float, sin_r: float) -> np.ndarray:
    """4×2 等距矩阵，输出子系统顺序为 (视界外, 视界内)。"""
    return np.array([
        [cos_r, 0.0],
        [0.0, 0.0],
        [0.0, 1.0],
        [sin_r, 0.0],
    ], dtype=complex)


def _initial_state(theta: float) -> PureState:
    return generalized_ghz([math.cos(theta), math.sin(theta)], 3)


def psi_double_prime(theta: float, T: float, omega: float) -> PureState:
    """只有 C 靠近视界：子系统 (A, B, C₁, C₂)。"""
    params = HawkingParams(T, omega, theta)
    v = mode_isometry(*params.coefficients)
    return apply_local_isometry(_initial_state(params.theta), 2, v, (2, 2))


def psi_prime(theta: float, T: float, omega: float) -> PureState:
    """B 与 C 都靠近视界：子系统 (A, B₁, B₂, C₁, C₂)。"""
    params = HawkingParams(T, omega, theta)
    cos_r, sin_r = params.coefficients
    v = mode_isometry(cos_r, sin_r)
    state = apply_local_isometry(_initial_state(params.theta), 1, v, (2, 2))
    state = apply_local_isometry(state, 3, v, (2, 2))
    logger.debug("psi_prime 交叉项系数 cosθ·cos r·sin r = %.12g（归一化形式 (e^{−ω/T}+e^{ω/T}+2)^{−1/2}）",
                 math.cos(params.theta) * cos_r * sin_r)
    return state


def accessible_state(case, theta: float, T: float, omega: float) -> DensityMatrix:
    """按 case 取对应纯态并对不可及的模求迹，得到 3 比特约化态。"""
    case = AccessibleCase.parse(case) if not isinstance(case, AccessibleCase) else case
    source, keep = _KEPT[case]
    psi = psi_prime(theta, T, omega) if source == "psi_prime" else psi_double_prime(theta, T, omega)
    return partial_trace(psi.to_density(), keep)


def default_observable(case, theta: float) -> PureState:
    """
    a / b-obtainable：cosθ|000⟩ + sinθ|111⟩；
    b-unobtainable：cosθ|001⟩ + sinθ|110⟩（视界内比特取反后的同一广义 GHZ）。
    """
    case = AccessibleCase.parse(case) if not isinstance(case, AccessibleCase) else case
    if case is not AccessibleCase.B_UNOBTAINABLE:
        return _initial_state(theta)
    dims = PartyDims.qubits(3)
    amps = np.zeros(dims.total, dtype=complex)
    amps[0b001] = math.cos(theta)
    amps[0b110] = math.sin(theta)
    return PureState.from_vector(dims, amps)


def gbc_bound_sweep(case, theta: float, omega: float, T_grid: Sequence[float],
                    observable: Optional[PureState] = None) -> List[Tuple[float, BoundReport]]:
    """[(T, GBC 下界报告)]，顺序与 T_grid 相同。"""
    case = AccessibleCase.parse(case) if not isinstance(case, AccessibleCase) else case
    observable = observable or default_observable(case, theta)
    out = []
    for T in T_grid:
        rho = accessible_state(case, theta, T, omega)
        out.append((float(T), bound_gbc(rho, observable)))
    return out


def log_temperature_grid(tmin: float, tmax: float, points: int) -> np.ndarray:
    """对数等距温度网格。"""
    tmin, tmax, points = float(tmin), float(tmax), int(points)
    if not 0 < tmin < tmax:
        raise ValueError(f"温度范围必须满足 0 < tmin < tmax，当前 tmin={tmin!r}, tmax={tmax!r}")
    if points < 2:
        raise ValueError(f"网格点数至少为 2，当前 {points}")
    return np.geomspace(tmin, tmax, points)

"""
非马尔可夫激发交换动力学模块
负责 GHZ₄(α) 在逐比特衰减信道下的演化、X 态 GMC 曲线、突然死亡阈值与 GBC 下界曲线
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .bounds import BoundReport, bound_gbc
from .hilbert import DensityMatrix, PureState, apply_local_channel
from .measures import XStateData, gmc_xstate
from .states import generalized_ghz, ghz

logger = logging.getLogger(__name__)

N_QUBITS = 4

# ---------------- 参数 ----------------

_HALF_PI = math.pi / 2
_ANGLE_TOL = 1e-12


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not -_ANGLE_TOL <= alpha <= _HALF_PI + _ANGLE_TOL:
        raise ValueError(f"alpha 必须位于 [0, π/2]，当前 {alpha!r}")
    return min(max(alpha, 0.0), _HALF_PI)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p 必须位于 [0, 1]，当前 {p!r}")
    return p


@dataclass(frozen=True)
class DampingParams:
    """α ∈ [0, π/2]；p = e^{−δ(t)} ∈ [0, 1]；delta 可选。"""
    alpha: float
    p: float
    delta: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "p", _check_p(self.p))
        if self.delta is not None:
            if self.delta < 0:
                raise ValueError(f"delta 必须非负，当前 {self.delta!r}")
            if abs(math.exp(-self.delta) - self.p) > 1e-12:
                raise ValueError(f"p 与 delta 不一致: e^(−{self.delta}) ≠ {self.p}")

    @classmethod
    def from_delta(cls, alpha: float, delta: float) -> "DampingParams":
        return cls(alpha, math.exp(-float(delta)), float(delta))


# ---------------- 态与信道 ----------------

def ghz4_state(alpha: float) -> PureState:
    """cos α|0000⟩ + sin α|1111⟩"""
    alpha = _check_alpha(alpha)
    return generalized_ghz([math.cos(alpha), math.sin(alpha)], N_QUBITS)


def damping_channel_kraus(p: float) -> Tuple[np.ndarray, np.ndarray]:
    """K₀ = diag(1, √p)，K₁ = √(1−p)|0⟩⟨1|"""
    p = _check_p(p)
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(p)]], dtype=complex)
    k1 = np.array([[0.0, math.sqrt(1.0 - p)], [0.0, 0.0]], dtype=complex)
    return k0, k1


def evolve_system(alpha: float, p: float) -> DensityMatrix:
    """对 4 个比特分别施加衰减信道，结果须通过 X 结构校验。"""
    params = DampingParams(alpha, p)
    rho = ghz4_state(params.alpha).to_density()
    kraus = damping_channel_kraus(params.p)
    for party in range(N_QUBITS):
        rho = apply_local_channel(rho, party, kraus)
    XStateData.from_density(rho)
    return rho


def gmc(alpha: float, p: float) -> float:
    return gmc_xstate(XStateData.from_density(evolve_system(alpha, p)))


# ---------------- 曲线与阈值 ----------------

def gmc_curve(alpha: float, p_grid: Sequence[float]) -> List[Tuple[float, float]]:
    """[(p, GMC)]，顺序与 p_grid 相同。"""
    return [(float(p), gmc(alpha, p)) for p in p_grid]


def sudden_death_threshold(alpha: float) -> Optional[float]:
    """
    GMC > 0 ⇔ cot α > pairs·(1−p)²，pairs = 2^{n−1} − 1 来自 X 态的配对数。

    返回 p*，p > p* 时 GMC > 0。cot α 恰等于 pairs 时 p* = 0；
    cot α > pairs（不发生突然死亡）或 α = 0（没有 GME）时返回 None。
    """
    alpha = _check_alpha(alpha)
    pairs = 2 ** (N_QUBITS - 1) - 1
    if alpha == 0.0:
        logger.info("alpha=0：初态为积态，任何 p 都没有 GME")
        return None
    if alpha >= _HALF_PI:
        return 1.0
    cot = math.cos(alpha) / math.sin(alpha)
    if abs(cot - pairs) <= 1e-9:
        return 0.0
    if cot > pairs:
        logger.info("cot α=%.6g > %d：不发生突然死亡", cot, pairs)
        return None
    p_star = 1.0 - math.sqrt(cot / pairs)
    logger.info("alpha=%.6g 的突然死亡阈值 p*=%.12g", alpha, p_star)
    return p_star


def bound_curve_ghz4(alpha: float, p_grid: Sequence[float]) -> List[Tuple[float, BoundReport]]:
    """以 |GHZ₄⟩ 为观测态的 GBC 下界（A 因子形式），[(p, 报告)]。"""
    observable = ghz(N_QUBITS)
    return [(float(p), bound_gbc(evolve_system(alpha, p), observable)) for p in p_grid]


def uniform_p_grid(points: int) -> np.ndarray:
    """[0, 1] 上的等距网格（含端点）。"""
    points = int(points)
    if points < 2:
        raise ValueError(f"网格点数至少为 2，当前 {points}")
    return np.linspace(0.0, 1.0, points)

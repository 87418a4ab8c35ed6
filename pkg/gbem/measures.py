"""
纠缠度量模块
负责纯态二分纠缠泛函 E^f_γ、对全部二分划分取几何平均的 GBEM，以及 X 态 GMC 闭式

内置四种度量（GBC / GBN / G-GC / G-GM），另可注册满足 scfp 条件的自定义对称函数。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .bipartition import Bipartition, enumerate_bipartitions
from .config import get_setting, resolve_eps
from .hilbert import DensityMatrix, PureState, SchmidtSpectrum, schmidt_spectrum

logger = logging.getLogger(__name__)


# ==================== 度量种类 ====================

class MeasureKind(str, Enum):
    CONCURRENCE = "concurrence"
    NEGATIVITY = "negativity"
    G_CONCURRENCE = "gconcurrence"
    GEOMETRIC = "geometric"

    @property
    def short_name(self) -> str:
        return _SHORT_NAMES[self]

    @classmethod
    def parse(cls, text: str) -> "MeasureKind":
        key = str(text).strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "concurrence": cls.CONCURRENCE, "gbc": cls.CONCURRENCE,
            "negativity": cls.NEGATIVITY, "gbn": cls.NEGATIVITY,
            "gconcurrence": cls.G_CONCURRENCE, "ggc": cls.G_CONCURRENCE,
            "geometric": cls.GEOMETRIC, "geometricmeasure": cls.GEOMETRIC, "ggm": cls.GEOMETRIC,
        }
        if key not in aliases:
            raise ValueError(f"未知的度量种类: {text!r}，可选 {[k.value for k in cls]}")
        return aliases[key]


_SHORT_NAMES = {
    MeasureKind.CONCURRENCE: "GBC",
    MeasureKind.NEGATIVITY: "GBN",
    MeasureKind.G_CONCURRENCE: "G-GC",
    MeasureKind.GEOMETRIC: "G-GM",
}

# 自定义函数的探针：维数、随机向量个数、容差
_PROBE_DIMS = (2, 3, 4)
_PROBE_SAMPLES = 8
_PROBE_SEED = 20240917
_PROBE_TOL = 1e-9


@dataclass(frozen=True)
class CustomMeasure:
    """
    用户提供的对称函数 f（作用于概率向量）。

    构造时用探针向量抽查：非负、置换对称、f(e₁)=0、满秩向量上 f>0。
    不满足时抛出 ValueError("not in scfp: ...")。
    """
    func: Callable[[np.ndarray], float] = field(compare=False)
    name: str = "custom"

    def __post_init__(self):
        if not callable(self.func):
            raise TypeError("CustomMeasure.func 必须可调用")
        rng = np.random.default_rng(_PROBE_SEED)
        smallest_positive = math.inf
        for d in _PROBE_DIMS:
            extreme = np.zeros(d)
            extreme[0] = 1.0
            if abs(self(extreme)) > _PROBE_TOL:
                raise ValueError(f"not in scfp: {self.name} 在纯积谱 {extreme.tolist()} 上不为 0")
            vectors = [np.full(d, 1.0 / d)] + [rng.dirichlet(np.ones(d)) for _ in range(_PROBE_SAMPLES)]
            for v in vectors:
                value = self(v)
                if value < -_PROBE_TOL:
                    raise ValueError(f"not in scfp: {self.name} 在 {v.tolist()} 上取负值 {value!r}")
                if value <= _PROBE_TOL:
                    raise ValueError(f"not in scfp: {self.name} 在 max<1 的向量 {v.tolist()} 上为 0")
                permuted = self(rng.permutation(v))
                if abs(permuted - value) > _PROBE_TOL * max(1.0, abs(value)):
                    raise ValueError(f"not in scfp: {self.name} 不满足置换对称（{value!r} vs {permuted!r}）")
                smallest_positive = min(smallest_positive, value)
        if smallest_positive < 1e-6:
            logger.warning("⚠️ 自定义度量 %s 通过了 scfp 抽查，但最小正值仅 %.3g", self.name, smallest_positive)

    def __call__(self, probabilities: np.ndarray) -> float:
        return float(self.func(np.asarray(probabilities, dtype=float)))

    @property
    def short_name(self) -> str:
        return self.name

    @property
    def value(self) -> str:
        return self.name


Measure = Union[MeasureKind, CustomMeasure]


def as_measure(kind: Union[Measure, str]) -> Measure:
    if isinstance(kind, (MeasureKind, CustomMeasure)):
        return kind
    return MeasureKind.parse(kind)


# ==================== 二分纠缠泛函 ====================

def evaluate_spectrum(spectrum: SchmidtSpectrum, d_min: int, kind: Measure) -> float:
    """由 Schmidt 谱计算 E^f_γ。秩为 1 的谱对内置度量严格返回 0。"""
    probs = spectrum.probabilities
    if isinstance(kind, CustomMeasure):
        value = kind(spectrum.padded(d_min))
        if value < -_PROBE_TOL:
            raise ValueError(f"not in scfp: {kind.name} 返回负值 {value!r}")
        return max(0.0, value)

    m = spectrum.rank
    if m <= 1:
        return 0.0
    if kind is MeasureKind.CONCURRENCE:
        linear_entropy = max(0.0, 1.0 - float(np.sum(probs ** 2)))
        return math.sqrt(d_min / (d_min - 1) * linear_entropy)
    if kind is MeasureKind.NEGATIVITY:
        return max(0.0, float(np.sum(np.sqrt(probs))) ** 2 - 1.0)
    if kind is MeasureKind.G_CONCURRENCE:
        nonzero = probs[probs > spectrum.rank_epsilon]
        return m * math.exp(math.fsum(np.log(nonzero)) / m)
    if kind is MeasureKind.GEOMETRIC:
        return max(0.0, 1.0 - spectrum.largest)
    raise ValueError(f"未知的度量种类: {kind!r}")


def bipartite_measure(psi: PureState, gamma: Bipartition, kind: Union[Measure, str],
                      eps: Optional[float] = None) -> float:
    """E^f_γ(|ψ⟩) = f(λ_γ(|ψ⟩))"""
    kind = as_measure(kind)
    spectrum = schmidt_spectrum(psi, gamma, eps)
    return evaluate_spectrum(spectrum, gamma.d_min(psi.dims.dims), kind)


def geometric_mean(values: Sequence[float], eps: Optional[float] = None) -> float:
    """对数空间中的几何平均；任一值 ≤ eps 时返回 0。"""
    eps = resolve_eps(eps)
    if len(values) == 0:
        raise ValueError("geometric_mean 需要至少一个值")
    if any(v <= eps for v in values):
        return 0.0
    floor = get_setting("numerics", "log_floor")
    logs = sorted(math.log(max(float(v), floor)) for v in values)
    return math.exp(math.fsum(logs) / len(values))


@dataclass(frozen=True)
class GbemResult:
    value: float
    per_bipartition: Tuple[Tuple[Bipartition, float], ...]
    kind: Measure

    @property
    def values(self) -> Tuple[float, ...]:
        return tuple(v for _, v in self.per_bipartition)


def gbem(psi: PureState, kind: Union[Measure, str], eps: Optional[float] = None) -> GbemResult:
    """
    G^f_gme(|ψ⟩) = (Π_γ E^f_γ)^{1/c(γ)}

    仅支持纯态；混态的凸顶扩展请改用 bounds 模块给出下界。
    """
    if isinstance(psi, DensityMatrix):
        raise TypeError("convex roof not implemented; use bound")
    if not isinstance(psi, PureState):
        raise TypeError(f"gbem 需要 PureState，当前 {type(psi).__name__}")
    kind = as_measure(kind)
    eps = resolve_eps(eps)
    gammas = enumerate_bipartitions(psi.n)
    per = tuple((gamma, bipartite_measure(psi, gamma, kind, eps)) for gamma in gammas)
    return GbemResult(geometric_mean([v for _, v in per], eps), per, kind)


def is_biseparable_pure(psi: PureState, eps: Optional[float] = None) -> Tuple[bool, Optional[Bipartition]]:
    """存在 Schmidt 秩为 1 的二分划分即为双可分，返回第一个见证 γ。"""
    eps = resolve_eps(eps)
    for gamma in enumerate_bipartitions(psi.n):
        if schmidt_spectrum(psi, gamma, eps).rank == 1:
            return True, gamma
    return False, None


# ==================== X 态 GMC ====================

@dataclass(frozen=True, eq=False)
class XStateData:
    """
    n 比特 X 态：配对 (i, D−1−i)，i < D/2。

    a_i = ρ[i,i]，b_i = ρ[D−1−i, D−1−i]，z_i = ρ[i, D−1−i]。
    """
    a: np.ndarray
    b: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        z = np.asarray(self.z, dtype=complex).reshape(-1)
        if not (a.size == b.size == z.size) or a.size == 0:
            raise ValueError("dimension mismatch: XStateData 的 a/b/z 长度必须相同且非空")
        if np.any(a < -1e-12) or np.any(b < -1e-12):
            raise ValueError("X-state positivity violated: 对角元为负")
        total = float(a.sum() + b.sum())
        if abs(total - 1.0) > get_setting("numerics", "trace_tol"):
            raise ValueError(f"X-state trace != 1，当前 {total!r}")
        bound = np.sqrt(np.clip(a, 0.0, None) * np.clip(b, 0.0, None))
        if np.any(np.abs(z) > bound + 1e-9):
            i = int(np.argmax(np.abs(z) - bound))
            raise ValueError(f"X-state positivity violated: |z_{i}|={abs(z[i])!r} > √(a b)={bound[i]!r}")
        for name, arr in (("a", a), ("b", b), ("z", z)):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def pairs(self) -> int:
        return self.a.size

    @classmethod
    def from_density(cls, rho: DensityMatrix, tol: Optional[float] = None) -> "XStateData":
        """从 n 比特密度矩阵提取 X 结构；反对角线与对角线以外的元素超过 tol 时报错。"""
        if any(d != 2 for d in rho.dims.dims):
            raise ValueError(f"X 态要求全部为量子比特，当前 dims={rho.dims.dims}")
        tol = get_setting("numerics", "xstate_tol") if tol is None else tol
        m = rho.entries
        size = m.shape[0]
        idx = np.arange(size)
        mask = np.ones_like(m, dtype=bool)
        mask[idx, idx] = False
        mask[idx, size - 1 - idx] = False
        off = float(np.max(np.abs(m[mask]))) if mask.any() else 0.0
        if off > tol:
            raise ValueError(f"not an X state: X 结构外元素 {off!r} > {tol}")
        half = idx[: size // 2]
        return cls(m[half, half].real, m[size - 1 - half, size - 1 - half].real, m[half, size - 1 - half])


def gmc_xstate(x: XStateData) -> float:
    """GMC = 2·max{0, max_i (|z_i| − Σ_{j≠i} √(a_j b_j))}"""
    weights = np.sqrt(np.clip(x.a, 0.0, None) * np.clip(x.b, 0.0, None))
    total = math.fsum(weights)
    margins = np.abs(x.z) - (total - weights)
    return 2.0 * max(0.0, float(np.max(margins)))

"""
保真度下界模块
负责观测态的 Schmidt 轮廓、Λ/A/B/C/D 因子、四种 GBEM 的下界以及逐二分划分的证书

无需层析：只用 F = ⟨ψ|ρ|ψ⟩ 与观测态 |ψ⟩ 的 Schmidt 轮廓即可给出下界。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple, Union

from .bipartition import Bipartition, count_bipartitions, enumerate_bipartitions
from .config import get_setting
from .hilbert import DensityMatrix, PureState, fidelity, schmidt_spectrum
from .measures import MeasureKind, as_measure

logger = logging.getLogger(__name__)

# distinct 约定中“严格小于最大值”的浮点容差
_DISTINCT_TOL = 1e-12


class Convention(str, Enum):
    """第二聚合量的取法：multiset 按重数计，distinct 取严格小于最大值的最大值。"""
    MULTISET = "multiset"
    DISTINCT = "distinct"

    @classmethod
    def parse(cls, text: Union["Convention", str, None]) -> "Convention":
        if isinstance(text, Convention):
            return text
        if text is None:
            text = get_setting("bounds", "convention")
        try:
            return cls(str(text).strip().lower())
        except ValueError as exc:
            raise ValueError(f"未知的 convention: {text!r}，可选 {[c.value for c in cls]}") from exc


# ==================== 观测态轮廓 ====================

@dataclass(frozen=True)
class BipartitionProfile:
    gamma: Bipartition
    lambda0: float
    rank: int
    d_min: int


@dataclass(frozen=True)
class ObservableProfile:
    per_bipartition: Tuple[BipartitionProfile, ...]
    lambda0_1: float
    lambda0_2: float
    m_1: int
    m_2: int
    dmin_1: int
    dmin_2: int
    convention: Convention

    @property
    def n(self) -> int:
        return self.per_bipartition[0].gamma.n


def _second_largest(values: Sequence[float], convention: Convention) -> float:
    ordered = sorted(values, reverse=True)
    if len(ordered) == 1:
        return ordered[0]
    if convention is Convention.MULTISET:
        return ordered[1]
    top = ordered[0]
    below = [v for v in ordered if v < top - _DISTINCT_TOL]
    return below[0] if below else top


def profile(observable: PureState, convention: Union[Convention, str, None] = None,
            eps: Optional[float] = None) -> ObservableProfile:
    """逐 γ 的 (λ₀^γ, m_γ, d_min^γ)，以及按约定取的最大 / 次大聚合量。n=2 时次大等于最大。"""
    convention = Convention.parse(convention)
    rows = []
    for gamma in enumerate_bipartitions(observable.n):
        spectrum = schmidt_spectrum(observable, gamma, eps)
        rows.append(BipartitionProfile(gamma, spectrum.largest, spectrum.rank,
                                       gamma.d_min(observable.dims.dims)))
    lambdas = [r.lambda0 for r in rows]
    ranks = [r.rank for r in rows]
    dmins = [r.d_min for r in rows]
    return ObservableProfile(
        per_bipartition=tuple(rows),
        lambda0_1=max(lambdas),
        lambda0_2=_second_largest(lambdas, convention),
        m_1=max(ranks),
        m_2=int(_second_largest(ranks, convention)),
        dmin_1=max(dmins),
        dmin_2=int(_second_largest(dmins, convention)),
        convention=convention,
    )


# ==================== 因子 ====================

def lambda_cap(fidelity_value: float, lambda0: float) -> float:
    """Λ = max{1, F/λ₀}"""
    if lambda0 <= 0.0:
        raise ValueError(f"λ₀ 必须为正，当前 {lambda0!r}")
    if lambda0 > 1.0 + get_setting("numerics", "trace_tol"):
        raise ValueError(f"λ₀ 不能超过 1，当前 {lambda0!r}")
    return max(1.0, fidelity_value / lambda0)


def factor_gbc(cap: float, rank: int, d_min: int) -> float:
    """A = √(d/((d−1)m(m−1))) (Λ−1)"""
    if rank <= 1:
        return 0.0
    return math.sqrt(d_min / ((d_min - 1) * rank * (rank - 1))) * (cap - 1.0)


def factor_gbn(cap: float, rank: int) -> float:
    """B = Λ−1"""
    if rank <= 1:
        return 0.0
    return cap - 1.0


def factor_ggc(cap: float, rank: int) -> float:
    """C = max{0, 1−m+Λ}"""
    if rank <= 1:
        return 0.0
    return max(0.0, 1.0 - rank + cap)


def factor_ggm(cap: float, rank: int) -> float:
    """D = 1 − [√Λ + √((m−1)(m−Λ))]² / m²，Λ 在 trace_tol 内达到 m 时取极限 1 − 1/m"""
    if rank <= 1:
        return 0.0
    if rank - cap <= get_setting("numerics", "trace_tol"):
        return 1.0 - 1.0 / rank
    inner = math.sqrt(cap) + math.sqrt((rank - 1) * (rank - cap))
    return max(0.0, 1.0 - inner ** 2 / rank ** 2)


def measure_factor(kind: MeasureKind, cap: float, rank: int, d_min: int) -> float:
    if kind is MeasureKind.CONCURRENCE:
        return factor_gbc(cap, rank, d_min)
    if kind is MeasureKind.NEGATIVITY:
        return factor_gbn(cap, rank)
    if kind is MeasureKind.G_CONCURRENCE:
        return factor_ggc(cap, rank)
    if kind is MeasureKind.GEOMETRIC:
        return factor_ggm(cap, rank)
    raise ValueError(f"下界只支持内置度量，当前 {kind!r}")


def _weighted_log_mean(factors: Sequence[float], weights: Sequence[int]) -> float:
    """(Π x_i^{w_i})^{1/Σw}；任一权重为正的因子 ≤ 0 时为 0。"""
    total = sum(weights)
    if any(w > 0 and x <= 0.0 for x, w in zip(factors, weights)):
        return 0.0
    logs = sorted(w * math.log(x) for x, w in zip(factors, weights) if w > 0)
    return math.exp(math.fsum(logs) / total)


# ==================== 报告 ====================

@dataclass(frozen=True, eq=False)
class BipartitionCertificate:
    """certified ⇔ F > λ₀^γ；lower_bounds 为用该 γ 自身轮廓得到的四种二分度量下界。"""
    gamma: Bipartition
    lambda0: float
    rank: int
    d_min: int
    certified: bool
    lower_bounds: Dict[MeasureKind, float] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class BoundReport:
    fidelity: float
    kind: MeasureKind
    convention: Convention
    bound_value: float
    lambda_caps: Tuple[float, float]
    factors: Tuple[float, float]
    refined_value: float
    per_bipartition_certificates: Tuple[BipartitionCertificate, ...]
    profile: ObservableProfile
    observable: PureState
    candidate_index: Optional[int] = None

    @property
    def certified_bipartitions(self) -> Tuple[Bipartition, ...]:
        return tuple(c.gamma for c in self.per_bipartition_certificates if c.certified)


def _fidelity(rho: Union[DensityMatrix, PureState], observable: PureState) -> float:
    return fidelity(observable, rho)


def _certificates(fid: float, prof: ObservableProfile) -> Tuple[BipartitionCertificate, ...]:
    out = []
    for row in prof.per_bipartition:
        cap = lambda_cap(fid, row.lambda0)
        lowers = {k: measure_factor(k, cap, row.rank, row.d_min) for k in MeasureKind}
        out.append(BipartitionCertificate(row.gamma, row.lambda0, row.rank, row.d_min,
                                          fid > row.lambda0, lowers))
    return tuple(out)


def certify_bipartitions(rho: Union[DensityMatrix, PureState], observable: PureState,
                         eps: Optional[float] = None) -> Tuple[BipartitionCertificate, ...]:
    """逐 γ 判定 F > λ₀^γ，并附上该 γ 的四种度量下界。"""
    fid = _fidelity(rho, observable)
    return _certificates(fid, profile(observable, Convention.MULTISET, eps))


def bound(rho: Union[DensityMatrix, PureState], observable: PureState,
          kind: Union[MeasureKind, str], convention: Union[Convention, str, None] = None,
          eps: Optional[float] = None) -> BoundReport:
    """
    [x₁ · x₂^{c−1}]^{1/c}，x_j 为 kind 对应的 A/B/C/D 因子（用第 j 聚合量计算）。

    refined_value 为逐 γ 下界的几何平均，GHZ_n 自观测时等于精确值。
    """
    kind = as_measure(kind)
    if not isinstance(kind, MeasureKind):
        raise ValueError("下界只支持内置度量（concurrence / negativity / gconcurrence / geometric）")
    convention = Convention.parse(convention)
    prof = profile(observable, convention, eps)
    fid = _fidelity(rho, observable)
    c = count_bipartitions(observable.n)

    caps = (lambda_cap(fid, prof.lambda0_1), lambda_cap(fid, prof.lambda0_2))
    if prof.m_1 == 1 or (c > 1 and prof.m_2 == 1):
        logger.warning("⚠️ 观测态在某个二分划分下为积态（m=1），%s 下界记为 0", kind.short_name)
    factors = (
        measure_factor(kind, caps[0], prof.m_1, prof.dmin_1),
        measure_factor(kind, caps[1], prof.m_2, prof.dmin_2),
    )
    value = _weighted_log_mean(factors, (1, c - 1))

    certificates = _certificates(fid, prof)
    per_gamma = [cert.lower_bounds[kind] for cert in certificates]
    refined = _weighted_log_mean(per_gamma, [1] * len(per_gamma))

    return BoundReport(
        fidelity=fid,
        kind=kind,
        convention=convention,
        bound_value=value,
        lambda_caps=caps,
        factors=factors,
        refined_value=refined,
        per_bipartition_certificates=certificates,
        profile=prof,
        observable=observable,
    )


def bound_gbc(rho, observable: PureState, convention=None, eps=None) -> BoundReport:
    return bound(rho, observable, MeasureKind.CONCURRENCE, convention, eps)


def bound_gbn(rho, observable: PureState, convention=None, eps=None) -> BoundReport:
    return bound(rho, observable, MeasureKind.NEGATIVITY, convention, eps)


def bound_ggc(rho, observable: PureState, convention=None, eps=None) -> BoundReport:
    return bound(rho, observable, MeasureKind.G_CONCURRENCE, convention, eps)


def bound_ggm(rho, observable: PureState, convention=None, eps=None) -> BoundReport:
    return bound(rho, observable, MeasureKind.GEOMETRIC, convention, eps)


def best_bound(rho: Union[DensityMatrix, PureState], observables: Sequence[PureState],
               kind: Union[MeasureKind, str], convention: Union[Convention, str, None] = None,
               eps: Optional[float] = None) -> BoundReport:
    """候选观测态中取 bound_value 最大者（并列时取靠前者），记录其下标。"""
    if not observables:
        raise ValueError("best_bound 需要至少一个候选观测态")
    best: Optional[BoundReport] = None
    for index, observable in enumerate(observables):
        report = replace(bound(rho, observable, kind, convention, eps), candidate_index=index)
        if best is None or report.bound_value > best.bound_value:
            best = report
    return best

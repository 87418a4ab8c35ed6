"""
gbem Package
几何平均型真多体纠缠度量（GBEM）组件

主要导出：
- PureState / DensityMatrix / PartyDims: 态的表示
- schmidt_spectrum / fidelity / partial_trace: Hilbert 空间基础运算
- enumerate_bipartitions / count_bipartitions: 二分划分枚举与计数 c(γ)
- gbem / bipartite_measure / MeasureKind: 纯态 GBEM 精确值
- bound / best_bound / certify_bipartitions: 基于保真度的下界与逐二分证书
- evolve_system / gmc_curve / sudden_death_threshold: GHZ₄ 衰减动力学
- accessible_state / gbc_bound_sweep: Hawking 辐射下的可观测 GME

配置：
- SETTINGS / reload_settings: gbem_cfg.yaml + GBEM_* 环境变量
"""

from .config import SETTINGS, get_setting, reload_settings
from .hilbert import (
    DensityMatrix,
    PartyDims,
    PureState,
    SchmidtSpectrum,
    fidelity,
    partial_trace,
    partial_transpose,
    reduced_density,
    schmidt_spectrum,
)
from .bipartition import Bipartition, BipartitionSet, count_bipartitions, enumerate_bipartitions
from .measures import (
    CustomMeasure,
    GbemResult,
    MeasureKind,
    XStateData,
    bipartite_measure,
    gbem,
    gmc_xstate,
    is_biseparable_pure,
)
from .bounds import (
    BoundReport,
    Convention,
    ObservableProfile,
    best_bound,
    bound,
    bound_gbc,
    bound_gbn,
    bound_ggc,
    bound_ggm,
    certify_bipartitions,
    profile,
)
from .dynamics import DampingParams, evolve_system, gmc_curve, sudden_death_threshold
from .blackhole import AccessibleCase, HawkingParams, accessible_state, gbc_bound_sweep


__all__ = [
    # 态与基础运算
    'PartyDims',
    'PureState',
    'DensityMatrix',
    'SchmidtSpectrum',
    'fidelity',
    'partial_trace',
    'partial_transpose',
    'reduced_density',
    'schmidt_spectrum',
    # 二分划分
    'Bipartition',
    'BipartitionSet',
    'enumerate_bipartitions',
    'count_bipartitions',
    # 度量
    'MeasureKind',
    'CustomMeasure',
    'GbemResult',
    'XStateData',
    'bipartite_measure',
    'gbem',
    'gmc_xstate',
    'is_biseparable_pure',
    # 下界
    'Convention',
    'ObservableProfile',
    'BoundReport',
    'profile',
    'bound',
    'bound_gbc',
    'bound_gbn',
    'bound_ggc',
    'bound_ggm',
    'certify_bipartitions',
    'best_bound',
    # 动力学
    'DampingParams',
    'evolve_system',
    'gmc_curve',
    'sudden_death_threshold',
    # 黑洞
    'AccessibleCase',
    'HawkingParams',
    'accessible_state',
    'gbc_bound_sweep',
    # 配置
    'SETTINGS',
    'get_setting',
    'reload_settings',
]

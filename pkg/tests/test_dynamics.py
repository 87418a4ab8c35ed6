import math

import numpy as np
import pytest

from gbem.bounds import bound_gbc
from gbem.dynamics import (
    DampingParams,
    bound_curve_ghz4,
    damping_channel_kraus,
    evolve_system,
    ghz4_state,
    gmc,
    gmc_curve,
    sudden_death_threshold,
    uniform_p_grid,
)
from gbem.hilbert import DensityMatrix, PartyDims, apply_local_channel, apply_local_isometry, partial_trace
from gbem.measures import XStateData, gmc_xstate
from gbem.states import ghz, zero_state


def _closed_form(alpha, p):
    s, c = math.sin(alpha), math.cos(alpha)
    return 2 * max(0.0, p ** 2 * s * c - 7 * p ** 2 * (1 - p) ** 2 * s ** 2)


def _purified(alpha, p):
    """系统 ⊗ 环境 8 比特纯态，逐对施加 |1_X 0_x⟩ → √p|1_X 0_x⟩ + √(1−p)|0_X 1_x⟩ 后对环境求迹。"""
    # 单方等距：系统比特 → (系统, 环境)
    v = np.zeros((4, 2), dtype=complex)
    v[0b00, 0] = 1.0
    v[0b10, 1] = math.sqrt(p)
    v[0b01, 1] = math.sqrt(1 - p)
    state = ghz4_state(alpha)
    for party in (3, 2, 1, 0):
        state = apply_local_isometry(state, party, v, (2, 2))
    # 顺序为 (S0, E0, S1, E1, ...)
    return partial_trace(state.to_density(), (0, 2, 4, 6))


# ---------------- 参数 ----------------

def test_damping_params():
    params = DampingParams.from_delta(0.3, 0.7)
    assert params.p == pytest.approx(math.exp(-0.7), abs=1e-12)
    with pytest.raises(ValueError):
        DampingParams(0.3, 1.2)
    with pytest.raises(ValueError):
        DampingParams(2.0, 0.5)
    with pytest.raises(ValueError):
        DampingParams(0.3, 0.5, delta=0.1)


def test_ghz4_state_examples():
    assert np.allclose(ghz4_state(0.0).amplitudes, zero_state(4).amplitudes)
    assert np.allclose(ghz4_state(math.pi / 4).amplitudes, ghz(4).amplitudes)
    amps = ghz4_state(math.pi / 3).amplitudes
    assert amps[0] == pytest.approx(0.5) and amps[15] == pytest.approx(math.sqrt(3) / 2)
    assert np.allclose(amps[1:15], 0.0)


# ---------------- 信道 ----------------

def test_kraus_completeness():
    for p in np.linspace(0, 1, 11):
        k0, k1 = damping_channel_kraus(p)
        total = k0.conj().T @ k0 + k1.conj().T @ k1
        assert np.max(np.abs(total - np.eye(2))) <= 1e-12
    with pytest.raises(ValueError):
        damping_channel_kraus(-0.1)


def test_kraus_examples():
    one = DensityMatrix(PartyDims((2,)), np.diag([0.0, 1.0]))
    identity = apply_local_channel(one, 0, damping_channel_kraus(1.0))
    assert np.allclose(identity.entries, one.entries)
    decayed = apply_local_channel(one, 0, damping_channel_kraus(0.0))
    assert np.allclose(decayed.entries, np.diag([1.0, 0.0]))
    half = apply_local_channel(one, 0, damping_channel_kraus(0.5))
    assert np.allclose(half.entries, np.diag([0.5, 0.5]))


# ---------------- 演化 ----------------

def test_evolve_system_limits():
    alpha = 0.4
    assert np.allclose(evolve_system(alpha, 1.0).entries, ghz4_state(alpha).projector(), atol=1e-12)
    assert np.allclose(evolve_system(alpha, 0.0).entries, zero_state(4).projector(), atol=1e-12)
    rho = evolve_system(math.pi / 4, 0.5)
    assert rho.entries[0, 15] == pytest.approx(1 / 8, abs=1e-12)


def test_evolve_system_populations():
    alpha, p = 0.7, 0.35
    rho = evolve_system(alpha, p).entries
    s2, c2 = math.sin(alpha) ** 2, math.cos(alpha) ** 2
    assert rho[0, 0].real == pytest.approx(c2 + s2 * (1 - p) ** 4, abs=1e-12)
    for index in range(1, 16):
        k = bin(index).count("1")
        assert rho[index, index].real == pytest.approx(s2 * p ** k * (1 - p) ** (4 - k), abs=1e-12)
    assert rho[0, 15].real == pytest.approx(math.cos(alpha) * math.sin(alpha) * p ** 2, abs=1e-12)


def test_purification_oracle():
    for alpha in (0.2, math.pi / 4, 1.3):
        for p in (0.0, 0.3, 0.77, 1.0):
            expected = _purified(alpha, p).entries
            assert np.max(np.abs(evolve_system(alpha, p).entries - expected)) <= 1e-12


def test_trace_preservation():
    for alpha in np.linspace(0, math.pi / 2, 7):
        for p in np.linspace(0, 1, 7):
            assert abs(np.trace(evolve_system(alpha, p).entries) - 1.0) <= 1e-12


# ---------------- GMC ----------------

def test_gmc_closed_form_grid():
    alphas = np.linspace(0, math.pi / 2, 50)
    ps = np.linspace(0, 1, 50)
    for alpha in alphas:
        for p in ps:
            value = gmc_xstate(XStateData.from_density(evolve_system(alpha, p)))
            assert abs(value - _closed_form(alpha, p)) <= 1e-12


def test_gmc_zero_set():
    for alpha in np.linspace(0.05, math.pi / 2 - 0.05, 15):
        cot = 1 / math.tan(alpha)
        for p in np.linspace(0.01, 0.99, 25):
            margin = cot - 7 * (1 - p) ** 2
            if abs(margin) < 1e-6:
                continue
            assert (gmc(alpha, p) > 0) == (margin > 0)


def test_gmc_curve_examples():
    assert gmc_curve(math.pi / 4, [1.0]) == [(1.0, pytest.approx(1.0))]
    for alpha in (0.3, 0.9):
        assert gmc_curve(alpha, [0.0])[0][1] == 0.0
        assert gmc_curve(alpha, [1.0])[0][1] == pytest.approx(math.sin(2 * alpha), abs=1e-12)


# ---------------- 突然死亡阈值 ----------------

def test_sudden_death_threshold_examples():
    assert sudden_death_threshold(math.pi / 4) == pytest.approx(1 - 7 ** -0.5, abs=1e-12)
    assert sudden_death_threshold(math.atan(1 / 7)) == 0.0
    assert sudden_death_threshold(math.atan(1 / 8)) is None
    assert sudden_death_threshold(math.pi / 2) == 1.0
    assert sudden_death_threshold(math.pi / 2 - 1e-6) == pytest.approx(1.0, abs=1e-3)
    assert sudden_death_threshold(0.0) is None


def test_sudden_death_threshold_matches_bisection():
    alpha = math.pi / 4
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if gmc(alpha, mid) > 0:
            hi = mid
        else:
            lo = mid
    assert hi == pytest.approx(sudden_death_threshold(alpha), abs=1e-9)


def test_threshold_increases_with_alpha():
    alphas = [math.atan(1 / 7) + 0.01, math.pi / 8, math.pi / 6, math.pi / 4, math.pi / 3, 1.5]
    thresholds = [sudden_death_threshold(a) for a in alphas]
    assert all(b > a for a, b in zip(thresholds, thresholds[1:]))


# ---------------- GBC 下界曲线 ----------------

def test_bound_curve_ghz4():
    grid = uniform_p_grid(41)
    curve = bound_curve_ghz4(math.pi / 4, grid)
    values = [report.bound_value for _, report in curve]
    # |GHZ₄⟩ 自观测：字面聚合给出 √(2/3)，逐二分聚合等于精确值
    assert values[-1] == pytest.approx(math.sqrt(2 / 3), abs=1e-12)
    assert curve[-1][1].refined_value == pytest.approx((2 / 3) ** (3 / 14), abs=1e-12)
    assert bound_gbc(evolve_system(math.pi / 4, 1.0), ghz(4)).fidelity == pytest.approx(1.0)
    for p, report in curve:
        if report.fidelity <= 0.5:
            assert report.bound_value == 0.0
    # p ≥ 1/2 段下界随 p 单调不减
    tail = [v for (p, _), v in zip(curve, values) if p >= 0.5]
    assert all(b >= a - 1e-12 for a, b in zip(tail, tail[1:]))


def test_uniform_p_grid():
    grid = uniform_p_grid(5)
    assert list(grid) == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(ValueError):
        uniform_p_grid(1)

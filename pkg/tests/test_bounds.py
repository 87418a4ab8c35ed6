import logging
import math

import numpy as np
import pytest

from conftest import random_pure
from gbem.bipartition import Bipartition
from gbem.bounds import (
    Convention,
    best_bound,
    bound,
    bound_gbc,
    bound_gbn,
    bound_ggc,
    bound_ggm,
    certify_bipartitions,
    factor_ggm,
    lambda_cap,
    profile,
)
from gbem.measures import MeasureKind, gbem
from gbem.states import example2_phi, example2_rho, generalized_ghz, ghz, w_state, zero_state

ALL_KINDS = list(MeasureKind)
BOUNDS = {
    MeasureKind.CONCURRENCE: bound_gbc,
    MeasureKind.NEGATIVITY: bound_gbn,
    MeasureKind.G_CONCURRENCE: bound_ggc,
    MeasureKind.GEOMETRIC: bound_ggm,
}


def _example2_fidelity(p):
    return 0.125 + 0.846404 * p


# ---------------- profile ----------------

def test_profile_ghz():
    for n in (3, 4, 5):
        prof = profile(ghz(n))
        assert prof.lambda0_1 == pytest.approx(0.5) and prof.lambda0_2 == pytest.approx(0.5)
        assert prof.m_1 == prof.m_2 == 2
    assert profile(ghz(3)).dmin_1 == 2
    # n ≥ 4 时 max_γ d_min^γ = 2^⌊n/2⌋
    assert profile(ghz(4)).dmin_1 == 4
    assert [row.d_min for row in profile(ghz(4)).per_bipartition] == [2, 4, 4, 2, 4, 2, 2]


def test_profile_example2_conventions():
    phi = example2_phi()
    distinct = profile(phi, Convention.DISTINCT)
    assert distinct.lambda0_1 == pytest.approx(0.75) and distinct.lambda0_2 == pytest.approx(0.5)
    multiset = profile(phi, Convention.MULTISET)
    assert multiset.lambda0_1 == pytest.approx(0.75) and multiset.lambda0_2 == pytest.approx(0.75)


def test_profile_two_parties_second_equals_first():
    prof = profile(generalized_ghz([0.8, 0.6], 2))
    assert prof.lambda0_2 == prof.lambda0_1 and prof.m_2 == prof.m_1 and prof.dmin_2 == prof.dmin_1


def test_convention_coherence(rng):
    for _ in range(30):
        psi = random_pure(rng, (2, 2, 3))
        multi = profile(psi, Convention.MULTISET)
        dist = profile(psi, Convention.DISTINCT)
        assert multi.lambda0_2 >= dist.lambda0_2
        assert multi.m_2 >= dist.m_2 and multi.dmin_2 >= dist.dmin_2
        assert dist.lambda0_2 <= dist.lambda0_1 and dist.m_2 <= dist.m_1


def test_default_convention_from_config():
    assert profile(ghz(3)).convention is Convention.MULTISET
    with pytest.raises(ValueError):
        Convention.parse("ordered")


# ---------------- lambda_cap / 因子 ----------------

def test_lambda_cap():
    assert lambda_cap(1.0, 0.5) == 2.0
    assert lambda_cap(0.3, 0.5) == 1.0
    assert lambda_cap(0.625 + 0.125, 0.75) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        lambda_cap(0.5, 0.0)


def test_lambda_cap_below_rank(rng):
    for _ in range(50):
        obs = random_pure(rng)
        rho = random_pure(rng).to_density()
        report = bound_ggm(rho, obs)
        assert report.lambda_caps[0] <= report.profile.m_1 + 1e-9
        assert report.lambda_caps[1] <= report.profile.m_2 + 1e-9


def test_factor_ggm_limits():
    for m in (2, 3, 4):
        assert factor_ggm(1.0, m) == pytest.approx(0.0, abs=1e-15)
        assert factor_ggm(float(m), m) == pytest.approx(1.0 - 1.0 / m)


def test_factor_ggm_rounding_below_rank():
    # Λ 比 m 小若干 ulp 时不能因 √(m−Λ) 漏出 1e−8 量级误差
    for m in (2, 3, 5):
        assert abs(factor_ggm(m - 2.2e-16 * m, m) - (1.0 - 1.0 / m)) <= 1e-12
    assert factor_ggm(1.5, 2) < 0.5 - 1e-3


def test_ghz3_self_geometric_bound_is_exact():
    report = bound_ggm(ghz(3).to_density(), ghz(3))
    assert abs(report.bound_value - 0.5) <= 1e-9


# ---------------- GHZ 自观测 ----------------

def test_ghz3_self_equality():
    rho = ghz(3).to_density()
    expected = {
        MeasureKind.CONCURRENCE: 1.0,
        MeasureKind.NEGATIVITY: 1.0,
        MeasureKind.G_CONCURRENCE: 1.0,
        MeasureKind.GEOMETRIC: 0.5,
    }
    for kind, value in expected.items():
        report = BOUNDS[kind](rho, ghz(3))
        assert report.bound_value == pytest.approx(value, abs=1e-9)
        assert report.bound_value == pytest.approx(gbem(ghz(3), kind).value, abs=1e-9)


@pytest.mark.parametrize("n", [4, 5])
def test_ghz_larger_n_sound_and_refined_exact(n):
    psi = ghz(n)
    for kind in ALL_KINDS:
        report = bound(psi, psi, kind)
        exact = gbem(psi, kind).value
        assert report.bound_value <= exact + 1e-9
        assert report.refined_value == pytest.approx(exact, abs=1e-9)
    assert bound_gbc(psi, psi).bound_value == pytest.approx(math.sqrt(2 / 3), abs=1e-12)


def test_generalized_ghz3_qubit_equality(rng):
    for _ in range(20):
        c = np.abs(rng.normal(size=2))
        c /= np.linalg.norm(c)
        psi = generalized_ghz(c, 3)
        report = bound_gbc(psi.to_density(), ghz(3))
        assert report.bound_value == pytest.approx(2 * c[0] * c[1], abs=1e-9)
        assert report.bound_value == pytest.approx(gbem(psi, MeasureKind.CONCURRENCE).value, abs=1e-9)


def test_generalized_ghz3_qudit(rng):
    observable = ghz(3, 3)
    for _ in range(10):
        c = np.abs(rng.normal(size=3))
        c /= np.linalg.norm(c)
        psi = generalized_ghz(c, 3)
        report = bound_gbc(psi, observable)
        assert report.bound_value <= gbem(psi, MeasureKind.CONCURRENCE).value + 1e-9
    uniform = bound_gbc(observable, observable)
    assert uniform.bound_value == pytest.approx(gbem(observable, MeasureKind.CONCURRENCE).value, abs=1e-9)
    assert uniform.bound_value == pytest.approx(1.0, abs=1e-9)


# ---------------- ρ₂(p) 阈值 ----------------

def test_example2_fidelity_formula():
    phi = example2_phi()
    for p in np.linspace(0, 1, 11):
        assert bound_gbc(example2_rho(p), phi).fidelity == pytest.approx(_example2_fidelity(p), abs=1e-6)


def test_example2_multiset_threshold():
    phi = example2_phi()
    assert bound_gbc(example2_rho(0.7380), phi).bound_value == 0.0
    assert bound_gbc(example2_rho(0.7390), phi).bound_value > 0.0


def test_example2_w3_threshold():
    w = w_state(3)
    assert bound_gbc(example2_rho(0.6185), w).bound_value == 0.0
    report = bound_gbc(example2_rho(0.6195), w)
    assert report.bound_value > 0.0
    assert len(report.certified_bipartitions) == 3


def test_example2_certificate_threshold():
    phi = example2_phi()
    ab_c = Bipartition(3, (0, 1))
    below = {c.gamma: c.certified for c in certify_bipartitions(example2_rho(0.4426), phi)}
    above = {c.gamma: c.certified for c in certify_bipartitions(example2_rho(0.4436), phi)}
    assert not below[ab_c] and above[ab_c]
    assert not above[Bipartition(3, (0,))]


def test_certificates_for_pure_self_observable():
    psi = w_state(3)
    for cert in certify_bipartitions(psi, psi):
        assert cert.certified == (cert.lambda0 < 1.0)
        assert cert.lower_bounds[MeasureKind.NEGATIVITY] == pytest.approx(1 / cert.lambda0 - 1)


# ---------------- 夹逼与单调 ----------------

def test_clamp_consistency():
    phi = example2_phi()
    rho = example2_rho(0.5)
    assert bound_gbc(rho, phi).bound_value == 0.0
    assert bound_gbn(rho, phi).bound_value == 0.0
    assert bound_ggc(rho, phi).bound_value == 0.0


def test_w3_self_negativity():
    report = bound_gbn(w_state(3), w_state(3))
    assert report.bound_value == pytest.approx(0.5, abs=1e-12)
    assert report.bound_value <= gbem(w_state(3), MeasureKind.NEGATIVITY).value


def test_monotone_in_fidelity():
    phi = example2_phi()
    for kind in ALL_KINDS:
        values = [bound(example2_rho(p), phi, kind).bound_value for p in np.linspace(0, 1, 21)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_soundness_sweep(rng):
    for _ in range(200):
        chi = random_pure(rng)
        exact = {kind: gbem(chi, kind).value for kind in ALL_KINDS}
        for _ in range(20):
            observable = random_pure(rng)
            for kind in ALL_KINDS:
                report = bound(chi, observable, kind, Convention.MULTISET)
                assert report.bound_value <= exact[kind] + 1e-9
                assert report.refined_value <= exact[kind] + 1e-9


def test_product_observable_warns(caplog):
    observable = zero_state(3)
    with caplog.at_level(logging.WARNING, logger="gbem.bounds"):
        report = bound_gbc(ghz(3), observable)
    assert report.bound_value == 0.0
    assert "m=1" in caplog.text


# ---------------- best_bound ----------------

def test_best_bound():
    rho = ghz(3).to_density()
    single = best_bound(rho, [ghz(3)], MeasureKind.CONCURRENCE)
    assert single.bound_value == pytest.approx(1.0) and single.candidate_index == 0
    best = best_bound(rho, [w_state(3), ghz(3)], MeasureKind.CONCURRENCE)
    assert best.candidate_index == 1 and best.bound_value == pytest.approx(1.0)
    rho2 = example2_rho(0.9)
    reports = [bound_gbc(rho2, o).bound_value for o in (w_state(3), example2_phi())]
    assert best_bound(rho2, [w_state(3), example2_phi()], "concurrence").bound_value == max(reports)
    with pytest.raises(ValueError):
        best_bound(rho, [], MeasureKind.CONCURRENCE)

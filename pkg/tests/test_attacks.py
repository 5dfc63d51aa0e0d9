import math

import numpy as np
import pytest

from rissec.attacks import (apply_benign, apply_element_split,
                            apply_power_split, split_elements)
from rissec.channel import ChannelSet, generate_channel_set
from rissec.precoding import joint_optimize
from rissec.scenario import load_scenario

S2U = 1e-7
S2E = 1e-7


def _optimized_instance(seed, n=8, m=2, los_mode="steering-vector"):
    scn = load_scenario("paper-default", {"N": n, "M": m, "los_mode": los_mode})
    rng = np.random.default_rng(seed)
    ch = generate_channel_set(scn, rng)
    theta, x = joint_optimize(ch.h_br, ch.h_ru, scn.p_bs)
    return ch, theta, x


def _ones_channel(n, m):
    return ChannelSet(h_br=np.ones((n, m), dtype=complex),
                      h_ru=np.ones(n, dtype=complex),
                      h_re=np.ones(n, dtype=complex),
                      pl_br=1.0, pl_ru=1.0, pl_re=1.0)


# -- benign -----------------------------------------------------------------

def test_benign_snr_arithmetic():
    # |h_eff|^2 = 1e-5 and sigma_u^2 = 1e-7 must give SNR 100
    ch = _ones_channel(1, 1)
    x = np.array([math.sqrt(1e-5)], dtype=complex)
    real = apply_benign(ch, np.zeros(1), x, 1e-7)
    assert real.gamma_u == pytest.approx(100.0, rel=1e-12)
    assert real.gamma_e == 0.0


def test_benign_all_ones_closed_form():
    n, p = 6, 2.0
    ch = _ones_channel(n, 2)
    x = np.array([math.sqrt(p), 0.0], dtype=complex)
    real = apply_benign(ch, np.zeros(n), x, S2U)
    assert real.gamma_u == pytest.approx(n ** 2 * p / S2U, rel=1e-12)


def test_benign_dense_oracle():
    ch, theta, x = _optimized_instance(0, n=32, m=4)
    real = apply_benign(ch, theta, x, S2U)
    dense = (ch.h_ru.reshape(1, -1) @ np.diag(np.exp(1j * theta)) @ ch.h_br @ x.reshape(-1, 1))[0, 0]
    assert real.gamma_u == pytest.approx(abs(dense) ** 2 / S2U, rel=1e-12)


# -- power split ------------------------------------------------------------

def test_power_split_rho_one_bit_identical():
    ch, theta, x = _optimized_instance(1)
    benign = apply_benign(ch, theta, x, S2U)
    split = apply_power_split(ch, theta, x, 1.0, S2U, S2E)
    assert split.gamma_u == benign.gamma_u  # bit-for-bit
    assert split.gamma_e == 0.0


def test_power_split_rho_zero():
    ch, theta, x = _optimized_instance(2)
    split = apply_power_split(ch, theta, x, 0.0, S2U, S2E)
    assert split.gamma_u == 0.0


def test_power_split_linearity():
    for seed in range(100):
        ch, theta, x = _optimized_instance(seed)
        g1 = apply_power_split(ch, theta, x, 1.0, S2U, S2E).gamma_u
        for rho in (0.1, 0.25, 0.5, 0.9):
            g = apply_power_split(ch, theta, x, rho, S2U, S2E).gamma_u
            assert g == pytest.approx(rho * g1, rel=1e-12)


def test_power_split_passive_leakage_dense_oracle():
    ch, theta, x = _optimized_instance(3)
    real = apply_power_split(ch, theta, x, 0.3, S2U, S2E, leakage="passive")
    z = (ch.h_re.reshape(1, -1) @ np.diag(np.exp(1j * theta)) @ ch.h_br @ x.reshape(-1, 1))[0, 0]
    assert real.gamma_e == pytest.approx(0.7 * abs(z) ** 2 / S2E, rel=1e-12)


def test_power_split_steered_leakage_sums_magnitudes():
    ch, theta, x = _optimized_instance(4)
    real = apply_power_split(ch, theta, x, 0.3, S2U, S2E, leakage="steered")
    mags = np.sum(np.abs(ch.h_re * (ch.h_br @ x)))
    assert abs(real.z) == pytest.approx(mags, rel=1e-12)
    assert real.gamma_e == pytest.approx(0.7 * mags ** 2 / S2E, rel=1e-12)


def test_power_split_rejects_bad_rho():
    ch, theta, x = _optimized_instance(5)
    with pytest.raises(ValueError, match="rho"):
        apply_power_split(ch, theta, x, 1.3, S2U, S2E)


# -- element split ----------------------------------------------------------

def test_element_split_beta_one_bit_identical():
    ch, theta, x = _optimized_instance(6)
    benign = apply_benign(ch, theta, x, S2U)
    split = apply_element_split(ch, theta, x, 1.0, S2U, S2E)
    assert split.gamma_u == benign.gamma_u  # bit-for-bit
    assert split.gamma_e == 0.0
    assert split.eve_set.size == 0


def test_element_split_beta_zero():
    ch, theta, x = _optimized_instance(7)
    split = apply_element_split(ch, theta, x, 0.0, S2U, S2E)
    assert split.gamma_u == 0.0
    assert split.ue_set.size == 0


def test_element_split_dense_oracle():
    # independent dense evaluation on the same leading 4-element subset
    ch, theta, x = _optimized_instance(8, n=8, m=2)
    real = apply_element_split(ch, theta, x, 0.5, S2U, S2E)
    sub = slice(0, 4)
    dense = (ch.h_ru[sub].reshape(1, -1) @ np.diag(np.exp(1j * theta[sub]))
             @ ch.h_br[sub, :] @ x.reshape(-1, 1))[0, 0]
    assert real.gamma_u == pytest.approx(abs(dense) ** 2 / S2U, rel=1e-12)


def test_element_split_eve_cophasing_optimal():
    # |z| equals the sum of Eve-set contribution magnitudes
    ch, theta, x = _optimized_instance(9, n=8, m=2)
    real = apply_element_split(ch, theta, x, 0.5, S2U, S2E)
    eve = real.eve_set
    contrib = ch.h_re[eve] * (ch.h_br[eve, :] @ x)
    assert abs(real.z) == pytest.approx(np.sum(np.abs(contrib)), abs=1e-9)
    # explicit re-co-phased evaluation agrees
    theta_e = -np.angle(contrib)
    steered = np.sum(contrib * np.exp(1j * theta_e))
    assert abs(real.z) == pytest.approx(abs(steered), rel=1e-12)


def test_partition_properties():
    ue, eve = split_elements(32, 0.5)
    assert ue.size == 16
    assert np.array_equal(np.sort(np.concatenate([ue, eve])), np.arange(32))
    assert np.intersect1d(ue, eve).size == 0
    # half-up rounding: 0.5 * 5 = 2.5 -> 3
    ue5, _ = split_elements(5, 0.5)
    assert ue5.size == 3
    # paper grid with N=32: round(0.25*32) = 8
    ue8, _ = split_elements(32, 0.25)
    assert ue8.size == 8


def test_random_partition_reproducible_and_disjoint():
    ue1, ev1 = split_elements(16, 0.4, "random", np.random.default_rng(5))
    ue2, ev2 = split_elements(16, 0.4, "random", np.random.default_rng(5))
    assert np.array_equal(ue1, ue2) and np.array_equal(ev1, ev2)
    assert np.array_equal(np.sort(np.concatenate([ue1, ev1])), np.arange(16))
    with pytest.raises(ValueError, match="rng"):
        split_elements(16, 0.4, "random")


def test_element_split_gamma_monotone_in_beta_statistically():
    # gamma_u non-decreasing in the UE-set size in expectation (3-sigma band)
    scn = load_scenario("paper-default", {"N": 16, "M": 2})
    rng = np.random.default_rng(42)
    lo, hi = [], []
    for _ in range(200):
        ch = generate_channel_set(scn, rng)
        theta, x = joint_optimize(ch.h_br, ch.h_ru, scn.p_bs)
        lo.append(apply_element_split(ch, theta, x, 0.25, S2U, S2E).gamma_u)
        hi.append(apply_element_split(ch, theta, x, 0.75, S2U, S2E).gamma_u)
    lo, hi = np.array(lo), np.array(hi)
    diff = hi - lo
    se = diff.std(ddof=1) / math.sqrt(diff.size)
    assert diff.mean() > -3 * se


def test_element_split_rejects_bad_beta():
    ch, theta, x = _optimized_instance(10)
    with pytest.raises(ValueError, match="beta"):
        apply_element_split(ch, theta, x, -0.2, S2U, S2E)

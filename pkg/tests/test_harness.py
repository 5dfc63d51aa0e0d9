import math

import numpy as np
import pytest
from scipy import stats

from rissec.harness import (CSV_COLUMNS, derive_trial_seed, run_sweep,
                            run_timeline, write_csv, _splitmix64)
from rissec.scenario import Attack, load_scenario

FAST = {"n_bits_per_slot": 200, "n_sim": 8}


def _scn(**over):
    cfg = dict(FAST)
    cfg.update(over)
    return load_scenario("paper-default", cfg)


# -- timeline -----------------------------------------------------------------

def test_attack_onset_at_half_time():
    scn = _scn(**{"attack.mode": "power-split", "attack.rho": 0.5})
    records = run_timeline(scn, np.random.default_rng(0))
    assert len(records) == 50
    assert all(not r.attack_active for r in records[:25])
    assert all(r.attack_active for r in records[25:])


def test_benign_mode_has_no_eavesdropper():
    scn = _scn(T=10)
    records = run_timeline(scn, np.random.default_rng(1))
    for r in records:
        assert r.gamma_e == 0.0
        assert r.c_s == r.c_u


def test_timeline_deterministic():
    scn = _scn(T=6, **{"attack.mode": "element-split", "attack.beta": 0.4})
    a = run_timeline(scn, np.random.default_rng(9))
    b = run_timeline(scn, np.random.default_rng(9))
    assert a == b


def test_slot_metrics_consistent():
    scn = _scn(T=6, **{"attack.mode": "power-split", "attack.rho": 0.3})
    for r in run_timeline(scn, np.random.default_rng(2)):
        assert r.c_u == pytest.approx(math.log2(1 + r.gamma_u), rel=1e-12)
        assert r.c_e == pytest.approx(math.log2(1 + r.gamma_e), rel=1e-12)
        assert r.c_s == pytest.approx(max(0.0, r.c_u - r.c_e), abs=1e-12)
        assert r.ber == r.bit_errors / r.bits


# -- trial seeds ---------------------------------------------------------------

def test_seed_derivation_deterministic():
    assert derive_trial_seed(42, 3, 7) == derive_trial_seed(42, 3, 7)
    assert derive_trial_seed(42, 3, 7) != derive_trial_seed(43, 3, 7)


def test_seed_collision_scan():
    # vectorized splitmix64 oracle, checked against the scalar implementation
    M = np.uint64(0xFFFFFFFFFFFFFFFF)
    np.seterr(over="ignore")

    def mix(v):
        v = (v + np.uint64(0x9E3779B97F4A7C15)) & M
        v = ((v ^ (v >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)) & M
        v = ((v ^ (v >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)) & M
        return v ^ (v >> np.uint64(31))

    rng = np.random.default_rng(0)
    seeds = rng.integers(0, 1 << 63, size=1_000_000, dtype=np.uint64)
    for s in seeds[:50]:
        assert int(mix(np.uint64(s))) == _splitmix64(int(s))
    h = mix(mix(seeds))                # grid_index = 0
    t0 = mix(h ^ np.uint64(0))
    t1 = mix(h ^ np.uint64(1))
    assert np.all(t0 != t1)
    for s in seeds[:20]:
        assert derive_trial_seed(int(s), 0, 0) != derive_trial_seed(int(s), 0, 1)


def test_seed_low_bits_uniform():
    # chi-square on the low 16 bits of 1e5 consecutive trial indices, 1% level
    low = np.array([derive_trial_seed(1234, 0, t) & 0xFFFF for t in range(100_000)])
    counts = np.bincount(low >> 8, minlength=256)  # 256 bins of the low-16 field
    chi2, p = stats.chisquare(counts)
    assert p > 0.01


# -- sweeps ---------------------------------------------------------------------

def test_sweep_rho_one_matches_benign():
    scn = _scn(**{"n_bits_per_slot": 2000})
    res = run_sweep(scn, "rho", (1.0,), n_sim=8)
    pt = res.points[0]
    n_bits = 8 * 25 * 2000
    sigma = math.sqrt(max(pt.ber_benign, 1e-9) / n_bits)
    assert abs(pt.ber_attack - pt.ber_benign) <= 3 * sigma + 1e-12


def test_sweep_thread_count_invariance(tmp_path):
    scn = _scn(T=6)
    r1 = run_sweep(scn, "rho", (0.2, 0.8), n_sim=6, threads=1)
    r3 = run_sweep(scn, "rho", (0.2, 0.8), n_sim=6, threads=3)
    f1, f3 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(r1, f1)
    write_csv(r3, f3)
    assert f1.read_bytes() == f3.read_bytes()
    assert [vars(a) for a in r1.points] == [vars(b) for b in r3.points]


def test_sweep_benign_outage_definition():
    # with rho = 1 (benign-equivalent) P_out is the fraction of attack-window
    # slots with c_u below the target rate
    scn = _scn(T=10)
    res = run_sweep(scn, "rho", (1.0,), n_sim=5)
    rows = []
    for ti in range(5):
        rng = np.random.default_rng(derive_trial_seed(scn.seed, 0, ti))
        attacked = scn.with_attack(Attack("power-split", rho=1.0))
        rows += [r for r in run_timeline(attacked, rng) if r.attack_active]
    expected = sum(1 for r in rows if r.c_s < scn.r_s) / len(rows)
    assert res.points[0].p_out == pytest.approx(expected, abs=1e-12)


def test_sweep_rejects_bad_axis_and_grid():
    scn = _scn()
    with pytest.raises(ValueError, match="axis"):
        run_sweep(scn, "gamma", (0.5,), n_sim=1)
    with pytest.raises(ValueError, match=r"out of \[0,1\]|grid"):
        run_sweep(scn, "rho", (1.5,), n_sim=1)


# -- CSV ------------------------------------------------------------------------

def test_csv_empty_grid_header_only(tmp_path):
    scn = _scn(T=4)
    res = run_sweep(scn, "rho", (), n_sim=2)
    path = tmp_path / "empty.csv"
    write_csv(res, path)
    assert path.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_csv_single_point_two_lines(tmp_path):
    scn = _scn(T=4)
    res = run_sweep(scn, "beta", (0.5,), n_sim=2)
    path = tmp_path / "one.csv"
    write_csv(res, path)
    text = path.read_text()
    assert text.endswith("\n")
    assert len(text.splitlines()) == 2


def test_csv_round_trip(tmp_path):
    scn = _scn(T=4, seed=77)
    res = run_sweep(scn, "rho", (0.0, 0.5, 1.0), n_sim=3)
    path = tmp_path / "rt.csv"
    write_csv(res, path)
    lines = path.read_text().splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    for line, pt in zip(lines[1:], res.points):
        f = line.split(",")
        assert f[0] == "rho"
        assert float(f[1]) == pt.axis_value
        assert float(f[2]) == pytest.approx(pt.ber_benign, rel=1e-11)
        assert float(f[7]) == pytest.approx(pt.p_out, rel=1e-11)
        assert int(f[9]) == 3 and int(f[10]) == 77

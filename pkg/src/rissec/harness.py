"""Simulation orchestration: per-slot timeline with attack onset at T/2,
Monte Carlo trials, parameter sweeps and CSV output.

Determinism contract: (Scenario, master seed) fixes every slot record and
the CSV bytes regardless of worker-thread count. Each trial owns a random
stream derived from (master seed, grid index, trial index); aggregation is
a sum of per-trial partials reduced in trial order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from rissec.scenario import Scenario, Attack
from rissec.channel import generate_channel_set
from rissec.precoding import joint_optimize
from rissec.attacks import apply_benign, apply_power_split, apply_element_split
from rissec.metrics import shannon_capacity, secrecy_capacity, qpsk_ber_simulate


@dataclass(frozen=True)
class SlotRecord:
    slot: int
    attack_active: bool
    gamma_u: float
    gamma_e: float
    c_u: float
    c_e: float
    c_s: float
    ber: float
    bit_errors: int
    bits: int


CSV_COLUMNS = ("axis_name", "axis_value", "ber_benign", "ber_attack",
               "c_u_mean", "c_e_mean", "c_s_mean", "p_out", "p_out_ci95",
               "n_sim", "seed")


@dataclass
class GridPointResult:
    """Aggregates over n_sim trials at one grid value. Capacity means and
    the outage probability use attack-window slots only; BER is split into
    benign-window and attack-window averages."""
    axis_value: float
    ber_benign: float
    ber_attack: float
    c_u_mean: float
    c_e_mean: float
    c_s_mean: float
    p_out: float
    p_out_ci95: float
    # standard errors of the attack-window means, for trend checks
    c_u_se: float = 0.0
    c_e_se: float = 0.0
    c_s_se: float = 0.0


@dataclass
class SweepResult:
    axis: str                       # "rho" or "beta"
    values: tuple
    points: list
    n_sim: int
    seed: int


# ---------------------------------------------------------------------------
# Seeding
# ---------------------------------------------------------------------------

_M64 = (1 << 64) - 1


def _splitmix64(v: int) -> int:
    v = (v + 0x9E3779B97F4A7C15) & _M64
    v = ((v ^ (v >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    v = ((v ^ (v >> 27)) * 0x94D049BB133111EB) & _M64
    return v ^ (v >> 31)


def derive_trial_seed(master_seed: int, grid_index: int, trial_index: int) -> int:
    """Platform-independent 64-bit seed for one (grid point, trial) cell.

    Chained splitmix64 mixing; injective in trial_index for fixed
    (master_seed, grid_index) because each stage is a bijection."""
    h = _splitmix64(master_seed & _M64)
    h = _splitmix64(h ^ (grid_index & _M64))
    h = _splitmix64(h ^ (trial_index & _M64))
    return h


# ---------------------------------------------------------------------------
# Timeline
# ---------------------------------------------------------------------------

def _apply_attack(scn: Scenario, ch, theta, x, rng) -> "LinkRealization":
    atk = scn.attack
    if atk.mode == "benign":
        return apply_benign(ch, theta, x, scn.sigma2_u)
    if atk.mode == "power-split":
        return apply_power_split(ch, theta, x, atk.rho, scn.sigma2_u,
                                 scn.sigma2_e, leakage=scn.leakage)
    return apply_element_split(ch, theta, x, atk.beta, scn.sigma2_u,
                               scn.sigma2_e, partition=scn.partition, rng=rng)


def run_timeline(scn: Scenario, rng: np.random.Generator) -> list:
    """One trial: T slots of fresh channels, benign for t < T/2, the
    Scenario's attack mode afterwards. Per slot the benign (theta, x) are
    optimized first; the attack transform reuses them (stealth premise)."""
    onset = scn.t_slots // 2
    p_bs = scn.p_bs
    records = []
    for t in range(scn.t_slots):
        ch = generate_channel_set(scn, rng)
        theta, x = joint_optimize(ch.h_br, ch.h_ru, p_bs)
        active = t >= onset
        if active:
            real = _apply_attack(scn, ch, theta, x, rng)
        else:
            real = apply_benign(ch, theta, x, scn.sigma2_u)
        ber = qpsk_ber_simulate(real.h_eff_u, scn.sigma2_u,
                                scn.n_bits_per_slot, rng)
        c_u = shannon_capacity(real.gamma_u)
        c_e = shannon_capacity(real.gamma_e)
        records.append(SlotRecord(
            slot=t, attack_active=active,
            gamma_u=real.gamma_u, gamma_e=real.gamma_e,
            c_u=c_u, c_e=c_e, c_s=secrecy_capacity(real.gamma_u, real.gamma_e),
            ber=ber.ber, bit_errors=ber.bit_errors, bits=ber.bits_total))
    return records


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

@dataclass
class _TrialPartial:
    """Order-independent per-trial sums (reduction is associative)."""
    err_b: int = 0
    bits_b: int = 0
    err_a: int = 0
    bits_a: int = 0
    sum_cu: float = 0.0
    sum_ce: float = 0.0
    sum_cs: float = 0.0
    sum_cu2: float = 0.0
    sum_ce2: float = 0.0
    sum_cs2: float = 0.0
    n_attack: int = 0
    n_outage: int = 0

    def add(self, other: "_TrialPartial"):
        for name in self.__dataclass_fields__:
            setattr(self, name, getattr(self, name) + getattr(other, name))


def _run_trial(scn: Scenario, seed: int) -> _TrialPartial:
    rng = np.random.default_rng(seed)
    part = _TrialPartial()
    for rec in run_timeline(scn, rng):
        if rec.attack_active:
            part.err_a += rec.bit_errors
            part.bits_a += rec.bits
            part.sum_cu += rec.c_u
            part.sum_ce += rec.c_e
            part.sum_cs += rec.c_s
            part.sum_cu2 += rec.c_u ** 2
            part.sum_ce2 += rec.c_e ** 2
            part.sum_cs2 += rec.c_s ** 2
            part.n_attack += 1
            if rec.c_s < scn.r_s:
                part.n_outage += 1
        else:
            part.err_b += rec.bit_errors
            part.bits_b += rec.bits
    return part


def _aggregate(axis_value: float, partials: list) -> GridPointResult:
    total = _TrialPartial()
    for p in partials:      # fixed trial order: thread-count independent
        total.add(p)
    n = total.n_attack
    p_out = total.n_outage / n
    mean_cu = total.sum_cu / n
    mean_ce = total.sum_ce / n
    mean_cs = total.sum_cs / n

    def se(s2, mean):
        var = max(0.0, s2 / n - mean ** 2)
        return (var / n) ** 0.5

    return GridPointResult(
        axis_value=axis_value,
        ber_benign=total.err_b / total.bits_b,
        ber_attack=total.err_a / total.bits_a,
        c_u_mean=mean_cu, c_e_mean=mean_ce, c_s_mean=mean_cs,
        p_out=p_out,
        p_out_ci95=1.96 * (p_out * (1.0 - p_out) / n) ** 0.5,
        c_u_se=se(total.sum_cu2, mean_cu),
        c_e_se=se(total.sum_ce2, mean_ce),
        c_s_se=se(total.sum_cs2, mean_cs))


def run_sweep(scn: Scenario, axis: str, values=None, n_sim: int | None = None,
              threads: int = 1) -> SweepResult:
    """Sweep the attack parameter named by `axis` ("rho" or "beta") over
    `values`, running n_sim independent trials per grid value."""
    if axis == "rho":
        values = tuple(scn.rho_grid) if values is None else tuple(values)
        scenarios = [scn.with_attack(Attack("power-split", rho=v)) for v in values]
    elif axis == "beta":
        values = tuple(scn.beta_grid) if values is None else tuple(values)
        scenarios = [scn.with_attack(Attack("element-split", beta=v)) for v in values]
    else:
        raise ValueError(f"unknown sweep axis {axis!r} (expected 'rho' or 'beta')")
    if any(not 0.0 <= v <= 1.0 for v in values):
        raise ValueError("sweep grid values must lie in [0,1]")
    n_sim = scn.n_sim if n_sim is None else n_sim
    if n_sim < 1:
        raise ValueError("n_sim must be >= 1")

    tasks = [(gi, ti, scenarios[gi], derive_trial_seed(scn.seed, gi, ti))
             for gi in range(len(values)) for ti in range(n_sim)]
    partials: dict = {}
    if threads <= 1:
        for gi, ti, s, seed in tasks:
            partials[(gi, ti)] = _run_trial(s, seed)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(lambda t: _run_trial(t[2], t[3]), tasks)
            for (gi, ti, _, _), part in zip(tasks, results):
                partials[(gi, ti)] = part

    points = [_aggregate(values[gi], [partials[(gi, ti)] for ti in range(n_sim)])
              for gi in range(len(values))]
    return SweepResult(axis=axis, values=values, points=points,
                       n_sim=n_sim, seed=scn.seed)


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def _fmt(v: float) -> str:
    return format(v, ".12g")


def write_csv(result: SweepResult, path) -> None:
    """One header row plus one row per grid point, columns per CSV_COLUMNS,
    floats at 12 significant digits, newline-terminated."""
    lines = [",".join(CSV_COLUMNS)]
    for pt in result.points:
        lines.append(",".join([
            result.axis, _fmt(pt.axis_value),
            _fmt(pt.ber_benign), _fmt(pt.ber_attack),
            _fmt(pt.c_u_mean), _fmt(pt.c_e_mean), _fmt(pt.c_s_mean),
            _fmt(pt.p_out), _fmt(pt.p_out_ci95),
            str(result.n_sim), str(result.seed)]))
    Path(path).write_text("\n".join(lines) + "\n")

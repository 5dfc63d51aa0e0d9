"""Receive-side quantities under benign operation and under the two
compromised-RIS behaviors (power splitting, element splitting).

The BS is unaware of the attack: the beamformer x and the UE-side phases
stay at their benignly optimized values, only the RIS-side split changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rissec.channel import ChannelSet
from rissec.precoding import effective_gain


@dataclass(frozen=True)
class LinkRealization:
    """Per-slot receive-side outcome for UE and Eve."""
    h_eff_u: complex
    gamma_u: float
    gamma_e: float
    z: complex = 0j                    # Eve leakage signal (0 when benign)
    ue_set: np.ndarray | None = None   # element indices serving the UE (element split)
    eve_set: np.ndarray | None = None  # element indices serving Eve (element split)


def apply_benign(ch: ChannelSet, theta: np.ndarray, x: np.ndarray,
                 sigma2_u: float) -> LinkRealization:
    """Benign operation: all N elements serve the UE, Eve receives nothing."""
    h_eff = effective_gain(ch.h_ru, theta, ch.h_br, x)
    return LinkRealization(h_eff_u=h_eff, gamma_u=abs(h_eff) ** 2 / sigma2_u,
                           gamma_e=0.0)


def apply_power_split(ch: ChannelSet, theta: np.ndarray, x: np.ndarray,
                      rho: float, sigma2_u: float, sigma2_e: float,
                      leakage: str = "steered") -> LinkRealization:
    """Power split: fraction rho of reflected power to the UE, 1-rho to Eve.

    Leakage models for Eve's signal z:
      steered -- per-element contributions toward Eve add coherently
                 (|z| = sum of contribution magnitudes), the worst case;
      passive -- z is the cascade toward Eve under the UE-optimized phases.
    gamma_e = (1 - rho) |z|^2 / sigma2_e either way.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho out of [0,1] (got {rho})")
    h_benign = effective_gain(ch.h_ru, theta, ch.h_br, x)
    h_eff = math.sqrt(rho) * h_benign
    if leakage == "passive":
        z = effective_gain(ch.h_re, theta, ch.h_br, x)
    elif leakage == "steered":
        z = complex(np.sum(np.abs(ch.h_re * (ch.h_br @ x))))
    else:
        raise ValueError(f"unknown leakage model {leakage!r}")
    return LinkRealization(h_eff_u=h_eff,
                           gamma_u=abs(h_eff) ** 2 / sigma2_u,
                           gamma_e=(1.0 - rho) * abs(z) ** 2 / sigma2_e,
                           z=z)


def split_elements(n: int, beta: float, partition: str = "contiguous",
                   rng: np.random.Generator | None = None):
    """Partition {0..n-1} into a UE set of round(beta*n) elements and an
    Eve set of the rest. Rounding is half-up; contiguous mode assigns the
    leading indices to the UE, random mode permutes first."""
    k_u = min(n, max(0, math.floor(beta * n + 0.5)))
    if partition == "contiguous":
        order = np.arange(n)
    elif partition == "random":
        if rng is None:
            raise ValueError("random partition requires an rng")
        order = rng.permutation(n)
    else:
        raise ValueError(f"unknown partition mode {partition!r}")
    return order[:k_u], order[k_u:]


def apply_element_split(ch: ChannelSet, theta: np.ndarray, x: np.ndarray,
                        beta: float, sigma2_u: float, sigma2_e: float,
                        partition: str = "contiguous",
                        rng: np.random.Generator | None = None) -> LinkRealization:
    """Element split: round(beta*N) elements keep their benign phases for
    the UE; the rest are re-co-phased toward Eve (adversarial worst case,
    |z| = sum of Eve-set contribution magnitudes)."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta out of [0,1] (got {beta})")
    theta = np.asarray(theta)
    ue_set, eve_set = split_elements(theta.size, beta, partition, rng)

    h_eff = effective_gain(ch.h_ru[ue_set], theta[ue_set], ch.h_br[ue_set, :], x)
    z = complex(np.sum(np.abs(ch.h_re[eve_set] * (ch.h_br[eve_set, :] @ x))))
    return LinkRealization(h_eff_u=h_eff,
                           gamma_u=abs(h_eff) ** 2 / sigma2_u,
                           gamma_e=abs(z) ** 2 / sigma2_e,
                           z=z, ue_set=ue_set, eve_set=eve_set)

"""MRT transmit beamforming and RIS phase configuration.

The BS beamformer is maximum ratio transmission on the cascaded channel
h_ru @ diag(e^{j theta}) @ H_br; the RIS phases co-phase the per-element
contributions so they add constructively at the UE. Alternating the two
steps is a monotone ascent on |h_eff| and converges in a few iterations.
"""

from __future__ import annotations

import numpy as np


class DegenerateChannelError(ValueError):
    """Cascaded channel is identically zero; beam direction undefined."""


def mrt_beamformer(h_br: np.ndarray, theta: np.ndarray, h_ru: np.ndarray,
                   p_bs: float) -> np.ndarray:
    """MRT beamformer x = sqrt(p_bs) * v / ||v||, v = H^H Theta^H h_ru^H.

    Returns a length-M complex vector with ||x||^2 = p_bs.
    """
    v = h_br.conj().T @ (np.exp(-1j * np.asarray(theta)) * np.conj(h_ru))
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise DegenerateChannelError("degenerate channel: zero cascaded direction")
    return np.sqrt(p_bs) * v / nrm


def cophase(h_br: np.ndarray, h_ru: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Phases theta_n = -arg(h_ru[n] * (H_br x)[n]).

    Every per-element contribution to h_ru Theta H_br x then has zero phase,
    so |h_eff| becomes the sum of contribution magnitudes. Zero-magnitude
    contributions get theta_n = 0.
    """
    contrib = np.asarray(h_ru) * (h_br @ x)
    return -np.angle(contrib)


def effective_gain(h_rx: np.ndarray, theta: np.ndarray, h_tx: np.ndarray,
                   x: np.ndarray) -> complex:
    """Cascaded scalar h_rx @ diag(e^{j theta}) @ h_tx @ x."""
    h_rx = np.asarray(h_rx)
    theta = np.asarray(theta)
    if h_rx.shape != theta.shape or h_tx.shape != (h_rx.size, x.size):
        raise ValueError(
            f"dimension mismatch: h_rx {h_rx.shape}, theta {theta.shape}, "
            f"h_tx {h_tx.shape}, x {x.shape}")
    return complex(np.sum(h_rx * np.exp(1j * theta) * (h_tx @ x)))


def joint_optimize(h_br: np.ndarray, h_ru: np.ndarray, p_bs: float,
                   tol: float = 1e-6, max_iter: int = 50, trace: list | None = None):
    """Alternate co-phasing and MRT from theta = 0 until |h_eff| stalls.

    Returns (theta, x). The objective |h_eff| is non-decreasing across
    iterations; stops when the relative improvement drops below tol. If
    `trace` is a list, the per-iteration objective values are appended.
    """
    h_ru = np.asarray(h_ru)
    h_br_h = h_br.conj().T
    h_ru_conj = np.conj(h_ru)
    sqrt_p = np.sqrt(p_bs)
    theta = np.zeros(h_ru.size)
    gain = 0.0
    for _ in range(max_iter):
        # MRT for the current phases, then co-phase for the new beamformer;
        # after co-phasing |h_eff| is the sum of contribution magnitudes.
        v = h_br_h @ (np.exp(-1j * theta) * h_ru_conj)
        nrm = np.sqrt(np.vdot(v, v).real)
        if nrm == 0.0:
            raise DegenerateChannelError("degenerate channel: zero cascaded direction")
        contrib = h_ru * (h_br @ v) * (sqrt_p / nrm)
        theta = -np.angle(contrib)
        new_gain = float(np.abs(contrib).sum())
        if trace is not None:
            trace.append(new_gain)
        if gain > 0.0 and (new_gain - gain) < tol * gain:
            gain = new_gain
            break
        gain = new_gain
    # final x consistent with the returned phases
    x = mrt_beamformer(h_br, theta, h_ru, p_bs)
    return theta, x

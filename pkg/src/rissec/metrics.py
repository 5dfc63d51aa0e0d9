"""Link metrics: Shannon throughput, secrecy capacity, secrecy outage and
simulated QPSK bit error rate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


@dataclass(frozen=True)
class BerResult:
    bit_errors: int
    bits_total: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_total


def shannon_capacity(gamma: float) -> float:
    """log2(1 + gamma) in bps/Hz."""
    if gamma < 0:
        raise ValueError(f"SNR must be >= 0 (got {gamma})")
    return math.log1p(gamma) / math.log(2.0)


def secrecy_capacity(gamma_u: float, gamma_e: float) -> float:
    """max(0, log2(1+gamma_u) - log2(1+gamma_e))."""
    return max(0.0, shannon_capacity(gamma_u) - shannon_capacity(gamma_e))


def secrecy_outage(samples, r_s: float):
    """Fraction of secrecy-capacity samples strictly below the target rate,
    with the 95% normal-approximation half-width 1.96*sqrt(p(1-p)/n)."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("empty sample sequence")
    p = float(np.count_nonzero(samples < r_s)) / samples.size
    half_width = 1.96 * math.sqrt(p * (1.0 - p) / samples.size)
    return p, half_width


def q_function(x):
    """Standard Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2."""
    return special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0)) / 2.0


def qpsk_ber_simulate(h_eff: complex, sigma2: float, n_bits: int,
                      rng: np.random.Generator) -> BerResult:
    """Simulate Gray-mapped QPSK over a flat channel with coherent detection.

    Bits (b0, b1) map to s = ((1-2*b0) + 1j*(1-2*b1)) / sqrt(2); the receiver
    sees r = h_eff*s + n with n ~ CN(0, sigma2), divides by h_eff and slices
    per quadrant. With h_eff = 0 the slicer runs on pure noise (BER ~ 0.5).
    """
    if n_bits < 2 or n_bits % 2:
        raise ValueError("n_bits must be even and >= 2")
    n_sym = n_bits // 2
    bits = rng.integers(0, 2, size=(2, n_sym))
    symbols = ((1 - 2 * bits[0]) + 1j * (1 - 2 * bits[1])) / math.sqrt(2.0)
    if sigma2 > 0:
        g = rng.standard_normal((2, n_sym))
        noise = math.sqrt(sigma2 / 2.0) * (g[0] + 1j * g[1])
    else:
        noise = 0.0
    r = h_eff * symbols + noise
    y = r / h_eff if h_eff != 0 else r
    errors = int(np.count_nonzero((y.real < 0) != (bits[0] == 1))
                 + np.count_nonzero((y.imag < 0) != (bits[1] == 1)))
    return BerResult(bit_errors=errors, bits_total=n_bits)

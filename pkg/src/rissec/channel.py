"""Block-fading Rician channel generation for the BS->RIS, RIS->UE and
RIS->Eve links.

Each entry mixes a deterministic unit-modulus LOS term with a circularly
symmetric complex Gaussian scatter term:

    h = sqrt(PL) * ( sqrt(kappa/(kappa+1)) * LOS + sqrt(1/(kappa+1)) * W )

with W ~ CN(0, 1) i.i.d. The LOS structure is a rank-one outer product of
uniform-linear-array steering vectors at the geometric bearing between the
endpoints (an all-ones variant exists for hand analysis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from rissec.scenario import Scenario, distance, path_loss


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelSet:
    """One block-fading realization of the three links."""
    h_br: np.ndarray   # N x M, BS -> RIS
    h_ru: np.ndarray   # length N, RIS -> UE
    h_re: np.ndarray   # length N, RIS -> Eve
    pl_br: float
    pl_ru: float
    pl_re: float


def steering_vector(k: int, bearing: float, spacing: float = 0.5) -> np.ndarray:
    """ULA steering vector of length k at the given bearing (radians)."""
    phase = 2.0 * math.pi * spacing * math.sin(bearing)
    return np.exp(1j * phase * np.arange(k))


def los_matrix(mode: str, tx_pos, rx_pos, rows: int, cols: int,
               spacing: float = 0.5) -> np.ndarray:
    """Unit-modulus LOS matrix (rows x cols) between two node positions.

    steering-vector mode: rank-one outer product a_rx a_tx^H with both
    steering vectors evaluated at the geometric bearing of the link.
    all-ones mode: every entry 1.
    """
    if mode == "all-ones":
        return np.ones((rows, cols), dtype=complex)
    if mode != "steering-vector":
        raise ChannelError(f"unknown LOS mode {mode!r}")
    dx = rx_pos[0] - tx_pos[0]
    dy = rx_pos[1] - tx_pos[1]
    bearing = math.atan2(dy, dx)
    a_rx = steering_vector(rows, bearing, spacing)
    a_tx = steering_vector(cols, bearing, spacing)
    return np.outer(a_rx, a_tx.conj())


def draw_rician(rows: int, cols: int, kappa: float, pl: float,
                los: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One Rician draw: sqrt(pl)*(sqrt(k/(k+1))*LOS + sqrt(1/(k+1))*W)."""
    if kappa < 0:
        raise ChannelError("kappa must be >= 0")
    if pl <= 0:
        raise ChannelError("path loss must be > 0")
    los = np.asarray(los)
    if los.shape != (rows, cols):
        raise ChannelError(f"LOS shape {los.shape} != requested ({rows}, {cols})")
    g = rng.standard_normal((rows, 2 * cols))
    w = (g[:, :cols] + 1j * g[:, cols:]) / math.sqrt(2.0)
    return math.sqrt(pl) * (math.sqrt(kappa / (kappa + 1.0)) * los
                            + math.sqrt(1.0 / (kappa + 1.0)) * w)


@lru_cache(maxsize=64)
def _scenario_statics(scn: Scenario):
    """Per-scenario constants: path losses and LOS matrices (read-only)."""
    pl_br = path_loss(distance(scn.pos_bs, scn.pos_ris), scn.alpha)
    pl_ru = path_loss(distance(scn.pos_ris, scn.pos_ue), scn.alpha)
    pl_re = path_loss(distance(scn.pos_ris, scn.pos_eve), scn.alpha)
    los_br = los_matrix(scn.los_mode, scn.pos_bs, scn.pos_ris, scn.n, scn.m, scn.los_spacing)
    los_ru = los_matrix(scn.los_mode, scn.pos_ris, scn.pos_ue, 1, scn.n, scn.los_spacing)
    los_re = los_matrix(scn.los_mode, scn.pos_ris, scn.pos_eve, 1, scn.n, scn.los_spacing)
    for m in (los_br, los_ru, los_re):
        m.setflags(write=False)
    return pl_br, pl_ru, pl_re, los_br, los_ru, los_re


def generate_channel_set(scn: Scenario, rng: np.random.Generator) -> ChannelSet:
    """Draw the three links independently for one slot."""
    pl_br, pl_ru, pl_re, los_br, los_ru, los_re = _scenario_statics(scn)
    h_br = draw_rician(scn.n, scn.m, scn.kappa, pl_br, los_br, rng)
    h_ru = draw_rician(1, scn.n, scn.kappa, pl_ru, los_ru, rng)[0]
    h_re = draw_rician(1, scn.n, scn.kappa, pl_re, los_re, rng)[0]
    return ChannelSet(h_br=h_br, h_ru=h_ru, h_re=h_re,
                      pl_br=pl_br, pl_ru=pl_ru, pl_re=pl_re)


# ---------------------------------------------------------------------------
# Textual dump (cross-implementation comparison)
# ---------------------------------------------------------------------------

def dump_channel_set(ch: ChannelSet, path) -> None:
    """Write a ChannelSet as text: per-matrix header, then one row per line
    of whitespace-separated "re im" pairs (row-major)."""
    lines = []
    for name, mat in (("h_br", ch.h_br), ("h_ru", ch.h_ru.reshape(1, -1)),
                      ("h_re", ch.h_re.reshape(1, -1))):
        lines.append(f"# {name} {mat.shape[0]} {mat.shape[1]}")
        for row in mat:
            lines.append(" ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row))
    lines.append(f"# pl {ch.pl_br:.17g} {ch.pl_ru:.17g} {ch.pl_re:.17g}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_channel_dump(path) -> ChannelSet:
    """Inverse of dump_channel_set."""
    mats = {}
    pl = None
    current, rows = None, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("# pl "):
            pl = [float(v) for v in line.split()[2:]]
        elif line.startswith("# "):
            if current is not None:
                mats[current] = np.array(rows)
            current, rows = line.split()[1], []
        elif line.strip():
            vals = [float(v) for v in line.split()]
            rows.append([complex(re, im) for re, im in zip(vals[::2], vals[1::2])])
    if current is not None:
        mats[current] = np.array(rows)
    if pl is None or set(mats) != {"h_br", "h_ru", "h_re"}:
        raise ChannelError("malformed channel dump")
    return ChannelSet(h_br=mats["h_br"], h_ru=mats["h_ru"][0], h_re=mats["h_re"][0],
                      pl_br=pl[0], pl_ru=pl[1], pl_re=pl[2])

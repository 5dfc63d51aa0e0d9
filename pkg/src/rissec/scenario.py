"""Experiment configuration: node geometry, unit conversions and the
immutable Scenario shared by every simulation stage."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml


class ScenarioError(ValueError):
    """Configuration failed to parse or violates a model constraint."""


# ---------------------------------------------------------------------------
# Geometry / unit helpers
# ---------------------------------------------------------------------------

def distance(a, b) -> float:
    """Euclidean distance in meters between two 2-D points."""
    ax, ay = a
    bx, by = b
    if not all(math.isfinite(v) for v in (ax, ay, bx, by)):
        raise ScenarioError("non-finite coordinates")
    return math.hypot(ax - bx, ay - by)


def path_loss(d: float, alpha: float) -> float:
    """Large-scale gain d^(-alpha). Singular at d = 0 (co-located nodes)."""
    if d <= 0.0:
        raise ScenarioError("co-located nodes unsupported (path loss singular at d=0)")
    return d ** (-alpha)


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------

_ATTACK_MODES = ("benign", "power-split", "element-split")
_DEFAULT_GRID = tuple(round(0.1 * k, 1) for k in range(11))


@dataclass(frozen=True)
class Attack:
    """Attack descriptor: what the compromised RIS does after onset.

    rho  -- fraction of reflected power kept for the UE (power-split mode)
    beta -- fraction of RIS elements kept for the UE (element-split mode)
    """
    mode: str = "benign"
    rho: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.mode not in _ATTACK_MODES:
            raise ScenarioError(f"attack.mode: unknown mode {self.mode!r}, expected one of {_ATTACK_MODES}")
        if self.mode == "power-split" and not (0.0 <= self.rho <= 1.0):
            raise ScenarioError(f"attack.rho: rho out of [0,1] (got {self.rho})")
        if self.mode == "element-split" and not (0.0 <= self.beta <= 1.0):
            raise ScenarioError(f"attack.beta: beta out of [0,1] (got {self.beta})")


@dataclass(frozen=True)
class Scenario:
    """Immutable experiment description. Safe to share across workers."""

    pos_bs: tuple = (0.0, 0.0)
    pos_ris: tuple = (50.0, 20.0)
    pos_ue: tuple = (75.0, 0.0)
    pos_eve: tuple = (50.0, -20.0)
    m: int = 4                    # BS antennas
    n: int = 32                   # RIS elements
    p_bs_db: float = 10.0         # transmit power, dB re 1 W
    sigma2_u: float = 1e-7        # UE noise power, W
    sigma2_e: float = 1e-7        # Eve noise power, W
    kappa: float = 5.0            # Rician factor
    alpha: float = 3.0            # path-loss exponent
    t_slots: int = 50             # total slots; attack onset at t_slots/2
    r_s: float = 1.0              # target secrecy rate, bps/Hz
    attack: Attack = field(default_factory=Attack)
    n_sim: int = 10000            # Monte Carlo trials per grid point
    n_bits_per_slot: int = 20000  # QPSK BER bits per slot
    seed: int = 1                 # 64-bit master seed
    los_mode: str = "steering-vector"   # or "all-ones"
    los_spacing: float = 0.5      # element spacing in wavelengths
    partition: str = "contiguous"       # element-split partition: contiguous | random
    leakage: str = "steered"            # power-split Eve leakage: steered | passive
    rho_grid: tuple = _DEFAULT_GRID
    beta_grid: tuple = _DEFAULT_GRID

    def __post_init__(self):
        _check(self.m >= 1, "M", "must be >= 1")
        _check(self.n >= 1, "N", "must be >= 1")
        _check(self.t_slots >= 2 and self.t_slots % 2 == 0, "T",
               "must be even and >= 2 (attack onset at T/2)")
        _check(self.sigma2_u > 0, "sigma2_u", "must be > 0")
        _check(self.sigma2_e > 0, "sigma2_e", "must be > 0")
        _check(self.alpha > 0, "alpha", "must be > 0")
        _check(self.kappa >= 0, "kappa", "must be >= 0")
        _check(self.n_sim >= 1, "n_sim", "must be >= 1")
        _check(self.n_bits_per_slot >= 2 and self.n_bits_per_slot % 2 == 0,
               "n_bits_per_slot", "must be even and >= 2")
        _check(self.los_mode in ("steering-vector", "all-ones"), "los_mode",
               "must be 'steering-vector' or 'all-ones'")
        _check(self.partition in ("contiguous", "random"), "partition",
               "must be 'contiguous' or 'random'")
        _check(self.leakage in ("steered", "passive"), "leakage",
               "must be 'steered' or 'passive'")
        for g, name in ((self.rho_grid, "rho_grid"), (self.beta_grid, "beta_grid")):
            _check(all(0.0 <= v <= 1.0 for v in g), name, "values must lie in [0,1]")

    # -- derived large-scale quantities ------------------------------------

    @property
    def p_bs(self) -> float:
        """Transmit power in linear watts."""
        return db_to_linear(self.p_bs_db)

    def distances(self) -> dict:
        return {
            "bs_ris": distance(self.pos_bs, self.pos_ris),
            "ris_ue": distance(self.pos_ris, self.pos_ue),
            "ris_eve": distance(self.pos_ris, self.pos_eve),
        }

    def path_losses(self) -> dict:
        d = self.distances()
        return {
            "bs_ris": path_loss(d["bs_ris"], self.alpha),
            "ris_ue": path_loss(d["ris_ue"], self.alpha),
            "ris_eve": path_loss(d["ris_eve"], self.alpha),
        }

    # -- (de)serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "pos_bs": list(self.pos_bs), "pos_ris": list(self.pos_ris),
            "pos_ue": list(self.pos_ue), "pos_eve": list(self.pos_eve),
            "M": self.m, "N": self.n, "p_bs_db": self.p_bs_db,
            "sigma2_u": self.sigma2_u, "sigma2_e": self.sigma2_e,
            "kappa": self.kappa, "alpha": self.alpha,
            "T": self.t_slots, "R_s": self.r_s,
            "attack": {"mode": self.attack.mode, "rho": self.attack.rho,
                       "beta": self.attack.beta},
            "n_sim": self.n_sim, "n_bits_per_slot": self.n_bits_per_slot,
            "seed": self.seed, "los_mode": self.los_mode,
            "los_spacing": self.los_spacing, "partition": self.partition,
            "leakage": self.leakage,
            "rho_grid": list(self.rho_grid), "beta_grid": list(self.beta_grid),
        }
        return d

    def with_attack(self, attack: Attack) -> "Scenario":
        return replace(self, attack=attack)


def _check(cond: bool, key: str, constraint: str):
    if not cond:
        raise ScenarioError(f"{key}: {constraint}")


# ---------------------------------------------------------------------------
# Presets and loading
# ---------------------------------------------------------------------------

# "paper-default" mirrors the published simulation-parameter table:
# BS (0,0), RIS (50,20), UE (75,0), Eve (50,-20); M=4; N=32; P_BS=10 dB;
# sigma^2 = 1e-7; kappa=5; alpha=3; T=50; R_s=1 bps/Hz.
PRESETS: dict = {
    "paper-default": {},   # Scenario defaults are exactly this preset
}

_KEY_ALIASES = {
    "M": "m", "N": "n", "T": "t_slots", "R_s": "r_s",
    "m": "m", "n": "n", "t": "t_slots", "rs": "r_s",
}


def list_presets() -> dict:
    """Name -> fully resolved Scenario for every named preset."""
    return {name: scenario_from_dict(cfg) for name, cfg in PRESETS.items()}


def scenario_from_dict(cfg: dict) -> Scenario:
    """Build a validated Scenario from a (possibly partial) mapping.

    Keys may use either field names or the conventional symbols M/N/T/R_s.
    Unknown keys are rejected so typos do not silently fall back to defaults.
    """
    if not isinstance(cfg, dict):
        raise ScenarioError(f"configuration must be a mapping, got {type(cfg).__name__}")
    kwargs = {}
    valid = set(Scenario.__dataclass_fields__)
    for key, value in cfg.items():
        name = _KEY_ALIASES.get(key, key)
        if name not in valid:
            raise ScenarioError(f"unknown configuration key {key!r}")
        kwargs[name] = value
    for pos_key in ("pos_bs", "pos_ris", "pos_ue", "pos_eve"):
        if pos_key in kwargs:
            p = kwargs[pos_key]
            if len(p) != 2:
                raise ScenarioError(f"{pos_key}: expected 2-D coordinates")
            kwargs[pos_key] = (float(p[0]), float(p[1]))
    if "attack" in kwargs and isinstance(kwargs["attack"], dict):
        kwargs["attack"] = Attack(**kwargs["attack"])
    for grid_key in ("rho_grid", "beta_grid"):
        if grid_key in kwargs:
            g = kwargs[grid_key]
            if isinstance(g, str):          # CLI form: "0,0.5,1"
                g = g.split(",")
            elif isinstance(g, (int, float)):
                g = (g,)
            kwargs[grid_key] = tuple(float(v) for v in g)
    try:
        return Scenario(**kwargs)
    except TypeError as exc:
        raise ScenarioError(str(exc)) from exc


def load_scenario(source, overrides: dict | None = None) -> Scenario:
    """Load a Scenario from a preset name, a YAML file path, or a mapping.

    `overrides` maps dotted keys (e.g. "attack.rho") to values and takes
    precedence over file/preset values.
    """
    if isinstance(source, Scenario):
        cfg = source.to_dict()
    elif isinstance(source, dict):
        cfg = dict(source)
    elif isinstance(source, (str, Path)):
        name = str(source)
        if name in PRESETS:
            cfg = dict(PRESETS[name])
        else:
            path = Path(name)
            if not path.exists():
                raise ScenarioError(f"no preset or config file named {name!r}")
            try:
                cfg = yaml.safe_load(path.read_text())
            except yaml.YAMLError as exc:
                raise ScenarioError(f"config parse failure: {exc}") from exc
            if cfg is None:
                cfg = {}
    else:
        raise ScenarioError(f"unsupported scenario source {type(source).__name__}")

    for dotted, value in (overrides or {}).items():
        _apply_override(cfg, dotted, value)
    return scenario_from_dict(cfg)


def _apply_override(cfg: dict, dotted: str, value):
    """Set cfg[a][b]... = value for dotted key "a.b"; strings parse as YAML scalars."""
    if isinstance(value, str):
        try:
            value = yaml.safe_load(value)
        except yaml.YAMLError:
            pass
    parts = dotted.split(".")
    node = cfg
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ScenarioError(f"override {dotted!r} does not address a mapping")
    node[parts[-1]] = value

"""Link-level Monte Carlo simulator for a RIS-assisted downlink whose RIS
hardware is partially compromised (power splitting or element splitting
toward an eavesdropper)."""

from rissec.scenario import Scenario, Attack, load_scenario, list_presets
from rissec.channel import ChannelSet, generate_channel_set
from rissec.precoding import joint_optimize, mrt_beamformer, cophase, effective_gain
from rissec.attacks import LinkRealization, apply_benign, apply_power_split, apply_element_split
from rissec.metrics import shannon_capacity, secrecy_capacity, secrecy_outage, qpsk_ber_simulate, q_function
from rissec.harness import SlotRecord, SweepResult, run_timeline, run_sweep, derive_trial_seed, write_csv

__all__ = [
    "Scenario", "Attack", "load_scenario", "list_presets",
    "ChannelSet", "generate_channel_set",
    "joint_optimize", "mrt_beamformer", "cophase", "effective_gain",
    "LinkRealization", "apply_benign", "apply_power_split", "apply_element_split",
    "shannon_capacity", "secrecy_capacity", "secrecy_outage", "qpsk_ber_simulate", "q_function",
    "SlotRecord", "SweepResult", "run_timeline", "run_sweep", "derive_trial_seed", "write_csv",
]

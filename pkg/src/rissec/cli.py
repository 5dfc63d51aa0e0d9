"""Command-line entry point.

Subcommands:
  presets        list named configurations with their resolved values
  run            execute one timeline and print per-slot records
  sweep          run a rho/beta sweep and write the results CSV
  dump-channels  write one channel realization to a text file
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from rissec.scenario import ScenarioError, load_scenario, list_presets
from rissec.channel import generate_channel_set, dump_channel_set
from rissec.harness import run_timeline, run_sweep, write_csv


def _add_scenario_args(p: argparse.ArgumentParser):
    p.add_argument("--preset", default=None, help="named preset (see 'presets')")
    p.add_argument("--config", default=None, help="YAML configuration file")
    p.add_argument("--seed", type=int, default=None, help="master RNG seed")
    p.add_argument("--set", dest="overrides", action="append", default=[],
                   metavar="KEY=VALUE",
                   help="override a scenario key (dotted keys allowed, e.g. attack.rho=0.5); repeatable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rissec",
        description="Monte Carlo simulator for a RIS-assisted downlink with "
                    "partially compromised RIS hardware")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("presets", help="list named scenario presets")

    p_run = sub.add_parser("run", help="run one timeline and print slot records")
    _add_scenario_args(p_run)

    p_sweep = sub.add_parser("sweep", help="sweep an attack parameter and write CSV")
    _add_scenario_args(p_sweep)
    p_sweep.add_argument("--axis", choices=("rho", "beta"), required=True)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--trials", type=int, default=None,
                         help="Monte Carlo trials per grid point (defaults to n_sim)")
    p_sweep.add_argument("--threads", type=int, default=1,
                         help="worker threads (results are thread-count independent)")

    p_dump = sub.add_parser("dump-channels", help="write one channel realization as text")
    _add_scenario_args(p_dump)
    p_dump.add_argument("--out", required=True, help="output path")
    return parser


def _load(args) -> "Scenario":
    overrides = {}
    for item in args.overrides:
        if "=" not in item:
            raise ScenarioError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key] = value
    if args.seed is not None:
        overrides["seed"] = args.seed
    source = args.config if args.config else (args.preset or "paper-default")
    return load_scenario(source, overrides)


def _cmd_presets() -> int:
    for name, scn in list_presets().items():
        print(f"{name}:")
        for key, value in scn.to_dict().items():
            print(f"  {key}: {value}")
    return 0


def _cmd_run(args) -> int:
    scn = _load(args)
    rng = np.random.default_rng(scn.seed)
    print("slot,attack_active,gamma_u,gamma_e,c_u,c_e,c_s,ber")
    for rec in run_timeline(scn, rng):
        print(f"{rec.slot},{int(rec.attack_active)},{rec.gamma_u:.9g},"
              f"{rec.gamma_e:.9g},{rec.c_u:.9g},{rec.c_e:.9g},"
              f"{rec.c_s:.9g},{rec.ber:.9g}")
    return 0


def _cmd_sweep(args) -> int:
    scn = _load(args)
    grid = scn.rho_grid if args.axis == "rho" else scn.beta_grid
    result = run_sweep(scn, args.axis, grid, n_sim=args.trials,
                       threads=args.threads)
    write_csv(result, args.out)
    print(f"wrote {args.out}: {len(result.points)} grid points x {result.n_sim} trials")
    return 0


def _cmd_dump_channels(args) -> int:
    scn = _load(args)
    rng = np.random.default_rng(scn.seed)
    dump_channel_set(generate_channel_set(scn, rng), args.out)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "presets":
            return _cmd_presets()
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "dump-channels":
            return _cmd_dump_channels(args)
        parser.error(f"unknown command {args.command!r}")
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command line front end.

Four subcommands: power-sweep, antenna-sweep, convergence, and single-drop.
The sweep commands write raw_rows.csv / aggregate.csv (plus trace.csv for
convergence runs) into --out; single-drop prints one trial's channels,
game trace, and payoffs for eyeballing.
"""

import argparse
import sys

import numpy as np

from . import coalitions
from .baselines import brute_force_secrecy_optimum, coalition_value_activation
from .channel import channel_vector
from .game import closest_antenna, payoff_reports, run_activation
from .geometry import sample_drop, uniform_layout
from .harness import (EXHAUSTIVE_LIMIT, METHODS, ExperimentConfig,
                      apply_overrides, config_from_ini, drop_seed,
                      run_antenna_sweep, run_convergence_study,
                      run_power_sweep, write_outputs)
from .secrecy import LinkBudget, SecrecyEvaluator


def _parse_floats(text: str) -> tuple:
    return tuple(float(piece) for piece in text.split(",") if piece.strip())


def _parse_ints(text: str) -> tuple:
    return tuple(int(piece) for piece in text.split(",") if piece.strip())


def _build_config(args, command: str) -> ExperimentConfig:
    config = config_from_ini(args.config) if args.config else ExperimentConfig()
    overrides = {
        "master_seed": args.seed,
        "trials": args.trials,
        "workers": args.workers,
        "out_dir": args.out,
        "n_antennas": args.antennas,
        "sa_steps": args.sa_steps,
        "sa_initial_temperature": args.sa_temperature,
        "timing": True if args.timing else None,
    }
    if args.methods is not None:
        overrides["methods"] = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if getattr(args, "powers", None) is not None:
        overrides["power_dbm_axis"] = _parse_floats(args.powers)
    if getattr(args, "antenna_counts", None) is not None:
        overrides["antenna_axis"] = _parse_ints(args.antenna_counts)
    power = getattr(args, "power", None)
    if power is not None:
        if command == "convergence":
            overrides["convergence_power_dbm"] = power
        else:
            overrides["power_dbm"] = power
    config = apply_overrides(config, **overrides)
    if config.out_dir is None and command != "single-drop":
        config = apply_overrides(config, out_dir=f"results/{command}")
    return config


def _print_summary(result, paths):
    by_point = {}
    for row in result.rows:
        key = (row.method, row.sweep_value)
        by_point.setdefault(key, []).append(row.secrecy_rate)
    print("mean secrecy rate by (method, sweep value):")
    for (method, sweep_value), values in sorted(by_point.items()):
        print(f"  {method:24s} {sweep_value:8.3f}  {sum(values) / len(values):10.5f}"
              f"  ({len(values)} trials)")
    for name, path in paths.items():
        print(f"wrote {name}: {path}")


def _cmd_power_sweep(args) -> int:
    config = _build_config(args, "power-sweep")
    result = run_power_sweep(config)
    _print_summary(result, write_outputs(result, config))
    return 0


def _cmd_antenna_sweep(args) -> int:
    config = _build_config(args, "antenna-sweep")
    result = run_antenna_sweep(config)
    _print_summary(result, write_outputs(result, config))
    return 0


def _cmd_convergence(args) -> int:
    config = _build_config(args, "convergence")
    result = run_convergence_study(config)
    _print_summary(result, write_outputs(result, config))
    return 0


def _cmd_single_drop(args) -> int:
    config = _build_config(args, "single-drop")
    scenario = config.scenario
    n = config.n_antennas
    power = config.power_dbm if getattr(args, "power", None) is None else args.power
    seq = drop_seed(config.master_seed, 0, args.trial)
    drop = sample_drop(scenario, np.random.default_rng(seq))
    layout = uniform_layout(scenario, n)
    bob_channels = channel_vector(scenario, layout, drop.bob)
    eve_channels = channel_vector(scenario, layout, drop.eve)
    budget = LinkBudget(power, scenario.noise_power_dbm)
    evaluator = SecrecyEvaluator(bob_channels, eve_channels, budget)

    print(f"seed {config.master_seed}, trial {args.trial}: "
          f"N={n}, P_t={power:g} dBm, noise {scenario.noise_power_dbm:g} dBm")
    print(f"  bob at ({drop.bob[0]:.4f}, {drop.bob[1]:+.4f}, 0)")
    print(f"  eve at ({drop.eve[0]:.4f}, {drop.eve[1]:+.4f}, 0)")
    print()
    print("   n     x_n      |h_bob|   arg_bob     |h_eve|   arg_eve")
    for i, x in enumerate(layout.positions_x):
        hb = bob_channels.coefficients[i]
        he = eve_channels.coefficients[i]
        print(f"  {i:2d}  {x:7.4f}  {abs(hb):.4e}  {np.angle(hb):+8.4f}"
              f"  {abs(he):.4e}  {np.angle(he):+8.4f}")
    print()

    start = closest_antenna(layout, drop.bob)
    rb, re = evaluator.link_rates(1 << start)
    print(f"initial antenna {start} (closest to bob): secrecy {rb - re:.6f}"
          f"  (bob {rb:.6f}, eve {re:.6f})")
    mask, trace = run_activation(evaluator, layout, drop.bob,
                                 max_cycles=config.max_cycles, cap=config.shapley_cap)
    print(f"payoff-driven activation ({'converged' if trace.converged else 'cycle cap hit'}, "
          f"{trace.cycles_used} cycles, {len(trace.steps)} antenna examinations):")
    for step in trace.steps:
        if step.action != "none":
            print(f"  cycle {step.cycle}: antenna {step.antenna} {step.action:5s} "
                  f"-> {{{', '.join(str(m) for m in coalitions.members(step.coalition))}}}"
                  f"  v={step.value:.6f}")
    rb, re = evaluator.link_rates(mask)
    print(f"  final coalition {sorted(coalitions.members(mask))}: secrecy {rb - re:.6f}"
          f"  (bob {rb:.6f}, eve {re:.6f})")
    print("  payoffs at the final coalition:")
    for report in payoff_reports(evaluator, mask, n, cap=config.shapley_cap):
        where = "in " if report.in_coalition else "out"
        print(f"    antenna {report.antenna:2d} [{where}] {report.kind:8s} {report.payoff:+.6f}")

    cv_mask, _ = coalition_value_activation(evaluator, layout, drop.bob,
                                            max_cycles=config.max_cycles)
    rb, re = evaluator.link_rates(cv_mask)
    print(f"value-driven activation: coalition {sorted(coalitions.members(cv_mask))} "
          f"secrecy {rb - re:.6f}")
    if n <= EXHAUSTIVE_LIMIT:
        best_mask, best_value, rb, re = brute_force_secrecy_optimum(
            bob_channels, eve_channels, budget)
        print(f"exhaustive optimum: coalition {sorted(coalitions.members(best_mask))} "
              f"secrecy {best_value:.6f}  (bob {rb:.6f}, eve {re:.6f})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinchsec",
        description="Monte Carlo secrecy-rate experiments for pinching-antenna "
                    "activation along a dielectric waveguide.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="INI config file")
    common.add_argument("--seed", type=int, metavar="U64", help="master seed")
    common.add_argument("--trials", type=int, metavar="N")
    common.add_argument("--workers", type=int, metavar="N", help="process pool size")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--methods", metavar="LIST",
                        help="comma separated subset of: " + ", ".join(METHODS))
    common.add_argument("--antennas", type=int, metavar="N",
                        help="antenna count for fixed-N studies")
    common.add_argument("--sa-steps", type=int, dest="sa_steps", metavar="N")
    common.add_argument("--sa-temperature", type=float, dest="sa_temperature", metavar="T")
    common.add_argument("--timing", action="store_true",
                        help="also write per-row wall times (timings.csv)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power-sweep", parents=[common],
                       help="secrecy rate vs transmit power")
    p.add_argument("--powers", metavar="LIST", help="dBm values, comma separated")
    p.set_defaults(entry=_cmd_power_sweep)

    p = sub.add_parser("antenna-sweep", parents=[common],
                       help="secrecy rate vs antenna count")
    p.add_argument("--antenna-counts", metavar="LIST", help="comma separated counts")
    p.add_argument("--power", type=float, metavar="DBM", help="fixed transmit power")
    p.set_defaults(entry=_cmd_antenna_sweep)

    p = sub.add_parser("convergence", parents=[common],
                       help="game trajectories vs the exhaustive optimum")
    p.add_argument("--power", type=float, metavar="DBM", help="fixed transmit power")
    p.set_defaults(entry=_cmd_convergence)

    p = sub.add_parser("single-drop", parents=[common],
                       help="print channels, trace, and payoffs for one trial")
    p.add_argument("--power", type=float, metavar="DBM", help="transmit power")
    p.add_argument("--trial", type=int, default=0, metavar="N")
    p.set_defaults(entry=_cmd_single_drop)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.entry(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Desk-scale power sweep comparing the four activation methods.

Forty drops per power point keeps this under half a minute; the shipped
defaults (500 trials, 20 antennas) are what the CLI runs.
"""

from pinchsec import ExperimentConfig, aggregate_rows, run_power_sweep


def main():
    config = ExperimentConfig(trials=40, n_antennas=10, master_seed=7)
    result = run_power_sweep(config)

    records = aggregate_rows(result.rows)
    methods = sorted({r["method"] for r in records})
    powers = sorted({r["sweep_value"] for r in records})
    table = {(r["method"], r["sweep_value"]): r for r in records}

    print(f"mean secrecy rate [bits/s/Hz], {config.trials} drops, "
          f"{config.n_antennas} antennas")
    print(f"{'P_t [dBm]':>10}" + "".join(f"{m:>26}" for m in methods))
    for p in powers:
        cells = "".join(f"{table[m, p]['secrecy_mean']:>20.3f} "
                        f"({table[m, p]['secrecy_se']:.3f})" for m in methods)
        print(f"{p:>10.0f}{cells}")

    print()
    sizes = {m: table[m, powers[-1]]["coalition_size_mean"] for m in methods}
    print("mean active antennas at the top power: "
          + ", ".join(f"{m} {sizes[m]:.1f}" for m in methods))


if __name__ == "__main__":
    main()

"""How close does the activation game get to the exhaustive optimum?

Runs a small convergence study, prints the achieved-to-optimum ratio
distribution and the scan trajectory of one sample drop.
"""

import math
import statistics

from pinchsec import ExperimentConfig, run_convergence_study


def main():
    config = ExperimentConfig(trials=30, n_antennas=10, convergence_power_dbm=20.0,
                              master_seed=99)
    result = run_convergence_study(config)

    ratios = [r.optimum_ratio for r in result.rows
              if r.method == "shapley" and math.isfinite(r.optimum_ratio)]
    iterations = [r.iterations for r in result.rows if r.method == "shapley"]
    print(f"{config.trials} drops, {config.n_antennas} antennas, "
          f"reference: {result.reference_method}")
    print(f"payoff-driven vs optimum: mean ratio {statistics.mean(ratios):.3f}, "
          f"median {statistics.median(ratios):.3f}, "
          f"range [{min(ratios):.3f}, {max(ratios):.3f}]")
    print(f"scan steps per drop: median {statistics.median(iterations):.0f} "
          f"(one step = one antenna examined)")

    exact = sum(1 for r in ratios if r > 1 - 1e-9)
    print(f"drops where the game found the optimum itself: {exact}/{len(ratios)}")

    print()
    print("trajectory of drop 0 (payoff-driven):")
    for row in result.trace_rows:
        if row["method"] == "shapley" and row["trial"] == 0 and row["action"] != "none":
            print(f"  cycle {row['cycle']}: antenna {row['antenna']:2d} "
                  f"{row['action']:5s} -> size {row['coalition_size']}, "
                  f"value {row['value']:+.4f}")
    final = [r for r in result.rows if r.method == "shapley" and r.trial == 0][0]
    best = [r for r in result.rows if r.method == result.reference_method
            and r.trial == 0][0]
    print(f"  finished at secrecy {final.secrecy_rate:+.4f}; "
          f"optimum is {best.secrecy_rate:+.4f}")


if __name__ == "__main__":
    main()

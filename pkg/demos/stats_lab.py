"""Run the statistics lab and print the report card.

The lab checks the probabilistic facts the samplers lean on: bin sizes
concentrate around 2^n/p, per-bin products stay near their expectation,
random residue hashing rarely merges distinct subset values, birthday
collisions appear at the square-root scale, and random half-splits leave a
planted solution balanced often enough to retry. One check is an exhaustive
bound verification rather than a simulation.

Run:  python3 demos/stats_lab.py [trials]
"""

import sys

from sumbins.statslab import run_default_suite


def main() -> None:
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 240
    reports = run_default_suite(seed=0, trials=trials)

    name_w = max(len(r.name) for r in reports)
    print(f"{'check':<{name_w}}  {'trials':>6}  {'estimate':>12}  {'bound':>12}  verdict")
    for r in reports:
        # Which side of the bound counts as good depends on the check (a
        # dense hashing regime is supposed to collide a lot), so the verdict
        # column just reports the check's own pass flag.
        err = f" +- {r.std_error:.4f}" if r.std_error else ""
        print(
            f"{r.name:<{name_w}}  {r.trials:>6}  {r.estimate:>12.5g}  "
            f"{r.bound:>12.5g}  {'pass' if r.passed else 'FAIL'}{err}"
        )
    failed = [r.name for r in reports if not r.passed]
    print()
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        sys.exit(1)
    print(f"all {len(reports)} checks passed (seed 0, {trials} trials)")


if __name__ == "__main__":
    main()

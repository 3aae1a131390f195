"""The exponent curves behind the solver routing, plotted in the terminal.

For a solution using ratio l of the items, each engine has a cost exponent
gamma(l): run time scales like 2^(gamma n). The driver picks whichever
curve is lower at the instance's ratio, so the crossover ratios printed
here are exactly the routing thresholds in the shifted-sums dispatcher.

Run:  python3 demos/cost_landscape.py
"""

from sumbins.costmodel import (
    crossovers,
    curve_points,
    gamma_classical_shifted,
    gamma_quantum_shifted,
    worst_case_classical_shifted,
    worst_case_quantum_shifted,
)

WIDTH = 64
HEIGHT = 16


def ascii_plot(kinds: list[str]) -> None:
    grid = [[" "] * WIDTH for _ in range(HEIGHT)]
    marks = "xo+*"
    top = 1.0
    for mark, kind in zip(marks, kinds):
        for l, g in curve_points(kind, step=1.0 / (WIDTH * 4)):
            col = min(WIDTH - 1, int(l * WIDTH))
            row = min(HEIGHT - 1, int((top - g) / top * (HEIGHT - 1)))
            grid[row][col] = mark
    print(f"  gamma (0 .. {top:.0f}) vertical, ratio l (0 .. 1) horizontal")
    for row in grid:
        print("  |" + "".join(row))
    print("  +" + "-" * WIDTH)
    for mark, kind in zip(marks, kinds):
        print(f"   {mark} = {kind}")


def main() -> None:
    print("best-achievable curves (lower envelope of the engines):")
    ascii_plot(["shifted_classical", "shifted_quantum", "equal_min_quantum"])
    print()

    cx = crossovers()
    print("routing thresholds (residue binning beats meet-in-the-middle between them):")
    print(f"  classical: l in [{cx['classical_l1']:.9f}, {cx['classical_l2']:.9f}]")
    print(f"  quantum:   l in [{cx['quantum_l1']:.9f}, {cx['quantum_l2']:.9f}]")
    print(f"  equal-sums free-bin flank starts at {cx['equal_min_l1']:.9f}")
    print()

    l, g = worst_case_classical_shifted()
    print(f"classical worst case: gamma = {g:.6f} at l = {l:.6f}")
    l, g = worst_case_quantum_shifted()
    print(f"quantum worst case:   gamma = {g:.6f} at l = {l:.6f}")
    print()

    # Spot values, the kind of numbers worth sanity-checking by hand.
    for l in (0.25, 0.5, 0.75):
        print(
            f"  l = {l:.2f}: classical {gamma_classical_shifted(l):.4f},"
            f" quantum {gamma_quantum_shifted(l):.4f}"
        )


if __name__ == "__main__":
    main()

"""Compare composition routes against a 50-digit reference near light speed.

    python scripts/boundary_stability.py [--kmin 8] [--kmax 15]

Prints one row per operand pair on the grid +-(1 - 10**-k) with the absolute
error of the literal formula, the rapidity route and the gap-aware route.
"""

import argparse

from rapidity.verify import route_errors, stability_grid


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--kmin", type=int, default=8)
    parser.add_argument("--kmax", type=int, default=15)
    args = parser.parse_args()

    grid = stability_grid(range(args.kmin, args.kmax + 1))
    print(f"{'u':>24} {'v':>24} {'naive':>10} {'rapidity':>10} {'gap-aware':>10}")
    wins = 0
    for u in grid:
        for v in grid:
            e = route_errors(u, v)
            wins += e.rapidity <= e.naive
            print(
                f"{u:>24.17g} {v:>24.17g} {float(e.naive):>10.2e} "
                f"{float(e.rapidity):>10.2e} {float(e.gap_aware):>10.2e}"
            )
    print(f"rapidity route at least as accurate in {wins}/{len(grid) ** 2} pairs")


if __name__ == "__main__":
    main()

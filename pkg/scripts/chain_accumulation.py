"""Repeated boosts: how the SR velocity saturates while rapidity grows linearly.

    python scripts/chain_accumulation.py [--dv 0.1] [--steps 1 10 100 1000]
"""

import argparse

from rapidity.chain import boost_chain, newton_chain
from rapidity.maps import alpha
from rapidity.velocity import NewtonVelocity, Velocity


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dv", type=float, default=0.1)
    parser.add_argument("--steps", type=int, nargs="+", default=[1, 10, 30, 100, 300, 1000])
    args = parser.parse_args()

    dv = Velocity(args.dv)
    print(f"{'n':>6} {'sr_beta':>20} {'1 - sr_beta':>12} {'newton':>10} {'rapidity':>10}")
    for n in args.steps:
        u = boost_chain(dv, n)
        print(
            f"{n:>6} {u.beta:>20.17f} {u.gap:>12.3e} "
            f"{newton_chain(NewtonVelocity(args.dv), n).value:>10.4g} "
            f"{n * alpha(dv).value:>10.4g}"
        )


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Sweep the marker tilt of the quantitative-erasure experiment.

Emits the path/interference trade-off curve as CSV: the sharper the path
marking (small tilt), the weaker the interference marginal, and vice
versa, with D^2 + V_e^2 pinned to 1 throughout. Feed the output to any
plotting tool:

    python scripts/duality_sweep.py --steps 181 > tradeoff.csv
"""

import argparse
import math
import sys

from mzpovm import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=91)
    parser.add_argument("--delta", type=float, default=-math.pi / 2)
    args = parser.parse_args()
    return cli.main(
        [
            "sweep",
            "--experiment", "quantitative",
            "--delta", repr(args.delta),
            "--param", "theta",
            "--from", "0",
            "--to", repr(math.pi / 2),
            "--steps", str(args.steps),
        ]
    )


if __name__ == "__main__":
    sys.exit(main())

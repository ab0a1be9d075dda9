#!/usr/bin/env python3
"""Regenerate core/data/sobol_directions.txt from the Joe-Kuo (new-joe-kuo-6.21201)
direction numbers shipped with SciPy.

Line format (one per dimension, '#' starts a comment):

    <dimension> <degree> <coefficient-mask> <m_1> ... <m_degree>

Dimension 1 is the van der Corput dimension and has degree 0 and no initial
direction integers.
"""

import argparse
import os

import numpy as np
import scipy.stats


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--dims", type=int, default=64)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "core", "data",
                                                  "sobol_directions.txt"))
    args = ap.parse_args()

    npz = np.load(os.path.join(os.path.dirname(scipy.stats.__file__), "_sobol_direction_numbers.npz"))
    poly, vinit = npz["poly"], npz["vinit"]

    lines = [
        "# Sobol direction numbers, Joe & Kuo (2008), new-joe-kuo-6.21201.",
        "# dimension degree coefficient_mask m_1 .. m_degree",
        "1 0 0",
    ]
    for d in range(1, args.dims):
        p = int(poly[d])
        degree = p.bit_length() - 1
        mask = (p >> 1) & ((1 << (degree - 1)) - 1)
        ms = " ".join(str(int(m)) for m in vinit[d][:degree])
        lines.append(f"{d + 1} {degree} {mask} {ms}")

    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

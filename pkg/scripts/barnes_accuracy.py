"""Absolute error of log_barnes_g against mpmath over a log-spaced grid.

Shows where double precision stops supporting an absolute 1e-11 target
(the value itself grows like x^2 log x / 2).
"""

import argparse
import csv
import sys

import mpmath
import numpy as np

from coulomb_sphere import log_barnes_g


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--lo", type=float, default=0.5)
    p.add_argument("--hi", type=float, default=1e4)
    p.add_argument("--points", type=int, default=200)
    a = p.parse_args(argv)
    mpmath.mp.dps = 40
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["x", "log_G", "abs_error", "rel_error"])
    for x in np.geomspace(a.lo, a.hi, a.points):
        ref = mpmath.log(mpmath.barnesg(mpmath.mpf(float(x))))
        got = log_barnes_g(float(x))
        err = abs(got - float(ref))
        w.writerow([f"{x:.17g}", f"{got:.17g}", f"{err:.3e}",
                    f"{err / max(abs(float(ref)), 1e-300):.3e}"])


if __name__ == "__main__":
    main()

"""Errors of the origin, bulk and infinity norm predictors as N grows.

    python scripts/predictor_decay.py --measure spherical --out decay.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from coulomb_sphere import ChargedEnsemble, log_norm, parse_measure
from coulomb_sphere.norms import (predicted_log_norm_bulk, predicted_log_norm_infinity,
                                  predicted_log_norm_origin)


@dataclass
class DecayConfig:
    measure: str = "spherical"
    charge: float = 0.7
    N_grid: list = field(default_factory=lambda: [50, 100, 200, 400, 800, 1600])
    out: str | None = None


def rows(cfg: DecayConfig):
    m = parse_measure(cfg.measure)
    for N in cfg.N_grid:
        e_c = ChargedEnsemble(m, N, 0.0, cfg.charge)
        e_a = ChargedEnsemble(m, N, cfg.charge, 0.0)
        origin = predicted_log_norm_origin(e_c, 0) - log_norm(e_c, 0).log_value
        bulk = predicted_log_norm_bulk(e_c, N // 2) - log_norm(e_c, N // 2).log_value
        inf = predicted_log_norm_infinity(e_a, N - 1) - log_norm(e_a, N - 1).log_value
        yield N, origin, bulk, inf


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    d = DecayConfig()
    p.add_argument("--measure", default=d.measure)
    p.add_argument("--charge", type=float, default=d.charge)
    p.add_argument("--N-grid", dest="N_grid", default=None)
    p.add_argument("--out", default=None)
    a = p.parse_args(argv)
    cfg = DecayConfig(a.measure, a.charge,
                      [int(x) for x in a.N_grid.split(",")] if a.N_grid else d.N_grid, a.out)
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["N", "origin_error", "bulk_error", "infinity_error"])
    for N, o, b, i in rows(cfg):
        w.writerow([N, f"{o:.17g}", f"{b:.17g}", f"{i:.17g}"])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()

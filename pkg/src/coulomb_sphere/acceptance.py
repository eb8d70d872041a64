"""Acceptance checks shared by the test-suite and ``coulomb-sphere verify``.

Each check returns a CriterionResult; tolerances and runtime budgets are
fixed here.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .expansion import (coefficients, evaluate, fit_coefficients, residual_sweep,
                        spherical_example_coefficients)
from .free_energy import (Geometry, log_z_exact, log_z_spherical_closed_form,
                          to_sphere_geometry)
from .measure import functionals, mixture, scaled, spherical
from .norms import (ChargedEnsemble, Kind, log_norm, predicted_log_norm_bulk,
                    predicted_log_norm_infinity, predicted_log_norm_origin)
from .specfun import log_barnes_g, zeta_prime_minus_one

CHARGES_3 = (0.0, 0.5, 1.7)
CHARGES_4 = (0.0, 0.5, 1.0, 1.7)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f} s)"


def beta_log_norm(ens: ChargedEnsemble, j: int) -> float:
    """Gamma-ratio closed form of log h_j for the spherical background."""
    if ens.kind is Kind.DET:
        return (math.lgamma(j + ens.c + 1.0) + math.lgamma(ens.N + ens.alpha - j)
                - math.lgamma(ens.n))
    n2 = 2.0 * ens.n
    return (math.lgamma(j + 2.0 * ens.c + 1.0) + math.lgamma(n2 - j - 2.0 * ens.c - 1.0)
            - math.lgamma(n2))


def _timed(number: int, name: str, budget: float | None, body: Callable[[], tuple]):
    t0 = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t0
    if budget is not None and dt > budget:
        ok = False
        detail += f"; runtime {dt:.1f} s exceeds {budget:.0f} s"
    return CriterionResult(number, name, bool(ok), detail, dt)


def criterion_1() -> CriterionResult:
    def body():
        sp = spherical()
        worst = 0.0
        count = 0
        for kind, a, c in itertools.product(Kind, CHARGES_3, CHARGES_3):
            ens = ChargedEnsemble(sp, 64, a, c, kind)
            for j in range(ens.num_indices):
                exact = beta_log_norm(ens, j)
                worst = max(worst, abs(log_norm(ens, j).log_value - exact) / abs(exact))
                count += 1
        return worst <= 1e-10, f"max rel err {worst:.2e} over {count} norms (tol 1e-10)"
    return _timed(1, "Beta-function norm oracle", 10.0, body)


def criterion_2() -> CriterionResult:
    def body():
        sp = spherical()
        worst = 0.0
        for kind, a, c in itertools.product(Kind, CHARGES_3, CHARGES_3):
            for N in list(range(1, 33)) + [64, 128]:
                exact = log_z_exact(ChargedEnsemble(sp, N, a, c, kind)).log_z
                worst = max(worst, abs(exact - log_z_spherical_closed_form(N, a, c, kind)))
        return worst <= 1e-8, f"max abs err {worst:.2e} (tol 1e-8)"
    return _timed(2, "Partition-function oracle", 30.0, body)


def criterion_3() -> CriterionResult:
    def body():
        f = functionals(spherical())
        worst = 0.0
        exact_ok = True
        for kind, a, c in itertools.product(Kind, CHARGES_4, CHARGES_4):
            co = coefficients(f, a, c, kind)
            ref = spherical_example_coefficients(a, c, kind)
            worst = max(worst, max(abs(x - y) for x, y in zip(co.values, ref)))
            if kind is Kind.DET:
                exact_ok &= co.c2 == 0.5 and co.c4 == (a**2 + c**2) / 2.0 + 1.0 / 3.0
            else:
                exact_ok &= co.c2 == 0.5 and co.c4 == a**2 + a / 2.0 + c**2 + c / 2.0 + 5.0 / 12.0
        ok = worst <= 1e-12 and exact_ok
        return ok, f"max coefficient diff {worst:.2e} (tol 1e-12); C2/C4, D2/D4 exact: {exact_ok}"
    return _timed(3, "Coefficients vs spherical closed-form expansion", None, body)


def criterion_4() -> CriterionResult:
    def body():
        f = functionals(spherical())
        parts = []
        ok = True
        for kind in Kind:
            co = coefficients(f, 0.0, 0.0, kind)
            r = {N: log_z_spherical_closed_form(N, 0.0, 0.0, kind) - evaluate(co, N)
                 for N in (100, 200, 400)}
            q1, q2 = r[200] / r[100], r[400] / r[200]
            scaled_r = abs(r[400]) * 400
            ok &= 0.35 <= q1 <= 0.65 and 0.35 <= q2 <= 0.65 and scaled_r <= 10.0
            parts.append(f"{kind.value}: ratios {q1:.4f}, {q2:.4f}, 400|r(400)| = {scaled_r:.4f}")
        return ok, "; ".join(parts)
    return _timed(4, "O(1/N) residual law (spherical)", 5.0, body)


FIT_GRID = tuple(range(50, 401, 25))


def criterion_5() -> CriterionResult:
    def body():
        m = mixture(0.5, 2.0)
        template = ChargedEnsemble(m, 50, 0.0, 0.0, Kind.DET)
        co = coefficients(functionals(m), 0.0, 0.0, Kind.DET)
        rep = residual_sweep(template, [50, 100, 200, 400], fit=False, coeffs=co)
        mags = [abs(r) for r in rep.residual]
        decreasing = all(b < a for a, b in zip(mags, mags[1:]))
        fit_rep = residual_sweep(template, FIT_GRID, fit=True, coeffs=co)
        fitted = fit_rep.fitted_constants
        errs = [abs(fitted[i] - co.values[i]) for i in range(3)]
        ok = decreasing and errs[0] <= 1e-4 and errs[1] <= 1e-3 and errs[2] <= 1e-2
        detail = (f"|residual| {', '.join(f'{x:.3e}' for x in mags)} decreasing={decreasing}; "
                  f"fit errors C1 {errs[0]:.1e} (1e-4), C2 {errs[1]:.1e} (1e-3), "
                  f"C3 {errs[2]:.1e} (1e-2); fitted C5 {fitted[4]:.5f} vs {co.c5:.5f} (reported)")
        return ok, detail
    return _timed(5, "General-measure expansion check (mixture)", 120.0, body)


def criterion_6() -> CriterionResult:
    def body():
        sp = spherical()
        err = {}
        for N in (100, 400):
            e_c = ChargedEnsemble(sp, N, 0.0, 0.7)
            e_a = ChargedEnsemble(sp, N, 0.7, 0.0)
            err["origin", N] = abs(predicted_log_norm_origin(e_c, 0) - log_norm(e_c, 0).log_value)
            err["bulk", N] = abs(predicted_log_norm_bulk(e_c, N // 2)
                                 - log_norm(e_c, N // 2).log_value)
            err["infinity", N] = abs(predicted_log_norm_infinity(e_a, N - 1)
                                     - log_norm(e_a, N - 1).log_value)
        f_o = err["origin", 100] / err["origin", 400]
        f_b = err["bulk", 100] / err["bulk", 400]
        f_i = err["infinity", 100] / err["infinity", 400]
        ok = (err["origin", 400] <= 0.02 and f_o >= 1.7 and f_b >= 3.0
              and err["infinity", 400] <= 0.02 and f_i >= 1.7)
        detail = (f"origin err(400) {err['origin', 400]:.2e}, shrink {f_o:.2f}; "
                  f"bulk shrink {f_b:.2f}; infinity err(400) {err['infinity', 400]:.2e}, "
                  f"shrink {f_i:.2f}")
        return ok, detail
    return _timed(6, "Regime-predictor decay", None, body)


def criterion_7() -> CriterionResult:
    def body():
        grid = np.linspace(0.5, 50.0, 1981)
        rec = max(abs(log_barnes_g(x + 1.0) - log_barnes_g(x) - math.lgamma(x)) for x in grid)
        g32 = abs(log_barnes_g(1.5) - (math.log(2.0) / 24.0 + 1.5 * zeta_prime_minus_one()
                                       + 0.25 * math.log(math.pi)))
        integer = max(
            abs(log_barnes_g(n) - math.fsum(math.lgamma(k + 1.0) for k in range(1, n - 1)))
            for n in range(1, 31))
        ok = rec <= 1e-11 and g32 <= 1e-11 and integer <= 1e-11
        return ok, f"recursion {rec:.1e}, G(3/2) {g32:.1e}, integers {integer:.1e} (tol 1e-11)"
    return _timed(7, "Special-function suite", None, body)


def criterion_8() -> CriterionResult:
    def body():
        base = functionals(spherical())
        worst = 0.0
        for a in (0.5, 2.0, 5.0):
            f = functionals(scaled(a))
            la = math.log(a)
            worst = max(worst,
                        abs(f.energy - (base.energy + la)),
                        abs(f.entropy - (base.entropy - 2.0 * la)),
                        abs(f.u_zero - (base.u_zero - la)),
                        abs(f.rho0 - base.rho0 / a**2),
                        abs(f.rho_tilde0 - base.rho_tilde0 * a**2),
                        abs(f.curvature_integral - base.curvature_integral))
        curv = abs(base.curvature_integral + 2.0)
        ok = worst <= 1e-9 and curv <= 1e-9
        return ok, f"max covariance defect {worst:.1e}, |K(spherical)+2| {curv:.1e} (tol 1e-9)"
    return _timed(8, "Measure-functional covariance", None, body)


def criterion_9() -> CriterionResult:
    def body():
        sp = spherical()
        ok = True
        for kind, N in itertools.product(Kind, (1, 2, 7)):
            plane = log_z_exact(ChargedEnsemble(sp, N, 0.0, 0.0, kind))
            sphere = to_sphere_geometry(plane)
            const = (N * (N - 1) if kind is Kind.DET else 2 * N * N) * math.log(2.0)
            ok &= sphere.geometry is Geometry.SPHERE and sphere.log_z == plane.log_z + const
        return ok, "sphere log Z == plane log Z + offset, bitwise, N in {1, 2, 7}, both kinds"
    return _timed(9, "Geometry conversion", None, body)


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def run_all(numbers=None) -> list[CriterionResult]:
    numbers = sorted(CRITERIA) if numbers is None else numbers
    return [CRITERIA[k]() for k in numbers]

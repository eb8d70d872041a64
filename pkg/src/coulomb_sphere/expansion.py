"""Five-term large-N expansions of log Z and residuals against exact values.

    log Z = k1 N^2 + k2 N log N + k3 N + k4 log N + k5 + o(1)

with (k1..k5) = (C1..C5) for the determinantal gas and (D1..D5) for the
Pfaffian gas, all built from the measure functionals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .free_energy import log_z_exact
from .measure import MeasureFunctionals, functionals
from .norms import ChargedEnsemble, Kind
from .specfun import log_barnes_g, zeta_prime_minus_one

_LOG_2PI = math.log(2.0 * math.pi)
_LOG_4PI = math.log(4.0 * math.pi)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients k1..k5; each equals the fsum of its breakdown entries.

    For Pfaffian ensembles the slots hold D1..D5 and the breakdown keys are
    'd1'..'d5'.
    """

    kind: Kind
    alpha: float
    c: float
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    breakdown: dict = field(default_factory=dict, compare=False)

    @property
    def values(self) -> tuple:
        return (self.c1, self.c2, self.c3, self.c4, self.c5)

    @property
    def names(self) -> tuple:
        p = "c" if self.kind is Kind.DET else "d"
        return tuple(f"{p}{i}" for i in range(1, 6))

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))


@dataclass(frozen=True)
class ResidualReport:
    N_grid: list
    exact: list
    predicted: list
    residual: list
    fitted_constants: Optional[tuple] = None


def _build(kind: Kind, alpha: float, c: float, parts: dict) -> ExpansionCoefficients:
    vals = [math.fsum(parts[k].values()) for k in sorted(parts)]
    return ExpansionCoefficients(kind, alpha, c, *vals, breakdown=parts)


def det_coefficients(f: MeasureFunctionals, alpha: float, c: float) -> ExpansionCoefficients:
    I, E, U0 = f.energy, f.entropy, f.u_zero
    s1 = alpha + c + 1.0
    parts = {
        "c1": {"energy": -I},
        "c2": {"constant": 0.5},
        "c3": {
            "gaussian": 0.5 * _LOG_2PI - 1.0,
            "energy": -2.0 * s1 * I,
            "entropy": -0.5 * E,
            "point_charge": -2.0 * c * U0,
        },
        "c4": {"point_charge": (alpha**2 + c**2) / 2.0, "constant": 1.0 / 3.0},
        "c5": {
            "energy": -s1**2 * I,
            "entropy": -s1 * 0.5 * E,
            "point_charge": -s1 * 2.0 * c * U0,
            "density_origin": 0.5 * (c * c + c + 1.0 / 3.0) * math.log(f.rho0),
            "density_infinity": 0.5 * (alpha**2 + alpha + 1.0 / 3.0) * math.log(f.rho_tilde0),
            "gaussian": 0.5 * s1 * (_LOG_2PI - 1.0),
            "zeta": 2.0 * zeta_prime_minus_one(),
            "barnes": -(log_barnes_g(c + 1.0) + log_barnes_g(alpha + 1.0)),
            "constant": -5.0 / 12.0,
            "curvature": -f.curvature_integral / 6.0,
        },
    }
    return _build(Kind.DET, alpha, c, parts)


def pfaff_coefficients(f: MeasureFunctionals, alpha: float, c: float) -> ExpansionCoefficients:
    I, E, U0 = f.energy, f.entropy, f.u_zero
    s1 = alpha + c + 1.0
    parts = {
        "d1": {"energy": -2.0 * I},
        "d2": {"constant": 0.5},
        "d3": {
            "gaussian": 0.5 * _LOG_4PI - 1.0,
            "energy": -4.0 * s1 * I,
            "entropy": -0.5 * E,
            "point_charge": -(4.0 * c + 1.0) * U0,
        },
        "d4": {"point_charge": alpha**2 + alpha / 2.0 + c**2 + c / 2.0,
               "constant": 5.0 / 12.0},
        "d5": {
            "energy": -2.0 * s1**2 * I,
            "entropy": -s1 * 0.5 * E,
            "point_charge": -s1 * (4.0 * c + 1.0) * U0,
            "density_origin": (c * c + c + 5.0 / 24.0) * math.log(f.rho0),
            "density_infinity": (alpha**2 + alpha + 5.0 / 24.0) * math.log(f.rho_tilde0),
            "gaussian": s1 * (_LOG_2PI - 0.5),
            "zeta": 4.0 * zeta_prime_minus_one(),
            "barnes": -(log_barnes_g(c + 1.0) + log_barnes_g(c + 1.5)
                        + log_barnes_g(alpha + 1.0) + log_barnes_g(alpha + 1.5)),
            "constant": -5.0 / 24.0,
            "curvature": -f.curvature_integral / 12.0,
        },
    }
    return _build(Kind.PFAFF, alpha, c, parts)


def coefficients(f: MeasureFunctionals, alpha: float, c: float, kind) -> ExpansionCoefficients:
    if Kind(kind) is Kind.DET:
        return det_coefficients(f, alpha, c)
    return pfaff_coefficients(f, alpha, c)


def _basis(N: float) -> tuple:
    logN = math.log(N)
    return (N * N, N * logN, float(N), logN, 1.0)


def evaluate(coeffs: ExpansionCoefficients, N: int) -> float:
    if N < 1:
        raise ValueError("N must be >= 1")
    return math.fsum(k * b for k, b in zip(coeffs.values, _basis(N)))


def evaluate_n_form(f: MeasureFunctionals, alpha: float, c: float, N: int, kind) -> float:
    """Same expansion with energy and entropy grouped on powers of n = N+alpha+c+1.

    The constant carries (alpha+c+1)(log(2 pi) - 1)/2 (det) or
    (alpha+c+1)(log(2 pi) - 1/2) (Pfaffian), so that expanding n recovers
    evaluate() term by term.
    """
    kind = Kind(kind)
    if N < 1:
        raise ValueError("N must be >= 1")
    I, E, U0 = f.energy, f.entropy, f.u_zero
    s1 = alpha + c + 1.0
    n = N + s1
    logN = math.log(N)
    lr0, lrt = math.log(f.rho0), math.log(f.rho_tilde0)
    if kind is Kind.DET:
        terms = [
            -I * n * n,
            0.5 * N * logN,
            -(0.5 * E + 2.0 * c * U0) * n,
            (0.5 * _LOG_2PI - 1.0) * N,
            ((alpha**2 + c**2) / 2.0 + 1.0 / 3.0) * logN,
            0.5 * (c * c + c + 1.0 / 3.0) * lr0,
            0.5 * (alpha**2 + alpha + 1.0 / 3.0) * lrt,
            0.5 * s1 * (_LOG_2PI - 1.0),
            2.0 * zeta_prime_minus_one(),
            -(log_barnes_g(c + 1.0) + log_barnes_g(alpha + 1.0)),
            -5.0 / 12.0,
            -f.curvature_integral / 6.0,
        ]
    else:
        terms = [
            -2.0 * I * n * n,
            0.5 * N * logN,
            -(0.5 * E + (4.0 * c + 1.0) * U0) * n,
            (0.5 * _LOG_4PI - 1.0) * N,
            (alpha**2 + alpha / 2.0 + c**2 + c / 2.0 + 5.0 / 12.0) * logN,
            (c * c + c + 5.0 / 24.0) * lr0,
            (alpha**2 + alpha + 5.0 / 24.0) * lrt,
            s1 * (_LOG_2PI - 0.5),
            4.0 * zeta_prime_minus_one(),
            -(log_barnes_g(c + 1.0) + log_barnes_g(c + 1.5)
              + log_barnes_g(alpha + 1.0) + log_barnes_g(alpha + 1.5)),
            -5.0 / 24.0,
            -f.curvature_integral / 12.0,
        ]
    return math.fsum(terms)


def spherical_example_coefficients(alpha: float, c: float, kind) -> tuple:
    """Coefficients of the induced spherical ensemble expansion, written out
    directly from the Barnes-G / Gamma asymptotics (no measure functionals)."""
    kind = Kind(kind)
    s = alpha + c
    zp = zeta_prime_minus_one()
    G = log_barnes_g
    if kind is Kind.DET:
        return (
            -0.5,
            0.5,
            0.5 * _LOG_2PI - 1.0 - s,
            (alpha**2 + c**2) / 2.0 + 1.0 / 3.0,
            0.5 * _LOG_2PI - 1.0 / 12.0 + 2.0 * zp - 0.5 * s * (s + 1.0 - _LOG_2PI)
            - (G(alpha + 1.0) + G(c + 1.0)),
        )
    return (
        -1.0,
        0.5,
        0.5 * _LOG_4PI - 2.0 - 2.0 * s,
        alpha**2 + alpha / 2.0 + c**2 + c / 2.0 + 5.0 / 12.0,
        _LOG_2PI - 13.0 / 24.0 + 4.0 * zp - 0.5 * s * (2.0 * s + 3.0 - 2.0 * _LOG_2PI)
        - (G(alpha + 1.0) + G(alpha + 1.5) + G(c + 1.0) + G(c + 1.5)),
    )


def spherical_example_expansion(N: int, alpha: float, c: float, kind) -> float:
    ks = spherical_example_coefficients(alpha, c, kind)
    return math.fsum(k * b for k, b in zip(ks, _basis(N)))


def fit_coefficients(N_grid: Sequence[int], values: Sequence[float]) -> tuple:
    """Least-squares fit of values on the basis {N^2, N log N, N, log N, 1}.

    Columns are normalised before solving; needs at least five grid points.
    """
    if len(N_grid) < 5:
        raise ValueError("a five-term fit needs at least five grid points")
    A = np.array([_basis(N) for N in N_grid], dtype=float)
    scale = np.max(np.abs(A), axis=0)
    sol, *_ = np.linalg.lstsq(A / scale, np.asarray(values, dtype=float), rcond=None)
    return tuple(float(x) for x in sol / scale)


def residual_sweep(template: ChargedEnsemble, N_grid: Sequence[int], fit: bool = True,
                   workers: int | None = None,
                   coeffs: ExpansionCoefficients | None = None) -> ResidualReport:
    """Exact log Z against the five-term prediction on an ascending N grid."""
    grid = [int(N) for N in N_grid]
    if any(N < 2 for N in grid) or grid != sorted(grid):
        raise ValueError("N_grid must be ascending with every N >= 2")
    if coeffs is None:
        coeffs = coefficients(functionals(template.measure), template.alpha, template.c,
                              template.kind)
    exact = [log_z_exact(template.with_N(N), workers=workers).log_z for N in grid]
    predicted = [evaluate(coeffs, N) for N in grid]
    residual = [e - p for e, p in zip(exact, predicted)]
    fitted = fit_coefficients(grid, exact) if fit and len(grid) >= 5 else None
    return ResidualReport(grid, exact, predicted, residual, fitted)

"""Orthogonal and skew-orthogonal norms for radially symmetric charged ensembles.

For the weight |z|^{2j} e^{-m' Q} (m' = N for the determinantal ensemble,
2N for the Pfaffian one) the squared norm is

    h_j = int_0^inf 2 exp(-m V_j(r)) dr,   V_j(r) = -2 U_mu(r) - 2 tau_j log r,

with m = n (resp. 2n), n = N + alpha + c + 1, and tau_j the fraction of the
background mass inside the peak radius t_j, i.e. F(t_j) = 1 - tau_j.
Exact values come from peak-normalised quadrature for every index; the
regime predictors below are asymptotic formulas used only for comparison.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import CoefficientOverflowError, DomainError, KindError
from .measure import RadialMeasure, log_potential, potential_array, rho_tilde_zero, u_at_zero
from .numerics import find_critical_point, integrate_half_line

_LOG_MAX_FLOAT = math.log(np.finfo(float).max)
_EXPONENT_NOISE = 2e-15


class Kind(str, Enum):
    DET = "det"
    PFAFF = "pfaff"


@dataclass(frozen=True)
class ChargedEnsemble:
    measure: RadialMeasure
    N: int
    alpha: float = 0.0
    c: float = 0.0
    kind: Kind = Kind.DET

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")
        if not (self.alpha >= 0.0 and self.c >= 0.0):
            raise DomainError("point charges alpha, c must be nonnegative")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def n(self) -> float:
        """Total background charge N + alpha + c + 1."""
        return self.N + self.alpha + self.c + 1.0

    @property
    def m(self) -> float:
        """Exponent multiplier of V_j: n (det) or 2n (Pfaffian)."""
        return self.n if self.kind is Kind.DET else 2.0 * self.n

    @property
    def c_eff(self) -> float:
        # origin charge seen by the weight: c for e^{-NQ}, 2c for e^{-2NQ}
        return self.c if self.kind is Kind.DET else 2.0 * self.c

    @property
    def num_indices(self) -> int:
        return self.N if self.kind is Kind.DET else 2 * self.N

    def with_N(self, N: int) -> "ChargedEnsemble":
        return ChargedEnsemble(self.measure, N, self.alpha, self.c, self.kind)


@dataclass(frozen=True)
class LogNorm:
    j: int
    log_value: float
    peak: float
    quadrature_error: float


@dataclass(frozen=True)
class TauValues:
    tau_c: float
    tau_alpha: float


@dataclass(frozen=True)
class SkewPolynomial:
    k: int
    even_coefficients: tuple
    log_skew_norm: float

    @property
    def skew_norm(self) -> float:
        return math.exp(self.log_skew_norm)


def _check_index(ens: ChargedEnsemble, j: int) -> int:
    if isinstance(j, bool) or int(j) != j or not 0 <= j < ens.num_indices:
        raise DomainError(
            f"index {j!r} out of range [0, {ens.num_indices}) for {ens.kind.value} ensemble")
    return int(j)


def tau_values(ens: ChargedEnsemble, j: float) -> TauValues:
    """tau_c(j), tau_alpha(j); the tilde versions for Pfaffian ensembles."""
    if ens.kind is Kind.DET:
        d = 2.0 * ens.n
        return TauValues((2.0 * (j + ens.c) + 1.0) / d, (2.0 * (j + ens.alpha) + 1.0) / d)
    d = 4.0 * ens.n
    return TauValues((2.0 * j + 4.0 * ens.c + 1.0) / d, (2.0 * j + 4.0 * ens.alpha + 1.0) / d)


def tau(ens: ChargedEnsemble, j: float) -> float:
    return tau_values(ens, j).tau_c


def v_j(ens: ChargedEnsemble, j: int, r: float) -> float:
    """V_j(r) (or the Pfaffian V~_j(r)) = -2 U_mu(r) - 2 tau_j log r."""
    _check_index(ens, j)
    if not r > 0.0:
        raise DomainError(f"v_j needs r > 0, got {r!r}")
    return -2.0 * log_potential(ens.measure, r) - 2.0 * tau(ens, j) * math.log(r)


def peak(ens: ChargedEnsemble, j: int) -> float:
    """Critical point t_j of V_j."""
    return find_critical_point(ens.measure, tau(ens, _check_index(ens, j)))


def _exponent(ens: ChargedEnsemble, tau_j: float, r):
    # m V_j(r) on arrays
    return ens.m * (-2.0 * potential_array(ens.measure, r) - 2.0 * tau_j * np.log(r))


def log_norm(ens: ChargedEnsemble, j: int, rel_tol: float = 1e-13) -> LogNorm:
    """log h_j by peak-normalised quadrature.

    Indices with tau_j > 1/2 are integrated in the inverted variable s = 1/r,
    where the integrand 2 exp(-m V_j(1/s)) s^-2 peaks at 1/t_{j+1}.
    """
    j = _check_index(ens, j)
    tj = tau(ens, j)
    t_peak = find_critical_point(ens.measure, tj)
    # exponent differences carry rounding of order m * eps
    rel_tol = max(rel_tol, _EXPONENT_NOISE * ens.m)
    if tj <= 0.5:
        base = float(_exponent(ens, tj, np.array(t_peak)))

        def integrand(r):
            return 2.0 * np.exp(-(_exponent(ens, tj, r) - base))

        quad = integrate_half_line(integrand, t_peak, rel_tol=rel_tol)
    else:
        s_peak = 1.0 / find_critical_point(ens.measure, tj + 1.0 / ens.m)

        def w(s):
            return _exponent(ens, tj, 1.0 / s) + 2.0 * np.log(s)

        base = float(w(np.array(s_peak)))

        def integrand(s):
            return 2.0 * np.exp(-(w(s) - base))

        quad = integrate_half_line(integrand, s_peak, rel_tol=rel_tol)
    return LogNorm(j, -base + math.log(quad.value), t_peak,
                   quad.abs_error_estimate / quad.value)


def default_workers() -> int:
    env = os.environ.get("COULOMB_SPHERE_THREADS")
    if env:
        return max(1, int(env))
    return 1


def log_norms(ens: ChargedEnsemble, indices: Sequence[int] | None = None,
              workers: int | None = None) -> list[LogNorm]:
    """log_norm over several indices, in index order regardless of workers."""
    if indices is None:
        indices = range(ens.num_indices)
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        return [log_norm(ens, j) for j in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda j: log_norm(ens, j), indices))


def skew_norm(ens: ChargedEnsemble, k: int) -> float:
    """log r_k = log 2 + log h_{2k+1} (weight e^{-2NQ})."""
    if ens.kind is not Kind.PFAFF:
        raise KindError("skew norms are defined for Pfaffian ensembles only")
    if not 0 <= k < ens.N:
        raise DomainError(f"skew index {k!r} out of range [0, {ens.N})")
    return math.log(2.0) + log_norm(ens, 2 * k + 1).log_value


def skew_poly_even_coefficients(ens: ChargedEnsemble, k: int) -> SkewPolynomial:
    """Coefficients of z^0, z^2, ..., z^{2k} in the monic q_{2k}.

    c_l = prod_{i=0}^{k-l-1} h_{2l+2i+2} / h_{2l+2i+1}; computed as a running
    sum of log ratios from the top coefficient downwards.
    """
    if ens.kind is not Kind.PFAFF:
        raise KindError("skew-orthogonal polynomials need a Pfaffian ensemble")
    if not 0 <= k < ens.N:
        raise DomainError(f"skew index {k!r} out of range [0, {ens.N})")
    logs = {i: log_norm(ens, i).log_value for i in range(1, 2 * k + 1)}
    coeffs = [1.0]
    acc = 0.0
    for l in range(k - 1, -1, -1):
        # c_l = c_{l+1} * h_{2l+2} / h_{2l+1}
        acc += logs[2 * l + 2] - logs[2 * l + 1]
        if acc > _LOG_MAX_FLOAT:
            raise CoefficientOverflowError(
                f"coefficient of z^{2 * l} in q_{2 * k} has log {acc:.1f}")
        coeffs.append(math.exp(acc))
    coeffs.reverse()
    log_r = math.log(2.0) + log_norm(ens, 2 * k + 1).log_value
    return SkewPolynomial(k, tuple(coeffs), log_r)


def b1_functional(m: RadialMeasure, r: float) -> float:
    """First Laplace correction at the peak radius r."""
    if not r > 0.0:
        raise DomainError(f"b1_functional needs r > 0, got {r!r}")
    rho = float(m.rho(r))
    d1 = float(m.drho(r))
    d2 = float(m.d2rho(r))
    return (-1.0 / (24.0 * r * r * rho)
            - 7.0 * d1 / (96.0 * r * rho * rho)
            - d2 / (32.0 * rho * rho)
            + 5.0 * d1 * d1 / (96.0 * rho**3))


def predicted_log_norm_bulk(ens: ChargedEnsemble, j: int) -> float:
    """Laplace expansion around t_j to order 1/m."""
    j = _check_index(ens, j)
    t = peak(ens, j)
    m = ens.m
    rho_t = float(ens.measure.rho(t))
    return (-m * v_j(ens, j, t)
            + 0.5 * (math.log(2.0 * math.pi) - math.log(m) - math.log(rho_t))
            + b1_functional(ens.measure, t) / m)


def predicted_log_norm_origin(ens: ChargedEnsemble, j: int) -> float:
    """Gamma-function asymptotics for indices near the origin (south pole)."""
    j = _check_index(ens, j)
    m = ens.m
    p = j + ens.c_eff + 1.0
    rho0 = float(ens.measure.rho(0.0))
    return 2.0 * m * u_at_zero(ens.measure) - p * math.log(m * rho0) + math.lgamma(p)


def predicted_log_norm_infinity(ens: ChargedEnsemble, j: int) -> float:
    """Gamma-function asymptotics for indices near infinity (north pole)."""
    j = _check_index(ens, j)
    m = ens.m
    p = m - j - ens.c_eff - 1.0
    return -p * math.log(m * rho_tilde_zero(ens.measure)) + math.lgamma(p)


def critical_point_asymptote(ens: ChargedEnsemble, j: int) -> float:
    """Leading-order t_j: sqrt(tau/rho(0)) near the origin, or
    sqrt(rho~(0)/(1 - tau)) near infinity (chosen by tau <= 1/2)."""
    j = _check_index(ens, j)
    tj = tau(ens, j)
    if tj <= 0.5:
        return math.sqrt(tj / float(ens.measure.rho(0.0)))
    return math.sqrt(rho_tilde_zero(ens.measure) / (1.0 - tj))

"""Radially symmetric background measures and the functionals entering the
free-energy expansions.

Densities are taken with respect to dA = d^2z / pi, so a radial density rho
has total mass int_0^inf 2 t rho(t) dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConsistencyError, DomainError, IntegrationError
from .numerics import (QuadratureResult, find_critical_point, integrate_half_line,
                       integrate_interval, integrate_tail)

_FUNCTIONAL_TOL = 1e-9
_QUAD_REL = 1e-13
_CURVATURE_LOG_SPAN = 20.0


@dataclass(frozen=True)
class RadialMeasure:
    """Smooth positive radial density with rho(r) ~ A / r^4 at infinity.

    rho, drho and d2rho must be vectorised (accept numpy arrays). The
    optional closed forms (tail mass F, inner mass 1 - F, log potential U)
    replace quadrature wherever they are given.
    """

    rho: Callable
    drho: Callable
    d2rho: Callable
    tail_amplitude: float
    label: str = "custom"
    closed_form_F: Optional[Callable] = field(default=None, compare=False)
    closed_form_inner: Optional[Callable] = field(default=None, compare=False)
    closed_form_U: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.tail_amplitude > 0.0:
            raise DomainError("tail amplitude must be positive")


@dataclass(frozen=True)
class MeasureFunctionals:
    energy: float
    entropy: float
    u_zero: float
    rho0: float
    rho_tilde0: float
    curvature_integral: float

    def as_dict(self) -> dict:
        return {
            "energy": self.energy,
            "entropy": self.entropy,
            "u_zero": self.u_zero,
            "rho0": self.rho0,
            "rho_tilde0": self.rho_tilde0,
            "curvature_integral": self.curvature_integral,
        }


# ---------------------------------------------------------------------------
# built-in measures


def spherical() -> RadialMeasure:
    """Uniform measure on the sphere pulled back to the plane, rho = (1+r^2)^-2."""

    def rho(r):
        return 1.0 / (1.0 + r * r) ** 2

    def drho(r):
        return -4.0 * r / (1.0 + r * r) ** 3

    def d2rho(r):
        return (20.0 * r * r - 4.0) / (1.0 + r * r) ** 4

    def tail(t):
        return 1.0 / (1.0 + t * t)

    def inner(t):
        return t * t / (1.0 + t * t)

    def potential(r):
        return -0.5 * np.log1p(r * r)

    return RadialMeasure(rho, drho, d2rho, 1.0, "spherical", tail, inner, potential)


def _pushforward(base: RadialMeasure, a: float, label: str) -> RadialMeasure:
    # image of base under z -> a z
    a = float(a)
    la = math.log(a)

    def rho(r):
        return base.rho(r / a) / a**2

    def drho(r):
        return base.drho(r / a) / a**3

    def d2rho(r):
        return base.d2rho(r / a) / a**4

    tail = inner = potential = None
    if base.closed_form_F is not None:
        def tail(t):
            return base.closed_form_F(t / a)
    if base.closed_form_inner is not None:
        def inner(t):
            return base.closed_form_inner(t / a)
    if base.closed_form_U is not None:
        def potential(r):
            return base.closed_form_U(r / a) - la
    return RadialMeasure(rho, drho, d2rho, a * a * base.tail_amplitude, label,
                         tail, inner, potential)


def scaled(a: float) -> RadialMeasure:
    """Spherical density dilated by a: rho_a(r) = a^2 / (a^2 + r^2)^2."""
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"scale must be positive, got {a!r}")
    return _pushforward(spherical(), a, f"scaled:a={a:g}")


def _combine(p: RadialMeasure, q: RadialMeasure, theta: float, label: str) -> RadialMeasure:
    w = 1.0 - theta

    def lin(fp, fq):
        if fp is None or fq is None:
            return None
        return lambda x: theta * fp(x) + w * fq(x)

    return RadialMeasure(
        lin(p.rho, q.rho), lin(p.drho, q.drho), lin(p.d2rho, q.d2rho),
        theta * p.tail_amplitude + w * q.tail_amplitude, label,
        lin(p.closed_form_F, q.closed_form_F),
        lin(p.closed_form_inner, q.closed_form_inner),
        lin(p.closed_form_U, q.closed_form_U),
    )


def mixture(theta: float, a: float) -> RadialMeasure:
    """theta * spherical + (1 - theta) * scaled(a)."""
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {theta!r}")
    return _combine(spherical(), scaled(a), float(theta),
                    f"mixture:theta={theta:g},a={a:g}")


def parse_measure(spec: str) -> RadialMeasure:
    """Parse 'spherical', 'scaled:a=<float>' or 'mixture:theta=<float>,a=<float>'."""
    name, _, args = spec.strip().partition(":")
    params: dict[str, float] = {}
    if args:
        for item in args.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise DomainError(f"malformed measure parameter {item!r}")
            try:
                params[key.strip()] = float(val)
            except ValueError as exc:
                raise DomainError(f"non-numeric measure parameter {item!r}") from exc
    expected = {"spherical": set(), "scaled": {"a"}, "mixture": {"theta", "a"}}
    if name not in expected:
        raise DomainError(f"unknown measure {name!r}")
    if set(params) != expected[name]:
        raise DomainError(f"measure {name!r} takes parameters {sorted(expected[name])}")
    if name == "spherical":
        return spherical()
    if name == "scaled":
        return scaled(params["a"])
    return mixture(params["theta"], params["a"])


# ---------------------------------------------------------------------------
# masses and potential


def _radial_mass_density(m: RadialMeasure):
    return lambda r: 2.0 * r * m.rho(r)


def mass_tail(m: RadialMeasure, t: float) -> float:
    """F(t) = mu({|z| > t})."""
    if t < 0.0:
        raise DomainError(f"mass_tail needs t >= 0, got {t!r}")
    if m.closed_form_F is not None:
        return float(m.closed_form_F(t))
    if t == 0.0:
        return 1.0
    return integrate_tail(_radial_mass_density(m), t, rel_tol=_QUAD_REL).value


def mass_inside(m: RadialMeasure, t: float) -> float:
    """1 - F(t) = mu({|z| <= t}), computed without cancellation for small t."""
    if t < 0.0:
        raise DomainError(f"mass_inside needs t >= 0, got {t!r}")
    if m.closed_form_inner is not None:
        return float(m.closed_form_inner(t))
    if m.closed_form_F is not None:
        return 1.0 - float(m.closed_form_F(t))
    if t == 0.0:
        return 0.0
    return integrate_interval(_radial_mass_density(m), 0.0, t, rel_tol=_QUAD_REL).value


def log_potential(m: RadialMeasure, r: float) -> float:
    """U_mu(r) = -log r - int_r^inf F(s)/s ds for r > 0."""
    if not r > 0.0:
        raise DomainError(f"log_potential needs r > 0, got {r!r}")
    if m.closed_form_U is not None:
        return float(m.closed_form_U(r))
    tail = np.vectorize(lambda s: mass_tail(m, float(s)) / s)
    return -math.log(r) - integrate_tail(tail, r, rel_tol=_QUAD_REL).value


def potential_array(m: RadialMeasure, r: np.ndarray) -> np.ndarray:
    """Vectorised U_mu, used inside quadrature."""
    if m.closed_form_U is not None:
        return m.closed_form_U(r)
    flat = np.asarray(r, dtype=float).ravel()
    return np.array([log_potential(m, float(x)) for x in flat]).reshape(np.shape(r))


def _median_radius(m: RadialMeasure) -> float:
    return find_critical_point(m, 0.5)


def _checked(result, what: str) -> float:
    if not result.abs_error_estimate <= _FUNCTIONAL_TOL:
        raise IntegrationError(f"{what}: error estimate {result.abs_error_estimate:.2e}")
    return result.value


def u_at_zero(m: RadialMeasure) -> float:
    """U_mu(0) = -int log t * 2 t rho(t) dt."""
    def integrand(t):
        return -np.log(t) * 2.0 * t * m.rho(t)

    res = integrate_half_line(integrand, _median_radius(m), rel_tol=_QUAD_REL, abs_tol=1e-14)
    return _checked(res, "u_at_zero")


def _inner_array(m: RadialMeasure, t):
    if m.closed_form_inner is not None:
        return m.closed_form_inner(t)
    if m.closed_form_F is not None:
        return 1.0 - m.closed_form_F(t)
    return np.vectorize(lambda x: mass_inside(m, float(x)))(t)


def _tail_array(m: RadialMeasure, t):
    if m.closed_form_F is not None:
        return m.closed_form_F(t)
    return np.vectorize(lambda x: mass_tail(m, float(x)))(t)


def energy(m: RadialMeasure) -> float:
    """Logarithmic energy I[mu] = -int U_mu dmu.

    Exchanging the order of integration in -int U dmu with U written through
    the tail mass gives I = -U_mu(0) + int_0^inf F(t) (1 - F(t)) / t dt.
    """
    def integrand(t):
        return _tail_array(m, t) * _inner_array(m, t) / t

    res = integrate_half_line(integrand, _median_radius(m), rel_tol=_QUAD_REL, abs_tol=1e-14)
    return _checked(res, "energy") - u_at_zero(m)


def entropy(m: RadialMeasure) -> float:
    """E[mu] = int log rho dmu."""
    def integrand(t):
        rho = m.rho(t)
        return np.log(rho) * 2.0 * t * rho

    res = integrate_half_line(integrand, _median_radius(m), rel_tol=_QUAD_REL, abs_tol=1e-14)
    return _checked(res, "entropy")


def rho_tilde_zero(m: RadialMeasure) -> float:
    """rho~(0) = lim s^-4 rho(1/s) = A, cross-checked at s = 1e-3."""
    s = 1e-3
    probe = float(m.rho(1.0 / s)) / s**4
    A = m.tail_amplitude
    if abs(probe - A) > 0.01 * A:
        raise ConsistencyError(
            f"{m.label}: declared tail amplitude {A} but s^-4 rho(1/s) = {probe} at s={s}")
    return A


def curvature_integral(m: RadialMeasure) -> float:
    """int_0^inf (rho''/rho - 5/4 (rho'/rho)^2) t dt."""
    def integrand(t):
        rho = m.rho(t)
        g = m.drho(t) / rho
        return (m.d2rho(t) / rho - 1.25 * g * g) * t

    # The two terms cancel to O(t^-4) at large t, so the usual r = p/u tail
    # map amplifies rounding without bound. In log-radius the noise stays
    # O(eps); the integrand decays like t^-2 dx, so stopping at e^20 p drops
    # less than 1e-16.
    p = _median_radius(m)
    left = integrate_interval(integrand, 0.0, p, rel_tol=_QUAD_REL, abs_tol=1e-13)

    def log_tail(x):
        t = p * np.exp(x)
        return integrand(t) * t

    right = integrate_interval(log_tail, 0.0, _CURVATURE_LOG_SPAN, rel_tol=_QUAD_REL,
                               abs_tol=1e-12)
    return _checked(QuadratureResult(left.value + right.value,
                                     left.abs_error_estimate + right.abs_error_estimate,
                                     left.evaluations + right.evaluations),
                    "curvature_integral")


def functionals(m: RadialMeasure) -> MeasureFunctionals:
    return MeasureFunctionals(
        energy=energy(m),
        entropy=entropy(m),
        u_zero=u_at_zero(m),
        rho0=float(m.rho(0.0)),
        rho_tilde0=rho_tilde_zero(m),
        curvature_integral=curvature_integral(m),
    )

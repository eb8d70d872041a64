"""Numerical kernels: half-line quadrature, critical-point root finding,
Euler-Maclaurin summation and compensated summation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import BracketError, DomainError, IntegrationError

_GL_ORDER = 20
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
_MAX_PANELS = 20000
_MAX_LEVELS = 60


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _gauss(f, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    return half * (np.asarray(f(x), dtype=float) @ _GL_WEIGHTS)


def integrate_interval(f: Callable, a: float, b: float, rel_tol: float = 1e-12,
                       abs_tol: float = 0.0, initial_panels: int = 4) -> QuadratureResult:
    """Adaptive panel-bisection Gauss-Legendre quadrature of f over [a, b].

    f must accept a 2-D float array and return an array of the same shape.
    Each panel's error is estimated by comparing its 20-point rule with the
    sum of the rules on its two halves; panels are bisected until the
    estimates meet max(rel_tol*|I|, abs_tol), distributed by panel length.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or b < a:
        raise DomainError(f"bad interval [{a}, {b}]")
    if b == a:
        return QuadratureResult(0.0, 0.0, 1)
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    coarse = _gauss(f, lo, hi)
    evals = _GL_ORDER * len(lo)
    length = b - a
    done_val: list[float] = []
    done_err: list[float] = []
    for _ in range(_MAX_LEVELS):
        mid = 0.5 * (lo + hi)
        left = _gauss(f, lo, mid)
        right = _gauss(f, mid, hi)
        evals += 2 * _GL_ORDER * len(lo)
        fine = left + right
        err = np.abs(fine - coarse)
        total = math.fsum(done_val) + float(np.sum(fine))
        budget = max(rel_tol * abs(total), abs_tol)
        ok = err <= budget * (hi - lo) / length
        if not np.all(np.isfinite(fine)):
            raise IntegrationError("integrand produced non-finite values")
        done_val.extend(fine[ok].tolist())
        done_err.extend(err[ok].tolist())
        if np.all(ok):
            return QuadratureResult(math.fsum(done_val), math.fsum(done_err), evals)
        keep = ~ok
        lo, mid_k, hi = lo[keep], mid[keep], hi[keep]
        coarse = np.concatenate([left[keep], right[keep]])
        lo, hi = np.concatenate([lo, mid_k]), np.concatenate([mid_k, hi])
        order = np.argsort(lo, kind="stable")
        lo, hi, coarse = lo[order], hi[order], coarse[order]
        if len(lo) > _MAX_PANELS:
            break
    pending = float(np.sum(np.abs(coarse)))
    raise IntegrationError(
        f"quadrature did not converge on [{a}, {b}] "
        f"(unresolved mass {pending:.3e}, {evals} evaluations)")


def integrate_half_line(f: Callable, peak_hint: float, rel_tol: float = 1e-12,
                        abs_tol: float = 0.0) -> QuadratureResult:
    """Integrate f over (0, inf), splitting at peak_hint.

    [0, peak] is integrated directly; the right tail is mapped to (0, 1]
    through r = peak/u, which suits integrands with algebraic decay.
    """
    if not (peak_hint > 0.0 and math.isfinite(peak_hint)):
        raise DomainError(f"peak_hint must be positive, got {peak_hint!r}")
    p = float(peak_hint)

    def tail(u):
        return f(p / u) * (p / (u * u))

    left = integrate_interval(f, 0.0, p, rel_tol=rel_tol, abs_tol=0.5 * abs_tol)
    right = integrate_interval(tail, 0.0, 1.0, rel_tol=rel_tol, abs_tol=0.5 * abs_tol)
    return QuadratureResult(left.value + right.value,
                            left.abs_error_estimate + right.abs_error_estimate,
                            left.evaluations + right.evaluations)


def integrate_tail(f: Callable, t: float, rel_tol: float = 1e-12,
                   abs_tol: float = 0.0) -> QuadratureResult:
    """Integrate f over (t, inf) for t > 0 via r = t/u."""
    if not t > 0.0:
        raise DomainError(f"tail start must be positive, got {t!r}")

    def mapped(u):
        return f(t / u) * (t / (u * u))

    return integrate_interval(mapped, 0.0, 1.0, rel_tol=rel_tol, abs_tol=abs_tol)


def find_critical_point(m, tau: float) -> float:
    """Radius t with tail mass F(t) = 1 - tau, for 0 < tau < 1.

    Brackets the root on a geometric grid, then runs Newton steps with
    F'(t) = -2 t rho(t), falling back to bisection outside the bracket.
    """
    tau = float(tau)
    if not 0.0 < tau < 1.0:
        raise DomainError(f"tau must lie strictly in (0, 1), got {tau!r}")
    from .measure import mass_inside, mass_tail

    # Work with whichever of F, 1-F is small to avoid cancellation.
    if tau <= 0.5:
        def resid(t):
            return tau - mass_inside(m, t)
    else:
        def resid(t):
            return mass_tail(m, t) - (1.0 - tau)
    # relative to the small side so that t is accurate near either pole
    tol = 1e-14 * min(tau, 1.0 - tau)

    lo = hi = 1.0
    if resid(1.0) > 0.0:
        for _ in range(400):
            hi *= 2.0
            if resid(hi) <= 0.0:
                break
            lo = hi
        else:
            raise BracketError(f"could not bracket tau={tau} from above")
    else:
        for _ in range(400):
            lo *= 0.5
            if resid(lo) > 0.0:
                break
            hi = lo
        else:
            raise BracketError(f"could not bracket tau={tau} from below")
    if resid(lo) <= 0.0 or resid(hi) > 0.0:
        raise BracketError(f"tail mass not monotone near tau={tau}")

    t = math.sqrt(lo * hi)
    for _ in range(200):
        r = resid(t)
        if abs(r) <= tol:
            return t
        if r > 0.0:
            lo = t
        else:
            hi = t
        slope = -2.0 * t * float(m.rho(t))
        step = t - r / slope if slope != 0.0 else math.nan
        if not (lo < step < hi):
            step = 0.5 * (lo + hi)
        if step == t or hi - lo <= 4e-16 * hi:
            return step
        t = step
    return t


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with B_1 = -1/2 (generating function t/(e^t - 1))."""
    if k < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    b = [Fraction(1)]
    for n in range(1, k + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * b[j]
        b.append(-acc / (n + 1))
    return b[k]


def euler_maclaurin_sum(f: Callable[[float], float], m: int, n: int, orders: int,
                        odd_derivatives: Sequence[Callable[[float], float]],
                        integral: float | None = None) -> float:
    """Approximate sum_{j=m}^{n} f(j) by Euler-Maclaurin.

    odd_derivatives[k-1] must be f^{(2k-1)} for k = 1..orders. If integral
    (of f over [m, n]) is not supplied it is computed by quadrature, so f
    must then accept arrays.
    """
    if m > n:
        raise DomainError("need m <= n")
    if len(odd_derivatives) < orders:
        raise DomainError(f"{orders} correction terms need {orders} odd derivatives")
    if integral is None:
        integral = integrate_interval(f, float(m), float(n), rel_tol=1e-14).value
    terms = [integral, 0.5 * (float(f(m)) + float(f(n)))]
    for k in range(1, orders + 1):
        coef = float(bernoulli(2 * k) / math.factorial(2 * k))
        d = odd_derivatives[k - 1]
        terms.append(coef * (float(d(n)) - float(d(m))))
    return math.fsum(terms)


def euler_maclaurin_remainder_bound(orders: int, abs_derivative_integral: float) -> float:
    """Bound on |R| after `orders` Bernoulli terms.

    abs_derivative_integral is the integral of |f^{(2 orders + 2)}| over [m, n];
    uses |R_l| <= 2 zeta(2l) / (2 pi)^{2l} * int |f^{(2l)}| with l = orders + 1.
    """
    l = orders + 1
    zeta = math.fsum(k ** (-2.0 * l) for k in range(1, 200))
    return 2.0 * zeta / (2.0 * math.pi) ** (2 * l) * abs_derivative_integral


def compensated_sum(values) -> float:
    """Correctly rounded float sum (Shewchuk's algorithm via math.fsum)."""
    return math.fsum(values)

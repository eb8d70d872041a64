"""Real-argument special functions: log Gamma, log factorial, log Barnes G, zeta'(-1)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# zeta'(-1) = 1/12 - log(Glaisher's constant)
_ZETA_PRIME_MINUS_ONE = -0.16542114370045092921591

# B_{2k+2} / (4 k (k+1)) for k = 1..4, coefficients of z^{-2k} in the
# large-z expansion of log G(z+1).
_BARNES_TAIL = (
    -1.0 / 240.0,
    1.0 / 1008.0,
    -1.0 / 1440.0,
    1.0 / 1056.0,
)

# Smallest z = x - 1 at which the truncated series is used directly.
_BARNES_SHIFT = 20.0


@dataclass(frozen=True)
class SpecialConstants:
    zeta_prime_minus_one: float
    log_two_pi: float
    log_pi: float


CONSTANTS = SpecialConstants(
    zeta_prime_minus_one=_ZETA_PRIME_MINUS_ONE,
    log_two_pi=math.log(2.0 * math.pi),
    log_pi=math.log(math.pi),
)


def _check_positive(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} requires a finite positive argument, got {x!r}")
    return x


def zeta_prime_minus_one() -> float:
    return CONSTANTS.zeta_prime_minus_one


def log_gamma(x: float) -> float:
    """log Gamma(x) for real x > 0."""
    return math.lgamma(_check_positive(x, "log_gamma"))


def log_factorial(n: int) -> float:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"log_factorial requires a nonnegative integer, got {n!r}")
    return math.lgamma(int(n) + 1.0)


def stirling_log_factorial(n: float) -> float:
    """Leading Stirling terms of log n!, without the O(1/n) correction."""
    n = _check_positive(n, "stirling_log_factorial")
    return n * math.log(n) - n + 0.5 * math.log(n) + 0.5 * CONSTANTS.log_two_pi


def _log_barnes_g_series(z: float) -> float:
    # log G(z+1) for z >= _BARNES_SHIFT; truncation error below 1e-15 there
    logz = math.log(z)
    zm2 = 1.0 / (z * z)
    terms = [
        0.5 * z * z * logz,
        -0.75 * z * z,
        0.5 * CONSTANTS.log_two_pi * z,
        -logz / 12.0,
        CONSTANTS.zeta_prime_minus_one,
    ]
    p = zm2
    for coef in _BARNES_TAIL:
        terms.append(coef * p)
        p *= zm2
    return math.fsum(terms)


def log_barnes_g(x: float) -> float:
    """log G(x) for real x > 0.

    The argument is shifted upward with G(x+1) = Gamma(x) G(x) until
    x - 1 >= 20, where the large-argument expansion is accurate to double
    precision.
    """
    x = _check_positive(x, "log_barnes_g")
    if x - 1.0 >= _BARNES_SHIFT:
        return _log_barnes_g_series(x - 1.0)
    k = math.ceil(_BARNES_SHIFT + 1.0 - x)
    shifted = _log_barnes_g_series(x + k - 1.0)
    return math.fsum([shifted] + [-math.lgamma(x + i) for i in range(k)])

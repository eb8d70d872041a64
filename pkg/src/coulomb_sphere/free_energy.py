"""Exact log-partition functions, the closed-form spherical oracle, and the
plane/sphere normalisation change."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .errors import GeometryError
from .norms import ChargedEnsemble, Kind, LogNorm, log_norms
from .numerics import compensated_sum
from .specfun import log_barnes_g, log_factorial

_LOG2 = math.log(2.0)


class Geometry(str, Enum):
    PLANE = "plane"
    SPHERE = "sphere"


@dataclass(frozen=True)
class FreeEnergy:
    ensemble: ChargedEnsemble
    log_z: float
    geometry: Geometry = Geometry.PLANE
    per_norm_breakdown: Optional[tuple] = None
    plane_log_z: Optional[float] = None

    def __post_init__(self):
        if self.plane_log_z is None and self.geometry is Geometry.PLANE:
            object.__setattr__(self, "plane_log_z", self.log_z)


def log_z_exact(ens: ChargedEnsemble, breakdown: bool = False,
                workers: int | None = None) -> FreeEnergy:
    """log Z in planar normalisation from the norms.

    det:   log N! + sum_{j<N} log h_j
    pfaff: log N! + sum_{k<N} log(2 h_{2k+1})
    The reduction is a correctly rounded sum in ascending index order.
    """
    if ens.kind is Kind.DET:
        norms = log_norms(ens, range(ens.N), workers=workers)
        terms = [ln.log_value for ln in norms]
    else:
        norms = log_norms(ens, range(1, 2 * ens.N, 2), workers=workers)
        terms = [_LOG2 + ln.log_value for ln in norms]
    log_z = compensated_sum([log_factorial(ens.N)] + terms)
    return FreeEnergy(ens, log_z, Geometry.PLANE,
                      tuple(norms) if breakdown else None)


def log_z_spherical_closed_form(N: int, alpha: float, c: float, kind: Kind | str) -> float:
    """Barnes-G closed form of log Z for the induced spherical ensemble."""
    kind = Kind(kind)
    n = N + alpha + c + 1.0
    G = log_barnes_g
    if kind is Kind.DET:
        terms = [
            log_factorial(N),
            -N * math.lgamma(n),
            G(N + c + 1.0), -G(c + 1.0),
            G(N + alpha + 1.0), -G(alpha + 1.0),
        ]
    else:
        terms = [
            log_factorial(N),
            N * (2.0 * (N + alpha + c) + 1.0) * _LOG2,
            -N * math.log(math.pi),
            -N * math.lgamma(2.0 * n),
            G(N + c + 1.0), -G(c + 1.0),
            G(N + c + 1.5), -G(c + 1.5),
            G(N + alpha + 1.0), -G(alpha + 1.0),
            G(N + alpha + 1.5), -G(alpha + 1.5),
        ]
    return compensated_sum(terms)


def sphere_offset(N: int, kind: Kind | str) -> float:
    """log of the 2-power relating sphere and plane partition functions."""
    if Kind(kind) is Kind.DET:
        return N * (N - 1) * _LOG2
    return 2 * N * N * _LOG2


def to_sphere_geometry(fe: FreeEnergy) -> FreeEnergy:
    if fe.geometry is not Geometry.PLANE:
        raise GeometryError("free energy is already in sphere geometry")
    off = sphere_offset(fe.ensemble.N, fe.ensemble.kind)
    return replace(fe, log_z=fe.log_z + off, geometry=Geometry.SPHERE,
                   plane_log_z=fe.log_z)


def to_plane_geometry(fe: FreeEnergy) -> FreeEnergy:
    if fe.geometry is not Geometry.SPHERE:
        raise GeometryError("free energy is already in plane geometry")
    return replace(fe, log_z=fe.plane_log_z, geometry=Geometry.PLANE)

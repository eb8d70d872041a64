"""Free energies of 2D Coulomb gases with weakly confining, radially symmetric
backgrounds: exact partition functions from orthogonal and skew-orthogonal
norms, and their five-term large-N expansions."""

from .errors import (BracketError, CoefficientOverflowError, ConsistencyError, DomainError,
                     GeometryError, IntegrationError, KindError)
from .expansion import (ExpansionCoefficients, ResidualReport, coefficients, det_coefficients,
                        evaluate, evaluate_n_form, fit_coefficients, pfaff_coefficients,
                        residual_sweep, spherical_example_coefficients)
from .free_energy import (FreeEnergy, Geometry, log_z_exact, log_z_spherical_closed_form,
                          sphere_offset, to_plane_geometry, to_sphere_geometry)
from .measure import (MeasureFunctionals, RadialMeasure, functionals, mixture, parse_measure,
                      scaled, spherical)
from .norms import (ChargedEnsemble, Kind, LogNorm, log_norm, log_norms, peak, skew_norm,
                    skew_poly_even_coefficients, tau)
from .specfun import log_barnes_g, log_gamma, zeta_prime_minus_one

__version__ = "0.1.0"

"""Passive nonlinear vibration absorber design for limit cycle suppression."""

__version__ = "0.1.0"

from .model import (DimensionlessSystem, ModelError, PhysicalSystem, jacobian,
                    linear_matrix, nondimensionalize, redimensionalize, rhs)
from .stability import (CharPoly, StabilityReport, TuningResult, char_poly,
                        critical_mu1, double_hopf_locus, optimal_tuning,
                        points_AB, routh_hurwitz, stability_chart)
from .normalform import (HopfPoint, NormalFormCoefficients, beta3_tuning,
                         critical_alpha3, delta, delta_decomposition,
                         double_hopf_deltas, hopf_point, normal_form,
                         planar_reduction, supercritical_probability)
from .lco import LocalLcoEstimate, iso_amplitude_map, lco_amplitude_local
from .continuation import (BifurcationEvent, LcoBranch, PeriodicOrbit,
                           continue_branch, equilibrium_branch, floquet,
                           integrate, orbit_from_hopf, orbit_from_simulation,
                           similarity_study)
from .nes import (NesConfig, compare_time_series, nes_boundary,
                  nes_boundary_mu1max, nes_branch)

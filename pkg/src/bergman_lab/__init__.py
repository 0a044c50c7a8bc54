"""Numerical laboratory for weighted Bergman, Szego and Sobolev-Bergman kernels.

Model domains are discs of radius R and the unit ball in C^n.  Kernels are
diagonal power series built from moment sequences; boundary singularities
are recovered by least-squares fits on geometric grids.
"""

from .asymptotics import (SingularityBasis, SingularityFit, detect_log, fit_free_exponent, fit_singularity,
                          partie_finie, regularized_laplace_oracle, sample_along_ray)
from .domain_model import DefiningData, DomainSpec, TheoremId, leading_constant, rho_values
from .errors import (AccuracyError, BergmanLabError, ConditioningWarning, ConfigError, DomainError, FitError,
                     ModelMismatchError, NonEllipticError, ParameterError, ValidityError)
from .kernels import (DiagonalKernelSeries, forelli_rudin_check, kernel_from_coefficients, kernel_from_moments,
                      szego_kernel_disc)
from .moments import (AngularWeightSpec, MomentSequence, RadialWeightSpec, beta_moment, moment_sequence,
                      monomial_gram, quadrature_moment)
from .sobolev_norms import CoefficientForm, NormVariant, coefficient_form, equivalence_ratio, sobolev_kernel
from .spectral_continuation import (SpectralModel, holomorphy_contour_test, lambda0_model, power_operator,
                                    spectral_kernel)
from .toeplitz_bergman import (FiniteSection, KernelVector, build_toeplitz, quadratic_form_kernel,
                               weighted_kernel_via_inverse)
from .toeplitz_calculus import DiagonalGTO, complex_power, compose, estimate_order_symbol, parametrix

__version__ = "0.1.0"

"""Clifford-analysis projections onto plane-wave modules.

Exact Clifford algebra and polynomial machinery, zonal monogenic
kernels, the Gaussian-module and sphere-module frame projections with
closed and integral forms, the Stiefel-manifold dual transform with its
inversion operator, and an integral route to the monogenic part of a
holomorphic polynomial.  ``cliffrad verify`` runs the full numerical
identity suite.
"""

from .algebra import (Multivector, NullFrame, dagger, geometric_product,
                      make_null_frame, pairing, wedge)
from .backends import active_backend, available_backends
from .fischer import (beta_coef, fischer_decompose, monogenic_projection,
                      random_monogenic, random_polynomial,
                      random_spherical_monogenic)
from .kernels import (fourier_borel, fourier_borel_poly, gegenbauer,
                      gegenbauer_coeffs, zonal, zonal_ks, zonal_ks_poly,
                      zonal_poly)
from .mvpoly import (MVPolynomial, dirac, euler, evaluate, fischer_product,
                     gamma_op, vector_field)
from .quadrature import (QuadratureSpec, gaussian_integrate, gaussian_moment,
                         sample_frames, sphere_area, sphere_integrate,
                         sphere_moment, stiefel_average, stiefel_sample)
from .transforms import (MonopartResult, PlaneWave, ThetaOperator,
                         bargmann_radon_char, bargmann_radon_integral,
                         bargmann_radon_kernel, char_stiefel_average,
                         dual_radon, dual_radon_eigenvalue, dual_transform,
                         mb_inner, ml2_inner, monogenic_part_integral,
                         planewave, szego_kernel, szego_radon_char,
                         szego_radon_integral, szego_radon_kernel,
                         theta_eigen_factor, theta_invert)

__version__ = "0.1.0"

"""Radial harmonic analysis on free groups."""

from .errors import DomainError, NumericError, RadialFreeError, ResourceError
from .words import Rank, ball, format_word, inverse, multiply, parse_word, reduce, sphere, sphere_size
from .radial import (
    RadialElement,
    Series,
    classify_parameter,
    genfun_coeffs,
    is_positive_definite_on_ball,
    linearize,
    p_poly,
    p_values,
    spherical_function,
)
from .group_algebra import (
    AlgebraElement,
    convolve,
    elementary_radial,
    lambda_pm1_word,
    radialize,
    trace,
)
from .spectra import (
    haagerup_measure,
    integrate,
    kesten_measure,
    moment,
    radial_jacobi_matrix,
    spectral_histogram_distance,
    tridiag_eigenvalues,
)
from .primtop import closure, is_continuous_function, parse_prim_set, format_prim_set, quotient

__version__ = "0.1.0"

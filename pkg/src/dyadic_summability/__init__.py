"""Walsh-Fourier summability on the dyadic group at finite resolution."""

from .dyadic import (
    Cell,
    DyadicPoint,
    ResolutionError,
    add_points,
    cell_of,
    rademacher,
    walsh,
    walsh_vector,
)
from .kernels import (
    HarmonicPrefix,
    check_kernel_identity,
    dirichlet,
    dirichlet_closed_dyadic,
    dirichlet_paley_formula,
    fejer_kernel,
    harmonic,
    log_kernel,
    riesz_kernel,
)
from .means import convolve, dyadic_partial, fejer_mean, log_mean, riesz_mean
from .norms import (
    hardy_norm,
    is_p_atom,
    lebesgue_residual,
    lp_norm,
    maximal_function,
    weak_lp_norm,
)
from .transform import GridFunction, Spectrum, analyze, partial_sum, synthesize

__version__ = "0.1.0"

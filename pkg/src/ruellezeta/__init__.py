"""Exact Ruelle zeta functions of suspension flows and their special values at zero."""

__version__ = "0.1.0"

from .complex_det import BasedComplex, LogMonomial, complex_determinant, is_acyclic  # noqa: E402
from .exact_linalg import IntegerMatrix, cokernel, kernel_basis, smith_normal_form  # noqa: E402
from .mapping_torus import graded_system, suspension_cohomology, torus_system  # noqa: E402
from .regdet import Spectrum, regdet, spectral_zeta_prime_at_zero  # noqa: E402
from .ruelle_zeta import verify_zeta_identity, zeta_det_form  # noqa: E402

__all__ = [
    "BasedComplex",
    "IntegerMatrix",
    "LogMonomial",
    "Spectrum",
    "cokernel",
    "complex_determinant",
    "graded_system",
    "is_acyclic",
    "kernel_basis",
    "regdet",
    "smith_normal_form",
    "spectral_zeta_prime_at_zero",
    "suspension_cohomology",
    "torus_system",
    "verify_zeta_identity",
    "zeta_det_form",
]

"""Symmetric-norm inequalities for Hermitian block matrices.

``M = [[A, X], [X*, B]]`` is compared with ``A + B`` in every unitarily
invariant norm through Ky Fan partial sums of singular values.
"""

from .blocks import (
    BlockMatrix,
    DecompositionResult,
    HalfParts,
    Mode,
    check_loewner_facts,
    half_parts,
    imag_part,
    lemma_decompose,
    pinching_decompose,
    real_part,
    reconstruction_error,
    rotate,
)
from .counterexamples import (
    FamilySpec,
    QuadraticRoots,
    build_family,
    det_commuting_blocks,
    example_Ny,
    example_T,
    quadratic_eigs,
    search_psd_violations,
    verify_violation,
)
from .errors import *  # noqa: F401,F403
from .inequalities import (
    HermitioCertificate,
    Hypothesis,
    InequalityReport,
    check_main_inequality,
    check_scalar_shift_bound,
    classify,
    commutes,
    factor_two_bound,
    hermitio_reduce,
    scalar_shift_check,
)
from .matrixfile import parse_matrix_file, write_matrix_file
from .norms import KyFanProfile, fan_dominates, frobenius_norm, ky_fan, ky_fan_profile, spectral_norm
from .numkernel import (
    PolarFactors,
    SpectralData,
    det,
    herm_eig,
    is_psd,
    is_unitary,
    matrix_sqrt_psd,
    polar_right,
    svd,
)

__version__ = "0.1.0"

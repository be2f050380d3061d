"""qsvtkit: desk-scale numerics for the quantum singular value transformation.

Cosine-Sine decompositions of partitioned unitaries, quantum signal
processing phase synthesis, block-encoding verification, and certified
bounded polynomial approximation via thresholded Chebyshev truncation.
"""

from .bounded import (
    BoundedApproxCertificate,
    BoundedApproxSpec,
    ThresholdParams,
    approx_arcsin,
    approx_exp_bounded,
    approx_neg_power,
    approx_sign,
    approx_trig_arcsin,
    bernstein_semi_axes,
    bounded_truncation,
    cheb_growth_bound,
    containment_radius,
    erf_threshold,
    formula_degree,
)
from .chebyshev import (
    ChebyshevSeries,
    carlini_bound,
    carlini_log_bound,
    cheb_eval,
    exp_series,
    exp_truncation_degree,
    series_from_interpolant,
    series_from_quadrature,
    trefethen_degree,
)
from .config import Config, Tolerance, load_config
from .csd import (
    CSDecomposition,
    CSStructure,
    JordanBlocks,
    cs_decompose,
    jordan_decompose,
    principal_angles,
)
from .degree_bounds import (
    LowerBoundReport,
    bernstein_check,
    exp_separation,
    robust_lipschitz_bound,
)
from .errors import (
    ConstantTooSmallError,
    ConvergenceError,
    DomainError,
    EvaluationError,
    NormError,
    NotAchievableError,
    NotCompletableError,
    OverflowRegimeError,
    QsvtkitError,
    ValidationError,
)
from .numerics import (
    bessel_i,
    erf_complex,
    qr_positive_diag,
    random_unitary,
    svd,
    unitarity_defect,
)
from .qsp import (
    AchievabilityReport,
    ComplexPolynomial,
    QspPair,
    achievable_check,
    complete_real,
    qsp_eval,
    qsp_polynomials,
    synthesize_phases,
)
from .qsvt import (
    BlockEncoding,
    QsvtReport,
    block_encode,
    conjugate_encoding,
    phased_alternating,
    real_part_block,
    real_part_encoding,
    sv_transform,
    verify_qsvt,
)

__version__ = "0.1.0"

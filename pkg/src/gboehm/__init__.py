"""Numerical laboratory for a non-commutative convolution algebra on
integrable functions: the two-sided (sharp) convolution, shrinking-kernel
approximate identities, quotient-sequence classes built from them, and the
Hartley / full-line cosine / Fourier transforms with their product
identities extended to the quotient space.
"""

from .grid import (
    GridError,
    GridFunction,
    GridSpec,
    even_part,
    integrate,
    l1_norm,
    linear_combine,
    reflect,
    resample,
    sup_norm,
)
from .presets import (
    AnalyticPreset,
    ConfigurationError,
    ResolutionWarning,
    eval_preset,
    parse_preset,
    sample,
)
from .convolve import (
    WindowOverflowError,
    associativity_residuals,
    classical_convolve,
    fast_sharp,
    noncommutativity_witness,
    sharp_convolve,
    young_residual,
)
from .transforms import (
    TransformTable,
    cosine_convolution_residual,
    cosine_transform,
    fourier,
    fourier_hartley_relation_residual,
    hartley,
    hartley_convolution_residual,
)
from .deltas import (
    DeltaSequence,
    ResolutionError,
    approx_identity_error,
    cosine_limit_error,
    make_family,
    sharp_product_family,
    verify_axioms,
)
from .boehmian import (
    Boehmian,
    Quotient,
    QuotientError,
    add,
    axiom_suite,
    big_delta_convergence_check,
    delta_convergence_check,
    embed,
    equivalent,
    make_quotient,
    scale,
    star_extend,
    zero_boehmian,
)
from .ext_hartley import (
    EvaluationError,
    consistency_residual,
    continuity_residual,
    ext_hartley,
    injectivity_probe,
    linearity_residual,
    representative_independence_residual,
)

__version__ = "0.1.0"

"""High-precision multiple zeta values, zeta-star values, and the
two-block Euler sums G_{n+2}(p,q), with an identity verification harness.

Summation convention: ascending (k_1 < ... < k_r), so an index converges
exactly when its last exponent is >= 2.
"""

from .numerics import (
    PrecisionConfig,
    Rational,
    ValueWithError,
    bernoulli,
    binomial,
    pi_value,
    precision,
    riemann_zeta,
)
from .indices import (
    Composition,
    MultiIndex,
    admissible_by_weight_height,
    compositions,
    format_index,
    ones,
    parse_index,
    repeat,
    weight_depth_height,
)
from .finite_sums import bell_poly, finite_mzv, finite_mzsv, gen_harmonic
from .mzv_engine import (
    DivergentIndexError,
    DomainLimitError,
    SeriesEvaluation,
    homogeneous_tail_coeff,
    mzsv,
    mzsv_from_mzv,
    mzv,
    zetastar_head2,
)
from .euler_sums import (
    GSpec,
    g2_closed,
    g_compositions,
    g_direct,
    g_quad,
    reflection_residual,
    zetastar_ones,
)
from .quadrature import LogMonomial, QuadratureNonConvergence, expand_log_power, integrate_monomials
from .identity_suite import (
    CATALOG,
    IdentityReport,
    catalog_ids,
    run_identity,
    run_suite,
    thm53_rhs,
    zetastar_head_eval,
)

__version__ = "0.1.0"

__all__ = [
    "PrecisionConfig", "ValueWithError", "Rational", "bernoulli", "binomial",
    "pi_value", "precision", "riemann_zeta",
    "MultiIndex", "Composition", "ones", "repeat", "weight_depth_height",
    "compositions", "admissible_by_weight_height", "parse_index", "format_index",
    "gen_harmonic", "finite_mzv", "finite_mzsv", "bell_poly",
    "mzv", "mzsv", "mzsv_from_mzv", "homogeneous_tail_coeff", "zetastar_head2",
    "SeriesEvaluation", "DivergentIndexError", "DomainLimitError",
    "GSpec", "g_direct", "g_compositions", "g_quad", "g2_closed",
    "reflection_residual", "zetastar_ones",
    "LogMonomial", "expand_log_power", "integrate_monomials",
    "QuadratureNonConvergence",
    "CATALOG", "IdentityReport", "catalog_ids", "run_identity", "run_suite",
    "thm53_rhs", "zetastar_head_eval",
]

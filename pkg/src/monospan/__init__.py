"""Numerics for monomial subspaces of L2[0,1].

Cauchy-structured Gram distance computations, Muntz-Szasz density tests,
the unitary transform onto the Hardy space of the disk, the Laguerre-basis
coordinate picture, monomial operators, atomic spaces with singular inner
functions, and subspace-convergence experiments.
"""

from .atomic import (
    AtomicMeasure,
    AtomicSpaceParams,
    conjugation_identity_check,
    model_space_distance,
    proj_norm_sq,
)
from .convergence import (
    ConvergenceReport,
    PiecewiseMonomial,
    SubspaceSequence,
    constant_family,
    distance_curve,
    interval_family,
    limit_membership_test,
    muntz_family,
    muntz_limit_experiment,
)
from .core import (
    AffineSequence,
    DensityVerdict,
    DistanceResult,
    Exponent,
    GeometricSequence,
    GramSystem,
    MonomialSet,
    as_exponent,
    as_monomial_set,
    distance_to_span,
    gram_build,
    monomial_distance_closed_form,
    monomial_inner,
    monomial_pairing_oracle,
    muntz_verdict,
    sequence_from_spec,
)
from .errors import (
    DomainError,
    IllConditioningWarning,
    MonomialError,
    NumericalError,
    RepresentationError,
    SeriesWarning,
    SizeLimitError,
    TruncationWarning,
    WrongCriterionError,
)
from .laguerre import (
    LaguerreExpansion,
    apply_J_expansion,
    apply_J_monomial,
    default_truncation,
    eval_e,
    expand_monomial,
)
from .operators import (
    AutomorphismParams,
    MonomialOperator,
    PhiSpec,
    hat_matrix,
    monomial_operator,
    phi_of_H,
    pick_positivity_check,
    unitary_from_automorphism,
)
from .quadrature import QuadResult, integrate
from .sarason import (
    DiskFunction,
    DiskPoint,
    SampledFunction,
    forward_indicator,
    forward_monomial,
    forward_quadrature,
    h2_inner,
    indicator_function,
    inverse_analytic,
    monomial_function,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSequence",
    "AtomicMeasure",
    "AtomicSpaceParams",
    "AutomorphismParams",
    "ConvergenceReport",
    "DensityVerdict",
    "DiskFunction",
    "DiskPoint",
    "DistanceResult",
    "DomainError",
    "Exponent",
    "GeometricSequence",
    "GramSystem",
    "IllConditioningWarning",
    "LaguerreExpansion",
    "MonomialError",
    "MonomialOperator",
    "MonomialSet",
    "NumericalError",
    "PhiSpec",
    "PiecewiseMonomial",
    "QuadResult",
    "RepresentationError",
    "SampledFunction",
    "SeriesWarning",
    "SizeLimitError",
    "SubspaceSequence",
    "TruncationWarning",
    "WrongCriterionError",
    "apply_J_expansion",
    "apply_J_monomial",
    "as_exponent",
    "as_monomial_set",
    "conjugation_identity_check",
    "constant_family",
    "default_truncation",
    "distance_curve",
    "distance_to_span",
    "eval_e",
    "expand_monomial",
    "forward_indicator",
    "forward_monomial",
    "forward_quadrature",
    "gram_build",
    "h2_inner",
    "hat_matrix",
    "indicator_function",
    "integrate",
    "interval_family",
    "inverse_analytic",
    "limit_membership_test",
    "model_space_distance",
    "monomial_distance_closed_form",
    "monomial_function",
    "monomial_inner",
    "monomial_operator",
    "monomial_pairing_oracle",
    "muntz_family",
    "muntz_limit_experiment",
    "muntz_verdict",
    "phi_of_H",
    "pick_positivity_check",
    "proj_norm_sq",
    "sequence_from_spec",
    "unitary_from_automorphism",
]

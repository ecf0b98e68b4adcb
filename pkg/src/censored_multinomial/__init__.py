"""Interval-censored multinomial sample spaces and their likelihoods.

The package materializes rectangle and partial-sum-rectangle censoring
events on the discrete simplex, decides M-convexity of the resulting sets
(brute force and constructively), builds exact censored-likelihood
polynomials, certifies the Lorentzian property and log-concavity
numerically, and computes maximum-likelihood estimates of the multinomial
parameter under censoring.
"""

from .certification import (
    LogConcavitySpotReport,
    LorentzianCertificate,
    SignatureReport,
    StrictLorentzianResult,
    certify_lorentzian,
    check_complete_logconcavity_spot,
    check_strong_logconcavity_spot,
    log_hessian_max_eigenvalue,
    strictly_lorentzian_check,
)
from .constraints import (
    ConstraintSet,
    ExplicitSet,
    PartialSumRectangle,
    Rectangle,
    contains,
    enumerate_constraint,
    minimal_bounding_psr,
    minimal_bounding_rectangle,
    psr_contains,
    psr_to_rectangle_m3,
    rectangle_contains,
    rectangle_from_psr_m2,
    to_explicit,
)
from .errors import (
    CapacityError,
    DimensionMismatch,
    EmptyConstraint,
    FeasibilityError,
    InvalidBounds,
    ToolkitError,
    ZeroLikelihood,
)
from .inference import (
    MleResult,
    ProbabilityVector,
    conditional_expectation,
    em_step,
    log_likelihood,
    mle,
)
from .mconvexity import (
    ExchangeVerification,
    ExchangeWitness,
    MConvexityReport,
    exchange,
    find_feasible_index,
    is_feasible_index,
    is_mconvex_bruteforce,
    rectangle_exchange_index,
    verify_exchange_theorem,
)
from .polynomials import (
    HomogeneousPolynomial,
    likelihood_polynomial,
)
from .simplex import (
    DEFAULT_ENUMERATION_CAP,
    LatticePoint,
    SimplexSpec,
    enumerate_simplex,
    multinomial_coefficient,
    partial_sums,
    simplex_size,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConstraintSet",
    "DEFAULT_ENUMERATION_CAP",
    "DimensionMismatch",
    "EmptyConstraint",
    "ExchangeVerification",
    "ExchangeWitness",
    "ExplicitSet",
    "FeasibilityError",
    "HomogeneousPolynomial",
    "InvalidBounds",
    "LatticePoint",
    "LogConcavitySpotReport",
    "LorentzianCertificate",
    "MConvexityReport",
    "MleResult",
    "PartialSumRectangle",
    "ProbabilityVector",
    "Rectangle",
    "SignatureReport",
    "SimplexSpec",
    "StrictLorentzianResult",
    "ToolkitError",
    "ZeroLikelihood",
    "certify_lorentzian",
    "check_complete_logconcavity_spot",
    "check_strong_logconcavity_spot",
    "conditional_expectation",
    "contains",
    "em_step",
    "enumerate_constraint",
    "enumerate_simplex",
    "exchange",
    "find_feasible_index",
    "is_feasible_index",
    "is_mconvex_bruteforce",
    "likelihood_polynomial",
    "log_hessian_max_eigenvalue",
    "log_likelihood",
    "minimal_bounding_psr",
    "minimal_bounding_rectangle",
    "mle",
    "multinomial_coefficient",
    "partial_sums",
    "psr_contains",
    "psr_to_rectangle_m3",
    "rectangle_contains",
    "rectangle_exchange_index",
    "rectangle_from_psr_m2",
    "simplex_size",
    "strictly_lorentzian_check",
    "to_explicit",
    "verify_exchange_theorem",
]

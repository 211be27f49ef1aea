"""Scoring metrics on separable metric spaces.

A scoring metric sums trivial-metric scores of delegate agreements:
rho(x, y) = sum_n a_n [f_n(x) != f_n(y)], where f_n(x) is the nearest of the
first n points of a dense enumeration.
"""

from .base_space import (DyadicScalar, DyadicVector, EnumerationExhausted, FiniteElement, Space,
                         SpaceError, dense_point, distance, make_space)
from .convergence_lab import (SequenceSpec, lab_report, prop1_check, remark_check,
                              strictness_witness, theorem_check)
from .delegates import (BudgetExhausted, DelegateSignature, PreconditionError, brute_nearest_prefix,
                        delegate_index, separation_index, signature)
from .propositions import proposition_suite
from .scoring_metric import (RhoInterval, axiom_suite, partial_score, rho_exact_finite, rho_interval,
                             tau)
from .signature_index import SignatureIndex, bucket_bounds, build_index, query
from .weights import WeightSequence, make_weights, tail_upper, weight_value

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted", "DelegateSignature", "DyadicScalar", "DyadicVector", "EnumerationExhausted",
    "FiniteElement", "PreconditionError", "RhoInterval", "SequenceSpec", "SignatureIndex", "Space",
    "SpaceError", "WeightSequence", "axiom_suite", "brute_nearest_prefix", "bucket_bounds",
    "build_index", "delegate_index", "dense_point", "distance", "lab_report", "make_space",
    "make_weights", "partial_score", "prop1_check", "proposition_suite", "query", "remark_check",
    "rho_exact_finite", "rho_interval", "separation_index", "signature", "strictness_witness",
    "tail_upper", "tau", "theorem_check", "weight_value",
]

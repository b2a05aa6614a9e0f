"""Exact multiple-point invariants of even-codimension immersions.

Given a finite cohomological model of a generic immersion (source and
target rings, pullback, Gysin pushforward, normal Euler class and total
Pontrjagin classes), this package computes signatures and characteristic
numbers of the k-tuple point manifolds by exact partition-sum formulas,
cross-checked against a brute-force enumeration oracle.
"""

from .formulas import (
    MultipointResult,
    PreconditionError,
    RouteDisagreement,
    chern_number,
    multiple_point_dimension,
    pontrjagin_number,
    recursion_identity_holds,
    signature,
    signature_collected,
    signature_via_source,
    signature_via_target,
    transfer_of_unit,
    transfer_to_source,
    transfer_to_target,
    virtual_signature_class,
    virtual_signature_class_union,
)
from .graded import (
    GradedAlgebraError,
    GradedClass,
    GradedRing,
    NonUnitalClassError,
    RingComponent,
    TensorClass,
    cross,
    diagonal_pullback,
    signature_class,
)
from .model import (
    ImmersionModel,
    LinearMap,
    ModelError,
    ValidationReport,
    disjoint_union,
    embedding_consistent,
    validate,
)
from .modelfile import ModelFormatError, load_model, model_from_dict, model_to_dict, save_model
from .models import BUNDLED, bundled_model, random_truncated_model, truncated_polynomial_ring
from .partitions import SetPartition, all_partitions, count_by_type, refines, type_vectors
from .series import SpecialSeries, compose, identity_series, invert, scaled_exp_series, scaled_log_series

__version__ = "0.1.0"

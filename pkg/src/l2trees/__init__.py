"""Exact l2-invariants of groups acting on trees.

Computes l2-Euler characteristics and first l2-Betti numbers of
fundamental groups of graphs of groups, classifies quotients of such
groups presented with torsion relators (infinite / non-amenable / finite
with an order bound), and cross-checks the conclusions with a
Todd-Coxeter coset-enumeration oracle.  All arithmetic is exact rational.
"""

__version__ = "0.1.0"

from .rationals import (
    GroupOrder,
    INFINITE,
    Rat,
    format_order,
    format_rat,
    parse_order,
    parse_rat,
    rat,
    reciprocal_order,
)
from .descriptors import (
    ClassCOutcome,
    DescriptorConflictError,
    GroupDescriptor,
    InsufficientDataError,
    OrbitCell,
    chi_l2,
    cyclic_group,
    euler_char_from_orbit_cells,
    free_group,
    infinite_cyclic_group,
    is_in_class_C,
    surface_group,
    trivial_group,
)
from .graphs import (
    B1Result,
    Edge,
    GraphOfGroups,
    GraphValidationError,
    HypothesisError,
    UNKNOWN,
    Unknown,
    b1_l2_fundamental,
    chi_l2_fundamental,
    fundamental_group_order,
    stable_letter_rank,
    validate,
)
from .presentations import (
    FreeProductForm,
    PresentationError,
    Relator,
    TorsionPresentation,
    Word,
    cyclic_reduce,
    free_reduce,
    parse_presentation,
    parse_presentation_with_log,
    power_root,
    to_free_product_form,
)
from .criteria import (
    Verdict,
    corollary_notes,
    evaluate_quotient,
    evaluate_torsion_presentation,
)
from .coset import (
    CosetTable,
    LimitExceeded,
    element_order,
    enumerate_cosets,
    verify_torsion_hypothesis,
)

__all__ = [
    "B1Result",
    "ClassCOutcome",
    "CosetTable",
    "DescriptorConflictError",
    "Edge",
    "FreeProductForm",
    "GraphOfGroups",
    "GraphValidationError",
    "GroupDescriptor",
    "GroupOrder",
    "HypothesisError",
    "INFINITE",
    "InsufficientDataError",
    "LimitExceeded",
    "OrbitCell",
    "PresentationError",
    "Rat",
    "Relator",
    "TorsionPresentation",
    "UNKNOWN",
    "Unknown",
    "Verdict",
    "Word",
    "b1_l2_fundamental",
    "chi_l2",
    "chi_l2_fundamental",
    "corollary_notes",
    "cyclic_group",
    "cyclic_reduce",
    "element_order",
    "enumerate_cosets",
    "euler_char_from_orbit_cells",
    "evaluate_quotient",
    "evaluate_torsion_presentation",
    "format_order",
    "format_rat",
    "free_group",
    "free_reduce",
    "fundamental_group_order",
    "infinite_cyclic_group",
    "is_in_class_C",
    "parse_order",
    "parse_presentation",
    "parse_presentation_with_log",
    "parse_rat",
    "power_root",
    "rat",
    "reciprocal_order",
    "stable_letter_rank",
    "surface_group",
    "to_free_product_form",
    "trivial_group",
    "validate",
    "verify_torsion_hypothesis",
]

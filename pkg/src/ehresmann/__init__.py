"""Workbench for finite biunary semigroups with domain and range operations.

Decides the localisable/Ehresmann law families and their order-theoretic
refinements, enumerates all Ehresmann orders on a structure, builds the
associated ordered category, and machine-verifies the round trip between
the two presentations down to the morphism level.
"""

from .core import (
    FiniteBiunarySemigroup,
    HomCandidate,
    InconsistentProjections,
    InternalInconsistency,
    LawReport,
    NotOrderedEhresmann,
    OC6Violation,
    PreconditionError,
    ProjectionSet,
    StructureError,
    TooLargeError,
    WorkbenchError,
    check_associativity,
    check_de_barros_equational,
    check_ehresmann,
    check_functional,
    check_left_restriction_with_range,
    check_localisable,
    check_restriction,
    check_right_restriction_with_domain,
    is_ehresmann_hom,
    projections,
)
from .orders import (
    DerivedOrders,
    OrderedSemigroup,
    PartialOrder,
    automorphisms,
    check_OS_property,
    check_ehresmann_order,
    check_leq_e_partial_laws,
    derive_orders,
    enumerate_ehresmann_orders,
    is_de_barros,
    is_ordered_hom,
    leq_e_containment,
    semilattice_order_agreement,
    smallest_order_check,
)
from .category import (
    Biaction,
    FiniteCategory,
    FiniteOrderedCategory,
    FunctorCandidate,
    category_of,
    check_OC_property,
    check_ehresmann_category_two_orders,
    check_ehresmann_ordered_category,
    check_omega_structured,
    check_prop_oc_equivalences,
    check_special_correspondences,
    corestriction,
    derive_biaction,
    esn_round_trip,
    esn_round_trip_category,
    is_eoc_morphism,
    morphism_correspondence,
    partial_product_category,
    restriction,
    semigroup_of,
    verify_biaction,
)
from .zoo import (
    ZooEntry,
    enumerate_ehresmann_semigroups,
    example_orderless_band,
    example_two_element_monoid,
    example_zero_one_nabla,
    gen_partial_injections,
    gen_pt,
    gen_rel,
)
from .fileformat import StructureFile, emit_structure, parse_structure, resolve
from .sweep import run_sweep

__version__ = "0.1.0"

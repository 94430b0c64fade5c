# lietor: exact-arithmetic toolkit for reflection spaces of Z^n and
# degree-windowed graded Lie algebras (loop, multi-loop and twisted loop
# realizations), with verification of the torus axioms at window scale.

from .lattice import (
    Box,
    CosetUnion,
    DimensionMismatch,
    Subgroup,
    coset_union_contains,
    coset_union_equal,
    enumerate_in_box,
    hnf,
    subgroup_contains,
    subgroup_intersection,
    subgroup_sum,
)
from .refspace import (
    ZClassification,
    classify_Z,
    closure,
    coset_union_is_reflection_space,
    is_reflection_space_in_box,
    is_symmetric_reflection_space_in_box,
    oracle_boxes,
    two_gen_pointed,
    two_gen_reflection,
    two_gen_symmetric,
)
from .rootsys import (
    RootSystem,
    build,
    cartan_integer,
    is_reflectable_base,
    reduced,
    reflect,
    standard_reflectable_base,
)
from .loopalg import (
    AlgebraElement,
    GradedAlgebra,
    TwistedLoopPair,
    bracket,
    build_twisted_pair,
    cartan_element,
    generate_subalgebra,
    graded_form,
    matrix_unit_element,
    multiloop,
    support,
)
from .torus import (
    AxiomReport,
    LearsWindow,
    ShiftHom,
    WindowError,
    check_axioms,
    check_coroot_form_identity,
    check_reflection_propagation,
    extract_lears,
    isotope,
    isotopy_regrade_map,
    normalize,
    verify_twisted_isotopy,
)

__version__ = "0.1.0"

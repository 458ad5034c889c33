"""Cech obstruction engine for lifting bundle cocycles through central extensions.

The package decides, for a transition cocycle on a finite simplicial
complex and a finite central extension of its structure group, whether
the cocycle lifts to the total group.  The answer comes as a degree-2
cohomology class with kernel coefficients: the class vanishes exactly
when a lift exists, and in that case an explicit verified lift is
constructed.  Whitney sums of cocycles are supported through kernel
fusion homomorphisms, obstruction classes add across sums, and a
cocycle summed with itself through the mod-2 fusion always lifts.

Modules:
    nerve      finite simplicial complexes and the builtin catalog
    coefgroup  finite abelian coefficient groups and homomorphisms
    linalg     modular and integer linear algebra (Smith normal form)
    cochain    cochains, coboundaries, cohomology spaces and classes
    fingroup   finite groups, central extensions, sections
    obstruct   obstruction cocycles, classes, lifts, brute-force oracle
    whitney    product cocycles, fused extensions, additivity, cancellation
    cli        command line interface
"""

from .coefgroup import (
    AbelianGroup,
    AbelianHom,
    Z2,
    direct_sum,
    fusion_hom_mod2,
    identity_hom,
    parse_group,
)
from .cochain import (
    Cochain,
    CohomologyClass,
    CohomologySpace,
    DEFAULT_ENUM_CAP,
    classes_equal,
    coboundary,
    coboundary_matrix,
    cohomology,
    enumerate_classes,
    is_coboundary,
    is_cocycle,
    read_cochain,
    write_cochain,
    zero_cochain,
)
from .errors import (
    BaseMismatchError,
    CapExceededError,
    ExtensionError,
    InternalCheckError,
    KernelMismatchError,
    KernelViolationError,
    NotAGroupError,
    NotCentralError,
    NotSubgroupError,
    NotSurjectiveError,
)
from .fingroup import (
    BUILTIN_EXTENSIONS,
    CentralExtension,
    FiniteGroup,
    GroupHom,
    MAX_GROUP_ORDER,
    Section,
    abelian_structure,
    builtin_extension,
    canonical_section,
    cyclic_group,
    dihedral_group_8,
    direct_product,
    find_splitting,
    klein_four_group,
    make_extension,
    make_group,
    quaternion_group,
    quotient_by_central,
    random_section,
    read_extension,
    read_group,
    same_extension,
    same_group,
    write_extension,
    write_group,
)
from .nerve import (
    BUILTIN_COMPLEXES,
    SimplicialComplex,
    build_complex,
    builtin_complex,
    complex_digest,
    euler_characteristic,
    read_complex,
    simplices_of_dim,
    write_complex,
)
from .obstruct import (
    BundleCocycle,
    DEFAULT_BRUTE_CAP,
    Lift,
    ObstructionResult,
    brute_force_lift,
    construct_lift,
    count_inequivalent_lifts,
    identity_cocycle,
    mobius_cocycle,
    obstruction_class,
    obstruction_cocycle,
    pushforward_class,
    random_cocycle,
    read_cocycle,
    validate_cocycle,
    write_cocycle,
)
from .whitney import (
    AdditivityReport,
    FusedExtension,
    additivity_check,
    fused_extension,
    hyperbolic_obstruction,
    hyperbolic_structure_count,
    product_cocycle,
    product_extension,
    whitney_obstruction,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # nerve
    "SimplicialComplex",
    "build_complex",
    "simplices_of_dim",
    "euler_characteristic",
    "builtin_complex",
    "BUILTIN_COMPLEXES",
    "complex_digest",
    "read_complex",
    "write_complex",
    # coefgroup
    "AbelianGroup",
    "AbelianHom",
    "Z2",
    "direct_sum",
    "fusion_hom_mod2",
    "identity_hom",
    "parse_group",
    # cochain
    "Cochain",
    "CohomologySpace",
    "CohomologyClass",
    "zero_cochain",
    "coboundary",
    "coboundary_matrix",
    "is_cocycle",
    "is_coboundary",
    "cohomology",
    "classes_equal",
    "enumerate_classes",
    "DEFAULT_ENUM_CAP",
    "read_cochain",
    "write_cochain",
    # fingroup
    "FiniteGroup",
    "GroupHom",
    "CentralExtension",
    "Section",
    "make_group",
    "cyclic_group",
    "quaternion_group",
    "dihedral_group_8",
    "klein_four_group",
    "direct_product",
    "make_extension",
    "canonical_section",
    "random_section",
    "quotient_by_central",
    "find_splitting",
    "abelian_structure",
    "builtin_extension",
    "BUILTIN_EXTENSIONS",
    "MAX_GROUP_ORDER",
    "same_group",
    "same_extension",
    "read_group",
    "write_group",
    "read_extension",
    "write_extension",
    # obstruct
    "BundleCocycle",
    "Lift",
    "ObstructionResult",
    "identity_cocycle",
    "mobius_cocycle",
    "random_cocycle",
    "validate_cocycle",
    "obstruction_cocycle",
    "obstruction_class",
    "construct_lift",
    "brute_force_lift",
    "count_inequivalent_lifts",
    "pushforward_class",
    "DEFAULT_BRUTE_CAP",
    "read_cocycle",
    "write_cocycle",
    # whitney
    "FusedExtension",
    "AdditivityReport",
    "product_cocycle",
    "product_extension",
    "fused_extension",
    "whitney_obstruction",
    "additivity_check",
    "hyperbolic_obstruction",
    "hyperbolic_structure_count",
    # errors
    "CapExceededError",
    "NotAGroupError",
    "ExtensionError",
    "NotSurjectiveError",
    "KernelMismatchError",
    "NotCentralError",
    "NotSubgroupError",
    "KernelViolationError",
    "BaseMismatchError",
    "InternalCheckError",
]

"""Finite-field curves, their Latin squares, and Clifford-type transformations."""
from .errors import *  # noqa: F401,F403
from .field import Field, FieldElement, FieldSpec, SelfDualBasis, build_field, field_from_json
from .curves import (
    Curve,
    GeneratorMatrix,
    ParametricCurve,
    adjacency_from_map,
    compose,
    curve_from_json,
    curve_from_linearized,
    desarguesian_bundle,
    generator_matrix,
    identity_curve,
    invert_curve,
    is_complete_bundle,
    linear_curve,
    linearized_coefficients,
    parametric_to_explicit,
)
from .latin import (
    LatinSquare,
    Minisquare,
    MolsSet,
    PermutationTriple,
    apply_triple,
    are_orthogonal,
    is_complete_mols,
    minisquare,
    minisquare_commutative,
    mols_from_bundle,
    nonstandard_ls,
    standard_ls,
    standardize,
)
from .transforms import (
    BundleReport,
    CnotOp,
    KMatrix,
    LocalOp,
    apply_local_to_generator,
    cnot_on_curve,
    cnot_parametric,
    cnot_qubit_curve_formula,
    compose_ops,
    local_on_curve,
    local_perms,
    mixed_sf_breaks_bundle,
    orbit,
    perms_nonstandard_to_standard,
    perms_standard_to_standard,
    perms_to_original,
    transform_bundle,
)
from .monomials import (
    CommutingSet,
    PauliMonomial,
    bundle_is_mub,
    commutes,
    curve_commuting_set,
    monomial_from_point,
    numeric_unbiasedness,
)

__version__ = "0.1.0"

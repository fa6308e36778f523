"""Quivers with potentials from triangulated surfaces: flips, mutations, checks."""

from .algebra import (
    AlgebraElement,
    AlgebraError,
    Path,
    Substitution,
    apply_substitution,
    arrow_path,
    cyclic_derivative,
    cyclic_normal_form,
    cyclically_equivalent,
    multiply,
    substitution_is_isomorphism,
    vertex_path,
)
from .jacobian import (
    DimensionReport,
    RigidityReport,
    finite_dim_evidence,
    is_rigid_up_to,
    jacobian_generators,
    truncated_quotient_dim,
)
from .potential import PotentialAssembly, potential_assembly, qp_of_triangulation, unreduced_potential
from .qp import QP, QPError, SplitResult, mutate_qp, premutate_qp, restrict_qp, split_qp, validate_qp
from .quiver import (
    Arrow,
    IntegerMatrix,
    Quiver,
    QuiverError,
    is_two_acyclic,
    matrix_from_quiver,
    mutate_matrix,
    mutate_quiver,
    premutate_quiver,
    quiver_from_matrix,
)
from .surface import (
    MarkedSurface,
    Side,
    SurfaceError,
    Triangulation,
    flip,
    fold_map,
    signed_adjacency,
    unreduced_quiver,
    validate_triangulation,
)
from .verify import (
    CheckReport,
    check_flip_compatibility,
    check_involution,
    check_restriction_commutes,
    explore_mutation_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]

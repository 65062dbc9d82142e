"""Exact computations with the Cohn localization of Z[G] -> Z for finite groups G."""
from .errors import *  # noqa: F401,F403
from .groups import (
    FiniteGroup,
    GroupHom,
    NormalSubgroup,
    abelianization,
    alternating_group,
    binary_icosahedral_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_permutations,
    group_from_table,
    is_nilpotent,
    nontrivial_p_quotients,
    p_quotient,
    quaternion_group,
    symmetric_group,
    universal_nilpotent_quotient,
)
from .groupring import GroupRingElement, GroupRingMatrix, pgroup_local_invert
from .localization import (
    LambdaContext,
    LambdaElement,
    LambdaMatrix,
    canonical_map,
    lambda_matrix_invert,
    theorem_b_report,
    wh_membership,
    ws_membership,
)
from .homology import AbelianGroupDescriptor, group_homology, quillen_scan
from .complexes import FreeComplex, ChainMap, is_w_acyclic, is_w_equivalence, make_w0_complex

__version__ = "0.1.0"

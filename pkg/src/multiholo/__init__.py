"""Holomorphs, their normalizers, and regular subgroup structure for finite groups."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    CapExceededError,
    GroupConstructionError,
    GroupFileError,
    InternalConsistencyError,
    MultiholoError,
)
from .groups import (
    FiniteGroup,
    GroupMapping,
    SubgroupRef,
    are_isomorphic,
    center,
    commutator_subgroup,
    conjugacy_classes,
    is_centerless,
    is_elementary_2_abelian,
    is_normal,
    normal_subgroups,
    quotient,
    series_equivalent,
    subgroup_closure,
)
from .morphisms import (
    AutomorphismGroup,
    automorphism_group,
    enumerate_homomorphisms,
    find_isomorphism,
    is_characteristic,
)
from .holomorph import (
    HolGroup,
    build_holomorph,
    inversion_perm,
    left_translation,
    right_translation,
)
from .regular import (
    NormalRegularEntry,
    TGroupReport,
    Triplet,
    coset_identify,
    enumerate_regular_triplets,
    normal_regular_subgroups,
    t_group,
)
from .conditions import ConditionReport, report_violations, run_condition_suite
from .screen import ScreenReport, screen_group, verify_witness
from .catalog import (
    CATALOG,
    alternating,
    build_catalog_group,
    cyclic,
    dihedral,
    direct_product,
    elaborate,
    parse_group_file,
    quaternion8,
    resolve_group,
    semidirect_product,
    symmetric,
    write_group_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]

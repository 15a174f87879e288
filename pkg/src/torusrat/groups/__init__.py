"""Finite permutation groups: enumeration, subgroup classes, labels, predicates."""
from .perm import (FiniteGroup, GroupError, Perm, ResourceError, format_group_text,
                   mask_to_list, parse_group_text, perm_from_cycles, perm_from_images,
                   perm_to_cycles)
from .subgroups import (CosetTable, Subgroup, SubgroupClass, SubgroupClassTable, center, core,
                        coset_action, derived_subgroup, h_candidates, normalizer, prime_factors,
                        subgroup_classes, sylow)
from .structure import (StructurePredicates, abelian_invariants, all_sylow_cyclic, describe,
                        describe_group, is_nilpotent, structure_predicates)
from .library import SESSION_GROUPS, named_group

__all__ = [
    "FiniteGroup", "GroupError", "Perm", "ResourceError", "format_group_text", "mask_to_list",
    "parse_group_text", "perm_from_cycles", "perm_from_images", "perm_to_cycles", "CosetTable",
    "Subgroup", "SubgroupClass", "SubgroupClassTable", "center", "core", "coset_action",
    "derived_subgroup", "h_candidates", "normalizer", "prime_factors", "subgroup_classes",
    "sylow", "StructurePredicates", "abelian_invariants", "all_sylow_cyclic", "describe",
    "describe_group", "is_nilpotent", "structure_predicates", "SESSION_GROUPS", "named_group",
]

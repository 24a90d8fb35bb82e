"""Finite permutation groups: elements, subgroups, lattices and isomorphism."""
from .builtins import builtin, direct_product
from .group import (
    Group,
    QuotientMap,
    Subgroup,
    centralizer,
    closure,
    normalizer,
    quotient,
    sylow,
)
from .io import parse_group_text, read_group
from .iso import find_isomorphic_subgroup, find_isomorphism, isomorphic
from .lattice import SubgroupClass, SubgroupLattice
from .perm import Perm


def subgroup_lattice(G):
    """Conjugacy classes of subgroups of ``G`` (cached on the group)."""
    return G.lattice


__all__ = [
    "Group", "Perm", "QuotientMap", "Subgroup", "SubgroupClass", "SubgroupLattice",
    "builtin", "centralizer", "closure", "direct_product", "find_isomorphic_subgroup",
    "find_isomorphism", "isomorphic", "normalizer", "parse_group_text", "quotient",
    "read_group", "subgroup_lattice", "sylow",
]

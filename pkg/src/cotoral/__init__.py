"""Exact-arithmetic tools for the tensor-triangular geometry of tori.

The package decides cotoral inclusion of closed subgroups of a torus,
computes geometric isotropy and thick-tensor-ideal containment for formal
wedges of basic cells, materialises bounded slices of the subgroup prime
spectrum with its specialisation topology, classifies semifree wide
spheres against the thick subcategories generated by representation
spheres, and forms Weyl-group quotients for toral parts of compact Lie
groups.
"""

from .lattice import (
    AmbientMismatchError,
    AmbientTorus,
    ClosedSubgroup,
    ComponentGroup,
    ContainmentError,
    DimensionError,
    IntegerLattice,
    canonicalize_subgroup,
    cyclic_subgroup,
    full_torus,
    hermite_normal_form,
    is_cotoral,
    is_subgroup,
    quotient_subgroup,
    smith_invariants,
    subgroup_from_json,
    subgroup_meet,
    subgroup_sum,
    subgroup_to_json,
    trivial_subgroup,
)

__all__ = [
    "AmbientMismatchError",
    "AmbientTorus",
    "ClosedSubgroup",
    "ComponentGroup",
    "ContainmentError",
    "DimensionError",
    "IntegerLattice",
    "canonicalize_subgroup",
    "cyclic_subgroup",
    "full_torus",
    "hermite_normal_form",
    "is_cotoral",
    "is_subgroup",
    "quotient_subgroup",
    "smith_invariants",
    "subgroup_from_json",
    "subgroup_meet",
    "subgroup_sum",
    "subgroup_to_json",
    "trivial_subgroup",
]

"""Exact computations in Z(G), the untwisted Drinfeld double of a finite group."""

from .algebras import (AlgebraDatum, InvariantMatrix, algebra_character, check_datum, classify_algebras, decompose,
                       identify_algebra, modular_invariant, transfer_character, trivialising_algebras, twist_check)
from .chartable import character_table
from .cohomology import Cocycle2, CohomologyGroup, classes_up_to_symmetry, is_coboundary, second_cohomology
from .cyclotomic import CycloMatrix, Cyclotomic
from .dw import GroupPresentation, count_homomorphisms, cross_validate, dw_invariant, manifold_catalog
from .groups import (CATALOG_NAMES, CapExceeded, FiniteGroup, GroupError, Subgroup, build_group, conjugacy_classes,
                     subgroup_classes)
from .modular import (PairFunction, global_dimension, modular_matrices, pair_inner_product, s_matrix,
                      simple_characters, simple_objects, t_matrix, verify_modularity)
from .partition import parse as parse_partition, render as render_partition
from .products import (MaximalAlgebra, build_parent_graph, maximal_algebras, parent_left, parent_right,
                       product_group, ribbon_equivalences)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Distinguishing numbers of permutation groups.

Stabilizer chains, block systems, the primitive / quasiprimitive /
semiprimitive predicates, exact and bounded distinguishing-number
computation, and a bundled catalog of small primitive groups.
"""

from .catalog import CatalogEntry, builtin_catalog, load_catalog, mathieu_group, parse_group_record
from .chain import PermutationGroup, StabilizerChain, build_chain, is_transitive, orbit, orbits, point_stabilizer
from .constructions import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    general_linear_on_vectors,
    product_action,
    psl2_on_projective_line,
    symmetric_group,
    wreath_imprimitive,
)
from .cycles import format_cycles, parse_cycles
from .distinguish import (
    Coloring,
    DNumberResult,
    Limits,
    base_size,
    bound_checks,
    distinguishing_number,
    exhaustive_refute,
    extend_partition,
    graded_subset,
    random_search,
    stabilizer_is_trivial,
)
from .perm import Permutation, compose, inverse
from .structure import (
    BlockSystem,
    is_primitive,
    is_quasiprimitive,
    is_semiprimitive,
    kernel_of_block_action,
    minimal_block_system,
    normal_closure,
    quotient_action,
    some_maximal_block_system,
)

__version__ = "0.1.0"

"""Lattice invariants of involutions on K3 and Enriques lattices, and a checker
for the resulting classification of real Enriques surfaces."""

from .classification import (check_row, derive_type_lists, enumerate_candidates, partner_triple,
                             s_nor_bound, s_nor_formula, theta_triples, verify_table)
from .f2 import F2Subspace, Mod4Quadratic, intersect, span_mod2
from .involution import (K3Triple, LatticeInvolution, characteristic_element, discriminant_form,
                         eigenlattice, extension_invariants, k3_triple, validate_involution)
from .lattice import (E8, U, IntegerLattice, direct_sum, lattice_properties, standard_lattice,
                      twist)
from .surfaces import (SurfaceType, euler, homology_dim, k3_real_type, nonorientable_count,
                       orientation_cover, parse_surface_type, quotient_candidates, triple_from_type)
from .table import TableRow, format_table, load_bundled_table, parse_table

__version__ = "0.1.0"

"""Witness graphs for automorphism-group deletion relations, with a
from-scratch automorphism engine to check them."""
from .graph import Graph, delete_edge, delete_vertex, from_graph6, to_graph6
from .groups import FiniteGroup, cyclic, dihedral, direct_product, is_isomorphic, parse_group_spec, symmetric, trivial
from .engine import automorphisms, brute_force_automorphisms, canonical_form, equitable_refinement
from .perm import PermGroup, as_abstract_group, group_order, orbits, stabilizer
from .constructions import Witness
from .verify import VerificationReport, check_stabilizer_subgroup, verify_witness

__all__ = [
    "Graph", "delete_edge", "delete_vertex", "from_graph6", "to_graph6",
    "FiniteGroup", "cyclic", "dihedral", "direct_product", "is_isomorphic", "parse_group_spec",
    "symmetric", "trivial",
    "automorphisms", "brute_force_automorphisms", "canonical_form", "equitable_refinement",
    "PermGroup", "as_abstract_group", "group_order", "orbits", "stabilizer",
    "Witness", "VerificationReport", "check_stabilizer_subgroup", "verify_witness",
]

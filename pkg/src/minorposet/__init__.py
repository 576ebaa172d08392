"""Generator enriched lattices, their minor posets, cd-indices and zipping."""

from .cdindex import AbPolynomial, CdPolynomial, cd_compare
from .errors import MinorPosetError
from .ingest import emit_dot, load, save
from .lattice import GenLattice, boolean, build_from_closure, cartesian_product, chain, generated_sub
from .maps import StrongMap, canonical_strong_map, validate_strong_map
from .minorposet import boolean_decomposition, build, rank_gen
from .minors import Minor, apply, enumerate_minors, is_minor_of, minor_join
from .poset import FinitePoset, ab_index, cd_index, poset_isomorphic, structure_report
from .properties import (
    find_forbidden_minor,
    has_no_parallels,
    is_geometric,
    lifts_join_irreducibles,
    minor_poset_is_lattice,
    surjection_onto_chain,
)
from .zipping import factor_surjection, induced_minor_map, zip_poset, zipping_sequence

__version__ = "0.1.0"

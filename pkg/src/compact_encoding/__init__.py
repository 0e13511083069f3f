"""Compact fermion-to-qubit encodings on planar tilings and the cubic lattice."""

from .compiler import FermionicTerm, MajoranaMonomial, compile_monomial, compile_terms
from .encoding import SCHEMA_VERSION, Encoding, encode, stats, verify_relations
from .homology import disparity_closed_form, kernel_and_stabilizers
from .lattice import LatticeSpec, build
from .oracle import certify_encoding
from .pauli import PhasedPauli, parse_pauli
from .species import all_species, augment_stabilizers

__version__ = "0.1.0"

__all__ = [
    "SCHEMA_VERSION",
    "Encoding",
    "FermionicTerm",
    "LatticeSpec",
    "MajoranaMonomial",
    "PhasedPauli",
    "all_species",
    "augment_stabilizers",
    "build",
    "certify_encoding",
    "compile_monomial",
    "compile_terms",
    "disparity_closed_form",
    "encode",
    "kernel_and_stabilizers",
    "parse_pauli",
    "stats",
    "verify_relations",
]

"""Exact computations with Hopf monoids of labeled set partitions.

The engine builds the free commutative Hopf monoid on set partitions whose
blocks carry labels from a set species, with its refinement-type order,
Möbius data and the bases m, p, e, h.  The Fock functors turn it into graded
Hopf algebras, which the remaining modules identify with symmetric functions,
class functions on symmetric groups and superclass function models.
"""
from .characters import Character, terminal_psi, zeta_component, zeta_pi
from .engine import (
    BASES,
    Element,
    LabeledSetPartition,
    SizeGuardError,
    SpeciesHopfMonoid,
    Tensor,
    decode_lsp,
    delta,
    encode_lsp,
    nabla,
    trivial_monoid,
)
from .fock import GradedElement, GradedHopfAlgebra, GradedTensor, structure_constants
from .foundation import FinitePoset, GroundSet, IntegerPartition, SetPartition
from .labels import (
    ConnectedSumLabel,
    CyclicOrderLabel,
    FiniteGroup,
    Label,
    LabelSpecies,
    MapLabel,
    OrbitLabel,
    TrivialLabel,
    cyclic_group,
    make_signed_group,
)
from .report import Report

__all__ = [
    "BASES",
    "Character",
    "ConnectedSumLabel",
    "CyclicOrderLabel",
    "Element",
    "FiniteGroup",
    "FinitePoset",
    "GradedElement",
    "GradedHopfAlgebra",
    "GradedTensor",
    "GroundSet",
    "IntegerPartition",
    "Label",
    "LabelSpecies",
    "LabeledSetPartition",
    "MapLabel",
    "OrbitLabel",
    "Report",
    "SetPartition",
    "SizeGuardError",
    "SpeciesHopfMonoid",
    "Tensor",
    "TrivialLabel",
    "cyclic_group",
    "decode_lsp",
    "delta",
    "encode_lsp",
    "make_signed_group",
    "nabla",
    "structure_constants",
    "terminal_psi",
    "trivial_monoid",
    "zeta_component",
    "zeta_pi",
]

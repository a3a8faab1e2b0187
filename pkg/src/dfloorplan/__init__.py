"""d-dimensional mosaic floorplans, their generating tree and d-permutations."""
from .bijection import associated_axis, canonical_corners, dperm_to_floorplan, phi, psi, roundtrip_check
from .dperm import DPermutation, VincularPattern, contains, contains_vincular, is_in_F, is_separable
from .errors import DomainError, FloorplanError, ParseError, ResourceLimit
from .geometry import (
    Box,
    Floorplan,
    canonical_signature,
    delete_block,
    direction_relations,
    equivalent,
    peel,
    validate,
)
from .gentree import Label, count_by_level, enumerate_floorplans, insert_block, label_of, pushable_corners, rewrite
from .kernel import BACKEND

__all__ = [
    "BACKEND", "Box", "DPermutation", "DomainError", "Floorplan", "FloorplanError", "Label",
    "ParseError", "ResourceLimit", "VincularPattern", "associated_axis", "canonical_corners",
    "canonical_signature", "contains", "contains_vincular", "count_by_level", "delete_block",
    "direction_relations", "dperm_to_floorplan", "enumerate_floorplans", "equivalent",
    "insert_block", "is_in_F", "is_separable", "label_of", "peel", "phi", "psi",
    "pushable_corners", "rewrite", "roundtrip_check", "validate",
]

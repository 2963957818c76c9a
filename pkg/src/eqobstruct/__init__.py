"""Equivariant embedding obstructions from twisted chains on deleted products."""

__version__ = "0.1.0"

from .complex import SimplicialComplex, VertexMap, build_complex, cone, join, standard
from .constructions import cone_cycle, join_cycle, verify_sign_identities
from .delprod import Z, Z2, ZMINUS, DeletedProduct, TwistedChain, TwistedCochain, boundary, deleted_product
from .geometry import RationalConfiguration, generic_coords, make_configuration
from .group import GroupAction, build_action, squares_subgroup
from .homology import class_coordinates, evaluate_pairing, homology, smith_normal_form
from .obstruction import (
    ObstructorCertificate,
    check_equivariant_obstructor,
    check_evaluation_cycle,
    linking_number,
    vk_cochain,
    wu_cochain,
)

__all__ = [
    "DeletedProduct", "GroupAction", "ObstructorCertificate", "RationalConfiguration",
    "SimplicialComplex", "TwistedChain", "TwistedCochain", "VertexMap", "Z", "Z2", "ZMINUS",
    "boundary", "build_action", "build_complex", "check_equivariant_obstructor",
    "check_evaluation_cycle", "class_coordinates", "cone", "cone_cycle", "deleted_product",
    "evaluate_pairing", "generic_coords", "homology", "join", "join_cycle", "linking_number",
    "make_configuration", "smith_normal_form", "squares_subgroup", "standard",
    "verify_sign_identities", "vk_cochain", "wu_cochain",
]

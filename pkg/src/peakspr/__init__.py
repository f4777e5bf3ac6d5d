"""Peak posets of type A: socle-projective objects, their stability and the polygon model."""

from .errors import PeakSprError
from .poset import Poset, bilinear_form, build_poset, incidence_matrix, is_type_A
from .quiver import AlienSet, QuiverA, poset_of_quiver, validate_alien_set
from .spaces import CombPeakSpace, SincereShape, enumerate_indecomposables, proper_subobjects
from .stability import hn_filtration, is_mu_stable, is_theta_stable, jh_filtration, make_slope, theta_of

__all__ = [
    "AlienSet",
    "CombPeakSpace",
    "PeakSprError",
    "Poset",
    "QuiverA",
    "SincereShape",
    "bilinear_form",
    "build_poset",
    "enumerate_indecomposables",
    "hn_filtration",
    "incidence_matrix",
    "is_mu_stable",
    "is_theta_stable",
    "is_type_A",
    "jh_filtration",
    "make_slope",
    "poset_of_quiver",
    "proper_subobjects",
    "theta_of",
    "validate_alien_set",
]

"""Word problem, geodesics, conjugacy and growth in dihedral Artin groups G(m)
over the free-product generators {x, y}."""

from .canonical import CanonicalElement, elements_equal, to_canonical
from .conjugacy import ConjKey, conj_representative, is_conjugate, pcl
from .geodesic import classify_geodesic, geodesic_length, geodesic_word, is_geodesic
from .words import GroupParams, parse_word

__version__ = "0.1.0"

__all__ = [
    "CanonicalElement",
    "ConjKey",
    "GroupParams",
    "classify_geodesic",
    "conj_representative",
    "elements_equal",
    "geodesic_length",
    "geodesic_word",
    "is_conjugate",
    "is_geodesic",
    "parse_word",
    "pcl",
    "to_canonical",
]

"""Projective evolutes of polygons: exact moduli computations and numerical dynamics."""

from .evolute import Polygon, evolute, iterate_evolute
from .pentagon import PentagonModuli, invariant_I, moduli_from_pentagon, pentagon_from_moduli, t_map
from .projective import HomTriple, ProjMap, cross

__all__ = [
    "HomTriple",
    "PentagonModuli",
    "Polygon",
    "ProjMap",
    "cross",
    "evolute",
    "invariant_I",
    "iterate_evolute",
    "moduli_from_pentagon",
    "pentagon_from_moduli",
    "t_map",
]

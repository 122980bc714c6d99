"""Right-angled hyperbolic polyhedra: enumeration, realization, volumes and bounds."""

from .combinatorics import CombPolyhedron, PolyClass, RotationSystem, canonical_code
from .errors import RightAngledError
from .lobachevsky import lobachevsky, v3, v8

__version__ = "0.1.0"

__all__ = [
    "CombPolyhedron",
    "PolyClass",
    "RotationSystem",
    "canonical_code",
    "RightAngledError",
    "lobachevsky",
    "v3",
    "v8",
]

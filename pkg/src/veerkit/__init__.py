"""veerkit: invariants of fibered-knot monodromies and reduced knot complexes.

Two independent computational routes to the same classification live here:
boundary-twist analysis of normal-form surface maps, and filtration-level
invariants of reduced GF(2) knot complexes, tied together by a dimension
dichotomy for maps closed up with cable boundary models.
"""

from .core import OPAQUE, DomainError, InputError, VeerkitError, Violation

__all__ = [
    "OPAQUE",
    "DomainError",
    "InputError",
    "VeerkitError",
    "Violation",
]

__version__ = "0.1.0"

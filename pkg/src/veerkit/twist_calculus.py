"""Boundary twisting coefficients and the veering classifier.

The twisting coefficient at a boundary circle is eps*k + r read off the
multitwist stack there, zero when the boundary sits on a fixed piece.  The
classifier decides right-/left-veering for single-boundary maps from the
stack sign, or, when the boundary sits on a fixed piece, from the signs of
the twist regions on the piece's other boundary circles.
"""

from __future__ import annotations

from fractions import Fraction

from .core import DomainError
from .surface_map import (
    FIXED,
    TWIST_FULL,
    TWIST_PARTIAL,
    DirectlyFixed,
    MultitwistStub,
    NonTrivialBoundary,
    StandardFormMap,
    boundary_stub,
    inverse,
    is_identity,
    normalize_stub,
    region_sides,
    require_valid,
)

RIGHT_VEERING = "right-veering"
LEFT_VEERING = "left-veering"
NEITHER = "neither"
IDENTITY = "identity"


def fdtc(m: StandardFormMap, b: str) -> Fraction:
    """Twisting coefficient at boundary circle `b` for a valid map."""
    require_valid(m)
    stub = boundary_stub(m, b)
    if isinstance(stub, NonTrivialBoundary):
        raise DomainError(f"map not identity on boundary {b!r}")
    if isinstance(stub, DirectlyFixed):
        return Fraction(0)
    return stub.total()


def power_stub(stub: MultitwistStub, n: int) -> MultitwistStub:
    """Stub of the n-th power: multiply total twisting by n and renormalize."""
    if n < 1:
        raise DomainError("power must be a positive integer")
    return normalize_stub(n * stub.total())


def fdtc_axioms_check(m: StandardFormMap, b: str, n: int) -> bool:
    """Verify c(inverse) = -c and c(n-th power) = n*c at stub level."""
    value = fdtc(m, b)
    if fdtc(inverse(m), b) != -value:
        return False
    stub = boundary_stub(m, b)
    if isinstance(stub, DirectlyFixed):
        return True  # zero coefficient; powers stay zero
    return power_stub(stub, n).total() == n * value


def _abuts_twist_of_sign(m: StandardFormMap, cid: str, sign: int) -> bool:
    annuli_by_id = {a.id: a for a in m.annuli}
    for tag, rid in region_sides(m).get(cid, []):
        if tag == "annulus":
            a = annuli_by_id[rid]
            if a.kind in (TWIST_FULL, TWIST_PARTIAL) and a.sign == sign:
                return True
    return False


def _veers_right(m: StandardFormMap, b: str) -> bool:
    stub = boundary_stub(m, b)
    if isinstance(stub, NonTrivialBoundary):
        raise DomainError(f"map not identity on boundary {b!r}")
    if isinstance(stub, MultitwistStub):
        return stub.total() > 0
    # boundary sits on a fixed piece: right-veering iff every other boundary
    # circle of that piece abuts a positive twist region
    piece = m.piece(stub.piece_id)
    others = [cid for cid in piece.boundary if cid != b]
    if not others:
        return False  # the piece has no further circles; handled as identity upstream
    return all(_abuts_twist_of_sign(m, cid, +1) for cid in others)


def veering(m: StandardFormMap) -> str:
    """Classify a single-boundary map as right-veering / left-veering / neither.

    The map must restrict to the identity on its boundary circle.  Identity
    maps are reported as such before the boundary-count restriction applies.
    """
    require_valid(m)
    if is_identity(m):
        return IDENTITY
    if len(m.surface_boundary) != 1:
        raise DomainError("veering classification supports exactly one boundary circle")
    b = m.surface_boundary[0]
    if _veers_right(m, b):
        return RIGHT_VEERING
    if _veers_right(inverse(m), b):
        return LEFT_VEERING
    return NEITHER

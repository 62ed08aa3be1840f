"""Floer-theoretic dimension bookkeeping for closed normal-form maps.

The dimension of the fixed-point Floer homology of a closed normal-form map
decomposes over its regions: each fixed piece contributes the dimension of
a relative homology group determined by a sign pattern on its boundary
circles; pieces abutting pseudo-Anosov regions add prong terms; periodic and
pseudo-Anosov pieces contribute their own fixed-point counts (carried
symbolically when not supplied); each flip-twist annulus adds 2.

Relative dimensions follow the two-case rule for a compact surface S with
a set P of boundary components:

    dim H_*(S, P) = dim H_*(S)      if P is empty or all of the boundary,
    dim H_*(S, P) = dim H_*(S) - 2  otherwise,

with dim H_*(S) the Betti sum (1, 2g+b-1, 0) for b > 0 and (1, 2g, 1) for a
closed S.  Differences of two breakdowns are exact integers whenever their
symbolic terms agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

from .core import DomainError, Opaque
from .surface_map import (
    FIXED,
    FLIP_TWIST,
    PERIODIC,
    PERMUTED,
    PSEUDO_ANOSOV,
    TWIST_FULL,
    TWIST_PARTIAL,
    Piece,
    StandardFormMap,
    region_sides,
    require_valid,
)


@dataclass(frozen=True)
class Partition:
    """Fixed pieces split by their pseudo-Anosov contacts, plus the rest."""

    isolated_fixed: tuple[str, ...]            # fixed, no pA contact
    single_pa_fixed: tuple[tuple[str, int], ...]   # piece id -> prongs at its pA circle
    multi_pa_fixed: tuple[tuple[str, int], ...]    # piece id -> total prongs
    nonfixed_periodic: tuple[str, ...]         # periodic and permuted pieces
    pseudo_anosov: tuple[str, ...]
    flip_count: int


@dataclass(frozen=True)
class DimBreakdown:
    concrete: int
    opaque: tuple[str, ...]            # sorted multiset of symbolic tokens
    per_region: tuple[tuple[str, str], ...]

    def per_region_map(self) -> dict[str, str]:
        return dict(self.per_region)


def betti_sum(genus: int, boundary: int) -> int:
    if boundary > 0:
        return 1 + (2 * genus + boundary - 1)
    return 2 + 2 * genus


def relative_dim(genus: int, boundary: int, negative: int) -> int:
    """dim H_*(S, P) for |P| = negative boundary components of S."""
    total = betti_sum(genus, boundary)
    if negative == 0 or negative == boundary:
        return total
    return total - 2


def _pa_contacts(m: StandardFormMap, piece: Piece) -> list[tuple[str, int]]:
    """(circle, prong count) for each boundary slot whose far side is pseudo-Anosov."""
    sides = region_sides(m)
    pieces_by_id = {p.id: p for p in m.pieces}
    contacts = []
    for cid in piece.boundary:
        incs = list(sides.get(cid, []))
        incs.remove(("piece", piece.id))
        if incs and incs[0][0] == "piece":
            far = pieces_by_id[incs[0][1]]
            if far.kind == PSEUDO_ANOSOV:
                contacts.append((cid, far.prong_map()[cid]))
    return contacts


def partition(m: StandardFormMap) -> Partition:
    """Split the regions of a valid closed map of genus >= 2."""
    require_valid(m)
    if m.surface_boundary:
        raise DomainError("partition requires a closed surface")
    if m.genus < 2:
        raise DomainError("partition requires genus >= 2")

    sides = region_sides(m)
    pieces_by_id = {p.id: p for p in m.pieces}
    for p in m.pieces:
        if p.kind != FIXED:
            continue
        for cid in p.boundary:
            for tag, rid in sides.get(cid, []):
                if tag == "piece" and rid != p.id and pieces_by_id[rid].kind == PERIODIC:
                    raise DomainError(
                        f"fixed piece {p.id!r} abuts periodic piece {rid!r}")

    isolated: list[str] = []
    single: list[tuple[str, int]] = []
    multi: list[tuple[str, int]] = []
    periodic_like: list[str] = []
    pa: list[str] = []
    for p in sorted(m.pieces, key=lambda p: p.id):
        if p.kind == FIXED:
            contacts = _pa_contacts(m, p)
            if not contacts:
                isolated.append(p.id)
            elif len(contacts) == 1:
                single.append((p.id, contacts[0][1]))
            else:
                multi.append((p.id, sum(n for _, n in contacts)))
        elif p.kind in (PERIODIC, PERMUTED):
            periodic_like.append(p.id)
        else:
            pa.append(p.id)
    flips = sum(1 for a in m.annuli if a.kind == FLIP_TWIST)
    return Partition(tuple(isolated), tuple(single), tuple(multi),
                     tuple(periodic_like), tuple(pa), flips)


def boundary_signs(m: StandardFormMap, part: Partition) -> dict[tuple[str, str], int]:
    """Deterministic sign pattern on the boundary circles of fixed pieces.

    Twist-abutting circles take the twist's sign.  The pA-abutting circle of
    a single-contact piece is negative.  A multi-contact piece gets one
    negative designee (its least pA circle) and one positive designee (its
    least unconstrained circle); everything else unconstrained is positive.
    """
    annuli_by_id = {a.id: a for a in m.annuli}
    sides = region_sides(m)
    single = dict(part.single_pa_fixed)
    multi = dict(part.multi_pa_fixed)
    signs: dict[tuple[str, str], int] = {}
    for p in m.pieces:
        if p.kind != FIXED:
            continue
        twist_sign: dict[str, int] = {}
        pa_circles: list[str] = []
        for cid in p.boundary:
            incs = list(sides.get(cid, []))
            incs.remove(("piece", p.id))
            if not incs:
                continue
            tag, rid = incs[0]
            if tag == "annulus":
                a = annuli_by_id[rid]
                if a.kind in (TWIST_FULL, TWIST_PARTIAL):
                    twist_sign[cid] = a.sign
            elif tag == "piece" and rid != p.id:
                far = next(q for q in m.pieces if q.id == rid)
                if far.kind == PSEUDO_ANOSOV:
                    pa_circles.append(cid)

        negative_designee: str | None = None
        if p.id in single:
            negative_designee = pa_circles[0]
        elif p.id in multi:
            if len(set(p.boundary)) < 2:
                raise DomainError(f"piece {p.id!r} has too few boundary circles for its contacts")
            negative_designee = min(pa_circles)
            # the least unconstrained circle becomes the positive designee;
            # it coincides with the +1 default below, but must exist
            if all(cid == negative_designee or cid in twist_sign
                   for cid in set(p.boundary)):
                raise DomainError(f"piece {p.id!r} admits no positive boundary component")

        for cid in sorted(set(p.boundary)):
            if cid == negative_designee:
                signs[(p.id, cid)] = -1
            elif cid in twist_sign:
                signs[(p.id, cid)] = twist_sign[cid]
            else:
                signs[(p.id, cid)] = +1
    return signs


def _negative_count(p: Piece, signs: dict[tuple[str, str], int]) -> int:
    # boundary components are slots; a doubled circle counts twice
    return sum(1 for cid in p.boundary if signs[(p.id, cid)] < 0)


def hf_symp_dim(m: StandardFormMap) -> DimBreakdown:
    """Evaluate the dimension formula on a valid closed map of genus >= 2."""
    part = partition(m)
    signs = boundary_signs(m, part)
    pieces_by_id = {p.id: p for p in m.pieces}
    single = dict(part.single_pa_fixed)
    multi = dict(part.multi_pa_fixed)

    concrete = 0
    opaque: list[str] = []
    per_region: list[tuple[str, str]] = []

    for pid in part.isolated_fixed:
        p = pieces_by_id[pid]
        d = relative_dim(p.genus, len(p.boundary), _negative_count(p, signs))
        concrete += d
        per_region.append((pid, f"relative homology {d}"))

    for pid, prong in single:
        p = pieces_by_id[pid]
        # puncture the piece: one extra boundary circle, never negative
        d = relative_dim(p.genus, len(p.boundary) + 1, _negative_count(p, signs))
        concrete += d + (prong - 1)
        per_region.append((pid, f"punctured relative homology {d} + prongs {prong - 1}"))

    for pid, prongs in multi:
        p = pieces_by_id[pid]
        d = relative_dim(p.genus, len(p.boundary), _negative_count(p, signs))
        concrete += d + prongs
        per_region.append((pid, f"relative homology {d} + prongs {prongs}"))

    for pid in part.nonfixed_periodic:
        p = pieces_by_id[pid]
        value = p.lefschetz
        if p.kind == PERMUTED and value is None:
            value = 0  # permuted pieces carry no fixed points unless overridden
        if isinstance(value, Opaque) or value is None:
            opaque.append(f"lefschetz:{pid}")
            per_region.append((pid, "lefschetz (opaque)"))
        else:
            if value < 0:
                raise DomainError(f"lefschetz value for {pid!r} must be >= 0")
            concrete += value
            per_region.append((pid, f"lefschetz {value}"))

    for pid in part.pseudo_anosov:
        p = pieces_by_id[pid]
        value = p.pa_fixed_count
        if isinstance(value, Opaque) or value is None:
            opaque.append(f"interior-fixed:{pid}")
            per_region.append((pid, "interior fixed points (opaque)"))
        else:
            concrete += value
            per_region.append((pid, f"interior fixed points {value}"))

    concrete += 2 * part.flip_count
    if part.flip_count:
        per_region.append(("flip-twists", f"2 x {part.flip_count}"))

    return DimBreakdown(concrete, tuple(sorted(opaque)), tuple(per_region))


def dim_difference(a: DimBreakdown, b: DimBreakdown) -> int:
    """Exact difference a - b; defined only when symbolic terms cancel."""
    if Counter(a.opaque) != Counter(b.opaque):
        raise DomainError("difference not determined: opaque terms do not match")
    return a.concrete - b.concrete


def bind_opaque(m: StandardFormMap, values: dict[str, int]) -> StandardFormMap:
    """Replace opaque fixed-point counts by the given values, piece by piece."""
    new_pieces = []
    unused = set(values)
    for p in m.pieces:
        if p.id in values:
            v = values[p.id]
            if v < 0:
                raise DomainError(f"bound value for {p.id!r} must be >= 0")
            unused.discard(p.id)
            if p.kind in (PERIODIC, PERMUTED):
                p = replace(p, lefschetz=v)
            elif p.kind == PSEUDO_ANOSOV:
                p = replace(p, pa_fixed_count=v)
            else:
                raise DomainError(f"piece {p.id!r} carries no opaque count")
        new_pieces.append(p)
    if unused:
        raise DomainError(f"no such piece: {sorted(unused)}")
    return replace(m, pieces=tuple(new_pieces))

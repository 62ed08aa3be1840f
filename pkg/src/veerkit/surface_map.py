"""Decorated region graphs for surface homeomorphisms in normal form.

A map is stored as the pattern of its invariant annuli and complementary
pieces: circles are the cutting curves (plus surface boundary), pieces are
the complementary regions (fixed / periodic / pseudo-Anosov / permuted),
and annuli are the twist, flip-twist and fixed annuli of the invariant set.

Twist functions are abstracted to (sign, full/partial, fraction); nothing
downstream reads more than that.  Fixed annuli are canonically pieces of
genus 0 with two boundary circles; an `annuli` entry of kind "fixed" is an
accepted alias for such a piece and must agree with it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    OPAQUE,
    DomainError,
    InputError,
    Opaque,
    Violation,
    fraction_from_json,
    fraction_to_json,
    opaque_or_int_from_json,
    opaque_or_int_to_json,
)

FIXED = "fixed"
PERIODIC = "periodic"
PSEUDO_ANOSOV = "pseudo_anosov"
PERMUTED = "permuted"
PIECE_KINDS = (FIXED, PERIODIC, PSEUDO_ANOSOV, PERMUTED)

TWIST_FULL = "twist_full"
TWIST_PARTIAL = "twist_partial"
FLIP_TWIST = "flip_twist"
FIXED_ANNULUS = "fixed"
ANNULUS_KINDS = (TWIST_FULL, TWIST_PARTIAL, FLIP_TWIST, FIXED_ANNULUS)


@dataclass(frozen=True)
class Circle:
    id: str
    is_surface_boundary: bool = False


@dataclass(frozen=True)
class Piece:
    id: str
    kind: str
    genus: int = 0
    boundary: tuple[str, ...] = ()
    period: int | None = None
    lefschetz: int | Opaque | None = None
    pa_fixed_count: int | Opaque | None = None
    prongs: tuple[tuple[str, int], ...] = ()
    orbit: str | None = None

    def prong_map(self) -> dict[str, int]:
        return dict(self.prongs)

    def is_annular(self) -> bool:
        return self.genus == 0 and len(self.boundary) == 2

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)


@dataclass(frozen=True)
class Annulus:
    id: str
    kind: str
    sides: tuple[str, str]
    sign: int | None = None
    fraction: Fraction | None = None


@dataclass(frozen=True)
class StandardFormMap:
    circles: tuple[Circle, ...]
    pieces: tuple[Piece, ...]
    annuli: tuple[Annulus, ...]
    surface_boundary: tuple[str, ...]
    genus: int
    boundary_count: int

    def circle(self, cid: str) -> Circle:
        for c in self.circles:
            if c.id == cid:
                return c
        raise InputError(f"unknown circle id {cid!r}")

    def piece(self, pid: str) -> Piece:
        for p in self.pieces:
            if p.id == pid:
                return p
        raise InputError(f"unknown piece id {pid!r}")


# A boundary circle either carries a stack of twisting, sits on a fixed
# piece, or touches a region that moves it.

@dataclass(frozen=True)
class MultitwistStub:
    eps: int
    k: int
    r: Fraction

    def total(self) -> Fraction:
        return Fraction(self.eps * self.k) + self.r


@dataclass(frozen=True)
class DirectlyFixed:
    piece_id: str


@dataclass(frozen=True)
class NonTrivialBoundary:
    region_id: str


def normalize_stub(total: Fraction) -> MultitwistStub:
    """Split a total twisting amount as eps*k + r with k >= 0 and |r| < 1."""
    total = Fraction(total)
    if total == 0:
        return MultitwistStub(1, 0, Fraction(0))
    eps = 1 if total > 0 else -1
    k = abs(total).numerator // abs(total).denominator
    r = total - eps * k
    return MultitwistStub(eps, k, r)


# --- incidence ----------------------------------------------------------------


def _alias_piece_ids(m: StandardFormMap) -> set[str]:
    piece_ids = {p.id for p in m.pieces}
    return {a.id for a in m.annuli if a.kind == FIXED_ANNULUS and a.id in piece_ids}


def region_sides(m: StandardFormMap) -> dict[str, list[tuple[str, str]]]:
    """Map circle id -> list of (region kind tag, region id) incidences.

    Fixed-annulus alias records are skipped; their piece carries the sides.
    """
    aliases = _alias_piece_ids(m)
    sides: dict[str, list[tuple[str, str]]] = {c.id: [] for c in m.circles}
    for p in m.pieces:
        for cid in p.boundary:
            sides.setdefault(cid, []).append(("piece", p.id))
    for a in m.annuli:
        if a.kind == FIXED_ANNULUS and a.id in aliases:
            continue
        for cid in a.sides:
            sides.setdefault(cid, []).append(("annulus", a.id))
    return sides


def other_side(m: StandardFormMap, cid: str, this: tuple[str, str]) -> tuple[str, str] | None:
    """The region on the far side of circle `cid` from region `this`."""
    incs = region_sides(m).get(cid, [])
    remaining = list(incs)
    if this in remaining:
        remaining.remove(this)
    if not remaining:
        return None
    return remaining[0]


# --- validation ---------------------------------------------------------------


def validate(m: StandardFormMap) -> list[Violation]:
    """Check every structural axiom; an empty report means the map is valid."""
    out: list[Violation] = []
    circle_ids = [c.id for c in m.circles]
    if len(set(circle_ids)) != len(circle_ids):
        out.append(Violation("duplicate-id", "duplicate circle ids"))
    piece_ids = [p.id for p in m.pieces]
    if len(set(piece_ids)) != len(piece_ids):
        out.append(Violation("duplicate-id", "duplicate piece ids"))
    annulus_ids = [a.id for a in m.annuli]
    if len(set(annulus_ids)) != len(annulus_ids):
        out.append(Violation("duplicate-id", "duplicate annulus ids"))
    known = set(circle_ids)

    aliases = _alias_piece_ids(m)
    pieces_by_id = {p.id: p for p in m.pieces}
    for a in m.annuli:
        if a.id in pieces_by_id and a.kind != FIXED_ANNULUS:
            out.append(Violation("duplicate-id", "annulus id collides with a piece", (a.id,)))

    # referential integrity
    for p in m.pieces:
        for cid in p.boundary:
            if cid not in known:
                out.append(Violation("unknown-circle", "piece boundary names unknown circle", (p.id, cid)))
        for cid, _ in p.prongs:
            if cid not in p.boundary:
                out.append(Violation("prong-circle", "prong data names a non-boundary circle", (p.id, cid)))
    for a in m.annuli:
        for cid in a.sides:
            if cid not in known:
                out.append(Violation("unknown-circle", "annulus side names unknown circle", (a.id, cid)))
    for cid in m.surface_boundary:
        if cid not in known:
            out.append(Violation("unknown-circle", "surface boundary names unknown circle", (cid,)))

    declared_boundary = set(m.surface_boundary)
    for c in m.circles:
        if c.is_surface_boundary != (c.id in declared_boundary):
            out.append(Violation("boundary-flag", "circle flag disagrees with surface_boundary list", (c.id,)))
    if len(m.surface_boundary) != m.boundary_count:
        out.append(Violation("meta", "boundary_count disagrees with surface_boundary list"))

    if out:
        return out  # incidence checks below assume ids resolve

    # per-piece decoration rules
    for p in m.pieces:
        if p.kind not in PIECE_KINDS:
            out.append(Violation("piece-kind", f"unknown piece kind {p.kind!r}", (p.id,)))
            continue
        if p.genus < 0:
            out.append(Violation("piece-genus", "negative genus", (p.id,)))
        if p.kind == FIXED:
            if p.period is not None or p.prongs or p.orbit is not None:
                out.append(Violation("piece-fields", "fixed piece carries dynamical data", (p.id,)))
            if p.lefschetz is not None or p.pa_fixed_count is not None:
                out.append(Violation("piece-fields", "fixed piece carries fixed-point counts", (p.id,)))
        if p.kind == PERIODIC:
            if p.period is None or p.period < 2:
                out.append(Violation("piece-period", "periodic piece needs period >= 2", (p.id,)))
            lf = p.lefschetz
            if lf is not None and not isinstance(lf, Opaque) and lf < 0:
                out.append(Violation("piece-lefschetz", "lefschetz bound value must be >= 0", (p.id,)))
        if p.kind == PSEUDO_ANOSOV:
            prongs = p.prong_map()
            for cid in p.boundary:
                if prongs.get(cid, 0) < 1:
                    out.append(Violation("prongs", "pseudo-Anosov piece lacks a prong count >= 1", (p.id, cid)))
            fc = p.pa_fixed_count
            if fc is not None and not isinstance(fc, Opaque) and fc < 0:
                out.append(Violation("piece-fixed-count", "fixed-point count must be >= 0", (p.id,)))
        if p.kind == PERMUTED:
            if p.period is None or p.period < 2:
                out.append(Violation("piece-period", "permuted piece needs period >= 2", (p.id,)))
            if p.orbit is None:
                out.append(Violation("piece-orbit", "permuted piece needs an orbit id", (p.id,)))
        if p.is_annular() and p.kind != FIXED:
            out.append(Violation("annular-piece", "an annular piece must be fixed", (p.id,)))

    # permuted orbits: size equals period, identical combinatorics
    orbits: dict[str, list[Piece]] = {}
    for p in m.pieces:
        if p.kind == PERMUTED and p.orbit is not None:
            orbits.setdefault(p.orbit, []).append(p)
    for oid, members in orbits.items():
        periods = {p.period for p in members}
        if len(periods) != 1:
            out.append(Violation("orbit", "orbit members disagree on period", (oid,)))
            continue
        period = members[0].period
        if len(members) != period:
            out.append(Violation("orbit", f"orbit size {len(members)} != period {period}", (oid,)))
        if len({(p.genus, len(p.boundary)) for p in members}) != 1:
            out.append(Violation("orbit", "orbit members are not pairwise homeomorphic", (oid,)))

    # fixed-annulus alias agreement
    for a in m.annuli:
        if a.kind != FIXED_ANNULUS:
            continue
        p = pieces_by_id.get(a.id)
        if p is None:
            out.append(Violation("fixed-annulus", "fixed annulus record has no matching piece", (a.id,)))
        elif p.kind != FIXED or not p.is_annular() or set(p.boundary) != set(a.sides):
            out.append(Violation("fixed-annulus", "fixed annulus record disagrees with its piece", (a.id,)))

    # twist annulus decorations
    for a in m.annuli:
        if a.kind not in ANNULUS_KINDS:
            out.append(Violation("annulus-kind", f"unknown annulus kind {a.kind!r}", (a.id,)))
            continue
        if a.kind in (TWIST_FULL, TWIST_PARTIAL):
            if a.sign not in (1, -1):
                out.append(Violation("twist-sign", "twist annulus needs sign +-1", (a.id,)))
        if a.kind == TWIST_PARTIAL:
            f = a.fraction
            if f is None or not (0 < abs(f) < 1):
                out.append(Violation("twist-fraction", "partial twist fraction must lie in (0,1) in absolute value", (a.id,)))
            elif a.sign is not None and (f > 0) != (a.sign > 0):
                out.append(Violation("twist-fraction", "partial twist fraction sign disagrees with sign", (a.id,)))
        elif a.kind != TWIST_PARTIAL and a.fraction is not None:
            out.append(Violation("twist-fraction", "only partial twists carry a fraction", (a.id,)))

    # incidence counts
    sides = region_sides(m)
    for c in m.circles:
        want = 1 if c.is_surface_boundary else 2
        got = len(sides.get(c.id, []))
        if got != want:
            out.append(Violation("incidence", f"circle has {got} region sides, expected {want}", (c.id,)))

    if any(v.code == "incidence" for v in out):
        return out

    # connectedness of the region graph
    nodes = [("piece", p.id) for p in m.pieces]
    nodes += [("annulus", a.id) for a in m.annuli if not (a.kind == FIXED_ANNULUS and a.id in aliases)]
    if nodes:
        adjacency: dict[tuple[str, str], set[tuple[str, str]]] = {n: set() for n in nodes}
        for incs in sides.values():
            for x in incs:
                for y in incs:
                    if x != y:
                        adjacency[x].add(y)
        seen = {nodes[0]}
        queue = [nodes[0]]
        while queue:
            for nxt in adjacency[queue.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if len(seen) != len(nodes):
            out.append(Violation("connectivity", "region graph is not connected"))

    # Euler characteristic bookkeeping (annuli contribute 0)
    chi_pieces = sum(p.euler_characteristic() for p in m.pieces)
    chi_declared = 2 - 2 * m.genus - m.boundary_count
    if chi_pieces != chi_declared:
        out.append(Violation(
            "euler", f"piece Euler characteristic {chi_pieces} != declared {chi_declared}"))

    def is_fixed_region(tag: str, rid: str) -> bool:
        if tag == "piece":
            return pieces_by_id[rid].kind == FIXED
        return False  # alias annuli were skipped; remaining annuli are twists/flips

    def is_twist(tag: str, rid: str) -> int | None:
        if tag != "annulus":
            return None
        a = next(x for x in m.annuli if x.id == rid)
        if a.kind in (TWIST_FULL, TWIST_PARTIAL):
            return a.sign
        return None

    # minimality: no cutting circle with fixed regions on both sides
    for c in m.circles:
        if c.is_surface_boundary:
            continue
        incs = sides[c.id]
        if len(incs) == 2 and all(is_fixed_region(*x) for x in incs):
            out.append(Violation("minimality", "circle abuts fixed regions on both sides", (c.id,)))

    # same-sign twist regions may not share a circle directly
    for c in m.circles:
        incs = sides[c.id]
        if len(incs) == 2:
            s0, s1 = is_twist(*incs[0]), is_twist(*incs[1])
            if s0 is not None and s1 is not None and s0 == s1:
                out.append(Violation(
                    "missing separating fixed annulus",
                    "same-sign twist regions share a circle directly",
                    (c.id, incs[0][1], incs[1][1])))

    # parallel twist regions (separated only by fixed annuli) carry one sign,
    # and each such chain holds at most two partial twists, at its ends
    out.extend(_check_multitwist_chains(m, sides, pieces_by_id))
    return out


def _check_multitwist_chains(m, sides, pieces_by_id) -> list[Violation]:
    annuli_by_id = {a.id: a for a in m.annuli}
    aliases = _alias_piece_ids(m)

    def node_kind(tag: str, rid: str) -> str:
        if tag == "annulus":
            return annuli_by_id[rid].kind
        p = pieces_by_id[rid]
        if p.kind == FIXED and p.is_annular():
            return FIXED_ANNULUS
        return "core"

    # walk maximal chains of twist annuli and fixed annuli
    twists = [a for a in m.annuli if a.kind in (TWIST_FULL, TWIST_PARTIAL)]
    visited: set[str] = set()
    out: list[Violation] = []
    for start in twists:
        if start.id in visited:
            continue
        chain = _collect_chain(m, sides, annuli_by_id, pieces_by_id, start)
        for member in chain:
            if member[0] == "annulus" and annuli_by_id[member[1]].kind in (TWIST_FULL, TWIST_PARTIAL):
                visited.add(member[1])
        twist_members = [annuli_by_id[rid] for tag, rid in chain
                         if tag == "annulus" and annuli_by_id[rid].kind in (TWIST_FULL, TWIST_PARTIAL)]
        # sign uniformity across fixed-annulus separations: consecutive twists
        # in the chain that are separated by a fixed annulus must agree
        for i in range(len(chain) - 2):
            a_tag, a_id = chain[i]
            f_tag, f_id = chain[i + 1]
            b_tag, b_id = chain[i + 2]
            if node_kind(a_tag, a_id) in (TWIST_FULL, TWIST_PARTIAL) \
                    and node_kind(f_tag, f_id) == FIXED_ANNULUS \
                    and node_kind(b_tag, b_id) in (TWIST_FULL, TWIST_PARTIAL):
                sa = annuli_by_id[a_id].sign
                sb = annuli_by_id[b_id].sign
                if sa != sb:
                    out.append(Violation(
                        "parallel-sign", "parallel twist regions carry opposite signs",
                        (a_id, f_id, b_id)))
        partial_positions = [i for i, a in enumerate(twist_members) if a.kind == TWIST_PARTIAL]
        if len(partial_positions) > 2:
            out.append(Violation("partial-count", "more than two partial twists in one multitwist region",
                                 tuple(a.id for a in twist_members if a.kind == TWIST_PARTIAL)))
        else:
            ends = {0, len(twist_members) - 1}
            for i in partial_positions:
                if i not in ends:
                    out.append(Violation("partial-placement", "partial twist not at the end of its multitwist region",
                                         (twist_members[i].id,)))
    return out


def _collect_chain(m, sides, annuli_by_id, pieces_by_id, start: Annulus) -> list[tuple[str, str]]:
    """Maximal run of twist/fixed annuli through `start`, as (tag, id) nodes."""

    def is_chain_node(tag: str, rid: str) -> bool:
        if tag == "annulus":
            return annuli_by_id[rid].kind in (TWIST_FULL, TWIST_PARTIAL, FIXED_ANNULUS)
        p = pieces_by_id[rid]
        return p.kind == FIXED and p.is_annular()

    def node_sides(tag: str, rid: str) -> tuple[str, str]:
        if tag == "annulus":
            return annuli_by_id[rid].sides
        p = pieces_by_id[rid]
        return (p.boundary[0], p.boundary[1])

    me = ("annulus", start.id)
    chain = [me]
    for direction in (0, 1):
        cur = me
        cur_circle = node_sides(*cur)[direction]
        guard = 0
        while guard < 10 * (len(m.pieces) + len(m.annuli) + 1):
            guard += 1
            nxt = other_side(m, cur_circle, cur)
            if nxt is None or not is_chain_node(*nxt) or nxt in chain:
                break
            if direction == 0:
                chain.insert(0, nxt)
            else:
                chain.append(nxt)
            a, b = node_sides(*nxt)
            cur_circle = b if a == cur_circle else a
            cur = nxt
    return chain


# --- structural operations ----------------------------------------------------


def require_valid(m: StandardFormMap) -> None:
    report = validate(m)
    if report:
        raise DomainError("invalid map: " + "; ".join(str(v) for v in report))


def inverse(m: StandardFormMap) -> StandardFormMap:
    """Negate all twisting; dynamical decorations are kept as given."""
    require_valid(m)
    flipped = []
    for a in m.annuli:
        if a.kind in (TWIST_FULL, TWIST_PARTIAL):
            flipped.append(replace(
                a,
                sign=-a.sign if a.sign is not None else None,
                fraction=-a.fraction if a.fraction is not None else None))
        else:
            flipped.append(a)
    return replace(m, annuli=tuple(flipped))


def is_identity(m: StandardFormMap) -> bool:
    require_valid(m)
    return not m.annuli and len(m.pieces) == 1 and m.pieces[0].kind == FIXED


def boundary_stub(m: StandardFormMap, b: str):
    """Classify the map's behaviour at a surface-boundary circle.

    Returns a MultitwistStub when `b` opens onto a chain of twisting, the
    total twisting normalized as eps*k + r; DirectlyFixed when `b` sits on a
    fixed piece (annular collars included); NonTrivialBoundary otherwise.
    """
    circle = m.circle(b)
    if not circle.is_surface_boundary or b not in m.surface_boundary:
        raise DomainError(f"circle {b!r} is not a surface boundary circle")
    sides = region_sides(m)
    incs = sides.get(b, [])
    if len(incs) != 1:
        raise DomainError(f"surface boundary circle {b!r} has {len(incs)} region sides")
    tag, rid = incs[0]
    pieces_by_id = {p.id: p for p in m.pieces}
    annuli_by_id = {a.id: a for a in m.annuli}

    if tag == "piece":
        p = pieces_by_id[rid]
        if p.kind == FIXED:
            return DirectlyFixed(p.id)
        return NonTrivialBoundary(p.id)
    a = annuli_by_id[rid]
    if a.kind == FLIP_TWIST:
        return NonTrivialBoundary(a.id)
    if a.kind == FIXED_ANNULUS:
        return DirectlyFixed(a.id)

    # walk the annular chain away from b, totalling the twisting
    total = Fraction(0)
    cur: tuple[str, str] = (tag, rid)
    cur_circle = b
    guard = 0
    while guard < 10 * (len(m.pieces) + len(m.annuli) + 1):
        guard += 1
        if cur[0] == "annulus":
            a = annuli_by_id[cur[1]]
            if a.kind == TWIST_FULL:
                total += a.sign
            elif a.kind == TWIST_PARTIAL:
                total += a.fraction
            elif a.kind == FLIP_TWIST:
                break
            span = a.sides
        else:
            p = pieces_by_id[cur[1]]
            if not (p.kind == FIXED and p.is_annular()):
                break  # reached a core region
            span = (p.boundary[0], p.boundary[1])
        far = span[1] if span[0] == cur_circle else span[0]
        nxt = other_side(m, far, cur)
        if nxt is None:
            break  # far circle is on the surface boundary
        cur, cur_circle = nxt, far
    return normalize_stub(total)


# --- serialization ------------------------------------------------------------


def to_json_dict(m: StandardFormMap) -> dict:
    """Canonical plain-dict form: ids sorted, rationals in lowest terms."""
    circles = [
        {"id": c.id, "is_surface_boundary": c.is_surface_boundary}
        for c in sorted(m.circles, key=lambda c: c.id)
    ]
    pieces = []
    for p in sorted(m.pieces, key=lambda p: p.id):
        rec: dict = {"id": p.id, "kind": p.kind, "genus": p.genus, "boundary": list(p.boundary)}
        if p.period is not None:
            rec["period"] = p.period
        if p.lefschetz is not None:
            rec["lefschetz"] = opaque_or_int_to_json(p.lefschetz)
        if p.pa_fixed_count is not None:
            rec["pa_fixed_count"] = opaque_or_int_to_json(p.pa_fixed_count)
        if p.prongs:
            rec["prongs"] = {cid: n for cid, n in sorted(p.prongs)}
        if p.orbit is not None:
            rec["orbit"] = p.orbit
        pieces.append(rec)
    alias_ids = _alias_piece_ids(m)
    annuli = []
    for a in sorted(m.annuli, key=lambda a: a.id):
        if a.kind == FIXED_ANNULUS and a.id in alias_ids:
            continue  # the piece record is authoritative
        rec = {"id": a.id, "kind": a.kind, "sides": list(a.sides)}
        if a.sign is not None:
            rec["sign"] = a.sign
        if a.fraction is not None:
            rec["fraction"] = fraction_to_json(a.fraction)
        annuli.append(rec)
    return {
        "circles": circles,
        "pieces": pieces,
        "annuli": annuli,
        "surface_boundary": sorted(m.surface_boundary),
        "meta": {"genus": m.genus, "boundary_count": m.boundary_count},
    }


def from_json_dict(doc) -> StandardFormMap:
    if not isinstance(doc, dict):
        raise InputError("map document must be a JSON object")
    for key in ("circles", "pieces", "annuli", "surface_boundary", "meta"):
        if key not in doc:
            raise InputError(f"map document missing key {key!r}")
    try:
        circles = tuple(
            Circle(str(c["id"]), bool(c.get("is_surface_boundary", False)))
            for c in doc["circles"])
        pieces = []
        for p in doc["pieces"]:
            kind = p["kind"]
            if kind not in PIECE_KINDS:
                raise InputError(f"unknown piece kind {kind!r}")
            lefschetz = p.get("lefschetz")
            if lefschetz is not None:
                lefschetz = opaque_or_int_from_json(lefschetz, "lefschetz")
            pa_fixed = p.get("pa_fixed_count")
            if pa_fixed is not None:
                pa_fixed = opaque_or_int_from_json(pa_fixed, "pa_fixed_count")
            prongs = tuple(sorted((str(k), int(v)) for k, v in p.get("prongs", {}).items()))
            pieces.append(Piece(
                id=str(p["id"]),
                kind=kind,
                genus=int(p["genus"]),
                boundary=tuple(str(c) for c in p["boundary"]),
                period=int(p["period"]) if "period" in p else None,
                lefschetz=lefschetz,
                pa_fixed_count=pa_fixed,
                prongs=prongs,
                orbit=str(p["orbit"]) if "orbit" in p else None,
            ))
        annuli = []
        for a in doc["annuli"]:
            kind = a["kind"]
            if kind not in ANNULUS_KINDS:
                raise InputError(f"unknown annulus kind {kind!r}")
            s = a["sides"]
            if len(s) != 2:
                raise InputError("annulus sides must be a pair")
            annuli.append(Annulus(
                id=str(a["id"]),
                kind=kind,
                sides=(str(s[0]), str(s[1])),
                sign=int(a["sign"]) if "sign" in a else None,
                fraction=fraction_from_json(a["fraction"]) if "fraction" in a else None,
            ))
        meta = doc["meta"]
        return StandardFormMap(
            circles=circles,
            pieces=tuple(pieces),
            annuli=tuple(annuli),
            surface_boundary=tuple(str(c) for c in doc["surface_boundary"]),
            genus=int(meta["genus"]),
            boundary_count=int(meta["boundary_count"]),
        )
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed map document: {exc}") from exc


def dumps(m: StandardFormMap) -> str:
    return json.dumps(to_json_dict(m), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> StandardFormMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_json_dict(doc)


# --- convenience builders (used by corpus, gluing, tests) ----------------------


def make_map(circles: Iterable[Circle], pieces: Iterable[Piece], annuli: Iterable[Annulus],
             surface_boundary: Iterable[str], genus: int, boundary_count: int) -> StandardFormMap:
    return StandardFormMap(
        circles=tuple(circles),
        pieces=tuple(pieces),
        annuli=tuple(annuli),
        surface_boundary=tuple(surface_boundary),
        genus=genus,
        boundary_count=boundary_count,
    )


def identity_map(genus: int, piece_id: str = "whole") -> StandardFormMap:
    return make_map(
        circles=(), pieces=(Piece(piece_id, FIXED, genus=genus),), annuli=(),
        surface_boundary=(), genus=genus, boundary_count=0)

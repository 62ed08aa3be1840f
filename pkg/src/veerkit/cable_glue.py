"""Cable boundary models, gluing along the boundary, and the dichotomy check.

`build_cable_boundary_model(n, side)` produces the normal form of the cable
monodromy near its boundary: a single partial twist of fraction
side/(9n+3) leading into a periodic piece of genus 3n and period 9n+3 with
a cyclically permuted triple hanging off it.  The twisting fraction is the
whole point; the interior pieces carry opaque fixed-point counts that are
identical for the two sides and cancel in differences.

`glue` joins a single-boundary map to a cable model along the boundary,
inserting a separating fixed annulus when same-sign twist regions would
otherwise meet.  `rv_via_symplectic` compares the dimension breakdowns of
the two glued maps; the difference lands in {-2, 0, +2} and decides the
veering type.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .core import OPAQUE, DomainError
from .floer_symp import DimBreakdown, bind_opaque, dim_difference, hf_symp_dim
from .surface_map import (
    FIXED,
    FIXED_ANNULUS,
    FLIP_TWIST,
    PERIODIC,
    PERMUTED,
    PSEUDO_ANOSOV,
    TWIST_FULL,
    TWIST_PARTIAL,
    Annulus,
    Circle,
    DirectlyFixed,
    MultitwistStub,
    NonTrivialBoundary,
    Piece,
    StandardFormMap,
    boundary_stub,
    is_identity,
    make_map,
    region_sides,
    require_valid,
    validate,
)
from .twist_calculus import IDENTITY, LEFT_VEERING, NEITHER, RIGHT_VEERING


@dataclass(frozen=True)
class CableBoundaryModel:
    n: int
    side: int
    map: StandardFormMap
    boundary: str
    stub: MultitwistStub

    @property
    def fiber_genus(self) -> int:
        return 3 + 3 * self.n


def build_cable_boundary_model(n: int, side: int) -> CableBoundaryModel:
    """Boundary model of the cable monodromy with twisting side/(9n+3)."""
    if n < 1:
        raise DomainError("cable parameter n must be >= 1")
    if side not in (1, -1):
        raise DomainError("side must be +1 or -1")
    fraction = Fraction(side, 9 * n + 3)
    circles = [Circle("bdry", True)] + [Circle(f"c{i}") for i in range(1, 5)]
    partial = Annulus("partial", TWIST_PARTIAL, ("bdry", "c1"), sign=side, fraction=fraction)
    t_piece = Piece("T", PERIODIC, genus=3 * n, boundary=("c1", "c2", "c3", "c4"),
                    period=9 * n + 3, lefschetz=OPAQUE)
    permuted = [
        Piece(f"G{i}", PERMUTED, genus=1, boundary=(f"c{i + 1}",), period=3, orbit="G")
        for i in range(1, 4)
    ]
    m = make_map(
        circles=circles,
        pieces=[t_piece] + permuted,
        annuli=[partial],
        surface_boundary=("bdry",),
        genus=3 + 3 * n,
        boundary_count=1,
    )
    require_valid(m)
    return CableBoundaryModel(n, side, m, "bdry", MultitwistStub(side, 0, fraction))


def _prefixed(m: StandardFormMap, prefix: str) -> StandardFormMap:
    def px(i: str) -> str:
        return prefix + i

    circles = tuple(replace(c, id=px(c.id)) for c in m.circles)
    pieces = tuple(
        replace(p, id=px(p.id), boundary=tuple(px(c) for c in p.boundary),
                prongs=tuple((px(c), k) for c, k in p.prongs),
                orbit=px(p.orbit) if p.orbit is not None else None)
        for p in m.pieces)
    annuli = tuple(
        replace(a, id=px(a.id), sides=(px(a.sides[0]), px(a.sides[1])))
        for a in m.annuli)
    return replace(m, circles=circles, pieces=pieces, annuli=annuli,
                   surface_boundary=tuple(px(c) for c in m.surface_boundary))


def _outer_twist_sign(h: StandardFormMap, b: str) -> int | None:
    """Sign of the twist annulus directly at the boundary circle, if any."""
    annuli_by_id = {a.id: a for a in h.annuli}
    for tag, rid in region_sides(h).get(b, []):
        if tag == "annulus" and annuli_by_id[rid].kind in (TWIST_FULL, TWIST_PARTIAL):
            return annuli_by_id[rid].sign
    return None


def glue(h: StandardFormMap, g: CableBoundaryModel) -> StandardFormMap:
    """Close up h with the cable model along the single boundary circle."""
    require_valid(h)
    if len(h.surface_boundary) != 1:
        raise DomainError("glue requires a single-boundary map")
    if is_identity(h):
        raise DomainError("glue requires a map not isotopic to the identity")
    stub = boundary_stub(h, h.surface_boundary[0])
    if isinstance(stub, NonTrivialBoundary):
        raise DomainError("glue requires the identity on the boundary circle")

    hs = _prefixed(h, "S.")
    gs = _prefixed(g.map, "F.")
    junction = hs.surface_boundary[0]

    circles = [replace(c, is_surface_boundary=False) if c.id == junction else c
               for c in hs.circles]
    circles += [c for c in gs.circles if c.id != "F.bdry"]
    pieces = list(hs.pieces) + list(gs.pieces)
    annuli = list(hs.annuli)

    outer_sign = _outer_twist_sign(hs, junction)
    same_sign_meeting = outer_sign is not None and outer_sign == g.side
    if same_sign_meeting:
        # parallel twist regions must be separated by a fixed annulus
        seam = Circle("F.seam")
        circles.append(seam)
        pieces.append(Piece("F.seam_annulus", FIXED, genus=0, boundary=(junction, "F.seam")))
        partial_outer = "F.seam"
    else:
        partial_outer = junction

    for a in gs.annuli:
        if a.id == "F.partial":
            annuli.append(replace(a, sides=(partial_outer, a.sides[1])))
        else:
            annuli.append(a)

    glued = make_map(
        circles=circles,
        pieces=pieces,
        annuli=annuli,
        surface_boundary=(),
        genus=h.genus + g.fiber_genus,
        boundary_count=0,
    )
    report = validate(glued)
    if report:
        raise DomainError("glued map failed validation: " + "; ".join(str(v) for v in report))
    return glued


@dataclass(frozen=True)
class DichotomyResult:
    difference: int
    verdict: str
    plus: DimBreakdown
    minus: DimBreakdown


def rv_via_symplectic(h: StandardFormMap, n: int = 1) -> DichotomyResult:
    """Decide veering by comparing glued dimension breakdowns for the two sides."""
    plus_map = glue(h, build_cable_boundary_model(n, +1))
    minus_map = glue(h, build_cable_boundary_model(n, -1))
    plus = hf_symp_dim(plus_map)
    minus = hf_symp_dim(minus_map)
    diff = dim_difference(plus, minus)
    if diff == 2:
        verdict = RIGHT_VEERING
    elif diff == -2:
        verdict = LEFT_VEERING
    elif diff == 0:
        verdict = NEITHER
    else:
        raise DomainError(f"dimension difference {diff} outside {{-2, 0, +2}}")
    return DichotomyResult(diff, verdict, plus, minus)


# --- seeded generation of normal-form monodromies -------------------------------
#
# The generator builds small valid single-boundary maps covering the three
# boundary situations (positive stack, negative stack, directly fixed) with
# assorted interiors.  It is the substrate for the randomized dichotomy
# harness and the inverse-invariance checks; every draw comes from the
# caller's RNG so runs are reproducible.

_FRACTIONS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4),
              Fraction(3, 4), Fraction(2, 5), Fraction(1, 6))


class _Builder:
    def __init__(self):
        self.circles: list[Circle] = []
        self.pieces: list[Piece] = []
        self.annuli: list[Annulus] = []
        self.counter = 0

    def fresh(self, stem: str) -> str:
        self.counter += 1
        return f"{stem}{self.counter}"

    def circle(self, boundary: bool = False, cid: str | None = None) -> str:
        cid = cid or self.fresh("c")
        self.circles.append(Circle(cid, boundary))
        return cid


def _rand_count(rng: random.Random, opaque_chance: float = 0.6):
    return OPAQUE if rng.random() < opaque_chance else rng.randint(0, 3)


def _attach_core(bld: _Builder, rng: random.Random, at: str, kind: str) -> None:
    """Terminate a chain at circle `at` with an interior region."""
    if kind == "fixed":
        bld.pieces.append(Piece(bld.fresh("P"), FIXED, genus=rng.randint(1, 2), boundary=(at,)))
    elif kind == "periodic":
        bld.pieces.append(Piece(
            bld.fresh("P"), PERIODIC, genus=rng.randint(1, 3), boundary=(at,),
            period=rng.randint(2, 9), lefschetz=_rand_count(rng)))
    elif kind == "pa":
        pid = bld.fresh("P")
        bld.pieces.append(Piece(
            pid, PSEUDO_ANOSOV, genus=rng.randint(1, 3), boundary=(at,),
            prongs=((at, rng.randint(1, 4)),), pa_fixed_count=_rand_count(rng)))
    elif kind == "collar_pa":
        mid = bld.circle()
        bld.pieces.append(Piece(bld.fresh("P"), FIXED, genus=0, boundary=(at, mid)))
        _attach_core(bld, rng, mid, "pa")
    elif kind == "flip":
        e1, e2 = bld.circle(), bld.circle()
        bld.pieces.append(Piece(
            bld.fresh("P"), PERIODIC, genus=rng.randint(1, 2), boundary=(at, e1, e2),
            period=2, lefschetz=_rand_count(rng)))
        bld.annuli.append(Annulus(bld.fresh("A"), FLIP_TWIST, (e1, e2)))
    elif kind == "permuted":
        f1, f2 = bld.circle(), bld.circle()
        orbit = bld.fresh("orb")
        bld.pieces.append(Piece(
            bld.fresh("P"), PERIODIC, genus=rng.randint(1, 2), boundary=(at, f1, f2),
            period=2, lefschetz=_rand_count(rng)))
        genus = rng.randint(1, 2)
        for f in (f1, f2):
            bld.pieces.append(Piece(
                bld.fresh("P"), PERMUTED, genus=genus, boundary=(f,), period=2, orbit=orbit))
    else:  # pragma: no cover
        raise ValueError(kind)


def _attach_stack(bld: _Builder, rng: random.Random, outer: str, sign: int,
                  k: int, fraction: Fraction | None) -> str:
    """Lay k full twists (separated by fixed annuli) and an optional partial.

    Returns the innermost circle of the chain, ready for a core.
    """
    cur = outer
    for i in range(k):
        nxt = bld.circle()
        bld.annuli.append(Annulus(bld.fresh("A"), TWIST_FULL, (cur, nxt), sign=sign))
        cur = nxt
        if i < k - 1 or fraction is not None:
            nxt = bld.circle()
            bld.pieces.append(Piece(bld.fresh("P"), FIXED, genus=0, boundary=(cur, nxt)))
            cur = nxt
    if fraction is not None:
        nxt = bld.circle()
        bld.annuli.append(Annulus(
            bld.fresh("A"), TWIST_PARTIAL, (cur, nxt), sign=sign, fraction=fraction))
        cur = nxt
    return cur


def random_monodromy(rng: random.Random) -> StandardFormMap:
    """A small valid single-boundary map, identity on the boundary, never the identity."""
    bld = _Builder()
    b = bld.circle(boundary=True, cid="b")
    situation = rng.choices(("stack+", "stack-", "fixed"), weights=(3, 3, 4))[0]

    if situation in ("stack+", "stack-"):
        sign = 1 if situation == "stack+" else -1
        core = rng.choices(("fixed", "periodic", "pa", "collar_pa", "flip", "permuted"),
                           weights=(2, 3, 3, 2, 1, 1))[0]
        if core == "fixed":
            k, fraction = rng.randint(1, 2), None
        else:
            k = rng.randint(0, 2)
            fraction = sign * rng.choice(_FRACTIONS)
            if k >= 1 and rng.random() < 0.3:
                fraction = None  # integer twisting, ends on the core directly
        inner = _attach_stack(bld, rng, b, sign, k, fraction)
        _attach_core(bld, rng, inner, core)
    else:
        extras = rng.randint(1, 2)
        genus = rng.choice((0, 1, 2))
        hub_circles = [b] + [bld.circle() for _ in range(extras)]
        bld.pieces.append(Piece(bld.fresh("P"), FIXED, genus=genus, boundary=tuple(hub_circles)))
        for cid in hub_circles[1:]:
            choice = rng.choices(("pos", "neg", "direct_pa"), weights=(4, 3, 3))[0]
            if choice == "direct_pa":
                _attach_core(bld, rng, cid, "pa")
            else:
                sign = 1 if choice == "pos" else -1
                k = rng.randint(0, 1)
                core = rng.choice(("periodic", "pa"))
                fraction = sign * rng.choice(_FRACTIONS)
                if k >= 1 and rng.random() < 0.3:
                    fraction = None
                inner = _attach_stack(bld, rng, cid, sign, k, fraction)
                _attach_core(bld, rng, inner, core)

    chi = sum(p.euler_characteristic() for p in bld.pieces)
    genus_total = (1 - chi) // 2
    m = make_map(bld.circles, bld.pieces, bld.annuli, (b,), genus_total, 1)
    require_valid(m)
    return m


def random_closed_map(rng: random.Random) -> StandardFormMap:
    """A valid closed map: a random monodromy glued to a random cable model."""
    h = random_monodromy(rng)
    model = build_cable_boundary_model(rng.randint(1, 3), rng.choice((1, -1)))
    return glue(h, model)


def bind_all_opaque(m: StandardFormMap, rng: random.Random) -> StandardFormMap:
    values = {}
    for p in m.pieces:
        if p.kind in (PERIODIC, PERMUTED) and (p.lefschetz is None or p.lefschetz == OPAQUE):
            values[p.id] = rng.randint(0, 4)
        elif p.kind == PSEUDO_ANOSOV and (p.pa_fixed_count is None or p.pa_fixed_count == OPAQUE):
            values[p.id] = rng.randint(0, 4)
    return bind_opaque(m, values) if values else m


def verify_prop_symp(trials: int, seed: int, cable_parameters=(1, 2, 3)) -> dict:
    """Randomized agreement check between the two veering routes.

    For each generated monodromy the dimension difference must lie in
    {-2, 0, +2}, agree across cable parameters, and match the boundary
    classifier's verdict.
    """
    from . import twist_calculus
    from .surface_map import to_json_dict

    failures = []
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        h = random_monodromy(rng)
        expected = twist_calculus.veering(h)
        seen = []
        for n in cable_parameters:
            result = rv_via_symplectic(h, n)
            seen.append((n, result.difference, result.verdict))
        problems = []
        if any(d not in (-2, 0, 2) for _, d, _ in seen):
            problems.append("difference outside {-2,0,+2}")
        if len({d for _, d, _ in seen}) != 1:
            problems.append("difference depends on cable parameter")
        if any(v != expected for _, _, v in seen):
            problems.append(f"verdict mismatch: classifier says {expected}")
        if problems:
            failures.append({
                "trial": i,
                "problems": problems,
                "results": [{"n": n, "difference": d, "verdict": v} for n, d, v in seen],
                "map": to_json_dict(h),
            })
    summary = {"trials": trials, "failures": len(failures), "seed": seed}
    if failures:
        summary["counterexamples"] = failures[:5]
    return summary

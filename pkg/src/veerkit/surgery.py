"""Corner-region homology and the zero-surgery next-to-top dimension.

`corner_homology` realizes a complex on the plane cells {i < 0, j >= k}:
each generator x occupies the cells (i, i + A(x)) inside the region, and the
differential keeps exactly the arrow components whose target cell stays in
the region (the region is a subquotient, so the induced map squares to
zero).  The region is finite since A is bounded above.

`build_J` composes a fibered complex with a synthetic companion model: two
generators in the companion's top two gradings, nothing in the third, all
in one nontorsion label, truncated below.  Only those gradings of the
companion are ever read downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .core import DomainError, label_to_str
from .cfk import Arrow, Gen, ReducedCFK, genus, require_valid, tensor

COMPANION_LABEL = ("s0",)
COMPANION_LABEL_MIRROR = ("s0~",)


@dataclass(frozen=True)
class SyntheticLModel:
    n: int
    side: int
    fiber_genus: int
    complex: ReducedCFK

    @property
    def top_grading(self) -> int:
        return 3 * self.fiber_genus + 3 * self.n


def build_companion_model(n: int, side: int, fiber_genus: int = 1) -> SyntheticLModel:
    """Truncated two-generator model of the cable companion's complex."""
    if n < 1:
        raise DomainError("cable parameter n must be >= 1")
    if side not in (1, -1):
        raise DomainError("side must be +1 or -1")
    if fiber_genus < 1:
        raise DomainError("fiber genus must be >= 1")
    top = 3 * fiber_genus + 3 * n
    label = COMPANION_LABEL if side == 1 else COMPANION_LABEL_MIRROR
    gens = (
        Gen("l_top", top, None, label),
        Gen("l_next", top - 1, None, label),
    )
    c = ReducedCFK(gens, (), fibered_genus=top, truncation_floor=top - 2)
    require_valid(c)
    return SyntheticLModel(n, side, fiber_genus, c)


def corner_homology(c: ReducedCFK, k: int) -> dict[tuple[str, ...], int]:
    """Homology dimension per spin-c label of the region {i < 0, j >= k}."""
    require_valid(c)
    floor = c.truncation_floor
    if floor is not None and k + 1 < floor:
        raise DomainError("insufficient model: region reads below the truncation floor")

    by_id = {g.id: g for g in c.generators}
    cells: list[tuple[str, int]] = []
    for g in c.generators:
        lo = k - g.alexander
        for i in range(lo, 0):
            cells.append((g.id, i))
    index = {cell: pos for pos, cell in enumerate(cells)}

    D = np.zeros((len(cells), len(cells)), dtype=np.uint8)
    for a in c.arrows:
        target_a = by_id[a.dst].alexander
        for i in range(k - by_id[a.src].alexander, 0):
            src_cell = (a.src, i)
            dst_cell = (a.dst, i - a.m)
            if dst_cell in index and (i - a.m) + target_a >= k:
                D[index[dst_cell], index[src_cell]] ^= 1

    out: dict[tuple[str, ...], int] = {}
    for label in sorted({by_id[g].spinc for g, _ in cells}):
        block = [pos for pos, (g, _) in enumerate(cells) if by_id[g].spinc == label]
        sub = D[np.ix_(block, block)]
        out[label] = len(block) - 2 * gf2.rank(sub)
    return out


def build_J(k: ReducedCFK, n: int, side: int, fiber_genus: int = 1) -> ReducedCFK:
    """Tensor a fibered complex with the synthetic companion model."""
    require_valid(k)
    if k.truncation_floor is not None:
        raise DomainError("the fibered complex must be untruncated")
    if k.fibered_genus is None:
        raise DomainError("the fibered complex must carry fibered_genus")
    if k.fibered_genus < 1:
        raise DomainError("the fibered complex must be nontrivial (genus >= 1)")
    model = build_companion_model(n, side, fiber_genus)
    return tensor(k, model.complex)


def _top_arrow_conditions(j: ReducedCFK) -> tuple[bool, bool]:
    g = j.fibered_genus
    top = j.gens_at(g)
    if len(top) != 1:
        raise DomainError("composite complex must have a unique top generator")
    top_id = top[0].id
    outgoing = any(a.src == top_id and (a.m, a.n) == (0, 1) for a in j.arrows)
    incoming = any(a.dst == top_id and (a.m, a.n) == (1, 0) for a in j.arrows)
    return outgoing, incoming


def zero_surgery_top_minus_one(j: ReducedCFK, per_label: bool = False):
    """Next-to-top dimension of the zero-surgery on the composite knot.

    Requires the composite complex to carry nonzero (0,1)- and (1,0)-
    components at the top grading; these encode that the distinguished
    classes of the original knot and of its reverse both die at the first
    filtration level.
    """
    require_valid(j)
    if j.fibered_genus is None:
        raise DomainError("composite complex must carry fibered_genus")
    outgoing, incoming = _top_arrow_conditions(j)
    if not outgoing or not incoming:
        missing = []
        if not outgoing:
            missing.append("no (0,1)-component leaves the top generator")
        if not incoming:
            missing.append("no (1,0)-component enters the top generator")
        raise DomainError("surgery hypotheses not satisfied: " + "; ".join(missing))
    dims = corner_homology(j, j.fibered_genus - 2)
    if per_label:
        return dims
    return sum(dims.values())


def check_surgery_agreement(k: ReducedCFK, cable_parameters=(1, 2, 3)) -> dict:
    """Run both companion sides over several cable parameters and compare.

    Each run must give dim HFK(K, g-1) - 1, the two sides must agree, and
    all corner homology must sit in labels of the form <K label> * s0.
    """
    require_valid(k)
    g = genus(k)
    expected = sum(1 for x in k.generators if x.alexander == g - 1) - 1
    runs = []
    ok = True
    for n in cable_parameters:
        for side in (1, -1):
            j = build_J(k, n, side)
            dims = zero_surgery_top_minus_one(j, per_label=True)
            total = sum(dims.values())
            companion = COMPANION_LABEL if side == 1 else COMPANION_LABEL_MIRROR
            off_support = {
                label_to_str(lab): d for lab, d in dims.items()
                if d != 0 and companion[0] not in lab
            }
            runs.append({
                "n": n,
                "side": "+" if side == 1 else "-",
                "dim": total,
                "matches_formula": total == expected,
                "off_support": off_support,
            })
            if total != expected or off_support:
                ok = False
    return {"expected": expected, "ok": ok, "runs": runs}

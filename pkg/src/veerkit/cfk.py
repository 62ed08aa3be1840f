"""GF(2) engine for reduced, doubly-filtered knot complexes.

A complex is a finite set of generators graded by an Alexander integer, an
optional Maslov integer and a spin-c label, with a differential split into
components d_{mn} (m, n >= 0, not both zero) that lower the plane filtration
by (m, n).  Alexander gradings satisfy A(src) - A(dst) = n - m and Maslov
gradings M(dst) = M(src) - 1 + 2m; the differential preserves labels.

Dimensions are generator counts: the grading-preserving part of the
differential is zero in the reduced model, so the associated graded groups
are free on the generators.

`truncation_floor` marks a complex that models only Alexander gradings at
or above the floor; operations either reject truncated input or read only
gradings the model covers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from . import gf2
from .core import (
    DomainError,
    InputError,
    Violation,
    conjugate_label,
    label_product,
    label_to_str,
    parse_label,
)


@dataclass(frozen=True)
class Gen:
    id: str
    alexander: int
    maslov: int | None
    spinc: tuple[str, ...] = ()


@dataclass(frozen=True)
class Arrow:
    src: str
    dst: str
    m: int
    n: int


@dataclass(frozen=True)
class ReducedCFK:
    generators: tuple[Gen, ...]
    arrows: tuple[Arrow, ...]
    fibered_genus: int | None = None
    truncation_floor: int | None = None

    def gen(self, gid: str) -> Gen:
        for g in self.generators:
            if g.id == gid:
                return g
        raise InputError(f"unknown generator id {gid!r}")

    def gens_at(self, alexander: int) -> list[Gen]:
        return [g for g in self.generators if g.alexander == alexander]


# --- validation ---------------------------------------------------------------


def validate_cfk(c: ReducedCFK) -> list[Violation]:
    out: list[Violation] = []
    ids = [g.id for g in c.generators]
    if len(set(ids)) != len(ids):
        out.append(Violation("duplicate-id", "duplicate generator ids"))
        return out
    by_id = {g.id: g for g in c.generators}

    seen_arrows = set()
    for a in c.arrows:
        key = (a.src, a.dst, a.m, a.n)
        if key in seen_arrows:
            out.append(Violation("duplicate-arrow", "arrow listed twice", (a.src, a.dst)))
        seen_arrows.add(key)
        if a.src not in by_id or a.dst not in by_id:
            out.append(Violation("unknown-generator", "arrow endpoint unknown", (a.src, a.dst)))
            continue
        if a.m < 0 or a.n < 0 or (a.m, a.n) == (0, 0):
            out.append(Violation("bidegree", "arrow bidegree must be >= 0 and nonzero", (a.src, a.dst)))
            continue
        src, dst = by_id[a.src], by_id[a.dst]
        if src.alexander - dst.alexander != a.n - a.m:
            out.append(Violation("alexander-drop", "arrow violates the Alexander drop n - m",
                                 (a.src, a.dst)))
        if src.maslov is not None and dst.maslov is not None \
                and dst.maslov != src.maslov - 1 + 2 * a.m:
            out.append(Violation("maslov-drop", "arrow violates the Maslov shift -1 + 2m",
                                 (a.src, a.dst)))
        if src.spinc != dst.spinc:
            out.append(Violation("spinc", "arrow crosses spin-c labels", (a.src, a.dst)))

    if c.truncation_floor is not None:
        low = [g.id for g in c.generators if g.alexander < c.truncation_floor]
        if low:
            out.append(Violation("truncation", "generators below the truncation floor", tuple(low)))

    if c.fibered_genus is not None:
        top = c.gens_at(c.fibered_genus)
        if len(top) != 1:
            out.append(Violation("fibered-top", f"expected one generator at grading {c.fibered_genus}, found {len(top)}"))
        above = [g.id for g in c.generators if g.alexander > c.fibered_genus]
        if above:
            out.append(Violation("fibered-top", "generators above the fibered genus", tuple(above)))

    out.extend(_check_d_squared(c, by_id))
    return out


def _check_d_squared(c: ReducedCFK, by_id: dict[str, Gen]) -> list[Violation]:
    arrows = [a for a in c.arrows if a.src in by_id and a.dst in by_id]
    arrows_from: dict[str, list[Arrow]] = {}
    for a in arrows:
        arrows_from.setdefault(a.src, []).append(a)
    counts: dict[tuple[str, str, int, int], int] = {}
    for a1 in arrows:
        for a2 in arrows_from.get(a1.dst, []):
            key = (a1.src, a2.dst, a1.m + a2.m, a1.n + a2.n)
            counts[key] = counts.get(key, 0) + 1
    floor = c.truncation_floor
    out = []
    for (src, dst, em, en), count in sorted(counts.items()):
        if count % 2 == 0:
            continue
        if floor is not None and by_id[src].alexander - en < floor:
            continue  # a cancelling path could pass below the modelled floor
        out.append(Violation("d-squared", f"odd number of paths of bidegree ({em},{en})",
                             (src, dst)))
    return out


def require_valid(c: ReducedCFK) -> None:
    report = validate_cfk(c)
    if report:
        raise DomainError("invalid complex: " + "; ".join(str(v) for v in report))


# --- structural operations ------------------------------------------------------


def mirror(c: ReducedCFK) -> ReducedCFK:
    """Reverse the complex: negate gradings, conjugate labels, flip arrows.

    Arrow components keep their bidegree (m, n); this is the unique
    reindexing compatible with both grading constraints.
    """
    require_valid(c)
    if c.truncation_floor is not None:
        raise DomainError("mirror is undefined for truncated complexes")
    gens = tuple(
        Gen(g.id, -g.alexander, -g.maslov if g.maslov is not None else None,
            conjugate_label(g.spinc))
        for g in c.generators)
    arrows = tuple(Arrow(a.dst, a.src, a.m, a.n) for a in c.arrows)
    genus = c.fibered_genus
    if genus is not None:
        bottom_ok = len(c.gens_at(-genus)) == 1
        within = all(g.alexander >= -genus for g in c.generators)
        if not (bottom_ok and within):
            genus = None  # reversed top grading would be malformed; drop the marker
    return ReducedCFK(gens, arrows, genus, None)


def tensor(a: ReducedCFK, b: ReducedCFK) -> ReducedCFK:
    """Tensor product over GF(2) with the product rule for the differential."""
    require_valid(a)
    require_valid(b)

    floor = None
    if a.truncation_floor is not None or b.truncation_floor is not None:
        tops_a = max(g.alexander for g in a.generators)
        tops_b = max(g.alexander for g in b.generators)
        candidates = []
        if a.truncation_floor is not None:
            candidates.append(a.truncation_floor + tops_b)
        if b.truncation_floor is not None:
            candidates.append(b.truncation_floor + tops_a)
        floor = max(candidates)

    def pair_id(x: Gen, y: Gen) -> str:
        return f"{x.id}|{y.id}"

    gens = []
    kept = set()
    for x in a.generators:
        for y in b.generators:
            alexander = x.alexander + y.alexander
            if floor is not None and alexander < floor:
                continue
            maslov = None
            if x.maslov is not None and y.maslov is not None:
                maslov = x.maslov + y.maslov
            gens.append(Gen(pair_id(x, y), alexander, maslov,
                            label_product(x.spinc, y.spinc)))
            kept.add(pair_id(x, y))
    if len({g.id for g in gens}) != len(gens):
        raise InputError("generator ids collide under pairing; rename inputs")

    arrows = []
    for ar in a.arrows:
        for y in b.generators:
            src, dst = f"{ar.src}|{y.id}", f"{ar.dst}|{y.id}"
            if src in kept and dst in kept:
                arrows.append(Arrow(src, dst, ar.m, ar.n))
    for br in b.arrows:
        for x in a.generators:
            src, dst = f"{x.id}|{br.src}", f"{x.id}|{br.dst}"
            if src in kept and dst in kept:
                arrows.append(Arrow(src, dst, br.m, br.n))

    genus = None
    if a.fibered_genus is not None and b.fibered_genus is not None:
        genus = a.fibered_genus + b.fibered_genus
    out = ReducedCFK(tuple(gens), tuple(arrows), genus, floor)
    require_valid(out)
    return out


def hfk_dims(c: ReducedCFK) -> dict[tuple[int, tuple[str, ...]], int]:
    """Generator counts per (alexander grading, spin-c label)."""
    require_valid(c)
    out: dict[tuple[int, tuple[str, ...]], int] = {}
    for g in c.generators:
        key = (g.alexander, g.spinc)
        out[key] = out.get(key, 0) + 1
    return out


def dims_by_alexander(c: ReducedCFK) -> dict[int, int]:
    out: dict[int, int] = {}
    for g in c.generators:
        out[g.alexander] = out.get(g.alexander, 0) + 1
    return out


def genus(c: ReducedCFK) -> int:
    require_valid(c)
    if not c.generators:
        raise DomainError("genus of an empty complex is undefined")
    return max(g.alexander for g in c.generators)


def is_thin(c: ReducedCFK) -> bool:
    require_valid(c)
    if any(g.maslov is None for g in c.generators):
        raise DomainError("thinness requires Maslov gradings on every generator")
    deltas = {g.maslov - g.alexander for g in c.generators}
    return len(deltas) <= 1


# --- flattenings and spectral sequences -----------------------------------------


@dataclass(frozen=True)
class FilteredFlattening:
    """One line of the plane grading, filtered by the free coordinate."""

    axis: str                  # "i" or "j": which coordinate is pinned
    k: int
    gen_ids: tuple[str, ...]
    levels: tuple[int, ...]    # filtration level per generator
    arrows: tuple[tuple[int, int, int], ...]   # (src index, dst index, level drop)
    labels: tuple[tuple[str, ...], ...]


def flatten(c: ReducedCFK, axis: str = "i", k: int = 0) -> FilteredFlattening:
    """Pin one plane coordinate; the induced endomorphism is a differential.

    For axis "i" the surviving components have m = 0 and the filtration is
    the j-coordinate; for axis "j" they have n = 0 and the filtration is the
    i-coordinate.
    """
    require_valid(c)
    if axis not in ("i", "j"):
        raise DomainError("axis must be 'i' or 'j'")
    index = {g.id: pos for pos, g in enumerate(c.generators)}
    if axis == "i":
        levels = tuple(k + g.alexander for g in c.generators)
        arrows = tuple((index[a.src], index[a.dst], a.n)
                       for a in c.arrows if a.m == 0)
    else:
        levels = tuple(k - g.alexander for g in c.generators)
        arrows = tuple((index[a.src], index[a.dst], a.m)
                       for a in c.arrows if a.n == 0)
    return FilteredFlattening(
        axis, k,
        tuple(g.id for g in c.generators),
        levels,
        arrows,
        tuple(g.spinc for g in c.generators),
    )


def _boundary_matrix(f: FilteredFlattening) -> np.ndarray:
    n = len(f.gen_ids)
    D = np.zeros((n, n), dtype=np.uint8)
    for src, dst, _ in f.arrows:
        D[dst, src] ^= 1
    return D


@dataclass(frozen=True)
class Page:
    r: int
    dims: tuple[tuple[int, int], ...]   # (level, dimension)
    rank: int                           # total rank of d_r on this page

    def dims_map(self) -> dict[int, int]:
        return dict(self.dims)

    def total(self) -> int:
        return sum(d for _, d in self.dims)


def spectral_sequence(f: FilteredFlattening) -> list[Page]:
    """Pages of the filtration spectral sequence until stabilization.

    The returned list starts at page 1; the last entry is the limit (every
    later differential vanishes because its drop exceeds the level spread).
    """
    n = len(f.gen_ids)
    if n == 0:
        return [Page(1, (), 0)]
    D = _boundary_matrix(f)
    levels = np.array(f.levels)
    lo, hi = int(levels.min()), int(levels.max())
    span = hi - lo

    def filtration_idx(s: int) -> np.ndarray:
        return np.nonzero(levels <= s)[0]

    def cycles_basis(s: int, r: int) -> np.ndarray:
        """Basis of {x in F_s : d x in F_{s-r}} as rows in R^n."""
        inside = filtration_idx(s)
        if inside.size == 0:
            return np.zeros((0, n), dtype=np.uint8)
        out_rows = np.nonzero(levels > s - r)[0]
        C = D[np.ix_(out_rows, inside)] if out_rows.size else np.zeros((0, inside.size), dtype=np.uint8)
        K = gf2.kernel_basis(C)
        basis = np.zeros((K.shape[0], n), dtype=np.uint8)
        basis[:, inside] = K
        return basis

    pages: list[Page] = []
    for r in range(1, span + 2):
        dims = []
        total_rank = 0
        denominators: dict[int, np.ndarray] = {}

        def denominator(s: int) -> np.ndarray:
            if s not in denominators:
                zs_prev = cycles_basis(s - 1, r - 1)
                img = (cycles_basis(s + r - 1, r - 1) @ D.T) % 2
                denominators[s] = np.vstack([zs_prev, img]).astype(np.uint8)
            return denominators[s]

        for s in range(lo, hi + 1):
            zs = cycles_basis(s, r)
            dim_e = gf2.rank(zs) - gf2.rank(denominator(s))
            if dim_e:
                dims.append((s, dim_e))
            image = (zs @ D.T) % 2
            target_den = denominator(s - r)
            with_img = np.vstack([target_den, image]).astype(np.uint8)
            total_rank += gf2.rank(with_img) - gf2.rank(target_den)
        pages.append(Page(r, tuple(dims), total_rank))
    return pages


def total_homology_dim(f: FilteredFlattening) -> int:
    D = _boundary_matrix(f)
    r = gf2.rank(D)
    return len(f.gen_ids) - 2 * r


def tau(c: ReducedCFK) -> int:
    """Alexander grading of the class surviving the full filtration.

    Defined when the flattened total homology is one dimensional; it is the
    least filtration level whose homology already surjects onto the total.
    """
    require_valid(c)
    if c.truncation_floor is not None:
        raise DomainError("tau is undefined for truncated complexes")
    f = flatten(c, "i", 0)
    if total_homology_dim(f) != 1:
        raise DomainError("tau requires one-dimensional total homology")
    D = _boundary_matrix(f)
    n = len(f.gen_ids)
    levels = np.array(f.levels)
    image_rows = (np.eye(n, dtype=np.uint8) @ D.T) % 2  # images of all generators
    image_rank = gf2.rank(image_rows)
    for s in sorted(set(f.levels)):
        inside = np.nonzero(levels <= s)[0]
        K = gf2.kernel_basis(D[:, inside])
        cycles = np.zeros((K.shape[0], n), dtype=np.uint8)
        cycles[:, inside] = K
        if gf2.rank(np.vstack([image_rows, cycles])) > image_rank:
            return int(s)
    raise DomainError("no surviving class found")  # pragma: no cover


def b_invariant(c: ReducedCFK):
    """First filtration level killing the distinguished class, plus the genus.

    Computed on the mirrored complex's flattening: the class of the unique
    generator in the lowest grading dies at level k, giving g + k; if it
    survives the total homology the answer is infinity.  Cross-checked
    against the top-grading arrow criterion: the value is 1 exactly when
    some (0,1)-component leaves the top generator of the complex itself.
    """
    require_valid(c)
    if c.fibered_genus is None:
        raise DomainError("the invariant requires fibered_genus")
    g = c.fibered_genus
    top = c.gens_at(g)
    if len(top) != 1:
        raise DomainError("top dimension != 1")
    bottom = c.gens_at(-g)
    if len(bottom) != 1:
        raise DomainError("top dimension != 1 on the mirror side")

    mc = mirror(c)
    f = flatten(mc, "i", 0)
    D = _boundary_matrix(f)
    levels = np.array(f.levels)
    target = f.gen_ids.index(bottom[0].id)
    e = np.zeros(len(f.gen_ids), dtype=np.uint8)
    e[target] = 1

    value = None
    for k in range(-g, g + 1):
        inside = np.nonzero(levels <= k)[0]
        if inside.size and gf2.solve(D[:, inside], e) is not None:
            value = g + k
            break

    top_arrow = any(a.src == top[0].id and (a.m, a.n) == (0, 1) for a in c.arrows)
    if (value == 1) != top_arrow:
        raise DomainError("internal inconsistency between filtration and arrow criteria")
    return value if value is not None else float("inf")


# --- serialization ---------------------------------------------------------------


def to_json_dict(c: ReducedCFK) -> dict:
    gens = [
        {"id": g.id, "A": g.alexander, "M": g.maslov, "spinc": label_to_str(g.spinc)}
        for g in sorted(c.generators, key=lambda g: g.id)
    ]
    arrows = [
        {"from": a.src, "to": a.dst, "m": a.m, "n": a.n}
        for a in sorted(c.arrows, key=lambda a: (a.src, a.dst, a.m, a.n))
    ]
    return {
        "generators": gens,
        "arrows": arrows,
        "fibered_genus": c.fibered_genus,
        "truncation_floor": c.truncation_floor,
    }


def from_json_dict(doc) -> ReducedCFK:
    if not isinstance(doc, dict):
        raise InputError("complex document must be a JSON object")
    for key in ("generators", "arrows"):
        if key not in doc:
            raise InputError(f"complex document missing key {key!r}")
    try:
        gens = tuple(
            Gen(str(g["id"]), int(g["A"]),
                int(g["M"]) if g.get("M") is not None else None,
                parse_label(g.get("spinc", "1")))
            for g in doc["generators"])
        arrows = tuple(
            Arrow(str(a["from"]), str(a["to"]), int(a["m"]), int(a["n"]))
            for a in doc["arrows"])
        fg = doc.get("fibered_genus")
        tf = doc.get("truncation_floor")
        return ReducedCFK(gens, arrows,
                          int(fg) if fg is not None else None,
                          int(tf) if tf is not None else None)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed complex document: {exc}") from exc


def dumps(c: ReducedCFK) -> str:
    return json.dumps(to_json_dict(c), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> ReducedCFK:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_json_dict(doc)


def make_cfk(gens: Iterable[Gen], arrows: Iterable[Arrow],
             fibered_genus: int | None = None,
             truncation_floor: int | None = None) -> ReducedCFK:
    return ReducedCFK(tuple(gens), tuple(arrows), fibered_genus, truncation_floor)

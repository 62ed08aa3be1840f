"""Bundled example complexes and monodromy models with expected invariants.

Every expected value here is derived from the package's own operations on
hand-checkable models: staircases for the torus knots, a box-plus-dot for
the figure-eight, boxes, a segment and a dot for the genus-2 thin example.
The JSON files under `corpus/` are the canonical serializations of these
builders; `check_entry` re-derives each classification and compares.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .cfk import Arrow, Gen, ReducedCFK, make_cfk
from .cfk import dumps as cfk_dumps
from .cfk import loads as cfk_loads
from .classify import classify_fibered, consistency_audit
from .core import OPAQUE, InputError
from .surface_map import (
    FIXED,
    PERIODIC,
    PSEUDO_ANOSOV,
    TWIST_PARTIAL,
    Annulus,
    Circle,
    Piece,
    StandardFormMap,
    make_map,
)
from .surface_map import dumps as map_dumps
from .surface_map import loads as map_loads


def _staircase(steps: int) -> ReducedCFK:
    """Right-handed torus-knot staircase with `steps` inner corners.

    Generators sit at Alexander gradings g, g-1, ..., -g for g = steps,
    Maslov 0, -1, ..., -2g; each odd generator maps up by (1,0) and down
    by (0,1).
    """
    g = steps
    gens = [Gen(f"a{i}", g - i, -i) for i in range(2 * g + 1)]
    arrows = []
    for i in range(1, 2 * g + 1, 2):
        arrows.append(Arrow(f"a{i}", f"a{i - 1}", 1, 0))
        arrows.append(Arrow(f"a{i}", f"a{i + 1}", 0, 1))
    return make_cfk(gens, arrows, fibered_genus=g)


def unknot_complex() -> ReducedCFK:
    return make_cfk([Gen("u", 0, 0)], [], fibered_genus=0)


def trefoil_right_complex() -> ReducedCFK:
    return _staircase(1)


def trefoil_left_complex() -> ReducedCFK:
    gens = [Gen("a", -1, 0), Gen("b", 0, 1), Gen("c", 1, 2)]
    arrows = [Arrow("a", "b", 1, 0), Arrow("c", "b", 0, 1)]
    return make_cfk(gens, arrows, fibered_genus=1)


def figure8_complex() -> ReducedCFK:
    gens = [Gen("p", 1, 1), Gen("q", 0, 0), Gen("r", 0, 0), Gen("s", -1, -1),
            Gen("e", 0, 0)]
    arrows = [Arrow("r", "p", 1, 0), Arrow("r", "s", 0, 1),
              Arrow("p", "q", 0, 1), Arrow("s", "q", 1, 0)]
    return make_cfk(gens, arrows, fibered_genus=1)


def t25_complex() -> ReducedCFK:
    return _staircase(2)


def t27_complex() -> ReducedCFK:
    return _staircase(3)


def _box(prefix: str, top: int, delta: int) -> tuple[list[Gen], list[Arrow]]:
    """Four generators spanning gradings [top-2, top] on the diagonal M-A=delta."""
    p, q, r, s = (f"{prefix}{x}" for x in "pqrs")
    gens = [Gen(p, top, top + delta), Gen(q, top - 1, top - 1 + delta),
            Gen(r, top - 1, top - 1 + delta), Gen(s, top - 2, top - 2 + delta)]
    arrows = [Arrow(r, p, 1, 0), Arrow(r, s, 0, 1),
              Arrow(p, q, 0, 1), Arrow(s, q, 1, 0)]
    return gens, arrows


def thin_genus2_complex() -> ReducedCFK:
    """A fibered genus-2 complex on the diagonal M - A = -1, dims (1,3,3,3,1)."""
    top_gens, top_arrows = _box("t", 2, -1)
    bot_gens, bot_arrows = _box("b", 0, -1)
    gens = top_gens + bot_gens + [Gen("v1", 0, -1), Gen("v2", -1, -2), Gen("d", 1, 0)]
    arrows = top_arrows + bot_arrows + [Arrow("v1", "v2", 0, 1)]
    return make_cfk(gens, arrows, fibered_genus=2)


def trefoil_right_monodromy() -> StandardFormMap:
    """Positive sixth-of-a-twist at the boundary over a genus-1 periodic piece."""
    return make_map(
        circles=[Circle("bdry", True), Circle("c1")],
        pieces=[Piece("core", PERIODIC, genus=1, boundary=("c1",), period=6,
                      lefschetz=OPAQUE)],
        annuli=[Annulus("stack", TWIST_PARTIAL, ("bdry", "c1"), sign=1,
                        fraction=Fraction(1, 6))],
        surface_boundary=("bdry",), genus=1, boundary_count=1)


def trefoil_left_monodromy() -> StandardFormMap:
    return make_map(
        circles=[Circle("bdry", True), Circle("c1")],
        pieces=[Piece("core", PERIODIC, genus=1, boundary=("c1",), period=6,
                      lefschetz=OPAQUE)],
        annuli=[Annulus("stack", TWIST_PARTIAL, ("bdry", "c1"), sign=-1,
                        fraction=Fraction(-1, 6))],
        surface_boundary=("bdry",), genus=1, boundary_count=1)


def figure8_monodromy() -> StandardFormMap:
    """Pseudo-Anosov core behind an untwisted collar: zero boundary twisting."""
    return make_map(
        circles=[Circle("bdry", True), Circle("c1")],
        pieces=[Piece("collar", FIXED, genus=0, boundary=("bdry", "c1")),
                Piece("core", PSEUDO_ANOSOV, genus=1, boundary=("c1",),
                      prongs=(("c1", 4),), pa_fixed_count=OPAQUE)],
        annuli=[],
        surface_boundary=("bdry",), genus=1, boundary_count=1)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    complex_builder: object
    monodromy_builder: object | None
    expected: dict


ENTRIES: tuple[CorpusEntry, ...] = (
    CorpusEntry("unknot", unknot_complex, None, {
        "b": "inf", "b_mirror": "inf", "tau": 0, "genus": 0, "thin": True,
        "monodromy_verdict": "right-veering", "persistently_foliar": None,
    }),
    CorpusEntry("trefoil_right", trefoil_right_complex, trefoil_right_monodromy, {
        "b": "inf", "b_mirror": 1, "tau": 1, "genus": 1, "thin": True,
        "monodromy_verdict": "right-veering", "persistently_foliar": None,
        "surgery_constraint": {"kind": "interval", "lo": 0, "hi": 4},
    }),
    CorpusEntry("trefoil_left", trefoil_left_complex, trefoil_left_monodromy, {
        "b": 1, "b_mirror": "inf", "tau": -1, "genus": 1, "thin": True,
        "monodromy_verdict": "left-veering", "persistently_foliar": None,
        "surgery_constraint": {"kind": "interval", "lo": -4, "hi": 0},
    }),
    CorpusEntry("figure8", figure8_complex, figure8_monodromy, {
        "b": 1, "b_mirror": 1, "tau": 0, "genus": 1, "thin": True,
        "monodromy_verdict": "neither", "persistently_foliar": True,
        "surgery_constraint": {"kind": "qbound", "q": 2},
    }),
    CorpusEntry("t25", t25_complex, None, {
        "b": "inf", "b_mirror": 1, "tau": 2, "genus": 2, "thin": True,
        "monodromy_verdict": "right-veering", "persistently_foliar": None,
        "surgery_constraint": {"kind": "interval", "lo": 0, "hi": 8},
    }),
    CorpusEntry("t27", t27_complex, None, {
        "b": "inf", "b_mirror": 1, "tau": 3, "genus": 3, "thin": True,
        "monodromy_verdict": "right-veering", "persistently_foliar": None,
        "surgery_constraint": {"kind": "interval", "lo": 0, "hi": 12},
    }),
    CorpusEntry("thin_genus2", thin_genus2_complex, None, {
        "b": 1, "b_mirror": 1, "tau": 1, "genus": 2, "thin": True,
        "monodromy_verdict": "neither", "persistently_foliar": True,
        "surgery_constraint": {"kind": "qbound", "q": 2},
    }),
)


def entry(name: str) -> CorpusEntry:
    for e in ENTRIES:
        if e.name == name:
            return e
    raise InputError(f"no corpus entry named {name!r}")


def _data_dir():
    return resources.files("veerkit") / "corpus"


def complex_path(name: str) -> str:
    return str(_data_dir() / f"{name}.json")


def monodromy_path(name: str) -> str:
    return str(_data_dir() / f"{name}_monodromy.json")


def load_complex(name: str) -> ReducedCFK:
    return cfk_loads((_data_dir() / f"{name}.json").read_text())


def load_monodromy(name: str) -> StandardFormMap:
    return map_loads((_data_dir() / f"{name}_monodromy.json").read_text())


def check_entry(e: CorpusEntry) -> dict:
    """Classify the stored file and compare against the expected values."""
    c = load_complex(e.name)
    cls = classify_fibered(c).to_json()
    mismatches = {}
    for key, want in e.expected.items():
        got = cls.get(key)
        if got != want:
            mismatches[key] = {"expected": want, "got": got}
    result = {"name": e.name, "ok": not mismatches}
    if mismatches:
        result["mismatches"] = mismatches
    if e.monodromy_builder is not None:
        audit = consistency_audit(c, load_monodromy(e.name))
        result["routes_agree"] = audit["agree"]
        if not audit["agree"]:
            result["ok"] = False
            result["audit"] = {k: v for k, v in audit.items() if k != "classification"}
    return result


def check_all() -> dict:
    results = [check_entry(e) for e in ENTRIES]
    return {"entries": len(results), "failures": [r for r in results if not r["ok"]],
            "ok": all(r["ok"] for r in results)}


def write_files(directory) -> list[str]:
    """Regenerate the corpus data files from the builders (canonical form)."""
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for e in ENTRIES:
        path = directory / f"{e.name}.json"
        path.write_text(cfk_dumps(e.complex_builder()))
        written.append(str(path))
        if e.monodromy_builder is not None:
            path = directory / f"{e.name}_monodromy.json"
            path.write_text(map_dumps(e.monodromy_builder()))
            written.append(str(path))
    return written

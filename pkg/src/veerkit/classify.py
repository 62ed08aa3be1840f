"""Classification of fibered complexes and cross-route consistency audits.

The verdict comes from the death levels of the distinguished classes on the
two sides: strictly past the first filtration level on the original side
means right-veering, on the reversed side left-veering, both at level one
means neither.  For unit-label complexes with one-dimensional total
homology the tau invariant, thinness, the foliation flag and surgery-slope
constraints are filled in as well.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DomainError
from . import cable_glue, twist_calculus
from .cfk import (
    ReducedCFK,
    b_invariant,
    flatten,
    genus as cfk_genus,
    is_thin,
    mirror,
    require_valid,
    tau as cfk_tau,
    total_homology_dim,
)
from .surface_map import StandardFormMap, is_identity
from .twist_calculus import IDENTITY, LEFT_VEERING, NEITHER, RIGHT_VEERING

UNKNOWN = "unknown"


@dataclass(frozen=True)
class SurgeryConstraint:
    kind: str                 # "interval" or "qbound"
    lo: int | None = None
    hi: int | None = None
    q: int | None = None

    def to_json(self) -> dict:
        if self.kind == "interval":
            return {"kind": "interval", "lo": self.lo, "hi": self.hi}
        return {"kind": "qbound", "q": self.q}


@dataclass(frozen=True)
class Classification:
    b: int | float
    b_mirror: int | float
    tau: int | None
    genus: int
    thin: bool | None
    monodromy_verdict: str
    persistently_foliar: bool | None
    surgery_constraint: SurgeryConstraint | None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        def enc_b(v):
            return "inf" if v == float("inf") else v

        return {
            "b": enc_b(self.b),
            "b_mirror": enc_b(self.b_mirror),
            "tau": self.tau,
            "genus": self.genus,
            "thin": self.thin,
            "monodromy_verdict": self.monodromy_verdict,
            "persistently_foliar": self.persistently_foliar,
            "surgery_constraint": self.surgery_constraint.to_json() if self.surgery_constraint else None,
            "notes": list(self.notes),
        }


def _is_s3_like(c: ReducedCFK) -> bool:
    if any(g.maslov is None for g in c.generators):
        return False
    if any(g.spinc for g in c.generators):
        return False
    return total_homology_dim(flatten(c, "i", 0)) == 1


def classify_fibered(c: ReducedCFK) -> Classification:
    require_valid(c)
    if c.fibered_genus is None:
        raise DomainError("classification requires fibered_genus")
    b = b_invariant(c)
    b_mirror = b_invariant(mirror(c))
    g = cfk_genus(c)
    notes: list[str] = []

    rv = b > 1
    lv = b_mirror > 1
    if rv and lv:
        if b == float("inf") and b_mirror == float("inf"):
            verdict = RIGHT_VEERING
            notes.append("distinguished classes survive on both sides: identity-like monodromy, weakly veering both ways")
        else:
            verdict = UNKNOWN
            notes.append("inconsistent data: finite death levels above one on both sides")
    elif rv:
        verdict = RIGHT_VEERING
    elif lv:
        verdict = LEFT_VEERING
    else:
        verdict = NEITHER

    tau = None
    thin = None
    if _is_s3_like(c):
        tau = cfk_tau(c)
        thin = is_thin(c)
    else:
        notes.append("tau and thinness need unit labels, Maslov gradings and one-dimensional total homology")

    foliar = None
    if thin is not None and tau is not None:
        if thin and abs(tau) < g and g >= 1:
            foliar = True

    constraint = None
    if tau is not None:
        if tau == g:
            constraint = SurgeryConstraint("interval", lo=0, hi=4 * g)
        elif tau == -g:
            constraint = SurgeryConstraint("interval", lo=-4 * g, hi=0)
        elif thin:
            constraint = SurgeryConstraint("qbound", q=2)
        if constraint is not None:
            notes.append("surgery constraint is conditional on the knot being hyperbolic")

    return Classification(b, b_mirror, tau, g, thin, verdict, foliar, constraint, tuple(notes))


def consistency_audit(c: ReducedCFK, h: StandardFormMap | None,
                      cable_parameter: int = 1) -> dict:
    """Compare the complex-side verdict with both monodromy-side routes."""
    cls = classify_fibered(c)
    result = {
        "b_route": cls.monodromy_verdict,
        "classification": cls.to_json(),
    }
    if h is None:
        result["agree"] = None
        return result
    std = twist_calculus.veering(h)
    result["standard_form_route"] = std
    if std == IDENTITY:
        result["dimension_route"] = IDENTITY
        result["agree"] = cls.monodromy_verdict == RIGHT_VEERING and "identity-like" in " ".join(cls.notes)
        return result
    dim_route = cable_glue.rv_via_symplectic(h, cable_parameter)
    result["dimension_route"] = dim_route.verdict
    result["difference"] = dim_route.difference
    result["agree"] = (cls.monodromy_verdict == std == dim_route.verdict)
    return result

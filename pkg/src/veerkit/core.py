"""Shared primitives: errors, the opaque sentinel, rational and label encodings.

Everything downstream treats values built here as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class VeerkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(VeerkitError):
    """Malformed input document (bad JSON shape, unknown ids, bad encodings)."""


class DomainError(VeerkitError):
    """Structurally well-formed input that violates an operation's preconditions."""


class Opaque:
    """Sentinel for a count that is carried symbolically rather than numerically.

    Used for Lefschetz numbers of periodic pieces and interior fixed-point
    counts of pseudo-Anosov pieces.  All instances compare equal; dimension
    breakdowns track one token per opaque field.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OPAQUE"

    def __eq__(self, other) -> bool:
        return isinstance(other, Opaque)

    def __hash__(self) -> int:
        return hash("veerkit.OPAQUE")


OPAQUE = Opaque()


@dataclass(frozen=True)
class Violation:
    """One failed structural axiom, naming the offending ids."""

    code: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self) -> str:
        where = f" [{', '.join(self.ids)}]" if self.ids else ""
        return f"{self.code}: {self.message}{where}"


def fraction_to_json(value: Fraction) -> dict:
    """Encode a rational as {"num": int, "den": int}, lowest terms, den > 0."""
    f = Fraction(value)
    return {"num": f.numerator, "den": f.denominator}


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, int):
        return Fraction(obj)
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise InputError(f"expected rational {{num, den}}, got {obj!r}")
    num, den = obj["num"], obj["den"]
    if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
        raise InputError(f"bad rational encoding {obj!r}")
    return Fraction(num, den)


def opaque_or_int_to_json(value):
    return "opaque" if isinstance(value, Opaque) else value


def opaque_or_int_from_json(obj, field: str):
    if obj == "opaque":
        return OPAQUE
    if isinstance(obj, int) and not isinstance(obj, bool):
        return obj
    raise InputError(f"field {field!r} must be a nonnegative integer or \"opaque\"")


# --- Spin^c labels -----------------------------------------------------------
#
# Labels form a free commutative monoid on atom strings, with an involution
# written as a trailing "~" on an atom.  The unit label is spelled "1".
# Products are canonically sorted atom tuples.

UNIT_LABEL: tuple[str, ...] = ()


def parse_label(text: str) -> tuple[str, ...]:
    if not isinstance(text, str) or not text:
        raise InputError(f"bad spin-c label {text!r}")
    if text == "1":
        return UNIT_LABEL
    atoms = text.split("*")
    for atom in atoms:
        if not atom or atom == "1" or "*" in atom:
            raise InputError(f"bad spin-c label {text!r}")
    return tuple(sorted(atoms))


def label_to_str(label: tuple[str, ...]) -> str:
    return "*".join(label) if label else "1"


def label_product(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(sorted(a + b))


def conjugate_atom(atom: str) -> str:
    return atom[:-1] if atom.endswith("~") else atom + "~"


def conjugate_label(label: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(sorted(conjugate_atom(a) for a in label))

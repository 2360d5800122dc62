"""Three-valued analysis verdicts and JSON encoding helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

CERTIFIED = "Certified"
REFUTED = "Refuted"
UNDECIDED = "UndecidedAtScale"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an analysis.

    ``Certified`` and ``Refuted`` carry a witness that was re-checked before
    the verdict was built.  ``UndecidedAtScale`` records how far the search
    went.  ``tags`` names the evidence mode, e.g. ``"closure"`` for
    Groebner-certified statements or ``"finite-field-sampling"``.
    """

    kind: str
    statement: str
    witness: Any = None
    scale: Any = None
    tags: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in (CERTIFIED, REFUTED, UNDECIDED):
            raise ValueError(f"unknown verdict kind {self.kind!r}")

    @property
    def certified(self) -> bool:
        return self.kind == CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.kind == REFUTED

    @property
    def undecided(self) -> bool:
        return self.kind == UNDECIDED

    def to_json(self) -> dict:
        out = {"kind": self.kind, "statement": self.statement}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.scale is not None:
            out["scale"] = jsonable(self.scale)
        if self.tags:
            out["tags"] = list(self.tags)
        return out


def certified(statement, witness=None, **kw) -> Verdict:
    return Verdict(CERTIFIED, statement, witness, **kw)


def refuted(statement, witness=None, **kw) -> Verdict:
    return Verdict(REFUTED, statement, witness, **kw)


def undecided(statement, scale=None, witness=None, **kw) -> Verdict:
    return Verdict(UNDECIDED, statement, witness, scale=scale, **kw)


def rational_json(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def jsonable(obj):
    """Convert analysis values to JSON-compatible structures, exactly.

    Rationals become ``{"num", "den"}``; no floats are ever produced.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(obj, Fraction):
        return rational_json(obj)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=repr)
    # numpy integers and similar
    try:
        import numpy as np

        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.ndarray):
            return jsonable(obj.tolist())
    except ImportError:  # pragma: no cover
        pass
    return str(obj)

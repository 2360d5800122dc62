"""JSON cellular-automaton spec files (``"format": 1``).

Example::

    {
      "format": 1,
      "name": "product-rule",
      "group": {"kind": "Zd", "rank": 1},
      "memory": [[0], [1]],
      "alphabet": {"kind": "affine", "field": "q", "coords": ["t"],
                   "ideal": [], "basepoint": [0]},
      "rule": {"kind": "polynomial", "components": ["t0*t1"]},
      "metadata": {"irreducible": true, "complete": false},
      "targets": [{"support": [[-1], [0], [1]], "values": [[1], [0], [1]]}]
    }

Finite alphabets use ``{"kind": "finite", "symbols": [...]}`` with a
``{"kind": "table", "table": [[inputs, output], ...]}`` rule; linear ones
use ``{"kind": "linear", "p": 2, "n": 2}`` with
``{"kind": "linear", "blocks": [matrix per memory element]}``.  Polynomial
components are written in the slot variables ``<coord><k>`` where k is the
position of the memory element in canonical order.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Any

from .ca import (
    AffineAlphabet,
    CellularAutomaton,
    FiniteAlphabet,
    LinearAlphabet,
    LinearRule,
    Pattern,
    PolynomialRule,
    TableRule,
)
from .groups import FiniteSubset, GroupMismatchError, GroupSpec
from .polyalg import Field, Ideal, PolyRing, PolynomialSyntaxError
from .variety import AffineVariety

FORMAT = 1


class SpecError(ValueError):
    """Spec problem with a location: ``line``/``column`` for syntax errors,
    a JSON ``path`` for semantic ones."""

    def __init__(self, message: str, path: str = "", line: int | None = None,
                 column: int | None = None):
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(path)
        super().__init__(f"{' at '.join([message] + where) if where else message}")


@dataclass
class CaSpec:
    ca: CellularAutomaton
    targets: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    @property
    def digest(self) -> str:
        return spec_digest(self.raw)


def spec_digest(raw: dict) -> str:
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _need(d: dict, key: str, path: str, kind=None):
    if not isinstance(d, dict):
        raise SpecError("expected an object", path)
    if key not in d:
        raise SpecError(f"missing field {key!r}", path)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SpecError(f"field {key!r} has the wrong type", f"{path}.{key}")
    return v


def parse_group(d) -> GroupSpec:
    kind = _need(d, "kind", "group", str)
    rank = _need(d, "rank", "group", int)
    aliases = {"Zd": "Zd", "Z": "Zd", "Free": "Free", "free": "Free"}
    if kind not in aliases:
        raise SpecError(f"unknown group kind {kind!r}", "group.kind")
    try:
        return GroupSpec(aliases[kind], rank)
    except ValueError as exc:
        raise SpecError(str(exc), "group") from None


def parse_subset(G: GroupSpec, literals, path: str) -> FiniteSubset:
    if not isinstance(literals, list):
        raise SpecError("expected a list of group elements", path)
    try:
        return FiniteSubset.of(G, literals)
    except (GroupMismatchError, TypeError, ValueError) as exc:
        raise SpecError(str(exc), path) from None


def parse_field(text, path="field") -> Field:
    try:
        return Field.parse(text)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), path) from None


def parse_alphabet(d):
    kind = _need(d, "kind", "alphabet", str)
    if kind == "finite":
        symbols = _need(d, "symbols", "alphabet", list)
        try:
            return FiniteAlphabet([tuple(s) if isinstance(s, list) else s for s in symbols])
        except ValueError as exc:
            raise SpecError(str(exc), "alphabet.symbols") from None
    if kind == "linear":
        p = _need(d, "p", "alphabet", int)
        n = _need(d, "n", "alphabet", int)
        parse_field(f"fp:{p}", "alphabet.p")
        try:
            return LinearAlphabet(p, n)
        except ValueError as exc:
            raise SpecError(str(exc), "alphabet") from None
    if kind == "affine":
        fld = parse_field(_need(d, "field", "alphabet", str), "alphabet.field")
        coords = _need(d, "coords", "alphabet", list)
        gens = d.get("ideal", [])
        if not isinstance(gens, list):
            raise SpecError("ideal must be a list of polynomials", "alphabet.ideal")
        try:
            ring = PolyRing(coords, fld)
        except ValueError as exc:
            raise SpecError(str(exc), "alphabet.coords") from None
        polys = []
        for i, g in enumerate(gens):
            polys.append(_parse_poly(g, ring, f"alphabet.ideal[{i}]"))
        try:
            X = AffineVariety(coords, polys, fld,
                              declared_irreducible=bool(d.get("irreducible", False)),
                              declared_complete=bool(d.get("complete", False)),
                              basepoint=d.get("basepoint"))
        except ValueError as exc:
            raise SpecError(str(exc), "alphabet.basepoint") from None
        return AffineAlphabet(X, d.get("sample_bound"))
    raise SpecError(f"unknown alphabet kind {kind!r}", "alphabet.kind")


def _parse_poly(text, ring: PolyRing, path: str):
    if isinstance(text, int):
        text = str(text)
    if not isinstance(text, str):
        raise SpecError("polynomial must be a string", path)
    try:
        return ring.parse(text)
    except PolynomialSyntaxError as exc:
        raise SpecError(str(exc), path, column=exc.column + 1) from None
    except ValueError as exc:
        raise SpecError(str(exc), path) from None


def parse_rule(d, alphabet, memory: FiniteSubset):
    kind = _need(d, "kind", "rule", str)
    arity = len(memory)
    if kind == "table":
        if alphabet.kind != "finite":
            raise SpecError("table rules need a finite alphabet", "rule.kind")
        entries = _need(d, "table", "rule", list)
        table = {}
        norm = (lambda s: tuple(s) if isinstance(s, list) else s)
        for i, entry in enumerate(entries):
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
                raise SpecError("table entries are [inputs, output]", f"rule.table[{i}]")
            key = tuple(norm(s) for s in entry[0])
            if len(key) != arity:
                raise SpecError(f"entry has {len(key)} inputs, memory has {arity}",
                                f"rule.table[{i}]")
            for s in key + (norm(entry[1]),):
                if s not in alphabet.symbols:
                    raise SpecError(f"{s!r} is not an alphabet symbol", f"rule.table[{i}]")
            table[key] = norm(entry[1])
        for key in itertools.product(alphabet.symbols, repeat=arity):
            if key not in table:
                raise SpecError(f"table is missing the input {list(key)}", "rule.table")
        return TableRule(arity, table)
    if kind == "linear":
        if alphabet.kind != "linear":
            raise SpecError("linear rules need a linear alphabet", "rule.kind")
        blocks = _need(d, "blocks", "rule", list)
        if len(blocks) != arity:
            raise SpecError(f"{len(blocks)} blocks for a memory set of size {arity}",
                            "rule.blocks")
        try:
            return LinearRule(alphabet.p, alphabet.n, blocks)
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), "rule.blocks") from None
    if kind == "polynomial":
        if alphabet.kind != "affine":
            raise SpecError("polynomial rules need an affine alphabet", "rule.kind")
        comps = _need(d, "components", "rule", list)
        X = alphabet.variety
        if len(comps) != len(X.coords):
            raise SpecError(f"{len(comps)} components for {len(X.coords)} coordinates",
                            "rule.components")
        ring = PolyRing([f"{c}{k}" for k in range(arity) for c in X.coords], X.field)
        polys = [_parse_poly(c, ring, f"rule.components[{i}]") for i, c in enumerate(comps)]
        return PolynomialRule(X.coords, arity, polys, X.field)
    raise SpecError(f"unknown rule kind {kind!r}", "rule.kind")


def build(raw: dict, field_override: Field | None = None, validate: bool = True) -> CaSpec:
    if not isinstance(raw, dict):
        raise SpecError("spec must be a JSON object")
    fmt = raw.get("format")
    if fmt != FORMAT:
        raise SpecError(f"unsupported spec format {fmt!r} (expected {FORMAT})", "format")
    G = parse_group(_need(raw, "group", ""))
    memory = parse_subset(G, _need(raw, "memory", ""), "memory")
    if not len(memory):
        raise SpecError("memory set must be non-empty", "memory")
    alphabet = parse_alphabet(_need(raw, "alphabet", ""))
    rule = parse_rule(_need(raw, "rule", ""), alphabet, memory)
    meta = raw.get("metadata", {})
    if not isinstance(meta, dict):
        raise SpecError("metadata must be an object", "metadata")
    irreducible = bool(meta.get("irreducible", False))
    complete = bool(meta.get("complete", False))
    ca = CellularAutomaton(G, memory, rule, alphabet, irreducible, complete,
                           raw.get("name", ""))
    if field_override is not None:
        if rule.kind == "polynomial":
            ca = ca.with_field(field_override)
        elif alphabet.kind == "linear" and field_override != alphabet.field:
            raise SpecError(f"a linear rule over {alphabet.field} cannot move to {field_override}",
                            "rule")
    if validate and ca.rule.kind == "polynomial":
        from .algca import validate_rule

        v = validate_rule(ca.variety, memory, ca.rule.components)
        if not v.certified:
            raise SpecError("rule does not map X^M into X: "
                            + json.dumps(v.witness, sort_keys=True), "rule.components")
    targets = []
    for i, t in enumerate(raw.get("targets", [])):
        targets.append(parse_pattern(ca, t, f"targets[{i}]"))
    extra = {k: v for k, v in raw.items()
             if k not in ("format", "name", "group", "memory", "alphabet", "rule", "metadata",
                          "targets")}
    return CaSpec(ca, targets, extra, raw)


def parse_pattern(ca: CellularAutomaton, d, path: str) -> Pattern:
    support = parse_subset(ca.group, _need(d, "support", path, list), f"{path}.support")
    values = _need(d, "values", path, list)
    lits = d["support"]
    if len(values) != len(lits):
        raise SpecError("support and values differ in length", path)
    mapping = {}
    for lit, v in zip(lits, values):
        try:
            mapping[ca.group.element(lit)] = ca.alphabet.decode(v)
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), f"{path}.values") from None
    if len(mapping) != len(support):
        raise SpecError("repeated site in support", f"{path}.support")
    return Pattern.from_dict(ca.group, mapping)


def loads(text: str, field_override: Field | None = None) -> CaSpec:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return build(raw, field_override)


def load(path, field_override: Field | None = None) -> CaSpec:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), field_override)


def parse_spec(text: str) -> CellularAutomaton:
    return loads(text).ca


# --------------------------------------------------------------------------
# serialization


def to_dict(ca: CellularAutomaton, targets=(), extra: dict | None = None) -> dict:
    G = ca.group
    out: dict[str, Any] = {"format": FORMAT}
    if ca.name:
        out["name"] = ca.name
    out["group"] = {"kind": G.kind, "rank": G.rank}
    out["memory"] = ca.memory.literals()
    alph = ca.alphabet
    if alph.kind == "finite":
        out["alphabet"] = {"kind": "finite", "symbols": [_plain(s) for s in alph.symbols]}
    elif alph.kind == "linear":
        out["alphabet"] = {"kind": "linear", "p": alph.p, "n": alph.n}
    else:
        X = alph.variety
        a = {"kind": "affine", "field": str(X.field), "coords": list(X.coords),
             "ideal": [str(g) for g in X.ideal.generators]}
        if X.basepoint is not None:
            a["basepoint"] = [X.field.to_json(x) for x in X.basepoint]
        if alph.sample_bound is not None:
            a["sample_bound"] = alph.sample_bound
        out["alphabet"] = a
    rule = ca.rule
    if rule.kind == "table":
        out["rule"] = {"kind": "table", "table": [
            [[_plain(s) for s in key], _plain(rule.table[key])]
            for key in itertools.product(alph.symbols, repeat=rule.arity)]}
    elif rule.kind == "linear":
        out["rule"] = {"kind": "linear", "blocks": [[list(r) for r in b] for b in rule.blocks]}
    elif rule.kind == "polynomial":
        out["rule"] = {"kind": "polynomial", "components": [str(c) for c in rule.components]}
    else:
        raise TypeError(f"{rule.kind} rules cannot be serialized")
    out["metadata"] = {"irreducible": ca.irreducible, "complete": ca.complete}
    if targets:
        out["targets"] = [t.to_json(alph) for t in targets]
    out.update(extra or {})
    return out


def _plain(s):
    return list(s) if isinstance(s, tuple) else s


def dumps(ca: CellularAutomaton, targets=(), extra: dict | None = None) -> str:
    return json.dumps(to_dict(ca, targets, extra), indent=2)


# --------------------------------------------------------------------------
# ideal files for ``goeca dim``


def load_ideal(text: str, field_override: Field | None = None) -> Ideal:
    """``{"format": 1, "field": "q", "variables": [...], "generators": [...]}``"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(raw, dict) or raw.get("format") != FORMAT:
        raise SpecError(f"ideal file must be an object with \"format\": {FORMAT}", "format")
    fld = field_override or parse_field(raw.get("field", "q"))
    variables = _need(raw, "variables", "", list)
    try:
        ring = PolyRing(variables, fld)
    except ValueError as exc:
        raise SpecError(str(exc), "variables") from None
    gens = _need(raw, "generators", "", list)
    return Ideal(ring, [_parse_poly(g, ring, f"generators[{i}]") for i, g in enumerate(gens)])

"""Cellular automata with finite memory over Z^d or a free group.

A configuration is never materialized on the whole group; everything is
phrased through finite `Pattern` windows.  The rule's input slots follow
the canonical order of the memory set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

from .groups import (
    FiniteSubset,
    GroupMismatchError,
    GroupSpec,
    interior,
    neighborhood,
)
from .polyalg import GF, Field, Polynomial, PolyRing
from .variety import AffineVariety, affine_space


class InsufficientSupportError(ValueError):
    pass


class NotSampleableError(ValueError):
    pass


# --------------------------------------------------------------------------
# alphabets

class FiniteAlphabet:
    kind = "finite"
    is_finite = True

    def __init__(self, symbols: Sequence):
        self.symbols = tuple(symbols)
        if not self.symbols:
            raise ValueError("finite alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("finite alphabet has repeated symbols")

    def __len__(self):
        return len(self.symbols)

    def values(self):
        return self.symbols

    def check(self, v):
        if v not in self.symbols:
            raise ValueError(f"{v!r} is not a symbol of the alphabet")
        return v

    def sample(self, rng: random.Random):
        return rng.choice(self.symbols)

    def encode(self, v):
        return v

    def decode(self, v):
        return self.check(v)

    def __eq__(self, other):
        return isinstance(other, FiniteAlphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)


class AffineAlphabet:
    """Points of an affine variety; values are coordinate tuples."""

    kind = "affine"

    def __init__(self, variety: AffineVariety, sample_bound: int | None = None):
        self.variety = variety
        self.sample_bound = sample_bound
        self._points = None

    @property
    def field(self) -> Field:
        return self.variety.field

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    @property
    def coords(self):
        return self.variety.coords

    def values(self):
        if not self.field.is_finite and self.sample_bound is None:
            raise NotSampleableError("rational alphabet without a sampling bound")
        if self._points is None:
            self._points = self.variety.points(self.sample_bound or 0)
        return self._points

    def __len__(self):
        return len(self.values())

    def check(self, v):
        v = self.variety.coerce_point(v)
        if not self.variety.contains(v):
            raise ValueError(f"{list(v)} is not a point of {self.variety}")
        return v

    def sample(self, rng: random.Random):
        pts = self.values()
        if not pts:
            raise NotSampleableError("no sample points available")
        return rng.choice(pts)

    def encode(self, v):
        return [self.field.to_json(x) for x in v]

    def decode(self, v):
        if not isinstance(v, (list, tuple)):
            v = [v]
        return self.check(v)

    def with_field(self, field: Field) -> "AffineAlphabet":
        return AffineAlphabet(self.variety.with_field(field), self.sample_bound)


class LinearAlphabet:
    """The vector space F_p^n."""

    kind = "linear"
    is_finite = True

    def __init__(self, p: int, n: int):
        if n < 1:
            raise ValueError("linear alphabet dimension must be >= 1")
        self.field = GF(p)
        self.p = p
        self.n = n
        self.variety = affine_space(n, self.field, coords=[f"v{j}" for j in range(n)],
                                    basepoint=[0] * n)

    @property
    def coords(self):
        return self.variety.coords

    def values(self):
        return list(itertools.product(range(self.p), repeat=self.n))

    def __len__(self):
        return self.p ** self.n

    def check(self, v):
        v = tuple(int(x) % self.p for x in v)
        if len(v) != self.n:
            raise ValueError(f"vector {list(v)} has the wrong length")
        return v

    def sample(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.n))

    def encode(self, v):
        return list(v)

    def decode(self, v):
        if not isinstance(v, (list, tuple)):
            v = [v]
        return self.check(v)

    @property
    def zero(self):
        return (0,) * self.n


# --------------------------------------------------------------------------
# local rules

class TableRule:
    kind = "table"

    def __init__(self, arity: int, table: Mapping[tuple, Any]):
        self.arity = arity
        self.table = dict(table)

    def evaluate(self, vals: Sequence):
        return self.table[tuple(vals)]

    def permuted(self, perm: Sequence[int]) -> "TableRule":
        """Rule whose slot k reads old slot perm[k]."""
        return TableRule(self.arity, {
            tuple(key[perm[k]] for k in range(self.arity)): v for key, v in self.table.items()
        })


class FunctionRule:
    """A rule given by a Python callable; used for finite-alphabet fixtures."""

    kind = "function"

    def __init__(self, arity: int, fn: Callable):
        self.arity = arity
        self.fn = fn

    def evaluate(self, vals):
        return self.fn(*vals)


def slot_variables(coords: Sequence[str], arity: int) -> list[list[str]]:
    """Variable names for rule inputs: coordinate name + slot index."""
    return [[f"{c}{k}" for c in coords] for k in range(arity)]


class PolynomialRule:
    """One polynomial per target coordinate in variables ``<coord><slot>``."""

    kind = "polynomial"

    def __init__(self, coords: Sequence[str], arity: int, components: Sequence, field: Field):
        self.coords = tuple(coords)
        self.arity = arity
        self.slot_vars = slot_variables(self.coords, arity)
        self.ring = PolyRing([v for slot in self.slot_vars for v in slot], field)
        comps = []
        for c in components:
            if isinstance(c, str):
                c = self.ring.parse(c)
            elif isinstance(c, Polynomial) and c.ring != self.ring:
                c = c.to_ring(self.ring)
            comps.append(c)
        if len(comps) != len(self.coords):
            raise ValueError(
                f"rule has {len(comps)} components but the alphabet has {len(self.coords)} coordinates")
        self.components = tuple(comps)

    def evaluate(self, vals: Sequence):
        point = [x for v in vals for x in v]
        return tuple(c.evaluate(point) for c in self.components)

    def with_field(self, field: Field) -> "PolynomialRule":
        return PolynomialRule(self.coords, self.arity,
                              [c.to_ring(self.ring.with_field(field)) for c in self.components],
                              field)

    def permuted(self, perm: Sequence[int]) -> "PolynomialRule":
        mapping = {}
        for new, old in enumerate(perm):
            for c in self.coords:
                mapping[f"{c}{old}"] = f"{c}{new}"
        return PolynomialRule(self.coords, self.arity,
                              [c.rename(mapping, self.ring) for c in self.components],
                              self.ring.field)

    def extended(self, positions: Sequence[int], arity: int) -> "PolynomialRule":
        """Same map viewed on a larger memory: old slot k becomes slot positions[k]."""
        mapping = {}
        for old, new in enumerate(positions):
            for c in self.coords:
                mapping[f"{c}{old}"] = f"{c}{new}"
        bigger = PolyRing([v for slot in slot_variables(self.coords, arity) for v in slot],
                          self.ring.field)
        return PolynomialRule(self.coords, arity,
                              [c.rename(mapping, bigger) for c in self.components],
                              self.ring.field)


class LinearRule:
    """τ(c)(g) = Σ_k blocks[k] · c(g m_k) over F_p."""

    kind = "linear"

    def __init__(self, p: int, n: int, blocks: Sequence):
        self.p = p
        self.n = n
        self.blocks = tuple(tuple(tuple(int(x) % p for x in row) for row in b) for b in blocks)
        for b in self.blocks:
            if len(b) != n or any(len(row) != n for row in b):
                raise ValueError(f"linear rule blocks must be {n}x{n}")
        self.arity = len(self.blocks)

    def evaluate(self, vals: Sequence):
        out = [0] * self.n
        for b, v in zip(self.blocks, vals):
            for i in range(self.n):
                row = b[i]
                out[i] += sum(row[j] * v[j] for j in range(self.n))
        return tuple(x % self.p for x in out)

    def polynomial_rule(self, coords: Sequence[str]) -> PolynomialRule:
        comps = []
        svars = slot_variables(coords, self.arity)
        for i in range(self.n):
            terms = []
            for k, b in enumerate(self.blocks):
                for j in range(self.n):
                    if b[i][j]:
                        terms.append(f"{b[i][j]}*{svars[k][j]}")
            comps.append(" + ".join(terms) or "0")
        return PolynomialRule(coords, self.arity, comps, GF(self.p))

    def permuted(self, perm):
        return LinearRule(self.p, self.n, [self.blocks[perm[k]] for k in range(self.arity)])

    def extended(self, positions, arity):
        zero = [[0] * self.n for _ in range(self.n)]
        blocks = [zero] * arity
        for old, new in enumerate(positions):
            blocks[new] = self.blocks[old]
        return LinearRule(self.p, self.n, blocks)


# --------------------------------------------------------------------------
# patterns

class Pattern:
    """Finite partial configuration; values stored densely in the canonical
    order of the support."""

    __slots__ = ("support", "values", "_map")

    def __init__(self, support: FiniteSubset, values: Sequence):
        values = tuple(values)
        if len(values) != len(support):
            raise ValueError("pattern needs exactly one value per support element")
        self.support = support
        self.values = values
        self._map = None

    @classmethod
    def from_dict(cls, group: GroupSpec, mapping: Mapping) -> "Pattern":
        support = FiniteSubset(group, mapping.keys())
        return cls(support, [mapping[g] for g in support])

    @classmethod
    def constant(cls, support: FiniteSubset, value) -> "Pattern":
        return cls(support, [value] * len(support))

    def as_dict(self) -> dict:
        if self._map is None:
            self._map = dict(zip(self.support.elements, self.values))
        return self._map

    def __getitem__(self, g):
        return self.as_dict()[g]

    def restrict(self, omega: FiniteSubset) -> "Pattern":
        d = self.as_dict()
        if not omega <= self.support:
            raise InsufficientSupportError("restriction outside the support")
        return Pattern(omega, [d[g] for g in omega])

    def __eq__(self, other):
        return (isinstance(other, Pattern) and self.support == other.support
                and self.values == other.values)

    def __hash__(self):
        return hash((self.support, self.values))

    def __repr__(self):
        G = self.support.group
        body = ", ".join(f"{G.format(g)}: {v}" for g, v in zip(self.support, self.values))
        return f"Pattern({{{body}}})"

    def to_json(self, alphabet=None) -> dict:
        enc = alphabet.encode if alphabet is not None else (
            lambda v: list(v) if isinstance(v, tuple) else v)
        return {"support": self.support.literals(), "values": [enc(v) for v in self.values]}


def shift(g, p: Pattern) -> Pattern:
    """(gp)(gh) = p(h)."""
    G = p.support.group
    G.check(g)
    return Pattern.from_dict(G, {G.mul(g, h): v for h, v in zip(p.support, p.values)})


# --------------------------------------------------------------------------
# cellular automata

@dataclass
class CellularAutomaton:
    group: GroupSpec
    memory: FiniteSubset
    rule: Any
    alphabet: Any
    irreducible: bool = False
    complete: bool = False
    name: str = ""

    def __post_init__(self):
        if self.memory.group != self.group:
            raise GroupMismatchError("memory set lives in another group")
        if not len(self.memory):
            raise ValueError("memory set must be non-empty")
        if self.rule.arity != len(self.memory):
            raise ValueError(f"rule arity {self.rule.arity} != |M| = {len(self.memory)}")

    @property
    def is_algebraic(self) -> bool:
        return self.rule.kind in ("polynomial", "linear")

    @property
    def variety(self) -> AffineVariety:
        if self.alphabet.kind not in ("affine", "linear"):
            raise TypeError("finite-alphabet automata have no affine variety")
        return self.alphabet.variety

    def polynomial_rule(self) -> PolynomialRule:
        if self.rule.kind == "polynomial":
            return self.rule
        if self.rule.kind == "linear":
            return self.rule.polynomial_rule(self.alphabet.coords)
        raise TypeError("rule is not algebraic")

    def with_field(self, field: Field) -> "CellularAutomaton":
        if self.rule.kind != "polynomial":
            raise TypeError("only polynomial automata can change field")
        return CellularAutomaton(self.group, self.memory, self.rule.with_field(field),
                                 self.alphabet.with_field(field), self.irreducible,
                                 self.complete, self.name)

    # -- local evaluation ------------------------------------------------------
    def apply_at(self, c: Pattern, g):
        G = self.group
        vals = []
        for m in self.memory:
            h = G.mul(g, m)
            if h not in c.support:
                raise InsufficientSupportError(
                    f"site {G.format(h)} of gM is outside the pattern support")
            vals.append(c[h])
        return self.rule.evaluate(vals)

    def local(self, lookup: Mapping, g):
        """Rule at g reading values from a dict keyed by group elements."""
        G = self.group
        return self.rule.evaluate([lookup[G.mul(g, m)] for m in self.memory])


def apply_at(ca: CellularAutomaton, c: Pattern, g):
    return ca.apply_at(c, g)


def _eval_window(ca: CellularAutomaton, u: Pattern, target: FiniteSubset) -> Pattern:
    return Pattern(target, [ca.apply_at(u, g) for g in target])


def tau_plus(ca: CellularAutomaton, omega: FiniteSubset, u: Pattern) -> Pattern:
    """τ⁺_Ω: A^{Ω⁺} → A^Ω."""
    if u.support != neighborhood(omega, ca.memory):
        raise InsufficientSupportError("tau_plus needs a pattern supported on Ω⁺")
    return _eval_window(ca, u, omega)


def tau_minus(ca: CellularAutomaton, omega: FiniteSubset, u: Pattern) -> Pattern:
    """τ⁻_Ω: A^Ω → A^{Ω⁻}."""
    if u.support != omega:
        raise InsufficientSupportError("tau_minus needs a pattern supported on Ω")
    return _eval_window(ca, u, interior(omega, ca.memory))


def image_on(ca: CellularAutomaton, lookup: Mapping, target: Sequence) -> tuple:
    """Values of τ on ``target`` sites for a dict-backed configuration."""
    return tuple(ca.local(lookup, g) for g in target)


@dataclass(frozen=True)
class EquivarianceReport:
    passed: bool
    trials: int
    counterexample: dict | None = None

    def to_json(self):
        return {"passed": self.passed, "trials": self.trials,
                "counterexample": self.counterexample}


def _random_element(G: GroupSpec, rng: random.Random, size: int = 4):
    if G.kind == "Zd":
        return tuple(rng.randint(-size, size) for _ in range(G.rank))
    g = G.identity
    gens = G.generators()
    for _ in range(rng.randint(0, size)):
        g = G.mul(g, rng.choice(gens))
    return g


def check_equivariance(ca: CellularAutomaton, omega: FiniteSubset, trials: int = 100,
                       seed: int = 0) -> EquivarianceReport:
    """Compare τ⁺ after a shift with the shift of τ⁺ on random patterns."""
    if not ca.alphabet.is_finite and getattr(ca.alphabet, "sample_bound", None) is None:
        raise NotSampleableError("alphabet has no finite sampling domain")
    rng = random.Random(seed)
    G = ca.group
    plus = neighborhood(omega, ca.memory)
    for t in range(trials):
        u = Pattern(plus, [ca.alphabet.sample(rng) for _ in plus])
        g = _random_element(G, rng)
        lhs = tau_plus(ca, omega.translate(g), shift(g, u))
        rhs = shift(g, tau_plus(ca, omega, u))
        if lhs != rhs:
            return EquivarianceReport(False, t + 1, {
                "g": G.literal(g), "u": u.to_json(),
                "shifted_then_tau": lhs.to_json(), "tau_then_shifted": rhs.to_json()})
    return EquivarianceReport(True, trials)


# --------------------------------------------------------------------------
# memory helpers

def with_memory(ca: CellularAutomaton, memory: FiniteSubset) -> CellularAutomaton:
    """The same automaton described with a larger memory set."""
    if not ca.memory <= memory:
        raise ValueError("new memory set must contain the old one")
    positions = [memory.index(m) for m in ca.memory]
    if ca.rule.kind in ("polynomial", "linear"):
        rule = ca.rule.extended(positions, len(memory))
    else:
        old = ca.rule

        def fn(*vals):
            return old.evaluate([vals[p] for p in positions])

        rule = FunctionRule(len(memory), fn)
    return CellularAutomaton(ca.group, memory, rule, ca.alphabet, ca.irreducible,
                             ca.complete, ca.name)


def symmetrized(ca: CellularAutomaton) -> CellularAutomaton:
    """Memory enlarged to M ∪ M⁻¹ ∪ {1}."""
    G = ca.group
    M = ca.memory | ca.memory.inverse() | FiniteSubset(G, [G.identity])
    return with_memory(ca, M)

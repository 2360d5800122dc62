"""Sparse multivariate polynomials over a `Field`.

A polynomial is a dict from exponent tuples to nonzero coefficients, tied
to a `PolyRing` that fixes the variable list and the coefficient field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import Field

Monomial = tuple  # tuple[int, ...]


# --------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    name = "abstract"

    def key(self, m: Monomial):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


def _drl_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, m):
        return _drl_key(m)


class Lex(MonomialOrder):
    name = "lex"

    def key(self, m):
        return m


class Block(MonomialOrder):
    """The first ``k`` variables form a block that dominates the rest;
    degrevlex inside each block.  This is an elimination order for them."""

    def __init__(self, k: int):
        self.k = k
        self.name = f"block({k})"

    def key(self, m):
        return (_drl_key(m[: self.k]), _drl_key(m[self.k:]))


DEGREVLEX = DegRevLex()
LEX = Lex()


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# rings and polynomials

class PolyRing:
    """Polynomial ring ``field[variables]``."""

    def __init__(self, variables: Sequence[str], field: Field):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.field = field
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field)

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field})"

    @property
    def zero_exp(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.reduce(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.variables, field)

    def monomial(self, exps: Mapping[str, int]) -> Monomial:
        e = [0] * self.nvars
        for v, k in exps.items():
            e[self.index[v]] = k
        return tuple(e)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- construction helpers ------------------------------------------------
    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable[tuple[Monomial, object]]):
        out: dict = {}
        red = ring.field.reduce
        for m, c in terms:
            c = red(out.get(m, 0) + red(c))
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return cls(ring, out)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.field.reduce
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = red(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Polynomial(self.ring, {m: red(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.field.reduce
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: r for m, c in out.items() if (r := red(c))})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c, mono: Monomial | None = None) -> "Polynomial":
        """``c * x^mono * self``."""
        red = self.ring.field.reduce
        c = red(c)
        if not c:
            return self.ring.zero()
        if mono is None:
            return Polynomial(self.ring, {m: red(c * v) for m, v in self.terms.items()})
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, mono)): red(c * v)
                                      for m, v in self.terms.items()})

    # -- comparisons / predicates ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def support_vars(self) -> set[str]:
        used = set()
        for m in self.terms:
            used.update(self.ring.variables[i] for i, e in enumerate(m) if e)
        return used

    def leading(self, order: MonomialOrder):
        """(monomial, coefficient) of the leading term."""
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading(order)
        return self.scale(self.ring.field.inv(c))

    # -- evaluation / substitution ------------------------------------------------
    def evaluate(self, point: Sequence):
        """Evaluate at a point given in ring-variable order."""
        red = self.ring.field.reduce
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x ** e
            total += t
        return red(total)

    def subs(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute constants for some variables, staying in the same ring."""
        idx = {self.ring.index[v]: self.ring.field.reduce(x) for v, x in values.items()}
        out = []
        for m, c in self.terms.items():
            m2 = list(m)
            for i, x in idx.items():
                if m2[i]:
                    c = c * x ** m2[i]
                    m2[i] = 0
            out.append((tuple(m2), c))
        return Polynomial.from_terms(self.ring, out)

    def compose(self, images: Mapping[str, "Polynomial"], target: PolyRing) -> "Polynomial":
        """Replace every variable by a polynomial in ``target``.

        Variables absent from ``images`` must also exist in ``target`` and
        are carried over by name.
        """
        cache: dict = {}

        def image(i):
            if i not in cache:
                v = self.ring.variables[i]
                cache[i] = images[v] if v in images else target.var(v)
            return cache[i]

        result = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * image(i) ** e
            result = result + term
        return result

    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Move into a ring whose variables include ours (by name); the
        coefficient field may differ, in which case coefficients are
        re-reduced (they must come from integers or rationals)."""
        pos = [target.index[v] for v in self.ring.variables]
        out = []
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, k in zip(pos, m):
                e[i] = k
            if self.ring.field != target.field and self.ring.field.p is not None:
                q = self.ring.field.p
                c = c - q if c > q // 2 else c
            out.append((tuple(e), c))
        return Polynomial.from_terms(target, out)

    def restrict_to(self, target: PolyRing) -> "Polynomial":
        """Move into a ring containing every variable that actually occurs."""
        pos = {}
        for i, v in enumerate(self.ring.variables):
            if v in target.index:
                pos[i] = target.index[v]
        out = []
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, k in enumerate(m):
                if k:
                    if i not in pos:
                        raise ValueError(f"variable {self.ring.variables[i]!r} is not in {target}")
                    e[pos[i]] = k
            out.append((tuple(e), c))
        return Polynomial.from_terms(target, out)

    def rename(self, mapping: Mapping[str, str], target: PolyRing) -> "Polynomial":
        out = []
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, k in enumerate(m):
                if k:
                    v = self.ring.variables[i]
                    e[target.index[mapping.get(v, v)]] += k
            out.append((tuple(e), c))
        return Polynomial.from_terms(target, out)

    # -- display ------------------------------------------------------------
    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        return self.format(DEGREVLEX)

    def format(self, order: MonomialOrder) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            if self.ring.field.p is not None and c > self.ring.field.p // 2:
                c = c - self.ring.field.p
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.ring.variables, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators in a fixed ring."""

    ring: PolyRing
    generators: tuple

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            elif isinstance(g, (int, Fraction)):
                g = ring.const(g)
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            if g:
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def with_field(self, field: Field) -> "Ideal":
        ring = self.ring.with_field(field)
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])

    def to_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])

    def __repr__(self):
        return f"Ideal<{', '.join(map(str, self.generators)) or '0'}> in {self.ring}"

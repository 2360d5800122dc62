"""Group arithmetic for Z^d and free groups, finite-subset calculus,
box Folner sequences, and greedy (E, E')-tilings.

Elements of Z^d are tuples of ints.  Elements of a free group are reduced
strings over ``a, b, c, ...`` where the capital letter is the inverse
generator, so ``"aB"`` is a*b^-1 and the identity is ``""``.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class GroupMismatchError(ValueError):
    pass


class NonAmenableGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: str  # "Zd" or "Free"
    rank: int

    def __post_init__(self):
        if self.kind not in ("Zd", "Free"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.rank < 1:
            raise ValueError("group rank must be >= 1")
        if self.kind == "Free" and self.rank > 26:
            raise ValueError("free groups support at most 26 generators")

    @property
    def amenable(self) -> bool:
        return self.kind == "Zd"

    def __str__(self):
        return f"Z^{self.rank}" if self.kind == "Zd" else f"F_{self.rank}"

    # -- elements -------------------------------------------------------------
    @property
    def identity(self):
        return (0,) * self.rank if self.kind == "Zd" else ""

    @property
    def letters(self) -> str:
        low = string.ascii_lowercase[: self.rank]
        return low + low.upper()

    def generators(self) -> list:
        """Standard symmetric generating set (generators and inverses)."""
        if self.kind == "Zd":
            out = []
            for i in range(self.rank):
                for s in (1, -1):
                    e = [0] * self.rank
                    e[i] = s
                    out.append(tuple(e))
            return out
        low = string.ascii_lowercase[: self.rank]
        return [ch for c in low for ch in (c, c.upper())]

    def check(self, g):
        if self.kind == "Zd":
            if not (isinstance(g, tuple) and len(g) == self.rank
                    and all(isinstance(x, int) for x in g)):
                raise GroupMismatchError(f"{g!r} is not an element of {self}")
        else:
            if not isinstance(g, str) or any(ch not in self.letters for ch in g):
                raise GroupMismatchError(f"{g!r} is not an element of {self}")
            if any(a != b and a.lower() == b.lower() for a, b in zip(g, g[1:])):
                raise GroupMismatchError(f"{g!r} is not a reduced word")
        return g

    def element(self, literal):
        """Build an element from a literal (int list or word string)."""
        if self.kind == "Zd":
            if isinstance(literal, int):
                literal = [literal]
            return self.check(tuple(int(x) for x in literal))
        if not isinstance(literal, str):
            raise GroupMismatchError(f"free-group literal must be a string, got {literal!r}")
        return self.check(_free_reduce(literal))

    def literal(self, g):
        """Inverse of `element`: JSON-friendly form."""
        return list(g) if self.kind == "Zd" else g

    def format(self, g) -> str:
        if self.kind == "Zd":
            return str(g[0]) if self.rank == 1 else "(" + ",".join(map(str, g)) + ")"
        return g or "e"

    def mul(self, g, h):
        if self.kind == "Zd":
            return tuple(a + b for a, b in zip(g, h))
        return _free_mul(g, h)

    def inv(self, g):
        if self.kind == "Zd":
            return tuple(-a for a in g)
        return g[::-1].swapcase()

    def sort_key(self, g):
        if self.kind == "Zd":
            return g
        order = {ch: i for i, ch in enumerate(
            c for low in string.ascii_lowercase[: self.rank] for c in (low, low.upper()))}
        return (len(g), tuple(order[ch] for ch in g))

    def length(self, g) -> int:
        """Word length w.r.t. the standard generators (l1 norm for Z^d)."""
        return sum(abs(x) for x in g) if self.kind == "Zd" else len(g)


def _free_mul(g: str, h: str) -> str:
    i = 0
    n = min(len(g), len(h))
    while i < n and g[len(g) - 1 - i] == h[i].swapcase():
        i += 1
    return g[: len(g) - i] + h[i:]


def _free_reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def Z(d: int = 1) -> GroupSpec:
    return GroupSpec("Zd", d)


def FreeGroup(rank: int = 2) -> GroupSpec:
    return GroupSpec("Free", rank)


def mul(group: GroupSpec, g, h):
    group.check(g)
    group.check(h)
    return group.mul(g, h)


# --------------------------------------------------------------------------
# finite subsets

class FiniteSubset:
    """Finite subset of a group, stored duplicate-free in canonical order
    (lexicographic for Z^d, length-then-lexicographic for free words)."""

    __slots__ = ("group", "elements", "_set")

    def __init__(self, group: GroupSpec, elements: Iterable = (), *, checked: bool = False):
        if not checked:
            elements = [group.check(g) for g in elements]
        self.group = group
        self._set = frozenset(elements)
        self.elements = tuple(sorted(self._set, key=group.sort_key))

    @classmethod
    def of(cls, group: GroupSpec, literals: Iterable) -> "FiniteSubset":
        return cls(group, (group.element(x) for x in literals), checked=True)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __eq__(self, other):
        return (isinstance(other, FiniteSubset) and self.group == other.group
                and self._set == other._set)

    def __hash__(self):
        return hash((self.group, self._set))

    def __repr__(self):
        return f"FiniteSubset({self.group}, {[self.group.format(g) for g in self.elements]})"

    def index(self, g) -> int:
        return self.elements.index(g)

    def _same(self, other: "FiniteSubset"):
        if self.group != other.group:
            raise GroupMismatchError(f"subsets of {self.group} and {other.group}")

    def __or__(self, other):
        self._same(other)
        return FiniteSubset(self.group, self._set | other._set, checked=True)

    def __and__(self, other):
        self._same(other)
        return FiniteSubset(self.group, self._set & other._set, checked=True)

    def __sub__(self, other):
        self._same(other)
        return FiniteSubset(self.group, self._set - other._set, checked=True)

    def __le__(self, other):
        self._same(other)
        return self._set <= other._set

    def translate(self, g) -> "FiniteSubset":
        """Left translate gS."""
        return FiniteSubset(self.group, (self.group.mul(g, s) for s in self._set), checked=True)

    def right_translate(self, g) -> "FiniteSubset":
        return FiniteSubset(self.group, (self.group.mul(s, g) for s in self._set), checked=True)

    def inverse(self) -> "FiniteSubset":
        return FiniteSubset(self.group, (self.group.inv(s) for s in self._set), checked=True)

    def product(self, other: "FiniteSubset") -> "FiniteSubset":
        self._same(other)
        mul_ = self.group.mul
        return FiniteSubset(self.group, (mul_(a, b) for a in self._set for b in other._set),
                            checked=True)

    def literals(self) -> list:
        return [self.group.literal(g) for g in self.elements]


def interior(omega: FiniteSubset, memory: FiniteSubset) -> FiniteSubset:
    """The M-interior {g : gM ⊆ Ω}."""
    omega._same(memory)
    if not len(memory):
        raise ValueError("memory set must be non-empty")
    G = omega.group
    m0inv = G.inv(memory.elements[0])
    cands = (G.mul(w, m0inv) for w in omega)
    return FiniteSubset(G, (g for g in cands if all(G.mul(g, m) in omega for m in memory)),
                        checked=True)


def neighborhood(omega: FiniteSubset, memory: FiniteSubset) -> FiniteSubset:
    """The M-neighborhood ΩM."""
    return omega.product(memory)


def boundary(omega: FiniteSubset, memory: FiniteSubset) -> FiniteSubset:
    """The M-boundary ΩM minus the M-interior."""
    return neighborhood(omega, memory) - interior(omega, memory)


def influence_window(omega: FiniteSubset, memory: FiniteSubset) -> FiniteSubset:
    """Sites g whose memory translate gM meets Ω, i.e. ΩM⁻¹: the only sites
    where changing a configuration on Ω can change its image."""
    return omega.product(memory.inverse())


def ball(group: GroupSpec, radius: int) -> FiniteSubset:
    """Word-metric ball of the given radius (l1 ball for Z^d)."""
    layer = {group.identity}
    seen = set(layer)
    gens = group.generators()
    for _ in range(radius):
        layer = {group.mul(g, s) for g in layer for s in gens} - seen
        seen |= layer
    return FiniteSubset(group, seen, checked=True)


def box(d: int, lo: int, hi: int) -> FiniteSubset:
    """The box [lo, hi]^d in Z^d."""
    return FiniteSubset(Z(d), itertools.product(range(lo, hi + 1), repeat=d), checked=True)


def interval(lo: int, hi: int) -> FiniteSubset:
    return box(1, lo, hi)


# --------------------------------------------------------------------------
# Folner sequences

@dataclass(frozen=True)
class FolnerSequence:
    """Centered boxes F_m = [-m, m]^d in Z^d."""

    group: GroupSpec

    def __post_init__(self):
        if not self.group.amenable:
            raise NonAmenableGroupError(f"{self.group} is not amenable; no Folner sequence")

    def __getitem__(self, m: int) -> FiniteSubset:
        return folner_set(self, m)


def folner_set(seq: FolnerSequence, m: int) -> FiniteSubset:
    if not seq.group.amenable:
        raise NonAmenableGroupError(f"{seq.group} is not amenable")
    if m < 0:
        raise ValueError("Folner index must be >= 0")
    return box(seq.group.rank, -m, m)


def boundary_ratio_sequence(seq: FolnerSequence, memory: FiniteSubset, m_max: int
                            ) -> list[Fraction]:
    """Exact ratios |∂F_m| / |F_m| for m = 0..m_max."""
    if not seq.group.amenable:
        raise NonAmenableGroupError(f"{seq.group} is not amenable")
    out = []
    for m in range(m_max + 1):
        F = folner_set(seq, m)
        out.append(Fraction(len(boundary(F, memory)), len(F)))
    return out


# --------------------------------------------------------------------------
# tilings

@dataclass(frozen=True)
class Tiling:
    E: FiniteSubset
    Eprime: FiniteSubset
    centers: FiniteSubset
    window: FiniteSubset

    def disjoint(self) -> bool:
        """(T-1): the translates gE, g in centers, are pairwise disjoint."""
        seen: set = set()
        for g in self.centers:
            tile = self.E.translate(g)._set
            if seen & tile:
                return False
            seen |= tile
        return True

    def covers(self, region: FiniteSubset) -> bool:
        """(T-2) restricted to ``region``: region ⊆ ∪ gE'."""
        covered: set = set()
        for g in self.centers:
            covered |= self.Eprime.translate(g)._set
        return region._set <= covered


def make_tiling(E: FiniteSubset, window: FiniteSubset) -> Tiling:
    """Greedy (E, EE⁻¹)-tiling inside a finite window.

    Scan the window in canonical order and keep g whenever gE fits in the
    window and misses every tile kept so far.  Every h with hE ⊆ window is
    then covered by some gE' (hE meets some kept gE); when 1 ∈ E this
    includes the whole E'-interior of the window.
    """
    E._same(window)
    if not len(E):
        raise ValueError("tile shape E must be non-empty")
    G = E.group
    Eprime = E.product(E.inverse())
    used: set = set()
    centers = []
    for g in window:
        tile = {G.mul(g, e) for e in E}
        if tile <= window._set and not (tile & used):
            centers.append(g)
            used |= tile
    return Tiling(E, Eprime, FiniteSubset(G, centers, checked=True), window)


def tiling_count_in(T: Tiling, F: FiniteSubset) -> int:
    """|{g in centers : gE ⊆ F}|."""
    if not F <= T.window:
        raise ValueError("F must lie inside the tiling's window")
    G = T.E.group
    return sum(1 for g in T.centers if all(G.mul(g, e) in F for e in T.E))

"""Affine varieties used as CA alphabets (the alphabet is the set of points)."""

from __future__ import annotations

import functools
import itertools
from typing import Sequence

from .polyalg import Field, Ideal, PolyRing, krull_dimension


class AffineVariety:
    """V(ideal) in affine space with coordinates ``coords`` over ``field``.

    Irreducibility and completeness are declarations supplied by the user;
    they are never computed.
    """

    def __init__(self, coords: Sequence[str], generators: Sequence = (), field: Field = Field(),
                 *, declared_irreducible: bool = False, declared_complete: bool = False,
                 basepoint: Sequence | None = None):
        self.coords = tuple(coords)
        if not self.coords:
            raise ValueError("an affine variety needs at least one coordinate")
        self.field = field
        self.ring = PolyRing(self.coords, field)
        self.ideal = Ideal(self.ring, generators)
        self.declared_irreducible = declared_irreducible
        self.declared_complete = declared_complete
        self.basepoint = None
        if basepoint is not None:
            bp = tuple(field.reduce(x) for x in basepoint)
            if len(bp) != len(self.coords):
                raise ValueError("basepoint has the wrong number of coordinates")
            if not self.contains(bp):
                raise ValueError(f"basepoint {list(basepoint)} does not lie on the variety")
            self.basepoint = bp

    @property
    def n(self) -> int:
        return len(self.coords)

    @functools.cached_property
    def dim(self):
        return krull_dimension(self.ideal)

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.n:
            return False
        return all(g.evaluate(point) == 0 for g in self.ideal.generators)

    def coerce_point(self, point: Sequence) -> tuple:
        return tuple(self.field.reduce(x) for x in point)

    def with_field(self, field: Field) -> "AffineVariety":
        if field == self.field:
            return self
        ideal = self.ideal.with_field(field)
        bp = self.basepoint
        if bp is not None and self.field.p is not None:
            bp = tuple(x - self.field.p if x > self.field.p // 2 else x for x in bp)
        try:
            return AffineVariety(self.coords, ideal.generators, field,
                                 declared_irreducible=self.declared_irreducible,
                                 declared_complete=self.declared_complete, basepoint=bp)
        except ValueError:
            return AffineVariety(self.coords, ideal.generators, field,
                                 declared_irreducible=self.declared_irreducible,
                                 declared_complete=self.declared_complete)

    def points(self, bound: int = 2) -> list[tuple]:
        """Points with coordinates in F_p (finite field) or in the integer
        box [-bound, bound] (rationals).  Finite-field sampling only."""
        if self.field.p is not None:
            values = range(self.field.p)
        else:
            values = range(-bound, bound + 1)
        return [self.coerce_point(pt) for pt in itertools.product(values, repeat=self.n)
                if self.contains(self.coerce_point(pt))]

    def __repr__(self):
        gens = ", ".join(map(str, self.ideal.generators)) or "0"
        return f"AffineVariety({list(self.coords)}, <{gens}>, {self.field})"


def affine_space(n: int, field: Field, coords: Sequence[str] | None = None, **kw) -> AffineVariety:
    if coords is None:
        coords = ["t"] if n == 1 else [f"v{j}" for j in range(n)]
    kw.setdefault("declared_irreducible", True)
    return AffineVariety(coords, (), field, **kw)

"""Buchberger's algorithm and the ideal operations built on it.

Pairs are selected by the sugar strategy; useless pairs are discarded with
the coprime-leading-term (product) criterion and the Gebauer-Moeller chain
criterion.  The output is always the reduced Groebner basis, so two bases
of the same ideal under the same order compare equal.
"""

from __future__ import annotations

import functools
import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import (
    DEGREVLEX,
    Block,
    Ideal,
    MonomialOrder,
    Polynomial,
    PolyRing,
    divides,
    mono_coprime,
    mono_lcm,
)


# --------------------------------------------------------------------------
# raw dict-level helpers (hot paths)

def _reduce(terms: dict, basis: list, key, field) -> dict:
    """Fully reduce ``terms`` modulo ``basis`` (list of (lm, poly_terms),
    every element monic).  Returns the remainder as a dict."""
    red = field.reduce
    f = dict(terms)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = red(f.get(t, 0) - c * gc)
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(terms: dict, key, field) -> tuple:
    lm = max(terms, key=key)
    inv = field.inv(terms[lm])
    red = field.reduce
    return lm, {m: red(c * inv) for m, c in terms.items()}


def _spoly(lm1, g1, lm2, g2, field) -> dict:
    lcm = mono_lcm(lm1, lm2)
    s1 = tuple(a - b for a, b in zip(lcm, lm1))
    s2 = tuple(a - b for a, b in zip(lcm, lm2))
    red = field.reduce
    out: dict = {}
    for m, c in g1.items():
        t = tuple(a + b for a, b in zip(m, s1))
        out[t] = c
    for m, c in g2.items():
        t = tuple(a + b for a, b in zip(m, s2))
        v = red(out.get(t, 0) - c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


# --------------------------------------------------------------------------
# public API

@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, interreduced, sorted by decreasing
    leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    polys: tuple

    @property
    def leading_monomials(self) -> list:
        return [p.leading(self.order)[0] for p in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, list(self.polys), self.order)

    def __contains__(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.polys)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX
                ) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``basis``.

    No term of the result is divisible by a leading term of ``basis``; the
    difference ``f - result`` lies in the ideal the basis generates.
    """
    field = f.ring.field
    key = order.key
    prepared = []
    for g in basis:
        if g.ring != f.ring:
            raise ValueError("basis element lives in a different ring")
        if g:
            prepared.append(_monic(g.terms, key, field))
    return Polynomial(f.ring, _reduce(f.terms, prepared, key, field))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    field = f.ring.field
    lf, mf = _monic(f.terms, order.key, field)
    lg, mg = _monic(g.terms, order.key, field)
    return Polynomial(f.ring, _spoly(lf, mf, lg, mg, field))


def buchberger(gens: Iterable[Polynomial] | Ideal, order: MonomialOrder = DEGREVLEX,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if isinstance(gens, Ideal):
        ring = gens.ring
        gens = gens.generators
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    if ring.nvars == 0 and not gens:
        return GroebnerBasis(ring, order, ())
    return _buchberger_cached(ring, order, tuple(frozenset(g.terms.items()) for g in gens))


@functools.lru_cache(maxsize=512)
def _buchberger_cached(ring, order, frozen_gens) -> GroebnerBasis:
    field = ring.field
    key = order.key

    polys: list = []      # every basis element ever added: (lm, terms, sugar)
    active: list = []     # indices into polys forming the current basis
    pairs: list = []      # heap of (sugar, lcm key, seq, i, j)
    seq = 0

    def current_basis():
        return [(polys[i][0], polys[i][1]) for i in active]

    def add(terms, sugar):
        nonlocal seq, pairs, active
        lm, g = _monic(terms, key, field)
        k = len(polys)
        polys.append((lm, g, sugar))
        # Gebauer-Moeller update
        new = []
        for i in active:
            li = polys[i][0]
            new.append((i, mono_lcm(li, lm), mono_coprime(li, lm)))
        kept = []
        for idx, (i, lcm_ik, coprime) in enumerate(new):
            if coprime:
                kept.append((i, lcm_ik, coprime))
                continue
            dominated = False
            for jdx, (j, lcm_jk, _) in enumerate(new):
                if jdx == idx:
                    continue
                if divides(lcm_jk, lcm_ik) and (lcm_jk != lcm_ik or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((i, lcm_ik, coprime))
        survivors = []
        for entry in pairs:
            _, _, _, i, j = entry
            lcm_ij = mono_lcm(polys[i][0], polys[j][0])
            if (divides(lm, lcm_ij)
                    and mono_lcm(polys[i][0], lm) != lcm_ij
                    and mono_lcm(polys[j][0], lm) != lcm_ij):
                continue
            survivors.append(entry)
        pairs = survivors
        heapq.heapify(pairs)
        for i, lcm_ik, coprime in kept:
            if coprime:
                continue
            li, _, si = polys[i]
            s_sugar = max(si + sum(lcm_ik) - sum(li), sugar + sum(lcm_ik) - sum(lm))
            heapq.heappush(pairs, (s_sugar, key(lcm_ik), seq, i, k))
            seq += 1
        active = [i for i in active if not divides(lm, polys[i][0])] + [k]

    start = []
    for fg in frozen_gens:
        terms = dict(fg)
        start.append((terms, max(sum(m) for m in terms)))
    start.sort(key=lambda t: key(max(t[0], key=key)))
    for terms, sugar in start:
        r = _reduce(terms, current_basis(), key, field)
        if r:
            if all(not any(m) for m in r):
                return GroebnerBasis(ring, order, (ring.one(),))
            add(r, sugar)

    while pairs:
        _, _, _, i, j = heapq.heappop(pairs)
        li, gi, si = polys[i]
        lj, gj, sj = polys[j]
        s = _spoly(li, gi, lj, gj, field)
        if not s:
            continue
        lcm = mono_lcm(li, lj)
        sugar = max(si + sum(lcm) - sum(li), sj + sum(lcm) - sum(lj))
        r = _reduce(s, current_basis(), key, field)
        if r:
            if all(not any(m) for m in r):
                return GroebnerBasis(ring, order, (ring.one(),))
            add(r, sugar)

    return _interreduce(ring, order, [(polys[i][0], polys[i][1]) for i in active])


def _interreduce(ring, order, basis) -> GroebnerBasis:
    key = order.key
    field = ring.field
    basis = sorted(basis, key=lambda t: key(t[0]))
    minimal = []
    for lm, g in basis:
        if not any(divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce(tail, others, key, field)
        tail[lm] = field.one
        reduced.append((lm, tail))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return GroebnerBasis(ring, order, tuple(Polynomial(ring, g) for _, g in reduced))


def groebner(ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    return buchberger(ideal.generators, order, ring=ideal.ring)


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [b for b in basis if b]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            s = s_polynomial(basis[a], basis[b], order)
            if normal_form(s, basis, order):
                return False
    return True


def ideal_member(f: Polynomial, ideal: Ideal) -> bool:
    if f.ring != ideal.ring:
        raise ValueError("polynomial and ideal live in different rings")
    if f.is_zero():
        return True
    if not ideal.generators:
        return False
    return f in groebner(ideal)


def empty_over_closure(ideal: Ideal) -> bool:
    """True iff V(I) has no points over the algebraic closure (1 in I)."""
    if not ideal.generators:
        return False
    return groebner(ideal).is_unit()


def eliminate(ideal: Ideal, vars_out: Iterable[str]) -> Ideal:
    """Generators of ``I ∩ K[remaining variables]``, in the ring of the
    remaining variables (original relative order kept)."""
    ring = ideal.ring
    vars_out = list(dict.fromkeys(vars_out))
    for v in vars_out:
        if v not in ring.index:
            raise KeyError(f"unknown variable {v!r}")
    keep = [v for v in ring.variables if v not in set(vars_out)]
    work = PolyRing(vars_out + keep, ring.field)
    target = PolyRing(keep, ring.field)
    if not ideal.generators:
        return Ideal(target, [])
    gb = buchberger([g.to_ring(work) for g in ideal.generators], Block(len(vars_out)), ring=work)
    k = len(vars_out)
    out = []
    for g in gb.polys:
        if all(not any(m[:k]) for m in g.terms):
            out.append(Polynomial(target, {m[k:]: c for m, c in g.terms.items()}))
    return Ideal(target, out)


@functools.total_ordering
class _Empty:
    """Dimension of the empty variety; compares below every natural number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("EMPTY")

    def __repr__(self):
        return "EMPTY"

    __str__ = __repr__


EMPTY = _Empty()


def _max_independent(supports: list[frozenset], n: int) -> int:
    """Largest |U| such that no support set is contained in U.

    Equivalently ``n - (minimum hitting set of the supports)``; solved by
    branching on the variables of an unhit support.
    """
    supports = sorted(set(supports), key=len)
    # drop supersets: hitting a subset hits the superset
    minimal = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [n + 1]

    def search(hit: frozenset, depth: int):
        if depth >= best[0]:
            return
        for s in minimal:
            if not (s & hit):
                break
        else:
            best[0] = depth
            return
        for v in sorted(s):
            search(hit | {v}, depth + 1)

    search(frozenset(), 0)
    return n - best[0]


def dimension_from_basis(gb: GroebnerBasis):
    if gb.is_unit():
        return EMPTY
    n = gb.ring.nvars
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in gb.leading_monomials]
    return _max_independent(supports, n)


def krull_dimension(ideal: Ideal):
    """Krull dimension of K[x]/I, or `EMPTY` when 1 is in I."""
    if not ideal.generators:
        return ideal.ring.nvars
    return dimension_from_basis(groebner(ideal, DEGREVLEX))


def image_closure(components: Sequence[Polynomial], domain: Ideal,
                  target_vars: Sequence[str] | None = None) -> Ideal:
    """Ideal of the Zariski closure of the image of ``V(domain)`` under the
    map ``x -> (components)``.  The result lives in ``target_vars``."""
    src = domain.ring
    n = len(components)
    if target_vars is None:
        target_vars = [f"y{j + 1}" for j in range(n)]
    target_vars = list(target_vars)
    if len(target_vars) != n:
        raise ValueError("need one target variable per component")
    clash = set(target_vars) & set(src.variables)
    if clash:
        raise ValueError(f"target variables clash with source variables: {sorted(clash)}")
    for c in components:
        if c.ring != src:
            raise ValueError("map component lives outside the domain ring")
    work = PolyRing(list(src.variables) + target_vars, src.field)
    gens = [g.to_ring(work) for g in domain.generators]
    gens += [work.var(y) - c.to_ring(work) for y, c in zip(target_vars, components)]
    return eliminate(Ideal(work, gens), src.variables)

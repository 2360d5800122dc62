"""Registry of worked examples with their expected results.

Every expectation carries a ``source`` label: ``"example"`` for values
stated with the worked example, ``"oracle"`` for values fixed by an
independent computation (brute force, rank, point enumeration) and
``"trivial"`` for values that follow by inspection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from . import finite
from .algca import (
    equivalence_harness,
    mdim_estimate,
    orphan_certify,
    star_check_candidate,
    starstar_check,
    validate_rule,
    window_image_dim,
    window_ring,
)
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
from .groups import (
    FiniteSubset,
    FolnerSequence,
    FreeGroup,
    NonAmenableGroupError,
    Z,
    ball,
    folner_set,
    interval,
)
from .polyalg import EMPTY, GF, QQ, Field, Ideal
from .variety import AffineVariety, affine_space

# --------------------------------------------------------------------------
# constructors


def _z_memory(*offsets) -> FiniteSubset:
    return FiniteSubset.of(Z(1), list(offsets))


def squaring_ca(fld: Field = QQ) -> CellularAutomaton:
    """Affine chart of (x:y) -> (x^2:y^2): t -> t^2 with M = {0}."""
    X = affine_space(1, fld, basepoint=[0])
    return CellularAutomaton(Z(1), _z_memory(0), PolynomialRule(["t"], 1, ["t0^2"], fld),
                             AffineAlphabet(X), irreducible=True, complete=False,
                             name="intro-squaring-p1")


def reducible_curve_ca(fld: Field = GF(7)) -> CellularAutomaton:
    """Chart w = 1 of the curve uv = 0 with the contraction (x, y) -> (x, 0).

    The projective curve is complete but reducible; the flags describe it.
    """
    X = AffineVariety(["x", "y"], ["x*y"], fld, declared_complete=True, basepoint=[0, 0])
    return CellularAutomaton(Z(1), _z_memory(0),
                             PolynomialRule(["x", "y"], 1, ["x0", "0"], fld),
                             AffineAlphabet(X), irreducible=False, complete=True,
                             name="reducible-curve-uv")


def dominant_ca(fld: Field = QQ, r: int = 1, s: int = 1, P: str = "y") -> CellularAutomaton:
    """(x, y) -> (x^r, x^s P(y)) on the affine plane, M = {0}."""
    X = affine_space(2, fld, coords=["x", "y"], basepoint=[0, 0])
    Py = P.replace("y", "y0")
    rule = PolynomialRule(["x", "y"], 1, [f"x0^{r}", f"x0^{s}*({Py})"], fld)
    return CellularAutomaton(Z(1), _z_memory(0), rule, AffineAlphabet(X), irreducible=True,
                             complete=False, name="affine-dominant-xrxsP")


def product_ca(fld: Field = GF(5)) -> CellularAutomaton:
    """τ(c)(n) = c(n)c(n+1) on the affine line."""
    X = affine_space(1, fld, basepoint=[0])
    return CellularAutomaton(Z(1), _z_memory(0, 1), PolynomialRule(["t"], 2, ["t0*t1"], fld),
                             AffineAlphabet(X), irreducible=True, complete=False,
                             name="product-rule-z")


E0 = ((1, 0), (0, 0))
E1 = ((0, 1), (0, 0))


def free_linear_ca() -> CellularAutomaton:
    """Free group of rank 2, A = F_2^2: the output's first coordinate sums
    the first coordinates at a, a^-1 and the second coordinates at b, b^-1;
    the second output coordinate is 0."""
    F = FreeGroup(2)
    M = FiniteSubset.of(F, ["a", "A", "b", "B"])
    blocks = {"a": E0, "A": E0, "b": E1, "B": E1}
    rule = LinearRule(2, 2, [blocks[m] for m in M])
    return CellularAutomaton(F, M, rule, LinearAlphabet(2, 2), irreducible=True,
                             complete=False, name="free-group-linear")


def hyperplane_fixture_ca() -> CellularAutomaton:
    """A = F_2^2 on Z, M = {0, 1}: τ(c)(n) = (c(n)_0 + c(n+1)_0, 0)."""
    return CellularAutomaton(Z(1), _z_memory(0, 1), LinearRule(2, 2, [E0, E0]),
                             LinearAlphabet(2, 2), irreducible=True, complete=False,
                             name="linear-hyperplane-fixture")


def table_ca(fn: Callable, symbols=(0, 1), memory=(0, 1), name: str = "") -> CellularAutomaton:
    M = _z_memory(*memory)
    table = {key: fn(*key) for key in itertools.product(symbols, repeat=len(M))}
    return CellularAutomaton(Z(1), M, TableRule(len(M), table), FiniteAlphabet(symbols),
                             name=name)


def finite_identity_ca():
    return table_ca(lambda a, b: a, name="finite-identity")


def finite_constant_ca():
    return table_ca(lambda a, b: 0, name="finite-constant")


def finite_and_ca():
    return table_ca(lambda a, b: a & b, name="finite-and")


def finite_xor_ca():
    return table_ca(lambda a, b: a ^ b, name="finite-xor")


def linear_as_polynomial(ca: CellularAutomaton, fld: Field) -> CellularAutomaton:
    """Read the integer matrices of a linear rule over another field."""
    rule = ca.rule
    coords = ca.alphabet.coords
    X = affine_space(rule.n, fld, coords=coords, basepoint=[0] * rule.n)
    prule = rule.polynomial_rule(coords).with_field(fld)
    return CellularAutomaton(ca.group, ca.memory, prule, AffineAlphabet(X), ca.irreducible,
                             ca.complete, ca.name)


# --------------------------------------------------------------------------
# expectations


@dataclass(frozen=True)
class Check:
    name: str
    observed: Any
    expected: Any
    source: str
    ok: bool

    def to_json(self):
        return {"name": self.name, "observed": self.observed, "expected": self.expected,
                "source": self.source, "ok": self.ok}


def check(name, observed, expected, source) -> Check:
    if source not in ("example", "oracle", "trivial"):
        raise ValueError(f"unknown expectation source {source!r}")
    return Check(name, observed, expected, source, observed == expected)


@dataclass
class Context:
    field: Field | None = None
    m_max: int = 3
    seed: int = 42
    max_window: int = 8


@dataclass
class Outcome:
    sections: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


@dataclass(frozen=True)
class RegistryEntry:
    id: str
    anchor: str
    default_field: Field | None
    build: Callable
    run: Callable
    window_dims: Callable | None = None


def _dim(d):
    return "empty" if d is EMPTY else d


def _pattern(G, mapping):
    return Pattern.from_dict(G, {G.element(k): v for k, v in mapping.items()})


# --------------------------------------------------------------------------
# entries


def _run_squaring(ctx: Context) -> Outcome:
    fld = ctx.field or QQ
    out = Outcome()
    ca = squaring_ca(fld)
    wi = window_image_dim(ca, interval(0, 0))
    out.sections["window_image"] = wi
    out.checks.append(check("image closure dim on {0}", _dim(wi.dim), 1, "example"))
    ss = starstar_check(ca, interval(0, 0), 4, ctx.seed)
    out.sections["starstar"] = ss
    out.checks.append(check("(**) at {0}", ss.kind, "Certified", "oracle"))
    caq = squaring_ca(QQ)
    pre = {}
    for b in (0, 1, 2, -1):
        v = orphan_certify(caq, _pattern(Z(1), {0: (b,)}))
        pre[str(b)] = v
        out.checks.append(check(f"preimage of {b} solvable over the closure", v.kind,
                                "UndecidedAtScale", "example"))
    out.sections["preimages"] = pre
    p = fld.p if fld.is_finite else 7
    if p == 2:
        out.sections["non_preinjectivity"] = {"skipped": "characteristic 2"}
    else:
        cap = squaring_ca(GF(p))
        empty = Pattern(FiniteSubset(Z(1), []), [])
        u, v = _pattern(Z(1), {0: (1,)}), _pattern(Z(1), {0: (p - 1,)})
        pair = finite.verify_erasable(cap, empty, u, v)
        mep = finite.mep_search(cap, 1)
        out.sections["non_preinjectivity"] = {"field": str(GF(p)), "pair": [u, v],
                                              "pair_verified": pair, "mep_search": mep}
        out.checks.append(check(f"1 and -1 both map to 1 over F_{p}", pair, True, "example"))
        out.checks.append(check("mep_search finds a pair at window 1",
                                mep.found is not None, True, "oracle"))
        # P^1(F_p) as p + 1 tagged points, infinity fixed
        syms = tuple(range(p)) + ("inf",)
        proj = CellularAutomaton(Z(1), _z_memory(0), TableRule(1, {
            (x,): ("inf" if x == "inf" else x * x % p) for x in syms}), FiniteAlphabet(syms),
            name="squaring-P1-points")
        orph = finite.orphan_search(proj, 1)
        out.sections["projective_points"] = {"points": len(syms), "orphan_search": orph}
        out.checks.append(check(f"P^1(F_{p}) points: squaring misses non-squares",
                                orph.found is not None, True, "oracle"))
    return out


def _dims_z(ca_builder, m_top=2):
    def dims(fld):
        ca = ca_builder(fld)
        return {f"F_{m}": _dim(window_image_dim(ca, folner_set(FolnerSequence(Z(1)), m)).dim)
                for m in range(m_top + 1)}
    return dims


def _xy_tagged_points(p: int):
    """Points of uv = 0 in P^2(F_p): chart points (x, y) plus the two points
    at infinity, 'u' = (1:0:0) on L_v and 'v' = (0:1:0) on L_u."""
    aff = [(x, y) for x in range(p) for y in range(p) if x * y % p == 0]
    return aff + ["inf_u", "inf_v"]


def _run_reducible(ctx: Context) -> Outcome:
    fld = ctx.field or GF(7)
    out = Outcome()
    ca = reducible_curve_ca(fld)
    X = ca.variety
    out.checks.append(check("krull_dimension(<xy>)", _dim(X.dim), 1, "example"))
    vr = validate_rule(X, ca.memory, ca.rule.components)
    out.checks.append(check("contraction maps X into X", vr.kind, "Certified", "example"))
    md = mdim_estimate(ca, ctx.m_max)
    out.sections["mdim"] = md
    out.checks.append(check("mdim ratios", md.ratios, [1] * (ctx.m_max + 1), "example"))
    wi = window_image_dim(ca, interval(0, 1))
    out.checks.append(check("window [0,1] image dim", _dim(wi.dim), 2, "oracle"))
    ss = {}
    for lo, hi in ((0, 0), (0, 1)):
        v = starstar_check(ca, interval(lo, hi), 4, ctx.seed)
        ss[f"[{lo},{hi}]"] = v
        out.checks.append(check(f"(**) at [{lo},{hi}]", v.kind, "Certified", "example"))
    out.sections["starstar"] = ss
    orph = orphan_certify(ca, _pattern(Z(1), {0: (0, 1)}))
    out.sections["orphan"] = orph
    out.checks.append(check("target (0,1) has no preimage", orph.kind, "Certified", "example"))
    H = Ideal(window_ring(ca, interval(0, 0)), ["y_0"])
    st = star_check_candidate(ca, interval(0, 0), H, 16, ctx.seed)
    out.sections["star"] = st
    out.checks.append(check("(*) refuted by H = {y = 0}", st.kind, "Refuted", "example"))
    empty = Pattern(FiniteSubset(Z(1), []), [])
    pair = finite.verify_erasable(ca, empty, _pattern(Z(1), {0: (0, 1)}),
                                  _pattern(Z(1), {0: (0, 0)}))
    out.checks.append(check("(0,1) and (0,0) have the same image", pair, True, "example"))
    harness = equivalence_harness(ca, min(ctx.m_max, 2), 4, ctx.seed,
                                  [_pattern(Z(1), {0: (0, 1)})], star_refutation=st)
    out.sections["implications"] = harness["implications"]
    out.checks.append(check("verdicts consistent with the implications",
                            harness["consistent"], True, "oracle"))
    # finite-field view of the projective curve; f((0:1:0)) is forced to be
    # (0:0:1) because f is constant on the affine part of L_u
    p = fld.p if fld.is_finite else 7
    pts = _xy_tagged_points(p)

    def f(pt):
        if pt == "inf_u":
            return "inf_u"
        if pt == "inf_v":
            return (0, 0)
        return (pt[0], 0)

    proj = CellularAutomaton(Z(1), _z_memory(0), TableRule(1, {(pt,): f(pt) for pt in pts}),
                             FiniteAlphabet(pts), name="contraction-P2-points")
    image = {f(pt) for pt in pts}
    orph_pts = finite.orphan_search(proj, 1)
    out.sections["projective_points"] = {"field": str(GF(p)), "points": len(pts),
                                         "image_size": len(image), "orphan_search": orph_pts}
    out.checks.append(check("f(X(F_p)) = L_v(F_p)", len(image), p + 1, "oracle"))
    return out


def _run_dominant(ctx: Context) -> Outcome:
    fld = ctx.field or QQ
    out = Outcome()
    ca = dominant_ca(fld)
    wi = window_image_dim(ca, interval(0, 0))
    out.sections["window_image"] = wi
    out.checks.append(check("image closure ideal", [str(g) for g in wi.closure_ideal.generators],
                            [], "example"))
    out.checks.append(check("image closure dim", _dim(wi.dim), 2, "example"))
    o1 = orphan_certify(ca, _pattern(Z(1), {0: (0, 1)}))
    o2 = orphan_certify(ca, _pattern(Z(1), {0: (1, 1)}))
    out.sections["orphans"] = {"(0,1)": o1, "(1,1)": o2}
    out.checks.append(check("(0,1) has no preimage", o1.kind, "Certified", "example"))
    out.checks.append(check("(1,1) preimage system solvable", o2.kind, "UndecidedAtScale",
                            "example"))
    md = mdim_estimate(ca, min(ctx.m_max, 2))
    out.sections["mdim"] = md
    out.checks.append(check("mdim ratios", md.ratios, [2] * (min(ctx.m_max, 2) + 1), "example"))
    ss = starstar_check(ca, interval(0, 0), 4, ctx.seed)
    out.sections["starstar"] = ss
    out.checks.append(check("(**) at {0}", ss.kind, "Certified", "example"))
    empty = Pattern(FiniteSubset(Z(1), []), [])
    pair = finite.verify_erasable(ca, empty, _pattern(Z(1), {0: (0, 0)}),
                                  _pattern(Z(1), {0: (0, 1)}))
    out.checks.append(check("(0,0) and (0,1) have the same image", pair, True, "example"))
    harness = equivalence_harness(ca, 1, 4, ctx.seed, [_pattern(Z(1), {0: (0, 1)})])
    out.sections["implications"] = harness["implications"]
    out.checks.append(check("verdicts consistent with the implications",
                            harness["consistent"], True, "oracle"))
    return out


def _run_product(ctx: Context) -> Outcome:
    fld = ctx.field or GF(5)
    out = Outcome()
    ca = product_ca(fld)
    md = mdim_estimate(ca, ctx.m_max)
    out.sections["mdim"] = md
    out.checks.append(check("dim(Γ_{F_m}) = 2m+1", [r.dim for r in md.rows],
                            [2 * m + 1 for m in range(ctx.m_max + 1)], "example"))
    out.checks.append(check("mdim ratios", md.ratios, [1] * (ctx.m_max + 1), "example"))
    d = _pattern(Z(1), {-1: (1,), 0: (0,), 1: (1,)})
    orph = orphan_certify(ca, d)
    out.sections["orphan"] = orph
    out.checks.append(check("d has no preimage", orph.kind, "Certified", "example"))
    zero_q = Pattern(FiniteSubset.of(Z(1), [-2, 2]), [(0,), (0,)])
    pair = finite.verify_erasable(ca, zero_q, d, Pattern.constant(d.support, (0,)))
    out.checks.append(check("τ(d) = τ(0)", pair, True, "example"))
    ss = starstar_check(ca, interval(0, 0), 8, ctx.seed)
    out.sections["starstar"] = ss
    out.checks.append(check("(**) at {0}", ss.kind, "Certified", "oracle"))
    ca2 = product_ca(GF(2))
    H = Ideal(window_ring(ca2, interval(0, 0)), ["t_0"])
    st = star_check_candidate(ca2, interval(0, 0), H, 16, ctx.seed)
    out.sections["star_F2"] = st
    out.checks.append(check("H = {t = 0} over F_2 is not a (*) witness", st.kind,
                            "UndecidedAtScale", "oracle"))
    and_ca = finite_and_ca()
    o = finite.orphan_search(and_ca, min(ctx.max_window, 8))
    m = finite.mep_search(and_ca, 1)
    out.sections["finite_and"] = {"orphan_search": o, "mep_search": m}
    out.checks.append(check("AND orphan", list(o.found.values) if o.found else None,
                            [1, 0, 1], "oracle"))
    out.checks.append(check("AND erasable pair at window 1", m.found is not None, True,
                            "oracle"))
    harness = equivalence_harness(ca, min(ctx.m_max, 2), 4, ctx.seed, [d])
    out.sections["implications"] = harness["implications"]
    out.checks.append(check("verdicts consistent with the implications",
                            harness["consistent"], True, "oracle"))
    return out


def _run_free(ctx: Context) -> Outcome:
    out = Outcome()
    ca = free_linear_ca()
    F = ca.group
    try:
        mdim_estimate(ca, 1)
        amen = "computed"
    except NonAmenableGroupError:
        amen = "NonAmenableGroupError"
    out.checks.append(check("mdim on a free group", amen, "NonAmenableGroupError", "trivial"))
    lw = finite.linear_window_matrix(ca, ball(F, 1))
    out.checks.append(check("window matrix shape at ball(1)", list(lw.matrix.shape), [10, 34],
                            "oracle"))
    pre = finite.linear_preinjectivity(ca, [0, 1, 2])
    out.sections["preinjectivity"] = pre
    out.checks.append(check("no finitely supported kernel at radii <= 2", pre.kind,
                            "UndecidedAtScale", "oracle"))
    orphan_radius = None
    orph = None
    for r in range(4):
        orph = finite.linear_orphan(ca, ball(F, r))
        if orph.certified:
            orphan_radius = r
            break
    out.sections["orphan"] = {"radius": orphan_radius, "verdict": orph}
    out.checks.append(check("rank-deficit orphan at some radius <= 3",
                            orphan_radius is not None, True, "oracle"))
    if orphan_radius is not None:
        w = orph.witness["orphan"]
        pat = Pattern(ball(F, orphan_radius), [tuple(v) for v in w["values"]])
        out.checks.append(check("orphan confirmed by enumeration",
                                finite.has_preimage(ca, pat), False, "oracle"))
    return out


def _dims_free(fld):
    ca = linear_as_polynomial(free_linear_ca(), fld)
    return {f"ball_{r}": _dim(window_image_dim(ca, ball(ca.group, r)).dim) for r in (0, 1)}


def _run_hyperplane(ctx: Context) -> Outcome:
    out = Outcome()
    ca = hyperplane_fixture_ca()
    pre = finite.linear_preinjectivity(ca, [0])
    out.sections["preinjectivity"] = pre
    out.checks.append(check("kernel configuration found", pre.kind, "Refuted", "oracle"))
    c = _pattern(Z(1), {0: (0, 1)})
    out.checks.append(check("second-coordinate delta is in the kernel",
                            finite.is_kernel_configuration(ca, c), True, "oracle"))
    hv = finite.hyperplane_equivalence(ca, interval(0, 0), c)
    out.sections["hyperplane"] = hv
    out.checks.append(check("hyperplane equivalence", hv.kind, "Certified", "oracle"))
    plus2 = interval(-2, 2)
    H = Ideal(window_ring(ca, plus2), ["v1_0"])
    st = star_check_candidate(ca, plus2, H, 64, ctx.seed)
    out.sections["star"] = st
    out.checks.append(check("star_check_candidate refutes (*)", st.kind, "Refuted", "oracle"))
    m = finite.mep_search(ca, 1)
    out.sections["mep_search"] = m
    out.checks.append(check("erasable pair at window 1", m.found is not None, True, "oracle"))
    md = mdim_estimate(ca, min(ctx.m_max, 2))
    out.sections["mdim"] = md
    out.checks.append(check("mdim ratios", md.ratios, [1] * (min(ctx.m_max, 2) + 1), "oracle"))
    return out


def _dims_linear_z(builder):
    def dims(fld):
        ca = linear_as_polynomial(builder(), fld)
        return {f"F_{m}": _dim(window_image_dim(ca, folner_set(FolnerSequence(Z(1)), m)).dim)
                for m in range(3)}
    return dims


def _run_constant(ctx: Context) -> Outcome:
    out = Outcome()
    ca = finite_constant_ca()
    o = finite.orphan_search(ca, ctx.max_window)
    m = finite.mep_search(ca, 2)
    e = finite.entropy_estimate(ca, min(ctx.m_max, 4))
    out.sections.update({"orphan_search": o, "mep_search": m, "entropy": e})
    out.checks.append(check("orphan", list(o.found.values) if o.found else None, [1],
                            "trivial"))
    out.checks.append(check("erasable pair at window 1",
                            len(m.found["u"].support) if m.found else None, 1, "trivial"))
    out.checks.append(check("image counts", [r.count for r in e], [1] * len(e), "trivial"))
    return out


def _run_xor(ctx: Context) -> Outcome:
    out = Outcome()
    ca = finite_xor_ca()
    o = finite.orphan_search(ca, ctx.max_window)
    ob = finite.orphan_search(ca, min(ctx.max_window, 8), method="brute")
    m = finite.mep_search(ca, min(ctx.max_window, 6))
    e = finite.entropy_estimate(ca, min(ctx.m_max, 4))
    out.sections.update({"orphan_search": o, "mep_search": m, "entropy": e})
    out.checks.append(check(f"no orphan through window {ctx.max_window}", o.found, None,
                            "oracle"))
    out.checks.append(check("graph and brute-force searches agree", ob.found, o.found, "oracle"))
    out.checks.append(check("no erasable pair", m.found, None, "oracle"))
    out.checks.append(check("full entropy", [r.full for r in e], [True] * len(e), "oracle"))
    lin = CellularAutomaton(Z(1), _z_memory(0, 1), LinearRule(2, 1, [[[1]], [[1]]]),
                            LinearAlphabet(2, 1))
    pre = finite.linear_preinjectivity(lin, range(7))
    out.sections["linear_preinjectivity"] = pre
    out.checks.append(check("no kernel at radii <= 6", pre.kind, "UndecidedAtScale", "oracle"))
    return out


REGISTRY: dict[str, RegistryEntry] = {e.id: e for e in [
    RegistryEntry("intro-squaring-p1", "projective line, (x:y) -> (x^2:y^2), affine chart",
                  QQ, squaring_ca, _run_squaring, _dims_z(squaring_ca)),
    RegistryEntry("reducible-curve-uv", "curve uv = 0 with the contraction (x, y) -> (x, 0)",
                  GF(7), reducible_curve_ca, _run_reducible, _dims_z(reducible_curve_ca)),
    RegistryEntry("affine-dominant-xrxsP", "(x, y) -> (x^r, x^s P(y)) with r = s = 1, P = y",
                  QQ, dominant_ca, _run_dominant, _dims_z(dominant_ca, 1)),
    RegistryEntry("product-rule-z", "τ(c)(n) = c(n)c(n+1) on the affine line",
                  GF(5), product_ca, _run_product, _dims_z(product_ca, 3)),
    RegistryEntry("free-group-linear", "linear analog over F_2 on the free group of rank 2",
                  GF(2), lambda fld=None: free_linear_ca(), _run_free, _dims_free),
    RegistryEntry("linear-hyperplane-fixture", "linear rule with a hyperplane (*) witness",
                  GF(2), lambda fld=None: hyperplane_fixture_ca(), _run_hyperplane,
                  _dims_linear_z(hyperplane_fixture_ca)),
    RegistryEntry("finite-constant", "constant rule on {0, 1}", None,
                  lambda fld=None: finite_constant_ca(), _run_constant),
    RegistryEntry("finite-xor", "c(n) + c(n+1) mod 2", None,
                  lambda fld=None: finite_xor_ca(), _run_xor),
]}


def get(entry_id: str) -> RegistryEntry:
    if entry_id not in REGISTRY:
        raise KeyError(f"unknown registry id {entry_id!r}; known: {', '.join(REGISTRY)}")
    return REGISTRY[entry_id]


def run_registry(entry_id: str, fld: Field | None = None, m_max: int = 3, seed: int = 42,
                 max_window: int = 8) -> Outcome:
    entry = get(entry_id)
    if fld is not None and entry.default_field is not None and entry.default_field.p == 2 \
            and fld != entry.default_field:
        raise ValueError(f"{entry_id} is defined over F_2 only")
    return entry.run(Context(fld, m_max, seed, max_window))

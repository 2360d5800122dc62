import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goeca.groups import (
    FiniteSubset,
    FolnerSequence,
    FreeGroup,
    GroupMismatchError,
    GroupSpec,
    NonAmenableGroupError,
    Z,
    ball,
    boundary,
    boundary_ratio_sequence,
    box,
    folner_set,
    interior,
    interval,
    make_tiling,
    mul,
    neighborhood,
    tiling_count_in,
)

F2 = FreeGroup(2)


def S(G, *lits):
    return FiniteSubset.of(G, list(lits))


def test_mul_examples():
    assert mul(Z(1), (2,), (3,)) == (5,)
    assert mul(F2, "ab", "Ba") == "aa"
    for g in [(4,), (-1,)]:
        assert mul(Z(1), g, Z(1).identity) == g
    assert mul(F2, "aBa", "") == "aBa"


def test_mul_rejects_foreign_elements():
    with pytest.raises(GroupMismatchError):
        mul(Z(1), (1, 2), (0,))
    with pytest.raises(GroupMismatchError):
        mul(F2, "ac", "a")
    with pytest.raises(GroupMismatchError):
        F2.check("aA")


def test_group_validation():
    with pytest.raises(ValueError):
        GroupSpec("Zd", 0)
    with pytest.raises(ValueError):
        GroupSpec("Heisenberg", 3)
    assert F2.element("abBA") == ""


def _rand_free(rng, n=5):
    g = ""
    for _ in range(rng.randint(0, n)):
        g = F2.mul(g, rng.choice("aAbB"))
    return g


def test_group_axioms_randomized():
    rng = random.Random(3)
    for _ in range(300):
        a, b, c = (_rand_free(rng) for _ in range(3))
        assert F2.mul(F2.mul(a, b), c) == F2.mul(a, F2.mul(b, c))
        assert F2.mul(a, F2.inv(a)) == ""
        assert F2.mul("", a) == a
        x, y, z = (tuple(rng.randint(-5, 5) for _ in range(2)) for _ in range(3))
        G = Z(2)
        assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
        assert G.mul(x, G.inv(x)) == (0, 0)


def test_canonical_order():
    assert S(F2, "b", "A", "a", "", "ab").elements == ("", "a", "A", "b", "ab")
    assert interval(-1, 1).elements == ((-1,), (0,), (1,))
    assert len(FiniteSubset(Z(1), [(1,), (1,)])) == 1


def test_interior_examples():
    assert interior(interval(-2, 2), S(Z(1), 0, 1)) == interval(-2, 1)
    assert interior(interval(0, 4), S(Z(1), -1, 0, 1)) == interval(1, 3)
    assert interior(ball(F2, 2), ball(F2, 1)) == ball(F2, 1)


def test_interior_brute_force_free():
    omega, M = ball(F2, 2), ball(F2, 1)
    cands = omega.product(M.inverse())
    brute = {g for g in cands if all(F2.mul(g, m) in omega for m in M)}
    assert set(interior(omega, M)) == brute


def test_neighborhood_examples():
    assert neighborhood(interval(0, 3), S(Z(1), 0, 1)) == interval(0, 4)
    assert neighborhood(interval(0, 3), S(Z(1), 0)) == interval(0, 3)
    assert neighborhood(ball(F2, 1), ball(F2, 1)) == ball(F2, 2)


def test_boundary_examples():
    assert boundary(interval(0, 3), S(Z(1), 0, 1)) == S(Z(1), 3, 4)
    assert len(boundary(interval(0, 3), S(Z(1), 0))) == 0
    frame = boundary(box(2, 0, 2), box(2, 0, 1))
    assert len(frame) == 12
    assert frame == box(2, 0, 3) - box(2, 0, 1)


def test_group_mismatch_in_calculus():
    with pytest.raises(GroupMismatchError):
        interior(interval(0, 1), ball(F2, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6),
       st.lists(st.integers(-2, 2), min_size=0, max_size=3))
def test_interior_neighborhood_adjunction(om, mem):
    G = Z(1)
    omega = FiniteSubset.of(G, om)
    M = FiniteSubset.of(G, mem + [0])
    assert interior(omega, M) <= omega <= neighborhood(omega, M)
    assert boundary(omega, M) == neighborhood(omega, M) - interior(omega, M)


def test_folner_sets():
    seq = FolnerSequence(Z(1))
    assert folner_set(seq, 0) == S(Z(1), 0)
    assert folner_set(seq, 2) == interval(-2, 2)
    assert len(folner_set(FolnerSequence(Z(2)), 1)) == 9
    for d in (1, 2):
        for m in range(4):
            assert len(folner_set(FolnerSequence(Z(d)), m)) == (2 * m + 1) ** d
    with pytest.raises(NonAmenableGroupError):
        FolnerSequence(F2)


def test_boundary_ratios():
    seq = FolnerSequence(Z(1))
    r = boundary_ratio_sequence(seq, S(Z(1), 0, 1), 4)
    assert r[1] == Fraction(2, 3)
    assert r[4] == Fraction(2, 9)
    assert boundary_ratio_sequence(seq, S(Z(1), 0), 5) == [0] * 6
    r2 = boundary_ratio_sequence(FolnerSequence(Z(2)), box(2, -1, 1), 8)
    for m in range(2, 5):
        assert r2[2 * m] <= r2[m]


def test_tiling_singletons():
    T = make_tiling(S(Z(1), 0), interval(-5, 5))
    assert T.centers == interval(-5, 5)


def test_tiling_pairs():
    T = make_tiling(S(Z(1), 0, 1), interval(-10, 10))
    # greedy with gE inside the window stops at 8: {10, 11} leaves it
    assert T.centers == FiniteSubset.of(Z(1), range(-10, 10, 2))
    assert T.disjoint()
    assert T.covers(interior(interval(-10, 10), T.Eprime))
    assert tiling_count_in(T, interval(-4, 4)) == 4
    assert tiling_count_in(T, FiniteSubset(Z(1), [])) == 0
    with pytest.raises(ValueError):
        tiling_count_in(T, interval(-11, 0))


def test_tiling_z2():
    W = box(2, -4, 4)
    T = make_tiling(box(2, 0, 1), W)
    assert set(T.centers) == {(x, y) for x in range(-4, 4, 2) for y in range(-4, 4, 2)}
    assert T.disjoint()
    assert T.covers(interior(W, T.Eprime))


def test_tiling_brute_force_large_window():
    W = box(2, -12, 12)
    for E in (box(2, 0, 2), FiniteSubset.of(Z(2), [[0, 0], [1, 0], [0, 1]])):
        T = make_tiling(E, W)
        assert T.disjoint()
        assert T.covers(interior(W, T.Eprime))


def test_tiling_density():
    seq = FolnerSequence(Z(1))
    T = make_tiling(S(Z(1), 0, 1), folner_set(seq, 20))
    for m in range(2, 21):
        F = folner_set(seq, m)
        assert Fraction(tiling_count_in(T, F), len(F)) >= Fraction(1, 4)


def test_tiling_free_group():
    T = make_tiling(S(F2, "", "a"), ball(F2, 3))
    assert T.disjoint()
    with pytest.raises(ValueError):
        make_tiling(FiniteSubset(F2, []), ball(F2, 1))

from fractions import Fraction

import pytest

from hecke0.conjugacy import DROPPED, NOT_A_STEP, PRESERVED, conjugacy

from conftest import FINITE_OMEGA, group


def test_step_kinds():
    W = group("A2-ad")
    conj = conjugacy(W)
    s1, s2, s0 = W.simple_reflections
    # s1 commutes with itself: length preserved
    assert conj.step(s1, 0) == (s1, PRESERVED)
    # conjugating s1 by s2 gives s2 s1 s2 of length 3
    assert conj.step(s1, 1)[1] == NOT_A_STEP
    e = W.mul(W.mul(s2, s1), s2)
    assert conj.step(e, 1) == (s1, DROPPED)


def test_reduce_to_minimal():
    W = group("A2-ad")
    conj = conjugacy(W)
    s1, s2, s0 = W.simple_reflections
    assert conj.reduce_to_minimal(s1) == (s1, [])
    # s0 (s1 s2) s0 has a single strict drop, back to the Coxeter element
    m = W.mul(s1, s2)
    e = W.prod(s0, m, s0)
    assert W.length(e) == W.length(m) + 2
    found, path = conj.reduce_to_minimal(e)
    assert conj.class_of(found) == conj.class_of(m)
    assert path[-1].relation == DROPPED
    for e in W.elements_up_to(8):
        found, _ = conj.reduce_to_minimal(e)
        assert conj.is_minimal(found)
        assert W.length(found) <= W.length(e)


def brute_force_min_lengths(W, L, conjugators=4, pool=10):
    """Conjugacy classes by union-find over explicit conjugation; minimal lengths <= L."""
    elts = W.elements_up_to(pool)
    inside = set(elts)
    parent = {e: e for e in elts}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for g in W.elements_up_to(conjugators):
        for e in elts:
            f = W.conj(g, e)
            if f in inside:
                parent[find(e)] = find(f)
    best = {}
    for e in elts:
        r = find(e)
        best[r] = min(best.get(r, 99), W.length(e))
    return sorted(v for v in best.values() if v <= L)


def test_class_count_a1_sc_against_conjugation_oracle():
    W = group("A1-sc")
    conj = conjugacy(W)
    classes = conj.enumerate_min_classes(4)
    assert len(classes) == 7
    assert sorted(c.length for c in classes) == brute_force_min_lengths(W, 4)


def test_small_classes():
    W = group("A1-sc")
    conj = conjugacy(W)
    tau = next(t for t in W.omega_elements() if t != W.identity)
    assert conj.class_of(W.identity).members == (W.identity,)
    assert conj.class_of(tau).members == (tau,)
    zero = [c for c in conj.enumerate_min_classes(0)]
    assert len(zero) == 2  # Omega is abelian, one class per element
    one = [set(c.members) for c in conj.enumerate_min_classes(1) if c.length == 1]
    s1, s0 = W.simple_reflections
    assert {s1, s0} in one
    assert {W.mul(s1, tau), W.mul(s0, tau)} in one
    assert len(one) == 2


@pytest.mark.parametrize("name", FINITE_OMEGA)
def test_classes_closed_and_disjoint(name):
    W = group(name)
    conj = conjugacy(W)
    seen = set()
    for c in conj.enumerate_min_classes(5):
        members = set(c.members)
        assert not members & seen
        seen |= members
        for m in members:
            assert W.length(m) == c.length
            assert conj.newton_bar(m) == c.newton
            for i in range(len(W.simple_reflections)):
                f, rel = conj.step(m, i)
                assert rel != DROPPED
                if rel == PRESERVED:
                    assert f in members
            for tau in W.omega_elements():
                assert W.conj(tau, m) in members


def test_sigma_examples_and_path_independence():
    W = group("A2-ad")
    conj = conjugacy(W)
    assert conj.sigma_of(W.identity) == (conj.class_of(W.identity), 1)
    for e in W.elements_up_to(6):
        cls, sign = conj.sigma_of(e)
        if conj.is_minimal(e):
            assert (cls, sign) == (conj.class_of(e), 1)
        assert conj.sigma_outcomes(e) == {cls.representative}


@pytest.mark.parametrize("name", ("A1-sc", "A2-ad", "C2"))
def test_sigma_against_bruhat_maximum(name):
    W = group(name)
    conj = conjugacy(W)
    for e in W.elements_up_to(5):
        assert conj.sigma_bruhat(e) == conj.sigma_of(e)[0]


def test_precedes():
    W = group("A2-ad")
    conj = conjugacy(W)
    ident = conj.class_of(W.identity)
    for e in W.elements_up_to(4):
        assert conj.precedes(ident, e)
    s1 = W.simple_reflections[0]
    big = conj.enumerate_min_classes(3)[-1]
    assert not conj.precedes(big, s1)


@pytest.mark.parametrize("name", FINITE_OMEGA)
def test_newton_and_straightness(name):
    W = group(name)
    conj = conjugacy(W)
    lam = W.rd.deep_vector(())
    t = W.translation(lam)
    assert conj.newton_point(t) == tuple(Fraction(x) for x in lam)
    assert conj.is_straight(t)
    for i in range(W.rd.semisimple_rank):
        s = W.finite(W.W0.simple[i])
        assert not any(conj.newton_point(s))
        assert not conj.is_straight(s)
    for e in W.elements_up_to(6 if name != "A1xA1" else 4):
        assert conj.is_straight(e) == conj.is_straight_by_powers(e)


@pytest.mark.parametrize("name", FINITE_OMEGA)
def test_standard_pairs(name):
    W = group(name)
    conj = conjugacy(W)
    for c in conj.enumerate_min_classes(5):
        r = conj.standard_representative(c)
        assert W.mul(r.w, r.y) in c.members
        assert conj.is_straight(r.y)
        if c.straight:
            assert r.w == W.identity and r.K == frozenset()
        p = conj.standard_pair(c)  # invariants are asserted during construction
        assert p.J == c.J
        if c.straight:
            assert p.gamma == frozenset()
        # every admissible representative gives an equivalent pair
        for r2 in conj.all_standard_representatives(c):
            assert conj.pairs_equivalent(p, conj.pair_from_rep(r2))


def test_finite_reflection_class():
    W = group("A2-ad")
    conj = conjugacy(W)
    s1 = W.simple_reflections[0]
    c = conj.class_of(s1)
    r = conj.standard_representative(c)
    assert (r.w, r.y, r.K) == (s1, W.identity, frozenset({0}))
    p = conj.standard_pair(c)
    assert p.J == frozenset({0, 1}) and p.x == W.identity and p.gamma == frozenset({0})


def test_pairs_equivalent_examples():
    W = group("A2-sc")
    conj = conjugacy(W)
    levi = W.full
    c = conj.class_of(W.simple_reflections[0])
    p = conj.standard_pair(c)
    assert conj.pairs_equivalent(p, p)
    tau = next(t for t in W.omega_elements() if t != W.identity)
    moved = type(p)(p.x, levi.conj_set(tau, p.gamma), p.J)
    assert conj.pairs_equivalent(p, moved)
    other = conj.standard_pair(conj.enumerate_min_classes(3)[-1])
    assert other.x != p.x and not conj.pairs_equivalent(p, other)


@pytest.mark.parametrize("name", ("A1-sc", "A2-ad", "C2", "G2"))
def test_windows(name):
    W = group(name)
    conj = conjugacy(W)
    from hecke0.hecke import hecke_pair

    z = hecke_pair(W).zero
    for c in conj.enumerate_min_classes(4):
        r = conj.standard_representative(c)
        p = conj.standard_pair(c)
        rep = conj.check_wk(r, z)
        assert rep.passed and rep.smallest is not None and rep.smallest <= rep.threshold
        r1, r2 = conj.check_u_x(p)
        assert r1.passed and r2.passed
        assert conj.check_xg(r, p, range(r1.threshold, r1.threshold + conj.n0 + 1)) == []

import pytest

from hecke0.cocenter import cocenter
from hecke0.conjugacy import conjugacy
from hecke0.hecke import hecke_pair

from conftest import FINITE_OMEGA, group


def test_projection_examples():
    W = group("A2-ad")
    coc = cocenter(W)
    conj = conjugacy(W)
    z = hecke_pair(W).zero
    s1, s2, s0 = W.simple_reflections
    m = W.mul(s1, s2)
    assert coc.project(z.T(m)) == {conj.class_of(m).representative: 1}
    # an element one step above the minimum of its class projects with a minus sign
    drops = [w for w in W.elements_up_to(4) if W.length(w) == conj.sigma_of(w)[0].length + 1]
    assert drops
    for e in drops:
        cls, sign = conj.sigma_of(e)
        assert sign == -1
        assert coc.project(z.T(e)) == {cls.representative: -1}
    assert coc.project(z.mul(z.T(s1), z.T(s1))) == {conj.class_of(s1).representative: -1}


@pytest.mark.parametrize("name", ("A1-sc", "A2-ad"))
def test_commutators_vanish(name):
    rep = cocenter(group(name)).commutator_check(6)
    assert rep.ok and rep.checked > 0


def test_cyclic_shift_invariance():
    W = group("A2-ad")
    coc = cocenter(W)
    z = hecke_pair(W).zero
    for w in W.elements_up_to(5):
        for s in W.simple_reflections:
            sws = W.prod(s, w, s)
            if W.length(sws) == W.length(w):
                assert coc.project(z.T(w)) == coc.project(z.T(sws))


@pytest.mark.parametrize("name", ("A1-sc", "A2-ad", "C2"))
def test_trace_property_on_basis_pairs(name):
    W = group(name)
    coc = cocenter(W)
    z = hecke_pair(W).zero
    elts = W.elements_up_to(4)
    for a in elts:
        for b in elts:
            if W.length(a) + W.length(b) <= 7:
                assert coc.project(z.mul(z.T(a), z.T(b))) == coc.project(z.mul(z.T(b), z.T(a)))


def test_nss_indicator():
    W = group("A2-ad")
    conj = conjugacy(W)
    assert not cocenter(W).nss_indicator(conj.class_of(W.simple_reflections[0]))
    t = W.translation(W.rd.deep_vector(()))
    assert cocenter(W).nss_indicator(conj.class_of(t))


def test_nss_basis():
    W = group("A1-ad")
    assert cocenter(W).nss_basis_up_to(1) == []
    basis = cocenter(W).nss_basis_up_to(4)
    t = W.translation(W.rd.deep_vector(()))
    conj = conjugacy(W)
    assert any(kind == "T" and vec == {conj.class_of(t).representative: 1} for kind, _, vec in basis)


@pytest.mark.parametrize("name", FINITE_OMEGA)
def test_nss_vectors(name):
    W = group(name)
    conj = conjugacy(W)
    coc = cocenter(W)
    for kind, cls, vec in coc.nss_basis_up_to(4):
        assert not cls.rigid
        assert all(isinstance(v, int) for v in vec.values())
        if kind == "T":
            assert vec == {cls.representative: 1}
        else:
            assert vec == coc.iota_projection(cls.representative)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke0 import linalg
from hecke0.conjugacy import conjugacy
from hecke0.hecke import hecke_pair
from hecke0.representations import (
    NOT_COVERED,
    TEST_VALUES,
    Character,
    InducingModule,
    IotaPullback,
    ParahoricDatum,
    VirtualModule,
    aleph,
    aleph_less,
    build_module,
    catalog,
    char_formula,
    character_vector,
    decompose,
    e_basis_kills,
    is_rigid,
    is_supersingular,
    m_j_gamma,
    supersingular_threshold,
)

from conftest import group

SMALL = ("A1-sc", "A2-sc", "C2")


# -- parahoric data and characters --------------------------------------------------------


@pytest.mark.parametrize(
    "name, dims",
    [
        ("A1-sc", [2, 2]),
        ("A1-ad", [1, 1]),
        ("A2-sc", [3, 3, 3]),
        ("A2-ad", [1, 1, 1]),
        ("C2", [2, 1, 2]),
    ],
)
def test_dimensions(name, dims):
    W = group(name)
    F0 = W.full.J
    k = len(W.simple_reflections)
    for i, d in enumerate(dims):
        gamma = set(range(k)) - {i}
        pd = ParahoricDatum(W, F0, gamma)
        assert pd.index == d
        assert build_module(W, F0, gamma).dim == d
    assert build_module(W, (), ()).dim == len(W.W0.length)


def test_infinite_gamma_rejected():
    W = group("A2-ad")
    with pytest.raises(ValueError):
        ParahoricDatum(W, W.full.J, range(3))


def test_character_validation():
    W = group("A1-sc")
    pd = ParahoricDatum(W, W.full.J, ())
    with pytest.raises(ValueError):
        Character(pd, (Fraction(2),))
    with pytest.raises(ValueError):
        Character(pd, ())
    pd = ParahoricDatum(W, (), ())
    assert list(pd.char_group.orders) == [0]
    chi = Character(pd, (Fraction(3),))
    assert chi((1,)) == 3 and chi((-2,)) == Fraction(1, 9)
    assert len(pd.characters()) == len(TEST_VALUES)


def test_inducing_module_omega():
    W = group("A2-sc")
    pd = ParahoricDatum(W, (), ())
    chi = Character(pd, (Fraction(2), Fraction(-1)))
    M = InducingModule(pd, chi)
    lam, mu = (1, 0), (-1, 2)
    both = tuple(a + b for a, b in zip(lam, mu))
    assert linalg.matmul(M.omega_matrix(lam), M.omega_matrix(mu)) == M.omega_matrix(both)
    pd = ParahoricDatum(W, W.full.J, (1, 2))
    chi = pd.characters()[0]
    M = InducingModule(pd, chi)
    for lam in pd.stabilizer_basis:
        assert linalg.trace(M.omega_matrix(lam)) == pd.index * chi(lam)


# -- module relations ------------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL + ("A2-ad",))
def test_relations_hold(name):
    W = group(name)
    for entry in catalog(W, (2,)):
        entry.module.check_relations()
        IotaPullback(entry.module).check_relations()


@pytest.mark.parametrize("name", ("A2-sc", "C2"))
def test_action_is_a_homomorphism(name):
    W = group(name)
    z = hecke_pair(W).zero
    elts = W.elements_up_to(2)
    for entry in catalog(W, (2,))[::3]:
        m = entry.module
        for a in elts:
            for b in elts:
                lhs = linalg.matmul(m.action_matrix(a), m.action_matrix(b))
                assert lhs == m.hecke_matrix(z.mul(z.T(a), z.T(b)))


def test_trace_constant_on_classes():
    W = group("A2-sc")
    conj = conjugacy(W)
    for entry in catalog(W, (2,)):
        for cls in conj.enumerate_min_classes(4):
            vals = {entry.module.trace(e) for e in cls.members}
            assert len(vals) == 1


# -- character formula --------------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL)
def test_character_formula(name):
    W = group(name)
    conj = conjugacy(W)
    covered = 0
    for entry in catalog(W):
        for cls in conj.enumerate_min_classes(4):
            f = char_formula(cls, conj.standard_pair(cls), entry.pd, entry.chi)
            if f is NOT_COVERED:
                continue
            covered += 1
            assert f == entry.module.trace(cls.representative)
    assert covered


def test_character_formula_independent_of_representative():
    W = group("A2-sc")
    conj = conjugacy(W)
    cat = catalog(W, (2,))
    for cls in conj.enumerate_min_classes(4):
        pairs = [conj.pair_from_rep(r) for r in conj.all_standard_representatives(cls)]
        for entry in cat:
            vals = {char_formula(cls, p, entry.pd, entry.chi) for p in pairs}
            assert len(vals) == 1


def test_character_vanishes_unless_levi_contained():
    W = group("C2")
    conj = conjugacy(W)
    for entry in catalog(W, (2,)):
        for cls in conj.enumerate_min_classes(5):
            if not entry.pd.J <= conj.standard_pair(cls).J:
                assert entry.module.trace(cls.representative) == 0


def test_character_nonzero_on_own_class():
    for name in SMALL:
        W = group(name)
        for entry in catalog(W, only_J=W.full.J):
            g = entry.pd.gamma
            wg = W.full.longest(g) if g else W.identity
            assert entry.module.trace(wg) != 0


@pytest.mark.parametrize("name", SMALL)
def test_power_formula(name):
    W = group(name)
    conj = conjugacy(W)
    for cls in conj.enumerate_min_classes(4):
        p = conj.standard_pair(cls)
        levi = W.levi(p.J)
        wg = levi.longest(p.gamma) if p.gamma else W.identity
        for entry in catalog(W, (2,))[:8]:
            m = entry.module
            a = m.action_matrix(cls.representative)
            power = a
            for n in (1, 2, 3):
                if n > 1:
                    power = linalg.matmul(power, a)
                sign = (-1) ** ((n * cls.length - n * W.length(p.x) - W.length(wg)) % 2)
                assert linalg.trace(power) == sign * m.trace(W.mul(wg, W.power(p.x, n)))


@pytest.mark.parametrize("name", SMALL)
def test_trace_through_parahoric_piece(name):
    W = group(name)
    conj = conjugacy(W)
    for cls in conj.enumerate_min_classes(4):
        p = conj.standard_pair(cls)
        sign = (-1) ** ((cls.length - W.length(p.x)) % 2)
        for entry in catalog(W, (2,))[:8]:
            piece = m_j_gamma(entry.module, p.J, p.gamma)
            assert entry.module.trace(cls.representative) == sign * piece.trace(p.x)


def test_iota_twist():
    W = group("A2-sc")
    hp = hecke_pair(W)
    for entry in catalog(W, (2,)):
        tw = IotaPullback(entry.module)
        for e in W.elements_up_to(3):
            iota = hp.iota(hp.zero.T(e))
            assert tw.action_matrix(e) == entry.module.hecke_matrix(iota)


def test_distinct_rigid_characters():
    W = group("A2-sc")
    classes = conjugacy(W).enumerate_min_classes(5)
    vecs = [tuple(sorted(character_vector(e.module, classes).items(), key=str)) for e in catalog(W, only_J=W.full.J)]
    assert len(set(vecs)) == len(vecs)


# -- aleph ------------------------------------------------------------------------------------------


def test_aleph_order():
    W = group("A2-ad")
    F0 = W.full.J
    keys = aleph(W)
    assert keys[0] == (frozenset(), frozenset())
    assert len(set(keys)) == len(keys)
    big = (F0, frozenset({0}))
    small = (F0, frozenset())
    assert aleph_less(W, big, small) and not aleph_less(W, small, big)
    assert aleph_less(W, (frozenset(), frozenset()), small)
    for k in keys:
        assert not aleph_less(W, k, k)


# -- decomposition ------------------------------------------------------------------------------------


def test_decompose_single_module():
    W = group("A2-sc")
    classes = conjugacy(W).enumerate_min_classes(5)
    cands = catalog(W, (1,), only_J=W.full.J)
    for e in cands:
        d = decompose(character_vector(e.module, classes), classes, cands)
        assert d.ok and d.coefficients == {e.label: 1}


def test_decompose_sum_and_difference():
    W = group("A1-sc")
    classes = conjugacy(W).enumerate_min_classes(8)
    cands = catalog(W, (1,))
    a, b = cands[0], cands[-1]
    v = VirtualModule([(2, a.module), (-1, b.module)])
    d = decompose(v.character(classes), classes, cands)
    assert d.ok and d.coefficients == {a.label: 2, b.label: -1}


def test_decompose_reports_failure():
    W = group("A1-sc")
    classes = conjugacy(W).enumerate_min_classes(4)
    cands = catalog(W, (1,), only_J=W.full.J)
    target = {classes[0].representative: Fraction(1, 2)}
    d = decompose(target, classes, cands)
    assert not d.ok and d.reason and d.offending


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_decompose_roundtrip_property(coefs):
    W = group("A1-sc")
    classes = conjugacy(W).enumerate_min_classes(8)
    cands = catalog(W, (1,))
    assert len(cands) >= 4
    chosen = cands[:4]
    v = VirtualModule([(c, e.module) for c, e in zip(coefs, chosen)])
    d = decompose(v.character(classes), classes, cands)
    assert d.ok
    assert d.coefficients == {e.label: c for c, e in zip(coefs, chosen) if c}


# -- rigidity and supersingularity ------------------------------------------------------------------------


def test_zero_module():
    W = group("A2-ad")
    zero = VirtualModule([])
    assert is_rigid(zero, W, 5)
    rep = is_supersingular(zero, W, 5)
    assert rep.agree and rep.supersingular


@pytest.mark.parametrize("name", ("A1-sc", "A2-ad"))
def test_rigid_and_supersingular(name):
    W = group(name)
    for entry in catalog(W, (1,), only_J=W.full.J):
        v = VirtualModule([(1, entry.module)])
        assert is_rigid(v, W, 6)
        if supersingular_threshold(entry.pd) is not None:
            rep = is_supersingular(v, W, 6)
            assert rep.agree and rep.supersingular


def test_principal_series_not_rigid():
    W = group("A1-sc")
    v = VirtualModule([(1, build_module(W, (), ()))])
    assert not is_rigid(v, W, 4)
    rep = is_supersingular(v, W, 4)
    assert rep.agree and not rep.supersingular


def test_e_basis_kills_above_threshold():
    W = group("A1-ad")
    F0 = W.full.J
    pd = ParahoricDatum(W, F0, {0})
    thr = supersingular_threshold(pd)
    assert thr == 4
    m = build_module(W, F0, {0})
    assert e_basis_kills(m, thr, thr + 2)[0] is True
    assert e_basis_kills(m, 100, 3) == (None, 0)

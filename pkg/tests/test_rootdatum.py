import json
from fractions import Fraction

import pytest

from hecke0.rootdatum import RootDatumError, build_root_datum, catalog_names, load_datum

SIZES = {  # (|R|, |W0|)
    "A1-sc": (2, 2),
    "A1-ad": (2, 2),
    "A1xA1": (4, 4),
    "A2-sc": (6, 6),
    "A2-ad": (6, 6),
    "C2": (8, 8),
    "G2": (12, 12),
    "GL2": (2, 2),
}


def test_catalog_is_complete():
    assert set(catalog_names()) == set(SIZES)


@pytest.mark.parametrize("name", sorted(SIZES))
def test_root_counts_and_weyl_order(name):
    rd = load_datum(name)
    assert (len(rd.roots), rd.weyl.order) == SIZES[name]
    assert len(rd.positive) * 2 == len(rd.roots)


@pytest.mark.parametrize("name", sorted(SIZES))
def test_root_system_axioms(name):
    rd = load_datum(name)
    roots = set(rd.roots)
    for a, av in zip(rd.roots, rd.coroots):
        assert rd.pair(a, av) == 2
    for w in range(rd.weyl.order):
        assert {tuple(rd.weyl.act(w, a)) for a in roots} == roots
        # length = number of positive roots made negative
        flipped = sum(1 for k in rd.positive if not rd.is_positive[rd.root_index[tuple(rd.weyl.act(w, rd.roots[k]))]])
        assert flipped == rd.weyl.length[w]


def test_a2_positive_roots_and_levi():
    rd = load_datum("A2-ad")
    assert len(rd.positive) == 3
    assert len(rd.positive_in({0})) == 1
    assert rd.positive_in(()) == []
    assert len(rd.positive_in({0, 1})) == 3


def test_j_of_vector():
    rd = load_datum("A2-ad")
    assert rd.j_of_vector((0, 0)) == frozenset({0, 1})
    assert rd.j_of_vector((1, 1)) == frozenset()
    # <v, a1^vee> = 0 and <v, a2^vee> = 1: v = (1/3, 2/3) in root coordinates
    v = (Fraction(1, 3), Fraction(2, 3))
    assert rd.pair(v, rd.simple_coroots[0]) == 0 and rd.pair(v, rd.simple_coroots[1]) == 1
    assert rd.j_of_vector(v) == frozenset({0})


def test_dominant_rep():
    rd = load_datum("A2-ad")
    rho = (1, 1)
    assert rd.dominant_rep(rho) == (rho, 0)
    w0 = rd.weyl.longest
    vbar, z = rd.dominant_rep(tuple(-x for x in rho))
    assert vbar == rho and z == w0
    s1 = rd.weyl.simple[0]
    vbar, z = rd.dominant_rep(rd.weyl.act(s1, rho))
    assert vbar == rho and z == s1


def test_x_plus_j():
    rd = load_datum("A2-ad")
    assert rd.in_x_plus_j((0, 0), {0, 1})
    assert rd.in_x_plus_j((1, 1), ())
    assert not rd.in_x_plus_j((1, 1), {0, 1})
    for J in [(), (0,), (1,), (0, 1)]:
        for depth in (1, 3):
            lam = rd.deep_vector(J, depth)
            assert rd.in_x_plus_j(lam, J)
            for i in range(2):
                if i not in J:
                    assert rd.pair(lam, rd.simple_coroots[i]) >= depth


def test_invalid_data():
    with pytest.raises(RootDatumError):
        build_root_datum({"xRank": 1, "simpleRoots": [[3]], "simpleCoroots": [[1]]})
    with pytest.raises(RootDatumError):
        build_root_datum({"xRank": 1, "simpleRoots": [[2]]})
    with pytest.raises(RootDatumError):
        build_root_datum({"xRank": 2, "pairing": [[2, 0], [0, 1]], "simpleRoots": [[1, 0]], "simpleCoroots": [[2, 0]]})
    with pytest.raises(RootDatumError):
        load_datum("no-such-datum")


def test_json_roundtrip(tmp_path):
    rd = load_datum("C2")
    path = tmp_path / "c2.json"
    path.write_text(json.dumps(rd.to_json()))
    rd2 = load_datum(str(path))
    assert rd2.roots == rd.roots and rd2.coroots == rd.coroots


def test_corrupt_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(RootDatumError):
        load_datum(str(path))

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hecke0 import linalg

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse_or_singular(a):
    if linalg.determinant(a) == 0:
        assert linalg.rank(a) < len(a)
    else:
        inv = linalg.inverse(a)
        assert linalg.matmul(a, inv) == linalg.identity(len(a))


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: matrices(m, n))))
def test_smith_normal_form(a):
    d, u, v = linalg.smith_normal_form(a)
    assert linalg.matmul(linalg.matmul(u, a), v) == d
    assert abs(linalg.determinant(u)) == 1 and abs(linalg.determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(x >= 0 for x in diag)
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == linalg.rank(a)


@settings(max_examples=50)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), st.lists(small, min_size=n, max_size=n))))
def test_solve(data):
    a, x = data
    b = linalg.matvec(a, x)
    sol = linalg.solve(a, b)
    if linalg.rank(a) == len(a):
        assert sol == [Fraction(v) for v in x]
    else:
        assert sol is None
        any_sol = linalg.solve_any(a, b)
        assert linalg.matvec(a, any_sol) == b


def test_restrict_invariant_subspace():
    op = [[2, 1, 0], [0, 2, 0], [0, 0, 5]]
    basis = [[1, 0], [0, 1], [0, 0]]
    assert linalg.restrict(op, basis) == [[2, 1], [0, 2]]
    import pytest

    with pytest.raises(ValueError):
        linalg.restrict([[0, 0], [1, 0]], [[1], [0]])


def test_lattice_basis_spans():
    cols = linalg.lattice_basis([(2, 0), (0, 2), (1, 1)], 2)
    assert abs(linalg.determinant(cols)) == 2

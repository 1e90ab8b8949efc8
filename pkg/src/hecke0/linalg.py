"""Exact linear algebra over Q and Z.

Matrices are lists of rows.  Entries are ``int`` or ``fractions.Fraction``;
nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    if not a or not a[0]:
        return 0
    # eliminate on the shorter side
    if len(a) > len(a[0]):
        a = transpose(a)
    return len(rref(a)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of ``a x = b``, or ``None`` if none/not unique."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, piv = rref(aug)
    if ncols in piv:
        return None
    if len(piv) < ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = m[i][ncols]
    return x


def solve_any(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Some solution of ``a x = b`` (free variables set to 0), or ``None``."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = m[i][ncols]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(a)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def column_basis(a: Sequence[Sequence]) -> Matrix:
    """Columns of ``a`` forming a basis of its column space (as a matrix)."""
    _, piv = rref(a)
    return [[row[c] for c in piv] for row in a]


def restrict(op: Sequence[Sequence], basis: Sequence[Sequence]) -> Matrix:
    """Matrix of ``op`` on the invariant subspace spanned by the columns of ``basis``.

    Raises ``ValueError`` if the subspace is not invariant.
    """
    k = len(basis[0]) if basis else 0
    if k == 0:
        return []
    image = matmul(op, basis)
    out = zeros(k, k)
    for j in range(k):
        col = solve(basis, [row[j] for row in image])
        if col is None:
            raise ValueError("subspace is not invariant")
        for i in range(k):
            out[i][j] = col[i]
    return out


def trace(a: Sequence[Sequence]):
    return sum(a[i][i] for i in range(len(a)))


# --- integer lattices -------------------------------------------------------


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(d, u, v)`` with ``u * a * v = d`` diagonal, ``u``, ``v`` unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m, n = len(a), len(a[0]) if a else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // d[t][t]
                add_row(t, i, -q)
                if d[i][t]:
                    swap_rows(t, i)
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // d[t][t]
                add_col(t, j, -q)
                if d[t][j]:
                    swap_cols(t, j)
                    done = False
            if done:
                # divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(bad[0], t, 1)
                    done = False
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Basis (as columns of a ``dim x k`` matrix) of the lattice spanned by ``gens``."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return [[] for _ in range(dim)]
    a = transpose(gens)  # dim x len(gens)
    d, u, v = smith_normal_form(a)
    uinv = integer_inverse(u)
    k = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i])
    # a * v = u^{-1} d, so columns of u^{-1} scaled by d_i span the lattice
    return [[uinv[r][i] * d[i][i] for i in range(k)] for r in range(dim)]


def integer_inverse(u: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse(u)
    out = [[int(x) for x in row] for row in inv]
    if any(Fraction(x) != y for r1, r2 in zip(out, inv) for x, y in zip(r1, r2)):
        raise ValueError("matrix is not unimodular")
    return out


def determinant(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det

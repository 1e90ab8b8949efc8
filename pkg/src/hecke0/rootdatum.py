"""Based root data, their root systems and finite Weyl groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from . import linalg

Vec = tuple  # integer (or Fraction) coordinate tuple

MAX_ROOTS = 500


class RootDatumError(ValueError):
    """Invalid root-datum description."""


@dataclass(frozen=True)
class FiniteWeylElement:
    index: int
    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.word)


class FiniteWeylGroup:
    """W0 enumerated in shortlex order of reduced words.

    Elements are referred to by their index; index 0 is the identity and
    indices increase with (length, word).
    """

    def __init__(self, rd: "RootDatum"):
        self.rd = rd
        n = rd.x_rank
        gens = [rd.reflection_matrix(i) for i in range(rd.semisimple_rank)]
        start = tuple(tuple(r) for r in linalg.identity(n))
        mats = [start]
        words: list[tuple[int, ...]] = [()]
        seen = {start: 0}
        head = 0
        while head < len(mats):
            m = mats[head]
            for i, g in enumerate(gens):
                p = tuple(tuple(r) for r in linalg.matmul(m, g))
                if p not in seen:
                    seen[p] = len(mats)
                    mats.append(p)
                    words.append(words[head] + (i,))
                    if len(mats) > 100000:
                        raise RootDatumError("Weyl group is not finite")
            head += 1
        self.matrices = mats
        self.words = words
        self.index_of = seen
        self.order = len(mats)
        N = self.order
        self.mul = [[seen[tuple(tuple(r) for r in linalg.matmul(a, b))] for b in mats] for a in mats]
        self.inv = [self.mul[i].index(0) for i in range(N)]
        self.simple = [seen[tuple(tuple(r) for r in g)] for g in gens]
        roots = rd.roots
        root_index = rd.root_index
        # perm[w][k] = index of w(root k)
        self.perm = [
            [root_index[tuple(linalg.matvec(m, r))] for r in roots] for m in mats
        ]
        npos = len(rd.positive)
        # neg[w][k] = 1 if w(alpha_k) < 0 for the k-th positive root
        self.neg = [[int(not rd.is_positive[p[k]]) for k in range(npos)] for p in self.perm]
        self.length = [sum(row) for row in self.neg]
        self.longest = max(range(N), key=lambda i: self.length[i])

    def element(self, i: int) -> FiniteWeylElement:
        return FiniteWeylElement(i, self.words[i], self.matrices[i])

    def act(self, w: int, v: Sequence) -> tuple:
        return tuple(linalg.matvec(self.matrices[w], v))

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for i in word:
            w = self.mul[w][self.simple[i]]
        return w

    def support(self, w: int) -> frozenset[int]:
        return frozenset(self.words[w])

    def parabolic(self, J: Iterable[int]) -> list[int]:
        J = frozenset(J)
        return [w for w in range(self.order) if set(self.words[w]) <= J]

    def min_coset_reps(self, J: Iterable[int]) -> list[int]:
        """W0^J: minimal-length representatives of W0 / W_J."""
        J = list(J)
        return [
            w
            for w in range(self.order)
            if all(self.length[self.mul[w][self.simple[j]]] > self.length[w] for j in J)
        ]

    def coset_decompose(self, w: int, J: Iterable[int]) -> tuple[int, int]:
        """Write ``w = d u`` with ``d`` in W0^J and ``u`` in W_J."""
        J = list(J)
        d = w
        changed = True
        while changed:
            changed = False
            for j in J:
                ds = self.mul[d][self.simple[j]]
                if self.length[ds] < self.length[d]:
                    d = ds
                    changed = True
                    break
        u = self.mul[self.inv[d]][w]
        return d, u


@dataclass
class RootDatum:
    """A based root datum ``(X, R, Y, R^vee, F0)``.

    ``pairing[i][j]`` is the value of the pairing on the i-th basis vector of
    X and the j-th basis vector of Y.  Roots live in X, coroots in Y.
    """

    name: str
    x_rank: int
    pairing: list[list[int]]
    simple_roots: list[tuple[int, ...]]
    simple_coroots: list[tuple[int, ...]]
    roots: list[tuple[int, ...]] = field(init=False)
    coroots: list[tuple[int, ...]] = field(init=False)

    def __post_init__(self):
        self.simple_roots = [tuple(int(x) for x in a) for a in self.simple_roots]
        self.simple_coroots = [tuple(int(x) for x in a) for a in self.simple_coroots]
        n = self.x_rank
        if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
            raise RootDatumError("pairing must be an xRank x xRank matrix")
        if abs(linalg.determinant(self.pairing)) != 1:
            raise RootDatumError("pairing is not perfect (determinant must be +-1)")
        if len(self.simple_roots) != len(self.simple_coroots):
            raise RootDatumError("need as many simple coroots as simple roots")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != n:
                raise RootDatumError("root/coroot vectors must have length xRank")
        r = self.semisimple_rank
        cart = self.cartan
        for i in range(r):
            if cart[i][i] != 2:
                raise RootDatumError(f"<alpha_{i+1}, alpha_{i+1}^vee> = {cart[i][i]} != 2")
            for j in range(r):
                if i != j and (cart[i][j] > 0 or (cart[i][j] == 0) != (cart[j][i] == 0)):
                    raise RootDatumError("Cartan matrix is not of finite type")
                if i != j and cart[i][j] * cart[j][i] > 3:
                    raise RootDatumError("Cartan matrix is not of finite type")
        if r and linalg.rank([list(a) for a in self.simple_roots]) < r:
            raise RootDatumError("simple roots are linearly dependent")
        self._build_roots()

    # -- basic pairing ----------------------------------------------------

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    def pair(self, x: Sequence, y: Sequence):
        """<x, y> for x in X (or X_Q) and y in Y."""
        return sum(x[i] * self.pairing[i][j] * y[j] for i in range(self.x_rank) for j in range(self.x_rank) if self.pairing[i][j])

    @cached_property
    def cartan(self) -> list[list[int]]:
        """``cartan[i][j] = <alpha_j, alpha_i^vee>``."""
        r = self.semisimple_rank
        return [[self.pair(self.simple_roots[j], self.simple_coroots[i]) for j in range(r)] for i in range(r)]

    def reflection_matrix(self, i: int) -> list[list[int]]:
        """Matrix of s_i on X (acting on column vectors)."""
        n = self.x_rank
        a = self.simple_roots[i]
        f = self.functional(self.simple_coroots[i])
        return [[int(r == c) - a[r] * f[c] for c in range(n)] for r in range(n)]

    def functional(self, y: Sequence) -> tuple:
        """The vector f with <x, y> = x . f."""
        return tuple(sum(self.pairing[i][j] * y[j] for j in range(self.x_rank)) for i in range(self.x_rank))

    # -- roots --------------------------------------------------------------

    def _build_roots(self):
        r = self.semisimple_rank
        # (root, coroot, root coords in simple roots, coroot coords in simple coroots)
        start = []
        for i in range(r):
            e = tuple(int(k == i) for k in range(r))
            start.append((self.simple_roots[i], self.simple_coroots[i], e, e))
        found = {s[0]: s for s in start}
        queue = list(start)
        while queue:
            a, av, c, cv = queue.pop()
            for i in range(r):
                k = self.pair(a, self.simple_coroots[i])
                kv = self.pair(self.simple_roots[i], av)
                b = tuple(x - k * y for x, y in zip(a, self.simple_roots[i]))
                bv = tuple(x - kv * y for x, y in zip(av, self.simple_coroots[i]))
                bc = tuple(x - (k if j == i else 0) for j, x in enumerate(c))
                bcv = tuple(x - (kv if j == i else 0) for j, x in enumerate(cv))
                if b not in found:
                    found[b] = (b, bv, bc, bcv)
                    queue.append(found[b])
                    if len(found) > MAX_ROOTS:
                        raise RootDatumError("root system is not finite")
        for b, bv, bc, bcv in found.values():
            if self.pair(b, bv) != 2:
                raise RootDatumError("inconsistent root/coroot bijection")
            if not (all(x >= 0 for x in bc) or all(x <= 0 for x in bc)):
                raise RootDatumError("root is neither positive nor negative")
            if (all(x >= 0 for x in bc)) != (all(x >= 0 for x in bcv)):
                raise RootDatumError("root and coroot signs disagree")
        # positive roots first, sorted by height then coordinates
        entries = sorted(found.values(), key=lambda e: (sum(e[2]) < 0, abs(sum(e[2])), tuple(-x for x in e[2])))
        self.roots = [e[0] for e in entries]
        self.coroots = [e[1] for e in entries]
        self.root_coords = [e[2] for e in entries]
        self.coroot_coords = [e[3] for e in entries]
        self.root_index = {a: k for k, a in enumerate(self.roots)}
        self.is_positive = [sum(c) > 0 for c in self.root_coords]
        self.positive = [k for k in range(len(self.roots)) if self.is_positive[k]]
        # for positive root k: <x, alpha_k^vee> = x . coroot_functionals[k]
        self.coroot_functionals = [self.functional(self.coroots[k]) for k in self.positive]

    @property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return [self.roots[k] for k in self.positive]

    def positive_in(self, J: Iterable[int]) -> list[int]:
        """Indices (into ``positive``) of positive roots of R_J."""
        J = frozenset(J)
        return [k for k, p in enumerate(self.positive) if all(c == 0 or i in J for i, c in enumerate(self.root_coords[p]))]

    def components(self, J: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """Connected components of the Dynkin diagram on J (default F0)."""
        J = sorted(range(self.semisimple_rank) if J is None else J)
        left = set(J)
        comps = []
        while left:
            seed = min(left)
            comp = {seed}
            stack = [seed]
            while stack:
                i = stack.pop()
                for j in list(left):
                    if j not in comp and self.cartan[i][j] != 0:
                        comp.add(j)
                        stack.append(j)
            left -= comp
            comps.append(tuple(sorted(comp)))
        return sorted(comps)

    def half_sum_pos_coroots(self, J: Iterable[int] | None = None) -> tuple:
        ks = range(len(self.positive)) if J is None else self.positive_in(J)
        tot = [Fraction(0)] * self.x_rank
        for k in ks:
            for i, x in enumerate(self.coroots[self.positive[k]]):
                tot[i] += x
        return tuple(x / 2 for x in tot)

    def highest_coroot_root(self, component: Sequence[int]) -> int:
        """Index (into ``roots``) of the positive root theta of a component whose
        coroot is the highest coroot; its affine reflection bounds C0."""
        comp = set(component)
        best = None
        for p in self.positive:
            if all(c == 0 or i in comp for i, c in enumerate(self.root_coords[p])):
                h = sum(self.coroot_coords[p])
                if best is None or h > best[0]:
                    best = (h, p)
        return best[1]

    @cached_property
    def weyl(self) -> FiniteWeylGroup:
        return FiniteWeylGroup(self)

    # -- vectors --------------------------------------------------------------

    def j_of_vector(self, v: Sequence) -> frozenset[int]:
        return frozenset(i for i in range(self.semisimple_rank) if self.pair(v, self.simple_coroots[i]) == 0)

    def is_dominant(self, v: Sequence) -> bool:
        return all(self.pair(v, c) >= 0 for c in self.simple_coroots)

    def in_x_plus_j(self, lam: Sequence, J: Iterable[int]) -> bool:
        return self.is_dominant(lam) and self.j_of_vector(lam) == frozenset(J)

    def dominant_rep(self, v: Sequence) -> tuple[tuple, int]:
        """(v_bar, z): z of minimal length in W0 with z(v) = v_bar dominant."""
        W = self.weyl
        for z in range(W.order):  # indices are sorted by length
            u = W.act(z, v)
            if self.is_dominant(u):
                return u, z
        raise AssertionError("no dominant element in orbit")

    def solve_pairings(self, values: Sequence, J: Iterable[int] | None = None) -> tuple:
        """A rational vector v in the span of the simple roots with
        <v, alpha_i^vee> = values[i] (for i in J)."""
        J = list(range(self.semisimple_rank)) if J is None else sorted(J)
        if not J:
            return tuple(Fraction(0) for _ in range(self.x_rank))
        # v = sum_j c_j alpha_j, cartan restricted to J
        a = [[self.cartan[i][j] for j in J] for i in J]
        c = linalg.solve(a, [values[k] for k in range(len(J))])
        v = [Fraction(0)] * self.x_rank
        for cj, j in zip(c, J):
            for t in range(self.x_rank):
                v[t] += cj * self.simple_roots[j][t]
        return tuple(v)

    def deep_vector(self, J: Iterable[int], depth: int = 1) -> tuple[int, ...]:
        """An element of X^+(J): <lam, alpha^vee> = 0 on J and >= depth off J.

        Found in X (not just X_Q) by clearing denominators.
        """
        J = frozenset(J)
        r = self.semisimple_rank
        # rational solution orthogonal to J-coroots, positive elsewhere
        rows = [list(self.functional(self.simple_coroots[i])) for i in range(r)]
        rhs = [0 if i in J else 1 for i in range(r)]
        sol = linalg.solve_any(rows, rhs)
        den = 1
        for x in sol:
            den = den * x.denominator // _gcd(den, x.denominator)
        v = [int(x * den) for x in sol]
        base = min((self.pair(v, self.simple_coroots[i]) for i in range(r) if i not in J), default=1)
        k = -(-depth // base)
        out = tuple(k * x for x in v)
        assert self.in_x_plus_j(out, J) or (not r)
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "xRank": self.x_rank,
            "pairing": self.pairing,
            "simpleRoots": [list(a) for a in self.simple_roots],
            "simpleCoroots": [list(a) for a in self.simple_coroots],
        }


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def build_root_datum(obj: dict) -> RootDatum:
    """Validate a declarative description and build the datum."""
    try:
        name = str(obj.get("name", "custom"))
        n = int(obj["xRank"])
        pairing = obj.get("pairing") or linalg.identity(n)
        return RootDatum(
            name=name,
            x_rank=n,
            pairing=[[int(x) for x in row] for row in pairing],
            simple_roots=[tuple(a) for a in obj["simpleRoots"]],
            simple_coroots=[tuple(a) for a in obj["simpleCoroots"]],
        )
    except (KeyError, TypeError) as exc:
        raise RootDatumError(f"malformed root datum: {exc!r}") from exc


def catalog_names() -> list[str]:
    folder = resources.files("hecke0") / "data"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


_CACHE: dict[str, RootDatum] = {}


def load_datum(name_or_path: str) -> RootDatum:
    """Built-in datum by name, or a JSON file path."""
    if name_or_path in _CACHE:
        return _CACHE[name_or_path]
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise RootDatumError(f"cannot parse {path}: {exc}") from exc
        return build_root_datum(obj)
    res = resources.files("hecke0") / "data" / f"{name_or_path}.json"
    if not res.is_file():
        raise RootDatumError(f"unknown datum {name_or_path!r}; known: {', '.join(catalog_names())}")
    rd = build_root_datum(json.loads(res.read_text()))
    _CACHE[name_or_path] = rd
    return rd

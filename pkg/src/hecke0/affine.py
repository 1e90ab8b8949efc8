"""Extended affine Weyl group X ⋊ W0 and its parabolic (Levi) pieces.

An element ``t^lam w`` is an :class:`AffineElement` ``(lam, w)`` where ``w``
is an index into the finite Weyl group.  All arithmetic goes through an
:class:`AffineWeylGroup`, which owns the datum.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import linalg
from .rootdatum import RootDatum


class AffineElement(NamedTuple):
    translation: tuple[int, ...]
    finite: int


class InfiniteOmegaError(ValueError):
    """Operation needs a finite length-zero subgroup."""


class LatticeQuotient:
    """The finitely generated abelian group L / S for lattices S ⊆ L ⊆ X.

    ``basis`` lists a Z-basis of L, ``sub`` generators of S.  Coordinates of
    an element are taken in the Smith basis: component ``i`` is reduced
    modulo ``orders[i]`` (``0`` meaning a free generator).  Trivial cyclic
    factors are dropped.
    """

    def __init__(self, basis: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]):
        n = len(basis)
        self.basis = [tuple(b) for b in basis]
        bmat = linalg.transpose(self.basis)
        self._binv = linalg.inverse(bmat)
        sub = [s for s in sub if any(s)]
        if sub:
            a = [[int(x) for x in linalg.matvec(self._binv, s)] for s in sub]
            d, u, _ = linalg.smith_normal_form(linalg.transpose(a))
            diag = [d[i][i] if i < len(d[0]) else 0 for i in range(n)]
        else:
            u = linalg.identity(n)
            diag = [0] * n
        self._u = u
        uinv = linalg.integer_inverse(u)
        keep = [i for i in range(n) if diag[i] != 1]
        self._keep = keep
        self.orders = [diag[i] for i in keep]
        self.gens = [tuple(linalg.matvec(bmat, [row[i] for row in uinv])) for i in keep]

    @property
    def is_finite(self) -> bool:
        return all(d > 0 for d in self.orders)

    @property
    def size(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for d in self.orders:
            out *= d
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return all(Fraction(x).denominator == 1 for x in linalg.matvec(self._binv, v))

    def coords(self, v: Sequence[int]) -> tuple[int, ...]:
        c = linalg.matvec(self._binv, v)
        if any(Fraction(x).denominator != 1 for x in c):
            raise ValueError(f"{v} is not in the lattice")
        u = linalg.matvec(self._u, [int(x) for x in c])
        return tuple(u[i] % d if d else u[i] for i, d in zip(self._keep, self.orders))

    def element(self, coords: Sequence[int]) -> tuple[int, ...]:
        n = len(self.basis)
        out = [0] * n
        for c, g in zip(coords, self.gens):
            for t in range(n):
                out[t] += c * g[t]
        return tuple(out)

    def elements(self) -> list[tuple[int, ...]]:
        """Canonical representatives (finite quotients only)."""
        if not self.is_finite:
            raise InfiniteOmegaError("quotient is infinite")
        return [self.element(c) for c in itertools.product(*(range(d) for d in self.orders))]


class AffineWeylGroup:
    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.W0 = rd.weyl
        self.n0 = self.W0.order
        self.identity = AffineElement((0,) * rd.x_rank, 0)
        self._f = rd.coroot_functionals
        self._levis: dict[frozenset, Levi] = {}

    # -- arithmetic -----------------------------------------------------------

    def mul(self, a: AffineElement, b: AffineElement) -> AffineElement:
        wl = self.W0.act(a.finite, b.translation)
        return AffineElement(tuple(x + y for x, y in zip(a.translation, wl)), self.W0.mul[a.finite][b.finite])

    def prod(self, *elts: AffineElement) -> AffineElement:
        out = self.identity
        for e in elts:
            out = self.mul(out, e)
        return out

    def inv(self, a: AffineElement) -> AffineElement:
        wi = self.W0.inv[a.finite]
        return AffineElement(tuple(-x for x in self.W0.act(wi, a.translation)), wi)

    def power(self, a: AffineElement, n: int) -> AffineElement:
        if n < 0:
            return self.power(self.inv(a), -n)
        out = self.identity
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def conj(self, g: AffineElement, a: AffineElement) -> AffineElement:
        """g a g^{-1}."""
        return self.mul(self.mul(g, a), self.inv(g))

    def translation(self, lam: Sequence[int]) -> AffineElement:
        return AffineElement(tuple(int(x) for x in lam), 0)

    def finite(self, w: int) -> AffineElement:
        return AffineElement(self.identity.translation, w)

    def act(self, a: AffineElement, v: Sequence) -> tuple:
        wv = self.W0.act(a.finite, v)
        return tuple(x + y for x, y in zip(a.translation, wv))

    def pairing(self, lam: Sequence, k: int):
        """<lam, alpha_k^vee> for the k-th positive root."""
        return sum(x * y for x, y in zip(lam, self._f[k]))

    # -- length ---------------------------------------------------------------

    def length(self, a: AffineElement) -> int:
        """Closed length formula: sum over positive roots of |<lam,a^v> - delta_{w^-1}(a)|."""
        neg = self.W0.neg[self.W0.inv[a.finite]]
        lam = a.translation
        tot = 0
        for k, f in enumerate(self._f):
            tot += abs(sum(x * y for x, y in zip(lam, f)) - neg[k])
        return tot

    def length_in(self, a: AffineElement, pos: Sequence[int]) -> int:
        neg = self.W0.neg[self.W0.inv[a.finite]]
        lam = a.translation
        tot = 0
        for k in pos:
            tot += abs(sum(x * y for x, y in zip(lam, self._f[k])) - neg[k])
        return tot

    @cached_property
    def alcove_point(self) -> tuple:
        """A rational point in the interior of the fundamental alcove."""
        rd = self.rd
        r = rd.semisimple_rank
        h = max((sum(rd.coroot_coords[p]) for p in rd.positive), default=1)
        vals = [Fraction(1, h + 1) * Fraction(2 * r + i, 3 * r) for i in range(r)]
        p = rd.solve_pairings(vals)
        assert all(0 < self.pairing(p, k) < 1 for k in range(len(self._f)))
        return p

    def length_hyperplanes(self, a: AffineElement) -> int:
        """Count hyperplanes H_{alpha,k} separating C0 from a C0."""
        p = self.alcove_point
        q = self.act(a, p)
        tot = 0
        for k in range(len(self._f)):
            x, y = self.pairing(p, k), self.pairing(q, k)
            assert Fraction(y).denominator != 1
            tot += abs(_floor(y) - _floor(x))
        return tot

    # -- simple reflections and Omega -----------------------------------------

    def levi(self, J: Iterable[int] | None = None) -> "Levi":
        J = frozenset(range(self.rd.semisimple_rank)) if J is None else frozenset(J)
        if J not in self._levis:
            self._levis[J] = Levi(self, J)
        return self._levis[J]

    @cached_property
    def full(self) -> "Levi":
        return self.levi(None)

    @property
    def simple_reflections(self) -> list[AffineElement]:
        return self.full.nodes

    @property
    def node_names(self) -> list[str]:
        return self.full.names

    def omega(self) -> LatticeQuotient:
        return self.full.omega

    def omega_elements(self) -> list[AffineElement]:
        return self.full.omega_elements()

    @property
    def omega_finite(self) -> bool:
        return self.full.omega.is_finite

    def require_finite_omega(self):
        if not self.omega_finite:
            raise InfiniteOmegaError(f"{self.rd.name}: Omega is infinite; enumeration refused")

    def reduced_word(self, a: AffineElement) -> tuple[tuple[int, ...], AffineElement]:
        return self.full.reduced_word(a)

    def support(self, a: AffineElement) -> frozenset[int]:
        return self.full.support(a)

    def omega_part(self, a: AffineElement) -> AffineElement:
        return self.full.lift(a.translation)

    # -- orders and products --------------------------------------------------

    def bruhat_le(self, a: AffineElement, b: AffineElement) -> bool:
        """a <= b in the Bruhat order (subword property; equal Omega parts)."""
        return a in self.bruhat_lower(b)

    @lru_cache(maxsize=None)
    def bruhat_lower(self, b: AffineElement) -> frozenset[AffineElement]:
        word, tau = self.reduced_word(b)
        nodes = self.simple_reflections
        cur = {self.identity}
        for i in word:
            cur |= {self.mul(x, nodes[i]) for x in cur}
        return frozenset(self.mul(x, tau) for x in cur)

    def demazure(self, a: AffineElement, b: AffineElement) -> AffineElement:
        word, tau = self.reduced_word(b)
        nodes = self.simple_reflections
        e = a
        for i in word:
            es = self.mul(e, nodes[i])
            if self.length(es) > self.length(e):
                e = es
        return self.mul(e, tau)

    def coset_decompose(self, a: AffineElement, J: Iterable[int]) -> tuple[int, AffineElement]:
        """a = d * u with d in W0^J and u in X ⋊ W_J."""
        d, u = self.W0.coset_decompose(a.finite, J)
        dinv = self.W0.inv[d]
        return d, AffineElement(self.W0.act(dinv, a.translation), u)

    # -- enumeration ------------------------------------------------------------

    def elements_up_to(self, L: int) -> list[AffineElement]:
        """All elements of length <= L, sorted by (length, canonical key)."""
        self.require_finite_omega()
        nodes = self.simple_reflections
        layer = {self.identity}
        aff = set(layer)
        for _ in range(L):
            nxt = set()
            for x in layer:
                lx = self.length(x)
                for s in nodes:
                    y = self.mul(x, s)
                    if self.length(y) == lx + 1 and y not in aff:
                        nxt.add(y)
            aff |= nxt
            layer = nxt
        out = {self.mul(x, t) for x in aff for t in self.omega_elements()}
        return sorted(out, key=self.key)

    def key(self, a: AffineElement) -> tuple:
        return (self.length(a), a.translation, self.W0.words[a.finite])

    # -- names ----------------------------------------------------------------

    def name(self, a: AffineElement) -> str:
        """Canonical literal ``t[l1,l2]*s1*s2`` (normal form t^lam w)."""
        parts = []
        if any(a.translation):
            parts.append("t[" + ",".join(str(x) for x in a.translation) + "]")
        parts += [f"s{i + 1}" for i in self.W0.words[a.finite]]
        return "*".join(parts) or "e"

    def word_name(self, a: AffineElement) -> str:
        word, tau = self.reduced_word(a)
        parts = [self.node_names[i] for i in word]
        if tau != self.identity:
            parts.append(self.full.omega_name(tau))
        return "*".join(parts) or "e"

    def parse(self, text: str) -> AffineElement:
        """Parse ``t[1,-1]*s1*s0*u1``; ``u<k>`` is the k-th Omega generator."""
        out = self.identity
        names = {n: e for n, e in zip(self.node_names, self.simple_reflections)}
        for tok in filter(None, (t.strip() for t in text.split("*"))):
            m = re.fullmatch(r"t\[([-\d,\s]*)\]", tok)
            if tok == "e":
                continue
            if m:
                lam = tuple(int(x) for x in m.group(1).split(",") if x.strip())
                if len(lam) != self.rd.x_rank:
                    raise ValueError(f"translation {tok} has wrong rank")
                out = self.mul(out, self.translation(lam))
            elif tok in names:
                out = self.mul(out, names[tok])
            elif re.fullmatch(r"u\d+", tok):
                k = int(tok[1:]) - 1
                gens = self.full.omega.gens
                if not 0 <= k < len(gens):
                    raise ValueError(f"no Omega generator {tok}")
                out = self.mul(out, self.full.lift(gens[k]))
            else:
                raise ValueError(f"cannot parse element token {tok!r}")
        return out


def _floor(x) -> int:
    x = Fraction(x)
    return x.numerator // x.denominator


class Levi:
    """Affine data of the Levi datum R_J: J_aff, the length l_J, Omega_J."""

    def __init__(self, W: AffineWeylGroup, J: frozenset[int]):
        self.W = W
        rd = W.rd
        self.J = J
        self.pos = rd.positive_in(J)
        self.components = rd.components(J)
        self.W_J = W.W0.parabolic(J)
        names = []
        nodes = []
        comp_of = []
        for j in sorted(J):
            names.append(f"s{j + 1}")
            nodes.append(W.finite(W.W0.simple[j]))
            comp_of.append(next(c for c, comp in enumerate(self.components) if j in comp))
        for c, comp in enumerate(self.components):
            th = rd.highest_coroot_root(comp)
            refl = self._reflection(rd.roots[th], rd.coroots[th])
            nodes.append(self.W.mul(W.translation(rd.roots[th]), W.finite(refl)))
            suffix = "" if len(self.components) == 1 else "_" + "".join(str(i + 1) for i in comp)
            names.append("s0" + suffix)
            comp_of.append(c)
        self.nodes = nodes
        self.names = names
        self.component_of = comp_of
        self.index = {e: i for i, e in enumerate(nodes)}
        for e in nodes:
            assert self.length(e) == 1, "simple affine reflection of length != 1"
        self._lift: dict[tuple, AffineElement] = {}
        self._perm: dict[AffineElement, tuple[int, ...]] = {}

    def _reflection(self, root, coroot) -> int:
        rd = self.W.rd
        f = rd.functional(coroot)
        n = rd.x_rank
        m = tuple(tuple(int(r == c) - root[r] * f[c] for c in range(n)) for r in range(n))
        return self.W.W0.index_of[m]

    # -- length and membership -------------------------------------------------

    def contains(self, a: AffineElement) -> bool:
        return set(self.W.W0.words[a.finite]) <= self.J

    def length(self, a: AffineElement) -> int:
        return self.W.length_in(a, self.pos)

    def is_positive(self, a: AffineElement) -> bool:
        """J-positivity, pairing the translation against coroots outside R_J."""
        if not self.contains(a):
            raise ValueError("element is not in X ⋊ W_J")
        inside = set(self.pos)
        return all(
            self.W.pairing(a.translation, k) >= 0 for k in range(len(self.W.rd.positive)) if k not in inside
        )

    def finite_type(self, gamma: Iterable[int]) -> bool:
        """W_Gamma is finite iff Gamma omits a node of every affine component."""
        gamma = set(gamma)
        for c in range(len(self.components)):
            if all(i in gamma for i, cc in enumerate(self.component_of) if cc == c):
                return False
        return True

    # -- Omega_J --------------------------------------------------------------

    @cached_property
    def omega(self) -> LatticeQuotient:
        rd = self.W.rd
        n = rd.x_rank
        return LatticeQuotient(linalg.identity(n), [rd.simple_roots[j] for j in sorted(self.J)])

    def lift(self, lam: Sequence[int]) -> AffineElement:
        """The length-zero element of t^lam (W_J)_aff."""
        lam = tuple(lam)
        if lam in self._lift:
            return self._lift[lam]
        e = self.W.translation(lam)
        le = self.length(e)
        while le:
            for s in self.nodes:
                es = self.W.mul(e, s)
                ls = self.length(es)
                if ls < le:
                    e, le = es, ls
                    break
            else:  # pragma: no cover - contradicts the exchange property
                raise AssertionError("no descent found")
        self._lift[lam] = e
        return e

    def omega_elements(self) -> list[AffineElement]:
        return [self.lift(v) for v in self.omega.elements()]

    def omega_name(self, tau: AffineElement) -> str:
        c = self.omega.coords(tau.translation)
        parts = []
        for k, x in enumerate(c):
            if x == 1:
                parts.append(f"u{k + 1}")
            elif x:
                parts.append(f"u{k + 1}^{x}")
        return "*".join(parts) or "e"

    def omega_component(self, a: AffineElement) -> AffineElement:
        return self.lift(a.translation)

    def perm(self, tau: AffineElement) -> tuple[int, ...]:
        """Permutation of J_aff induced by conjugation with a length-zero tau."""
        if tau not in self._perm:
            ti = self.W.inv(tau)
            self._perm[tau] = tuple(self.index[self.W.mul(self.W.mul(tau, s), ti)] for s in self.nodes)
        return self._perm[tau]

    def conj_set(self, tau: AffineElement, gamma: Iterable[int]) -> frozenset[int]:
        p = self.perm(tau)
        return frozenset(p[i] for i in gamma)

    def conj_set_by(self, g: AffineElement, gamma: Iterable[int]) -> frozenset[int] | None:
        """g Gamma g^-1 as node indices, or None if some image is not a node."""
        gi = self.W.inv(g)
        out = set()
        for i in gamma:
            c = self.W.mul(self.W.mul(g, self.nodes[i]), gi)
            if c not in self.index:
                return None
            out.add(self.index[c])
        return frozenset(out)

    @cached_property
    def omega_generator_perms(self) -> list[tuple[int, ...]]:
        return [self.perm(self.lift(g)) for g in self.omega.gens]

    def gamma_orbit(self, gamma: Iterable[int]) -> list[frozenset[int]]:
        """The Omega_J-orbit of Gamma, sorted."""
        start = frozenset(gamma)
        seen = {start}
        todo = [start]
        while todo:
            g = todo.pop()
            for p in self.omega_generator_perms:
                h = frozenset(p[i] for i in g)
                if h not in seen:
                    seen.add(h)
                    todo.append(h)
        return sorted(seen, key=lambda g: (len(g), sorted(g)))

    def canonical_gamma(self, gamma: Iterable[int]) -> frozenset[int]:
        """Lex-least representative of the Omega_J-orbit of Gamma."""
        return self.gamma_orbit(gamma)[0]

    # -- words -------------------------------------------------------------------

    def reduced_word(self, a: AffineElement) -> tuple[tuple[int, ...], AffineElement]:
        """Left-greedy reduced word over J_aff and the Omega_J remainder."""
        word = []
        e = a
        le = self.length(e)
        while le:
            for i, s in enumerate(self.nodes):
                se = self.W.mul(s, e)
                ls = self.length(se)
                if ls < le:
                    word.append(i)
                    e, le = se, ls
                    break
            else:  # pragma: no cover
                raise AssertionError("no left descent found")
        return tuple(word), e

    def support(self, a: AffineElement) -> frozenset[int]:
        word, tau = self.reduced_word(a)
        supp = set(word)
        while True:
            nxt = supp | self.conj_set(tau, supp)
            if nxt == supp:
                return frozenset(supp)
            supp = nxt

    def from_word(self, word: Iterable[int]) -> AffineElement:
        e = self.W.identity
        for i in word:
            e = self.W.mul(e, self.nodes[i])
        return e

    def parabolic_elements(self, gamma: Iterable[int]) -> list[AffineElement]:
        """W_Gamma for a finite-type Gamma ⊆ J_aff."""
        gamma = sorted(gamma)
        if not self.finite_type(gamma):
            raise ValueError("W_Gamma is infinite")
        seen = {self.W.identity}
        frontier = [self.W.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for i in gamma:
                    y = self.W.mul(x, self.nodes[i])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=self.W.key)

    def longest(self, gamma: Iterable[int]) -> AffineElement:
        """w_Gamma: the element of W_Gamma of maximal l_J-length."""
        elts = self.parabolic_elements(gamma)
        return max(elts, key=lambda e: (self.length(e), self.W.key(e)))

    def name_set(self, gamma: Iterable[int]) -> str:
        return "{" + ",".join(self.names[i] for i in sorted(gamma)) + "}"

    def parse_set(self, text: str) -> frozenset[int]:
        text = text.strip().strip("{}")
        if not text:
            return frozenset()
        out = set()
        for tok in text.split(","):
            tok = tok.strip()
            if tok not in self.names:
                raise ValueError(f"unknown node {tok!r}; nodes are {self.names}")
            out.add(self.names.index(tok))
        return frozenset(out)


_GROUPS: dict[int, AffineWeylGroup] = {}


def affine_group(rd: RootDatum) -> AffineWeylGroup:
    """Shared group object per datum."""
    if id(rd) not in _GROUPS:
        _GROUPS[id(rd)] = AffineWeylGroup(rd)
    return _GROUPS[id(rd)]

"""Cyclic shifts, minimal-length classes, Newton points and standard pairs.

Conventions: ``x -> s x s`` is a step when the length does not go up.  Two
elements are cyclic-shift equivalent when they are joined by length-preserving
steps and conjugation by length-zero elements; for a fixed element this is the
connected component of its equal-length "plateau".
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .affine import AffineElement, AffineWeylGroup, Levi

PRESERVED = "length-preserved"
DROPPED = "length-dropped"
NOT_A_STEP = "not-a-step"


class BudgetExceeded(RuntimeError):
    """A plateau search visited more nodes than allowed."""


class StandardRepError(RuntimeError):
    """No standard representative found for a class (should never happen)."""


@dataclass(frozen=True)
class Step:
    kind: str  # "s" (simple reflection) or "omega"
    by: str  # node name or Omega label
    result: AffineElement
    relation: str


@dataclass(frozen=True)
class Plateau:
    """Equal-length conjugation component and the strict drops leaving it."""

    members: tuple[AffineElement, ...]
    drops: tuple[tuple[AffineElement, int], ...]  # (x, i) with l(s_i x s_i) < l(x)

    @property
    def minimal(self) -> bool:
        return not self.drops


@dataclass(frozen=True)
class StandardRep:
    w: AffineElement
    y: AffineElement
    K: frozenset[int]  # node indices of S_aff


@dataclass(frozen=True)
class StandardPair:
    x: AffineElement
    gamma: frozenset[int]  # node indices of J_aff
    J: frozenset[int]


@dataclass(frozen=True)
class CyclicShiftClass:
    representative: AffineElement
    members: tuple[AffineElement, ...]
    length: int
    newton: tuple  # dominant Newton point, Fractions
    straight: bool
    label: str
    J: frozenset[int]  # simple roots orthogonal to the Newton point
    rigid: bool  # J is all of F0

    def __contains__(self, e: AffineElement) -> bool:
        return e in self.members

    def __hash__(self):
        return hash(self.representative)

    def __eq__(self, other):
        return isinstance(other, CyclicShiftClass) and other.representative == self.representative


@dataclass
class WindowReport:
    """Result of an "n large" check: threshold used and smallest passing n."""

    threshold: int
    window: int
    passed: bool
    smallest: int | None
    detail: str = ""
    failures: list = field(default_factory=list)


class Conjugacy:
    """Class-level computations for one extended affine Weyl group."""

    def __init__(self, W: AffineWeylGroup, budget: int = 200000):
        self.W = W
        self.rd = W.rd
        self.budget = budget
        self.nodes = W.simple_reflections
        self.n0 = W.W0.order
        self._plateau: dict[AffineElement, Plateau] = {}
        self._classes: dict[AffineElement, CyclicShiftClass] = {}
        self._sigma: dict[AffineElement, CyclicShiftClass] = {}
        self._outcomes: dict[AffineElement, frozenset] = {}
        self._reps: dict[AffineElement, StandardRep] = {}
        self._pairs: dict[AffineElement, StandardPair] = {}

    @property
    def omega(self) -> list[AffineElement]:
        self.W.require_finite_omega()
        return self.W.omega_elements()

    # -- steps and plateaus -----------------------------------------------------

    def step(self, e: AffineElement, i: int) -> tuple[AffineElement, str]:
        s = self.nodes[i]
        f = self.W.mul(self.W.mul(s, e), s)
        le, lf = self.W.length(e), self.W.length(f)
        if lf > le:
            return f, NOT_A_STEP
        return f, PRESERVED if lf == le else DROPPED

    def _neighbours(self, x: AffineElement):
        """Equal-length conjugates (with their Step records) and strict drops."""
        lx = self.W.length(x)
        out, drops = [], []
        for i, s in enumerate(self.nodes):
            y = self.W.mul(self.W.mul(s, x), s)
            ly = self.W.length(y)
            if ly == lx:
                out.append((y, Step("s", self.W.node_names[i], y, PRESERVED)))
            elif ly < lx:
                drops.append(i)
        for tau in self.omega:
            if tau != self.W.identity:
                y = self.W.conj(tau, x)
                out.append((y, Step("omega", self.W.full.omega_name(tau), y, PRESERVED)))
        return out, drops

    def plateau(self, e: AffineElement) -> Plateau:
        if e in self._plateau:
            return self._plateau[e]
        seen = {e}
        order = [e]
        drops = []
        queue = deque([e])
        while queue:
            x = queue.popleft()
            nbrs, d = self._neighbours(x)
            drops += [(x, i) for i in d]
            for y, _ in nbrs:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
                    if len(seen) > self.budget:
                        raise BudgetExceeded(f"plateau of {self.W.name(e)} exceeds {self.budget} nodes")
        members = tuple(sorted(seen, key=self.W.key))
        p = Plateau(members, tuple(sorted(drops, key=lambda t: (self.W.key(t[0]), t[1]))))
        for m in members:
            self._plateau[m] = p
        return p

    def is_minimal(self, e: AffineElement) -> bool:
        return self.plateau(e).minimal

    def reduce_to_minimal(self, e: AffineElement) -> tuple[AffineElement, list[Step]]:
        """Walk plateaus, taking a strict drop whenever one exists."""
        path: list[Step] = []
        cur = e
        while True:
            parent: dict[AffineElement, tuple] = {cur: None}
            queue = deque([cur])
            hit = None
            while queue and hit is None:
                x = queue.popleft()
                nbrs, drops = self._neighbours(x)
                if drops:
                    hit = (x, drops[0])
                    break
                for y, st in nbrs:
                    if y not in parent:
                        parent[y] = (x, st)
                        queue.append(y)
                        if len(parent) > self.budget:
                            raise BudgetExceeded(f"plateau of {self.W.name(cur)} exceeds {self.budget} nodes")
            if hit is None:
                return cur, path
            x, i = hit
            seg = []
            node = x
            while parent[node] is not None:
                prev, st = parent[node]
                seg.append(st)
                node = prev
            path += reversed(seg)
            nxt, rel = self.step(x, i)
            path.append(Step("s", self.W.node_names[i], nxt, rel))
            cur = nxt

    # -- classes --------------------------------------------------------------------

    def class_of(self, m: AffineElement) -> CyclicShiftClass:
        """The cyclic-shift class of a minimal-length element."""
        if m in self._classes:
            return self._classes[m]
        p = self.plateau(m)
        if not p.minimal:
            raise ValueError(f"{self.W.name(m)} is not of minimal length in its conjugacy class")
        rep = p.members[0]
        nb = self.newton_bar(rep)
        cls = CyclicShiftClass(
            representative=rep,
            members=p.members,
            length=self.W.length(rep),
            newton=nb,
            straight=self.W.length(rep) == self.rho_pairing(nb),
            label=self.W.name(rep),
            J=self.rd.j_of_vector(nb),
            rigid=len(self.rd.j_of_vector(nb)) == self.rd.semisimple_rank,
        )
        for x in p.members:
            self._classes[x] = cls
        return cls

    def enumerate_min_classes(self, L: int) -> list[CyclicShiftClass]:
        """All minimal-length cyclic-shift classes of length <= L, canonically ordered."""
        out = {}
        for e in self.W.elements_up_to(L):
            if self.is_minimal(e):
                c = self.class_of(e)
                out[c.representative] = c
        return sorted(out.values(), key=lambda c: self.W.key(c.representative))

    # -- Sigma ----------------------------------------------------------------------

    def sigma_of(self, e: AffineElement) -> tuple[CyclicShiftClass, int]:
        """(Sigma_e, sign) by the drop recursion; sign = (-1)^(l(e) - l(Sigma_e))."""
        cls = self._sigma_class(e)
        return cls, (-1) ** ((self.W.length(e) - cls.length) % 2)

    def _sigma_class(self, e: AffineElement) -> CyclicShiftClass:
        if e in self._sigma:
            return self._sigma[e]
        stack = [e]
        while stack:
            x = stack[-1]
            if x in self._sigma:
                stack.pop()
                continue
            p = self.plateau(x)
            if p.minimal:
                val = self.class_of(x)
            else:
                y, i = p.drops[0]
                nxt = self.W.mul(self.nodes[i], y)
                if nxt not in self._sigma:
                    stack.append(nxt)
                    continue
                val = self._sigma[nxt]
            for m in p.members:
                self._sigma[m] = val
            stack.pop()
        return self._sigma[e]

    def sigma_outcomes(self, e: AffineElement) -> frozenset[AffineElement]:
        """Representatives of every Sigma reachable over all plateau walks and drops."""
        if e in self._outcomes:
            return self._outcomes[e]
        p = self.plateau(e)
        if p.minimal:
            res = frozenset({self.class_of(e).representative})
        else:
            res = frozenset()
            for y, i in p.drops:
                res |= self.sigma_outcomes(self.W.mul(self.nodes[i], y))
        for m in p.members:
            self._outcomes[m] = res
        return res

    def precedes(self, cls: CyclicShiftClass, e: AffineElement) -> bool:
        """cls ⪯ e: some member of cls is Bruhat-below e."""
        if cls.length > self.W.length(e):
            return False
        lower = self.W.bruhat_lower(e)
        return any(m in lower for m in cls.members)

    def sigma_bruhat(self, e: AffineElement) -> CyclicShiftClass:
        """Independent oracle: the unique ⪯-maximal class below e."""
        below = {}
        for z in self.W.bruhat_lower(e):
            if self.is_minimal(z):
                c = self.class_of(z)
                below[c.representative] = c
        cands = list(below.values())
        maxima = [c for c in cands if all(self.class_precedes(d, c) for d in cands)]
        if len(maxima) != 1:
            raise AssertionError(f"no unique maximal class below {self.W.name(e)}")
        return maxima[0]

    def class_precedes(self, a: CyclicShiftClass, b: CyclicShiftClass) -> bool:
        return self.precedes(a, b.representative)

    # -- Newton points and straightness ---------------------------------------------

    def newton_point(self, e: AffineElement) -> tuple:
        lam = self.W.power(e, self.n0).translation
        return tuple(Fraction(x, self.n0) for x in lam)

    def newton_bar(self, e: AffineElement) -> tuple:
        return self.rd.dominant_rep(self.newton_point(e))[0]

    def rho_pairing(self, v) -> Fraction:
        """<v, 2 rho^vee>."""
        rho = self.rd.half_sum_pos_coroots()
        return self.rd.pair(v, tuple(2 * r for r in rho))

    def is_straight(self, e: AffineElement) -> bool:
        return self.W.length(e) == self.rho_pairing(self.newton_bar(e))

    def is_straight_by_powers(self, e: AffineElement, upto: int | None = None) -> bool:
        le = self.W.length(e)
        p = self.W.identity
        for n in range(1, (upto or self.n0) + 1):
            p = self.W.mul(p, e)
            if self.W.length(p) != n * le:
                return False
        return True

    # -- standard representatives -----------------------------------------------------

    def finite_type_subsets(self) -> list[frozenset[int]]:
        nodes = range(len(self.nodes))
        full = self.W.full
        out = []
        for k in range(len(self.nodes) + 1):
            for K in itertools.combinations(nodes, k):
                if full.finite_type(K):
                    out.append(frozenset(K))
        return out

    def _min_in_left_coset(self, z: AffineElement, K: frozenset[int]) -> AffineElement:
        lz = self.W.length(z)
        changed = True
        while changed:
            changed = False
            for i in sorted(K):
                sz = self.W.mul(self.nodes[i], z)
                ls = self.W.length(sz)
                if ls < lz:
                    z, lz, changed = sz, ls, True
                    break
        return z

    def _rep_candidate(self, z: AffineElement, K: frozenset[int]) -> StandardRep | None:
        W = self.W
        y = self._min_in_left_coset(z, K)
        ly = W.length(y)
        if not self.is_straight(y):
            return None
        for i in K:
            s = self.nodes[i]
            if W.length(W.mul(y, s)) < ly:
                return None
        if W.full.conj_set_by(y, K) != K:
            return None
        w = W.mul(z, W.inv(y))
        # shrink K to the y-stable closure of supp(w)
        word, tau = W.reduced_word(w)
        assert tau == W.identity and set(word) <= K
        K2 = set(word)
        while True:
            nxt = K2 | W.full.conj_set_by(y, K2)
            if nxt == K2:
                break
            K2 = nxt
        return StandardRep(w, y, frozenset(K2))

    def standard_representative(self, cls: CyclicShiftClass) -> StandardRep:
        rep = cls.representative
        if rep in self._reps:
            return self._reps[rep]
        subsets = self.finite_type_subsets()
        for z in cls.members:
            for K in subsets:
                r = self._rep_candidate(z, K)
                if r is not None:
                    self._reps[rep] = r
                    return r
        raise StandardRepError(f"no standard representative for class {cls.label}")

    def all_standard_representatives(self, cls: CyclicShiftClass) -> list[StandardRep]:
        out = []
        for z in cls.members:
            for K in self.finite_type_subsets():
                r = self._rep_candidate(z, K)
                if r is not None and r not in out:
                    out.append(r)
        return out

    def pair_from_rep(self, r: StandardRep) -> StandardPair:
        W, rd = self.W, self.rd
        nu = self.newton_point(r.y)
        nb, zi = rd.dominant_rep(nu)
        J = rd.j_of_vector(nb)
        W0 = W.W0
        assert all(W0.length[W0.mul[W0.simple[j]][zi]] > W0.length[zi] for j in J), "z not in ^J W0"
        z = W.finite(zi)
        x = W.conj(z, r.y)
        levi = W.levi(J)
        gamma = set()
        for i in r.K:
            c = W.conj(z, self.nodes[i])
            if c not in levi.index:
                raise AssertionError("zKz^-1 is not contained in J_aff")
            gamma.add(levi.index[c])
        gamma = frozenset(gamma)
        assert self.newton_point(x) == nb
        assert levi.contains(x) and levi.length(x) == 0
        assert levi.finite_type(gamma)
        assert levi.conj_set_by(x, gamma) == gamma
        return StandardPair(x, gamma, J)

    def standard_pair(self, cls: CyclicShiftClass) -> StandardPair:
        rep = cls.representative
        if rep not in self._pairs:
            self._pairs[rep] = self.pair_from_rep(self.standard_representative(cls))
        return self._pairs[rep]

    def pairs_equivalent(self, p: StandardPair, q: StandardPair) -> bool:
        if p.x != q.x or p.J != q.J:
            return False
        return q.gamma in self.W.levi(p.J).gamma_orbit(p.gamma)

    # -- "n large" windows -------------------------------------------------------------

    def threshold(self, *elts: AffineElement) -> int:
        """n0 * (1 + max |<lam, a^vee>|) over the translation parts of elts."""
        m = 0
        for e in elts:
            for k in range(len(self.rd.positive)):
                m = max(m, abs(self.W.pairing(e.translation, k)))
        return self.n0 * (1 + m)

    def _window(self, check, start: int, n_hi: int) -> WindowReport:
        fails = [n for n in range(start, start + self.n0 + 1) if not check(n)]
        smallest = None
        for n in range(1, start + 1):
            if all(check(k) for k in range(n, n + self.n0 + 1)):
                smallest = n
                break
        return WindowReport(start, self.n0, not fails, smallest, failures=fails)

    def check_wk(self, r: StandardRep, algebra) -> WindowReport:
        """T_{wy}^n = (-1)^{n l(w) - l(w_K)} T_{w_K y^n} on the window."""
        W = self.W
        wk = W.full.longest(r.K) if r.K else W.identity
        lw, lk = W.length(r.w), W.length(wk)
        wy = W.mul(r.w, r.y)
        start = self.threshold(r.w, r.y, wk)
        powers = [algebra.one()]

        def power(n):
            while len(powers) <= n:
                powers.append(algebra.times_T(powers[-1], wy))
            return powers[n]

        def check(n):
            sign = (-1) ** ((n * lw - lk) % 2)
            return power(n) == algebra.T(W.mul(wk, W.power(r.y, n)), sign)

        return self._window(check, start, start + self.n0)

    def check_u_x(self, p: StandardPair) -> tuple[WindowReport, WindowReport]:
        """Both length identities for w_Gamma x^n past the threshold."""
        W = self.W
        levi = W.levi(p.J)
        wg = levi.longest(p.gamma) if p.gamma else W.identity
        us = [W.finite(u) for u in _left_min_reps(W, p.J)]
        xn0 = W.length(W.power(p.x, self.n0))
        start = self.threshold(p.x, wg)

        def elt(n):
            return W.mul(wg, W.power(p.x, n))

        def check1(n):
            e = elt(n)
            le = W.length(e)
            return all(W.length(W.mul(W.mul(W.inv(u), e), u)) == le for u in us)

        def check2(n):
            return W.length(elt(n + self.n0)) == W.length(elt(n)) + xn0

        return self._window(check1, start, start + self.n0), self._window(check2, start, start + self.n0)

    def check_xg(self, r: StandardRep, p: StandardPair, n_values: Iterable[int]) -> list[int]:
        """n for which w_Gamma x^n and w_K y^n are NOT cyclic-shift equivalent."""
        W = self.W
        wk = W.full.longest(r.K) if r.K else W.identity
        wg = W.levi(p.J).longest(p.gamma) if p.gamma else W.identity
        bad = []
        for n in n_values:
            a = W.mul(wg, W.power(p.x, n))
            b = W.mul(wk, W.power(r.y, n))
            if b not in self.plateau(a).members:
                bad.append(n)
        return bad


def _left_min_reps(W: AffineWeylGroup, J: Iterable[int]) -> list[int]:
    """^J W0: u with l(s u) > l(u) for s in J."""
    W0 = W.W0
    J = list(J)
    return [u for u in range(W0.order) if all(W0.length[W0.mul[W0.simple[j]][u]] > W0.length[u] for j in J)]


_CONJ: dict[int, Conjugacy] = {}


def conjugacy(W: AffineWeylGroup) -> Conjugacy:
    """Shared cache per group."""
    if id(W) not in _CONJ:
        _CONJ[id(W)] = Conjugacy(W)
    return _CONJ[id(W)]

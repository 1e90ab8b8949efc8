"""Finite-dimensional modules of the affine 0-Hecke algebra.

The modules ``pi(J, Gamma, chi)`` are built as exact rational matrices:

* ``M = H_{J,0} (x)_{H_{J,0}(Gamma)} chi`` has one line per coset of
  ``Omega_J(Gamma)`` in ``Omega_J``;
* ``pi = H_0 (x)_{H^+_{J,0}} M`` has basis ``T_d (x) m`` for ``d`` in ``W0^J``,
  and generators act by the rewriting ``T_g T_d = eps T_x``, a deep central
  shift ``t^lam``, and the coset decomposition of ``x t^lam``.

Everything downstream (traces, the closed character formula, the functors
``M -> M_J -> M_{J,Gamma}``, decomposition into the ``pi`` basis, rigidity and
supersingularity) works on these matrices or on character vectors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .affine import AffineElement, AffineWeylGroup, LatticeQuotient, Levi
from .cocenter import cocenter
from .conjugacy import CyclicShiftClass, StandardPair, conjugacy
from .hecke import HeckeElement, hecke_pair

NOT_COVERED = "not-covered"
TEST_VALUES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))
SHIFT_CAP = 2**10


class RelationError(AssertionError):
    """Generator matrices violate a defining relation."""


# -- parahoric data ------------------------------------------------------------------


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p after q."""
    return tuple(p[i] for i in q)


def _perm_power(p: Sequence[int], k: int) -> tuple[int, ...]:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = _compose(p, out)
    return out


def _perm_order(p: Sequence[int]) -> int:
    ident = tuple(range(len(p)))
    q, k = tuple(p), 1
    while q != ident:
        q, k = _compose(p, q), k + 1
    return k


class ParahoricDatum:
    """(J, Gamma) with the stabilizer Omega_J(Gamma) and coset representatives.

    Omega_J is identified with X / ZR_J through translation parts; the
    stabilizer is the lattice L_Gamma between ZR_J and X.
    """

    def __init__(self, W: AffineWeylGroup, J: Iterable[int], gamma: Iterable[int]):
        self.W = W
        self.levi: Levi = W.levi(J)
        self.J = self.levi.J
        self.gamma = frozenset(gamma)
        if not self.gamma <= set(range(len(self.levi.nodes))):
            raise ValueError("Gamma must be a set of nodes of J_aff")
        if not self.levi.finite_type(self.gamma):
            raise ValueError(f"W_Gamma is infinite for Gamma = {self.levi.name_set(self.gamma)}")
        n = W.rd.x_rank
        self.stabilizer_basis = self._stabilizer_lattice(n)
        self.cosets = LatticeQuotient(linalg.identity(n), self.stabilizer_basis)
        self.coset_vectors = self.cosets.elements()
        self._coset_index = {self.cosets.coords(v): k for k, v in enumerate(self.coset_vectors)}
        self.coset_lifts = [self.levi.lift(v) for v in self.coset_vectors]
        self.char_group = LatticeQuotient(self.stabilizer_basis, [W.rd.simple_roots[j] for j in sorted(self.J)])

    def _stabilizer_lattice(self, n: int) -> list[tuple[int, ...]]:
        levi = self.levi
        perms = [levi.perm(levi.lift(tuple(int(i == j) for j in range(n)))) for i in range(n)]
        N = 1
        for p in perms:
            N = N * _perm_order(p) // math.gcd(N, _perm_order(p))
        gens = [tuple(N * int(i == j) for j in range(n)) for i in range(n)]
        for v in itertools.product(range(N), repeat=n):
            p = tuple(range(len(levi.nodes)))
            for q, k in zip(perms, v):
                p = _compose(_perm_power(q, k), p)
            if frozenset(p[i] for i in self.gamma) == self.gamma:
                gens.append(v)
        cols = linalg.lattice_basis(gens, n)
        return [tuple(int(cols[r][c]) for r in range(n)) for c in range(len(cols[0]))]

    @property
    def index(self) -> int:
        """[Omega_J : Omega_J(Gamma)]."""
        return len(self.coset_vectors)

    def coset_of(self, lam: Sequence[int]) -> int:
        return self._coset_index[self.cosets.coords(lam)]

    def stabilizes(self, lam: Sequence[int]) -> bool:
        """Does the Omega_J element with translation class lam fix Gamma?"""
        return not any(self.cosets.coords(lam))

    def key(self) -> tuple[frozenset[int], frozenset[int]]:
        """Canonical representative of the ~ class."""
        return (self.J, self.levi.canonical_gamma(self.gamma))

    def label(self) -> str:
        rd = self.W.rd
        js = "{" + ",".join(f"s{j + 1}" for j in sorted(self.J)) + "}"
        return f"J={js};Gamma={self.levi.name_set(self.gamma)}"

    def characters(self, free_values: Sequence = TEST_VALUES) -> list["Character"]:
        """Characters with +-1 on torsion generators and free_values on free ones."""
        choices = []
        for d in self.char_group.orders:
            if d == 0:
                choices.append([Fraction(v) for v in free_values])
            else:
                choices.append([Fraction(1)] + ([Fraction(-1)] if d % 2 == 0 else []))
        return [Character(self, tuple(vals)) for vals in itertools.product(*choices)]


@dataclass(frozen=True)
class Character:
    """chi on Omega_J(Gamma), by its values on the Smith generators."""

    pd: ParahoricDatum
    values: tuple

    def __post_init__(self):
        orders = self.pd.char_group.orders
        if len(self.values) != len(orders):
            raise ValueError(f"chi needs {len(orders)} values, got {len(self.values)}")
        for v, d in zip(self.values, orders):
            if v == 0:
                raise ValueError("character values must be nonzero")
            if d and Fraction(v) ** d != 1:
                raise ValueError(f"value {v} on a generator of order {d} is not a root of unity in Q")

    def __call__(self, lam: Sequence[int]) -> Fraction:
        c = self.pd.char_group.coords(lam)
        out = Fraction(1)
        for v, k in zip(self.values, c):
            out *= Fraction(v) ** k
        return out

    def label(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"

    def __hash__(self):
        return hash((id(self.pd), self.values))

    def __eq__(self, other):
        return isinstance(other, Character) and other.pd is self.pd and other.values == self.values


# -- modules ----------------------------------------------------------------------------


class FDModule:
    """A module given by exact matrices of T_s (s in S_aff) and T_tau (tau in Omega)."""

    name = "module"

    def __init__(self, W: AffineWeylGroup, dim: int):
        self.W = W
        self.dim = dim
        self._cache: dict[AffineElement, list] = {}

    # subclasses provide these two
    def node_matrix(self, i: int) -> list:
        raise NotImplementedError

    def omega_matrix(self, tau: AffineElement) -> list:
        raise NotImplementedError

    @cached_property
    def node_matrices(self) -> list[list]:
        return [self.node_matrix(i) for i in range(len(self.W.simple_reflections))]

    def action_matrix(self, e: AffineElement) -> list:
        """Matrix of T_e along the canonical reduced word."""
        if e not in self._cache:
            word, tau = self.W.reduced_word(e)
            m = linalg.identity(self.dim)
            for i in word:
                m = linalg.matmul(m, self.node_matrices[i])
            if tau != self.W.identity:
                m = linalg.matmul(m, self.omega_matrix(tau))
            self._cache[e] = m
        return self._cache[e]

    def matrix_of_word(self, word: Sequence[int], tau: AffineElement | None = None) -> list:
        m = linalg.identity(self.dim)
        for i in word:
            m = linalg.matmul(m, self.node_matrices[i])
        if tau is not None and tau != self.W.identity:
            m = linalg.matmul(m, self.omega_matrix(tau))
        return m

    def hecke_matrix(self, h: HeckeElement) -> list:
        """Matrix of a 0-Hecke algebra element."""
        if h.alg.mode != "zero":
            raise ValueError("modules are over the 0-Hecke algebra")
        out = linalg.zeros(self.dim, self.dim)
        for e, c in h.terms.items():
            m = self.action_matrix(e)
            for r in range(self.dim):
                for k in range(self.dim):
                    if m[r][k]:
                        out[r][k] += c * m[r][k]
        return out

    def trace(self, e: AffineElement) -> Fraction:
        return Fraction(linalg.trace(self.action_matrix(e)))

    def check_relations(self) -> None:
        """Quadratic, braid and Omega-compatibility relations; raise RelationError."""
        W = self.W
        n = len(W.simple_reflections)
        G = self.node_matrices
        neg = lambda m: [[-x for x in row] for row in m]
        for i in range(n):
            if linalg.matmul(G[i], G[i]) != neg(G[i]):
                raise RelationError(f"T_{W.node_names[i]}^2 != -T_{W.node_names[i]}")
        for i, j in itertools.combinations(range(n), 2):
            m = _braid_order(W, i, j)
            if m is None:
                continue
            a = self.matrix_of_word([(i, j)[k % 2] for k in range(m)])
            b = self.matrix_of_word([(j, i)[k % 2] for k in range(m)])
            if a != b:
                raise RelationError(f"braid relation fails for {W.node_names[i]}, {W.node_names[j]}")
        om = W.omega_elements()
        ident = linalg.identity(self.dim)
        for t in om:
            ot = self.omega_matrix(t)
            for u in om:
                if linalg.matmul(ot, self.omega_matrix(u)) != self.omega_matrix(W.mul(t, u)) and not (
                    W.mul(t, u) == W.identity and linalg.matmul(ot, self.omega_matrix(u)) == ident
                ):
                    raise RelationError("Omega matrices are not a representation")
            oti = self.omega_matrix(W.inv(t))
            for i in range(n):
                j = W.full.index[W.conj(t, W.simple_reflections[i])]
                if linalg.matmul(linalg.matmul(ot, G[i]), oti) != G[j]:
                    raise RelationError("Omega conjugation does not permute the T_s matrices")


def _braid_order(W: AffineWeylGroup, i: int, j: int, cap: int = 12) -> int | None:
    s, t = W.simple_reflections[i], W.simple_reflections[j]
    st = W.mul(s, t)
    p = st
    for m in range(1, cap + 1):
        if p == W.identity:
            return m
        p = W.mul(p, st)
    return None


class InducingModule:
    """M = H_{J,0} (x)_{H_{J,0}(Gamma)} chi, one line per coset of Omega_J(Gamma)."""

    def __init__(self, pd: ParahoricDatum, chi: Character):
        self.pd = pd
        self.chi = chi
        self.dim = pd.index
        self.levi = pd.levi
        self._omega: dict[tuple, list] = {}
        inv_lifts = [pd.W.inv(t) for t in pd.coset_lifts]
        self.node_mats = []
        for i in range(len(self.levi.nodes)):
            m = linalg.zeros(self.dim, self.dim)
            for k, ti in enumerate(inv_lifts):
                # tau^-1 s tau is again a node of J_aff
                if self.levi.perm(ti)[i] in pd.gamma:
                    m[k][k] = Fraction(-1)
            self.node_mats.append(m)

    def omega_matrix(self, lam: Sequence[int]) -> list:
        """Matrix of the Omega_J element with translation class lam."""
        lam = tuple(lam)
        if lam not in self._omega:
            pd = self.pd
            m = linalg.zeros(self.dim, self.dim)
            for k, r in enumerate(pd.coset_vectors):
                v = tuple(a + b for a, b in zip(lam, r))
                k2 = pd.coset_of(v)
                omega = tuple(a - b for a, b in zip(v, pd.coset_vectors[k2]))
                m[k2][k] = self.chi(omega)
            self._omega[lam] = m
        return self._omega[lam]

    def action(self, u: AffineElement) -> list:
        """Matrix of T^J_u for u in X ⋊ W_J."""
        word, tau = self.levi.reduced_word(u)
        m = linalg.identity(self.dim)
        for i in word:
            m = linalg.matmul(m, self.node_mats[i])
        return linalg.matmul(m, self.omega_matrix(tau.translation))


class InducedModule(FDModule):
    """pi(J, Gamma, chi) with basis T_d (x) m, d in W0^J."""

    def __init__(self, pd: ParahoricDatum, chi: Character, check: bool = True):
        W = pd.W
        self.pd = pd
        self.chi = chi
        self.M = InducingModule(pd, chi)
        self.cosets = sorted(W.W0.min_coset_reps(pd.J))
        self._pos = {d: k for k, d in enumerate(self.cosets)}
        super().__init__(W, len(self.cosets) * self.M.dim)
        self.deep = W.rd.deep_vector(pd.J)
        self._omega_cache: dict[AffineElement, list] = {}
        if check:
            self.check_relations()

    @property
    def name(self) -> str:
        return f"pi[{self.pd.label()};chi={self.chi.label()}]"

    def _land(self, x: AffineElement) -> tuple[int, AffineElement, tuple, int]:
        """T_x T_{t^lam} = eps T_{d u} with additive lengths and u J-positive.

        Returns (d, u, lam, eps).
        """
        W = self.W
        levi = self.pd.levi
        zero = hecke_pair(W).zero
        B = 1 + max((abs(W.pairing(x.translation, k)) for k in range(len(W.rd.positive))), default=0)
        scale = B
        while scale <= SHIFT_CAP * B:
            lam = tuple(scale * c for c in self.deep)
            z, eps = zero.times_T(zero.T(x), W.translation(lam)).single()
            d, u = W.coset_decompose(z, self.pd.J)
            if W.length(z) == W.W0.length[d] + W.length(u) and levi.is_positive(u):
                return d, u, lam, eps
            scale *= 2
        raise AssertionError(f"deep shift failed for {W.name(x)}")

    def _apply(self, g: AffineElement, is_node: bool) -> list:
        W = self.W
        dm = self.M.dim
        out = linalg.zeros(self.dim, self.dim)
        for di, d in enumerate(self.cosets):
            de = W.finite(d)
            x = W.mul(g, de)
            eps = 1
            if is_node and W.length(x) < W.length(de):
                x, eps = de, -1
            d2, u, lam, eps2 = self._land(x)
            eps *= eps2
            block = linalg.matmul(self.M.action(u), self.M.omega_matrix(tuple(-c for c in lam)))
            r0 = self._pos[d2] * dm
            for k in range(dm):
                for k2 in range(dm):
                    if block[k2][k]:
                        out[r0 + k2][di * dm + k] += eps * block[k2][k]
        return out

    def node_matrix(self, i: int) -> list:
        return self._apply(self.W.simple_reflections[i], True)

    def omega_matrix(self, tau: AffineElement) -> list:
        if tau not in self._omega_cache:
            self._omega_cache[tau] = self._apply(tau, False)
        return self._omega_cache[tau]


class IotaPullback(FDModule):
    """The pullback of a module through the involution: T_s -> -T_s - 1."""

    def __init__(self, base: FDModule):
        super().__init__(base.W, base.dim)
        self.base = base

    @property
    def name(self) -> str:
        return f"iota*{self.base.name}"

    def node_matrix(self, i: int) -> list:
        m = self.base.node_matrices[i]
        return [[-m[r][c] - int(r == c) for c in range(self.dim)] for r in range(self.dim)]

    def omega_matrix(self, tau: AffineElement) -> list:
        return self.base.omega_matrix(tau)


def build_module(W: AffineWeylGroup, J: Iterable[int], gamma: Iterable[int], chi_values=None) -> InducedModule:
    pd = ParahoricDatum(W, J, gamma)
    if chi_values is None:
        chi_values = tuple(Fraction(1) for _ in pd.char_group.orders)
    return InducedModule(pd, Character(pd, tuple(Fraction(v) for v in chi_values)))


# -- the closed character formula -------------------------------------------------------


def char_formula(cls: CyclicShiftClass, pair: StandardPair, pd: ParahoricDatum, chi: Character):
    """Closed-form trace of T_w (w in cls) on pi(J, Gamma, chi), or NOT_COVERED."""
    J, Jx = pd.J, pair.J
    if not J <= Jx:
        return Fraction(0)
    if J != Jx:
        return NOT_COVERED
    if not pd.stabilizes(pair.x.translation):
        return Fraction(0)
    W = pd.W
    levi = pd.levi
    count = 0
    for tau in pd.coset_lifts:
        if levi.conj_set(W.inv(tau), pair.gamma) <= pd.gamma:
            count += 1
    sign = -1 if (cls.length - W.length(pair.x)) % 2 else 1
    return sign * chi(pair.x.translation) * count


# -- the functors M -> M_J -> M_{J, Gamma} -----------------------------------------------


@dataclass
class LeviModule:
    """M_J: an invariant subspace of M with the X ⋊ W_J action."""

    module: FDModule
    J: frozenset[int]
    basis: list  # columns spanning M_J
    shift: tuple  # lam in X^+(J) used to make elements J-positive

    @property
    def dim(self) -> int:
        return len(self.basis[0]) if self.basis and self.basis[0] else 0

    def _restrict(self, e: AffineElement) -> list:
        return linalg.restrict(self.module.action_matrix(e), self.basis)

    def action(self, u: AffineElement) -> list:
        """T^J_u = T_{u t^lam} T_{t^lam}^{-1} on M_J."""
        if self.dim == 0:
            return []
        W = self.module.W
        levi = W.levi(self.J)
        scale = 1
        while True:
            lam = tuple(scale * c for c in self.shift)
            ut = W.mul(u, W.translation(lam))
            if levi.is_positive(ut):
                break
            scale *= 2
        t = self._restrict(W.translation(lam))
        return linalg.matmul(self._restrict(ut), linalg.inverse(t))


def _stable_image(m: list, dim: int) -> list:
    p = m
    k = 1
    while k < dim:
        p = linalg.matmul(p, p)
        k *= 2
    return linalg.column_basis(p) if dim else []


def m_j(module: FDModule, J: Iterable[int], check: bool = True) -> LeviModule:
    W = module.W
    J = frozenset(J)
    mu = W.rd.deep_vector(J)
    basis = _stable_image(module.action_matrix(W.translation(mu)), module.dim)
    if check:
        mu2 = tuple(2 * c + d for c, d in zip(mu, W.rd.deep_vector(J, 3)))
        other = _stable_image(module.action_matrix(W.translation(mu2)), module.dim)
        if linalg.rank(basis) != linalg.rank(other) or (
            basis and basis[0] and linalg.rank([r1 + r2 for r1, r2 in zip(basis, other)]) != linalg.rank(basis)
        ):
            raise AssertionError("stable image depends on the chosen mu")
    if not basis or not basis[0]:
        basis = [[] for _ in range(module.dim)]
    return LeviModule(module, J, basis, mu)


@dataclass
class ParahoricPiece:
    """M_{J,Gamma} = T^J_{w_Gamma} M_J with its Omega_J(Gamma) action."""

    levi_module: LeviModule
    gamma: frozenset[int]
    basis: list  # coordinates inside M_J

    @property
    def dim(self) -> int:
        return len(self.basis[0]) if self.basis and self.basis[0] else 0

    def action(self, x: AffineElement) -> list:
        if self.dim == 0:
            return []
        return linalg.restrict(self.levi_module.action(x), self.basis)

    def trace(self, x: AffineElement) -> Fraction:
        return Fraction(linalg.trace(self.action(x))) if self.dim else Fraction(0)


def m_j_gamma(module: FDModule, J: Iterable[int], gamma: Iterable[int]) -> ParahoricPiece:
    lm = m_j(module, J)
    gamma = frozenset(gamma)
    if lm.dim == 0:
        return ParahoricPiece(lm, gamma, [])
    levi = module.W.levi(lm.J)
    wg = levi.longest(gamma) if gamma else module.W.identity
    img = linalg.column_basis(lm.action(wg))
    if not img or not img[0]:
        img = []
    return ParahoricPiece(lm, gamma, img)


# -- bookkeeping on aleph ----------------------------------------------------------------


def aleph(W: AffineWeylGroup) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Canonical representatives of aleph / ~, ordered by (|J|, J, |Gamma|, Gamma)."""
    r = W.rd.semisimple_rank
    out = []
    for k in range(r + 1):
        for J in itertools.combinations(range(r), k):
            levi = W.levi(J)
            seen = set()
            for m in range(len(levi.nodes) + 1):
                for G in itertools.combinations(range(len(levi.nodes)), m):
                    if not levi.finite_type(G):
                        continue
                    c = levi.canonical_gamma(G)
                    if c not in seen:
                        seen.add(c)
                        out.append((frozenset(J), c))
    return out


def aleph_less(W: AffineWeylGroup, a, b) -> bool:
    """(J, Gamma) < (J', Gamma')."""
    J, G = a
    J2, G2 = b
    if J < J2:
        return True
    if J != J2:
        return False
    return any(G > H for H in W.levi(J).gamma_orbit(G2))


def pair_key(W: AffineWeylGroup, pair: StandardPair):
    return (pair.J, W.levi(pair.J).canonical_gamma(pair.gamma))


# -- catalog and character tables --------------------------------------------------------


@dataclass
class CatalogEntry:
    pd: ParahoricDatum
    chi: Character

    @property
    def key(self):
        return self.pd.key()

    @property
    def label(self) -> str:
        return f"pi[{self.pd.label()};chi={self.chi.label()}]"

    @cached_property
    def module(self) -> InducedModule:
        return InducedModule(self.pd, self.chi)


def catalog(W: AffineWeylGroup, free_values: Sequence = TEST_VALUES, only_J=None) -> list[CatalogEntry]:
    """pi(J, Gamma, chi) for (J, Gamma) in aleph / ~ and chi from the test values."""
    out = []
    for J, G in aleph(W):
        if only_J is not None and J != frozenset(only_J):
            continue
        pd = ParahoricDatum(W, J, G)
        for chi in pd.characters(free_values):
            out.append(CatalogEntry(pd, chi))
    return out


def character_vector(module: FDModule, classes: Sequence[CyclicShiftClass]) -> dict:
    return {c.representative: module.trace(c.representative) for c in classes}


# -- virtual modules and decomposition ----------------------------------------------------


@dataclass
class VirtualModule:
    """Integer combination of modules (or a bare character vector)."""

    terms: list = field(default_factory=list)  # (coefficient, FDModule)
    vector: dict | None = None

    def character(self, classes: Sequence[CyclicShiftClass]) -> dict:
        if self.vector is not None:
            return {c.representative: Fraction(self.vector.get(c.representative, 0)) for c in classes}
        out = {c.representative: Fraction(0) for c in classes}
        for a, m in self.terms:
            for c in classes:
                out[c.representative] += a * m.trace(c.representative)
        return out

    @property
    def is_actual(self) -> bool:
        return self.vector is None and all(a >= 0 for a, _ in self.terms)


@dataclass
class Decomposition:
    ok: bool
    coefficients: dict  # label -> int
    residual: dict
    reason: str = ""
    offending: str | None = None


def decompose(
    target: dict,
    classes: Sequence[CyclicShiftClass],
    candidates: Sequence[CatalogEntry],
    vectors: dict | None = None,
) -> Decomposition:
    """Peel the target character off minimal elements of aleph(target)."""
    if not classes:
        return Decomposition(True, {}, {})
    W = candidates[0].pd.W if candidates else None
    residual = {c.representative: Fraction(target.get(c.representative, 0)) for c in classes}
    vectors = vectors if vectors is not None else {}
    for cand in candidates:
        if cand.label not in vectors:
            vectors[cand.label] = character_vector(cand.module, classes)
    if W is None:
        bad = next((c for c in classes if residual[c.representative]), None)
        return Decomposition(bad is None, {}, residual, "no candidates", bad and bad.label)
    conj = conjugacy(W)
    keys = {c.representative: pair_key(W, conj.standard_pair(c)) for c in classes}
    coeffs: dict = {}
    for _ in range(len(aleph(W)) + 1):
        support = [c for c in classes if residual[c.representative]]
        if not support:
            return Decomposition(True, {k: v for k, v in coeffs.items() if v}, residual)
        present = {keys[c.representative] for c in support}
        minimal = [a for a in present if not any(aleph_less(W, b, a) for b in present if b != a)]
        for key in sorted(minimal, key=lambda k: (len(k[0]), sorted(k[0]), len(k[1]), sorted(k[1]))):
            cands = [c for c in candidates if c.key == key]
            rows = [c for c in classes if keys[c.representative] == key]
            if not cands:
                return Decomposition(False, coeffs, residual, f"no candidate module for {key}", rows[0].label)
            a = [[vectors[c.label][r.representative] for c in cands] for r in rows]
            b = [residual[r.representative] for r in rows]
            if linalg.rank(a) < len(cands):
                return Decomposition(
                    False, coeffs, residual, f"underdetermined: rank {linalg.rank(a)} < {len(cands)} unknowns", rows[0].label
                )
            sol = linalg.solve(a, b)
            if sol is None:
                return Decomposition(False, coeffs, residual, "inconsistent equations", rows[0].label)
            if any(x.denominator != 1 for x in sol):
                return Decomposition(False, coeffs, residual, "non-integral multiplicity", rows[0].label)
            for cand, x in zip(cands, sol):
                if x:
                    coeffs[cand.label] = coeffs.get(cand.label, 0) + int(x)
                    vec = vectors[cand.label]
                    for r in residual:
                        residual[r] -= x * vec[r]
    bad = next((c for c in classes if residual[c.representative]), None)
    return Decomposition(bad is None, coeffs, residual, "" if bad is None else "residual did not vanish", bad and bad.label)


# -- rigidity and supersingularity --------------------------------------------------------


def is_rigid(v: VirtualModule, W: AffineWeylGroup, L: int) -> bool:
    classes = conjugacy(W).enumerate_min_classes(L)
    vec = v.character([c for c in classes if not c.rigid])
    return not any(vec.values())


def supersingular_threshold(pd: ParahoricDatum) -> int | None:
    """2 max(#W_Gamma, #W_{S_aff - Gamma}) when J = F0 and both are finite type."""
    W = pd.W
    if pd.J != W.full.J:
        return None
    comp = frozenset(range(len(W.simple_reflections))) - pd.gamma
    if not (W.full.finite_type(pd.gamma) and W.full.finite_type(comp)):
        return None
    size = lambda G: len(W.full.parabolic_elements(G)) if G else 1
    return 2 * max(size(pd.gamma), size(comp))


def is_supersingular_candidate(pd: ParahoricDatum) -> bool:
    return supersingular_threshold(pd) is not None


@dataclass
class SupersingularReport:
    e_basis: bool | None  # criterion (1); None when not evaluated / vacuous
    nss_trace: bool  # criterion (2)
    decomposition: bool | None  # criterion (3)
    threshold: int | None
    checked_elements: int = 0
    detail: str = ""

    @property
    def evaluated(self) -> list[bool]:
        return [x for x in (self.e_basis, self.nss_trace, self.decomposition) if x is not None]

    @property
    def agree(self) -> bool:
        return len(set(self.evaluated)) <= 1

    @property
    def supersingular(self) -> bool:
        if not self.agree:
            raise AssertionError(f"supersingularity criteria disagree: {self}")
        return self.nss_trace


def e_basis_kills(module: FDModule, lo: int, L: int) -> tuple[bool | None, int]:
    """Does E_w act by zero for every lo < l(w) <= L? None if no such w exists."""
    W = module.W
    hp = hecke_pair(W)
    elts = [e for e in W.elements_up_to(L) if W.length(e) > lo]
    if not elts:
        return None, 0
    for e in elts:
        m = module.hecke_matrix(hp.e_zero(e))
        if any(x for row in m for x in row):
            return False, len(elts)
    return True, len(elts)


def is_supersingular(
    v: VirtualModule,
    W: AffineWeylGroup,
    L: int,
    threshold: int | None = None,
    evaluate_e_basis: bool = True,
    evaluate_decomposition: bool = True,
) -> SupersingularReport:
    coc = cocenter(W)
    classes = conjugacy(W).enumerate_min_classes(L)
    vec = v.character(classes)
    nss = coc.nss_basis_up_to(L)
    crit2 = all(sum(c * vec.get(k, 0) for k, c in w.items()) == 0 for _, _, w in nss)
    crit1 = None
    count = 0
    if threshold is None:
        ts = [supersingular_threshold(m.pd) for _, m in v.terms if isinstance(m, InducedModule)]
        threshold = max((t for t in ts if t is not None), default=0)
    if evaluate_e_basis and v.terms and v.is_actual:
        results = []
        for a, m in v.terms:
            if a:
                r, count = e_basis_kills(m, threshold, L)
                results.append(r)
        if results and all(r is not None for r in results):
            crit1 = all(results)
    crit3 = None
    if evaluate_decomposition:
        cands = [e for e in catalog(W, free_values=(1,), only_J=W.full.J) if is_supersingular_candidate(e.pd)]
        crit3 = decompose(vec, classes, cands).ok
    return SupersingularReport(crit1, crit2, crit3, threshold, count)

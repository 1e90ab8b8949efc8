"""Iwahori-Hecke algebras of extended affine Weyl groups.

Two coefficient modes share one implementation:

* ``"generic"``: coefficients are :class:`LaurentPoly` in ``v`` with ``q = v^2``
  and ``(T_s + 1)(T_s - q) = 0``;
* ``"zero"``: integer coefficients and ``T_s^2 = -T_s`` (the 0-Hecke algebra).

An algebra may be attached to a Levi datum J, in which case it is the
algebra of ``X ⋊ W_J`` with basis ``T^J`` and length ``l_J``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .affine import AffineElement, AffineWeylGroup, Levi
from .laurent import LaurentPoly

MODES = ("generic", "zero")


class HeckeElement:
    """Sparse combination of T-basis elements."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "HeckeAlgebra", terms: Mapping[AffineElement, object] | None = None):
        self.alg = alg
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    def _check(self, other: "HeckeElement"):
        if not isinstance(other, HeckeElement):
            raise TypeError("expected a HeckeElement")
        if other.alg is not self.alg:
            raise ValueError("elements live in different algebras (mode or datum mismatch)")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return HeckeElement(self.alg, out)

    def __neg__(self):
        return HeckeElement(self.alg, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.alg.mul(self, other)
        return HeckeElement(self.alg, {e: c * other for e, c in self.terms.items()})

    def __rmul__(self, scalar):
        return HeckeElement(self.alg, {e: scalar * c for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):  # pragma: no cover - elements are mutable-free but unhashable by design
        raise TypeError("HeckeElement is unhashable")

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, e: AffineElement):
        return self.terms.get(e, 0)

    def single(self) -> tuple[AffineElement, object] | None:
        """(element, coefficient) if this is a single term, else None."""
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def to_json(self) -> list[dict]:
        W = self.alg.W
        return [
            {"element": W.name(e), "word": W.word_name(e), "coefficient": str(c)}
            for e, c in sorted(self.terms.items(), key=lambda t: W.key(t[0]))
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        W = self.alg.W
        return " + ".join(f"({c})*T[{W.word_name(e)}]" for e, c in sorted(self.terms.items(), key=lambda t: W.key(t[0])))


class HeckeAlgebra:
    def __init__(self, W: AffineWeylGroup, mode: str = "zero", levi: Levi | None = None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.W = W
        self.mode = mode
        self.levi = levi or W.full
        self._one = 1 if mode == "zero" else LaurentPoly(1)

    @property
    def J(self) -> frozenset[int]:
        return self.levi.J

    def T(self, e: AffineElement, coeff=None) -> HeckeElement:
        return HeckeElement(self, {e: self._one if coeff is None else coeff})

    def one(self) -> HeckeElement:
        return self.T(self.W.identity)

    def zero(self) -> HeckeElement:
        return HeckeElement(self)

    def from_terms(self, terms: Mapping[AffineElement, object]) -> HeckeElement:
        return HeckeElement(self, terms)

    # -- products -------------------------------------------------------------

    def _times_node(self, terms: dict, i: int) -> dict:
        """Right multiplication by T_s for the i-th node."""
        s = self.levi.nodes[i]
        length = self.levi.length
        out: dict = {}
        generic = self.mode == "generic"
        q = LaurentPoly.q()
        for w, c in terms.items():
            ws = self.W.mul(w, s)
            if length(ws) > length(w):
                out[ws] = out.get(ws, 0) + c
            elif generic:
                out[w] = out.get(w, 0) + c * (q - 1)
                out[ws] = out.get(ws, 0) + c * q
            else:
                out[w] = out.get(w, 0) - c
        return {k: v for k, v in out.items() if v}

    def _times_omega(self, terms: dict, tau: AffineElement) -> dict:
        return {self.W.mul(w, tau): c for w, c in terms.items()}

    @lru_cache(maxsize=None)
    def _word(self, e: AffineElement):
        return self.levi.reduced_word(e)

    def times_T(self, a: HeckeElement, e: AffineElement) -> HeckeElement:
        word, tau = self._word(e)
        terms = dict(a.terms)
        for i in word:
            terms = self._times_node(terms, i)
        return HeckeElement(self, self._times_omega(terms, tau))

    def mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        a._check(b)
        out: dict = {}
        for e, c in b.terms.items():
            for k, v in self.times_T(a, e).terms.items():
                out[k] = out.get(k, 0) + v * c
        return HeckeElement(self, out)

    def power(self, e: AffineElement, n: int) -> HeckeElement:
        """T_e^n."""
        out = self.one()
        for _ in range(n):
            out = self.times_T(out, e)
        return out

    def node(self, i: int) -> HeckeElement:
        return self.T(self.levi.nodes[i])

    # -- inverses, involution ---------------------------------------------------

    def _times_node_inverse(self, terms: dict, i: int) -> dict:
        """Right multiplication by T_s^{-1} = q^{-1} T_s + (q^{-1} - 1) (generic)."""
        qi = LaurentPoly.q(-1)
        ts = self._times_node(terms, i)
        out = {w: c * qi for w, c in ts.items()}
        for w, c in terms.items():
            out[w] = out.get(w, 0) + c * (qi - 1)
        return {k: v for k, v in out.items() if v}

    def times_T_inverse(self, a: HeckeElement, e: AffineElement) -> HeckeElement:
        """a * T_e^{-1} (generic mode)."""
        self._need_generic()
        word, tau = self._word(e)
        terms = self._times_omega(dict(a.terms), self.W.inv(tau))
        for i in reversed(word):
            terms = self._times_node_inverse(terms, i)
        return HeckeElement(self, terms)

    def t_inverse(self, e: AffineElement) -> HeckeElement:
        return self.times_T_inverse(self.one(), e)

    def _need_generic(self):
        if self.mode != "generic":
            raise ValueError("operation needs the generic algebra")

    def specialize(self, a: HeckeElement, target: "HeckeAlgebra") -> HeckeElement:
        """Set q = 0 (generic -> zero mode)."""
        if self.mode != "generic" or target.mode != "zero":
            raise ValueError("specialize maps generic to zero mode")
        return HeckeElement(target, {e: c.at_q_zero() for e, c in a.terms.items()})

    def lift_to_generic(self, a: HeckeElement, target: "HeckeAlgebra") -> HeckeElement:
        return HeckeElement(target, {e: LaurentPoly(int(c)) for e, c in a.terms.items()})


class HeckePair:
    """The generic algebra together with its q = 0 specialization."""

    def __init__(self, W: AffineWeylGroup, levi: Levi | None = None):
        self.W = W
        self.generic = HeckeAlgebra(W, "generic", levi)
        self.zero = HeckeAlgebra(W, "zero", levi)
        self._iota: dict[AffineElement, HeckeElement] = {}
        self._e: dict[AffineElement, HeckeElement] = {}

    def algebra(self, mode: str) -> HeckeAlgebra:
        return self.generic if mode == "generic" else self.zero

    # -- the involution ------------------------------------------------------------

    def iota_T(self, e: AffineElement) -> HeckeElement:
        """iota(T_e) = (-q)^{l(e)} T_{e^{-1}}^{-1} in the generic algebra."""
        if e not in self._iota:
            g = self.generic
            ell = g.levi.length(e)
            inv = g.t_inverse(g.W.inv(e))
            sign = -1 if ell % 2 else 1
            self._iota[e] = inv * LaurentPoly.monomial(2 * ell, sign)
        return self._iota[e]

    def iota(self, a: HeckeElement) -> HeckeElement:
        """Apply the involution termwise; the result lives in a's algebra."""
        if a.alg is self.generic:
            out = self.generic.zero()
            for e, c in a.terms.items():
                out = out + self.iota_T(e) * c
            return out
        if a.alg is self.zero:
            out: dict = {}
            for e, c in a.terms.items():
                for k, v in self.generic.specialize(self.iota_T(e), self.zero).terms.items():
                    out[k] = out.get(k, 0) + v * c
            return HeckeElement(self.zero, out)
        raise ValueError("element does not belong to this pair")

    def iota_zero_direct(self, e: AffineElement) -> HeckeElement:
        """q = 0 closed form: iota(T_e) = prod (-1 - T_s) * T_tau along a reduced word."""
        z = self.zero
        word, tau = z.levi.reduced_word(e)
        out = z.one()
        for i in word:
            out = z.mul(out, -z.one() - z.node(i))
        return z.times_T(out, tau)

    # -- E basis ----------------------------------------------------------------

    def e_basis_choices(self, e: AffineElement, count: int = 3) -> list[tuple[tuple, tuple]]:
        """(mu1, mu2) dominant with mu1 - mu2 = lambda where e = w t^lambda."""
        W = self.W
        rd = W.rd
        lam = W.W0.act(W.W0.inv[e.finite], e.translation)
        d = rd.deep_vector(())
        k = 0
        while not rd.is_dominant(tuple(x + k * y for x, y in zip(lam, d))):
            k += 1
        out = []
        for j in range(k, k + count):
            mu2 = tuple(j * y for y in d)
            mu1 = tuple(x + m for x, m in zip(lam, mu2))
            out.append((mu1, mu2))
        return out

    def e_basis(self, e: AffineElement, mu1=None, mu2=None) -> tuple[HeckeElement, HeckeElement]:
        """E_e in the generic algebra and its q = 0 specialization.

        E = q^{(l(mu2) - l(mu1) - l(w) + l(e))/2} T_{w t^mu1} T_{t^mu2}^{-1}
        for e = w t^lambda, lambda = mu1 - mu2 with mu1, mu2 dominant.
        """
        W = self.W
        if mu1 is None:
            mu1, mu2 = self.e_basis_choices(e, 1)[0]
        wfin = W.finite(e.finite)
        lam = W.W0.act(W.W0.inv[e.finite], e.translation)
        if tuple(a - b for a, b in zip(mu1, mu2)) != tuple(lam):
            raise ValueError("mu1 - mu2 must equal the translation part")
        g = self.generic
        t1 = W.translation(mu1)
        t2 = W.translation(mu2)
        exp = W.length(t2) - W.length(t1) - W.length(wfin) + W.length(e)
        left = g.T(W.mul(wfin, t1), LaurentPoly.monomial(exp))
        gen = g.times_T_inverse(left, t2)
        for c in gen.terms.values():
            if not c.is_q_polynomial():
                raise ArithmeticError(f"E-basis element has non-integral q-power coefficient {c}")
        return gen, g.specialize(gen, self.zero)


    def e_zero(self, e: AffineElement) -> HeckeElement:
        """Cached q = 0 specialization of E_e for the default choice."""
        if e not in self._e:
            self._e[e] = self.e_basis(e)[1]
        return self._e[e]

    def support_bound(self, e: AffineElement, gamma: Iterable[int]) -> bool:
        """E_e at q = 0 is spanned by T_z, or by iota(T_z), with supp(z) not inside Gamma."""
        gamma = frozenset(gamma)
        levi = self.zero.levi
        ez = self.e_zero(e)
        outside = lambda h: all(not levi.support(z) <= gamma for z in h.terms)
        return outside(ez) or outside(self.iota(ez))


_PAIRS: dict[tuple[int, frozenset], HeckePair] = {}


def hecke_pair(W: AffineWeylGroup, J: Iterable[int] | None = None) -> HeckePair:
    levi = W.levi(J) if J is not None else W.full
    key = (id(W), levi.J)
    if key not in _PAIRS:
        _PAIRS[key] = HeckePair(W, levi)
    return _PAIRS[key]


def parabolic_embed(a: HeckeElement, target: HeckeAlgebra) -> HeckeElement:
    """T^J_u -> T_u for J-positive u; anything else is an error."""
    levi = a.alg.levi
    if target.mode != a.alg.mode:
        raise ValueError("mode mismatch")
    for e in a.terms:
        if not levi.is_positive(e):
            raise ValueError(f"{target.W.name(e)} is not J-positive; the embedding does not extend")
    return HeckeElement(target, dict(a.terms))

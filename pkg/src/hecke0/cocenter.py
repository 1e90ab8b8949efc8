"""The cocenter of the 0-Hecke algebra in the basis of minimal-length classes.

A cocenter vector is a dict ``class representative -> int``.  The projection
sends ``T_w`` to ``(-1)^(l(w) - l(Sigma_w)) [Sigma_w]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .affine import AffineElement, AffineWeylGroup
from .conjugacy import Conjugacy, CyclicShiftClass, conjugacy
from .hecke import HeckeElement, HeckePair, hecke_pair

CocenterVector = dict  # AffineElement (class representative) -> int


def add_into(out: dict, vec: dict, scale=1) -> dict:
    for k, v in vec.items():
        out[k] = out.get(k, 0) + scale * v
        if not out[k]:
            del out[k]
    return out


@dataclass
class CommutatorReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class Cocenter:
    def __init__(self, W: AffineWeylGroup):
        self.W = W
        self.conj: Conjugacy = conjugacy(W)
        self.hecke: HeckePair = hecke_pair(W)

    def project_T(self, e: AffineElement) -> CocenterVector:
        cls, sign = self.conj.sigma_of(e)
        return {cls.representative: sign}

    def project(self, a: HeckeElement) -> CocenterVector:
        if a.alg.mode != "zero":
            raise ValueError("projection is defined on the 0-Hecke algebra")
        out: dict = {}
        for e, c in a.terms.items():
            add_into(out, self.project_T(e), c)
        return out

    def label(self, rep: AffineElement) -> str:
        return self.W.name(rep)

    def commutator_check(self, L: int) -> CommutatorReport:
        """psi([T_w, T_x]) = 0 for l(w) <= L and x in S_aff or a generator of Omega."""
        z = self.hecke.zero
        W = self.W
        xs = [("node", n, s) for n, s in zip(W.node_names, W.simple_reflections)]
        xs += [("omega", f"u{k + 1}", W.full.lift(g)) for k, g in enumerate(W.omega().gens)]
        rep = CommutatorReport()
        for w in W.elements_up_to(L):
            Tw = z.T(w)
            for kind, name, x in xs:
                Tx = z.T(x)
                val = self.project(z.mul(Tw, Tx) - z.mul(Tx, Tw))
                rep.checked += 1
                if val:
                    rep.violations.append((W.name(w), name, {self.label(k): v for k, v in val.items()}))
        return rep

    # -- rigid and non-supersingular parts -----------------------------------------

    @staticmethod
    def nss_indicator(cls: CyclicShiftClass) -> bool:
        """True when the class indexes a non-rigid basis vector."""
        return not cls.rigid

    def iota_projection(self, e: AffineElement) -> CocenterVector:
        """psi(iota(T_e)) in the 0-Hecke algebra."""
        return self.project(self.hecke.iota(self.hecke.zero.T(e)))

    def nss_basis_up_to(self, L: int) -> list[tuple[str, CyclicShiftClass, CocenterVector]]:
        """Spanning vectors psi(T_m), psi(iota T_m) over non-rigid classes of length <= L."""
        out = []
        for cls in self.conj.enumerate_min_classes(L):
            if not self.nss_indicator(cls):
                continue
            out.append(("T", cls, {cls.representative: 1}))
            out.append(("iotaT", cls, self.iota_projection(cls.representative)))
        return out


_COC: dict[int, Cocenter] = {}


def cocenter(W: AffineWeylGroup) -> Cocenter:
    if id(W) not in _COC:
        _COC[id(W)] = Cocenter(W)
    return _COC[id(W)]

"""Laurent polynomials in v with integer coefficients (q = v^2)."""

from __future__ import annotations

from typing import Mapping


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | int = 0):
        if isinstance(terms, int):
            terms = {0: terms} if terms else {}
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def q(cls, power: int = 1) -> "LaurentPoly":
        return cls({2 * power: 1})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.terms == _coerce(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def min_exp(self) -> int | None:
        return min(self.terms) if self.terms else None

    def at_q_zero(self) -> int:
        """Value at q = 0; requires no negative powers."""
        if self.terms and min(self.terms) < 0:
            raise ValueError(f"{self} has negative powers of v; cannot set q = 0")
        return self.terms.get(0, 0)

    def is_q_polynomial(self) -> bool:
        return all(e >= 0 and e % 2 == 0 for e in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            else:
                mono = "v" if e == 1 else f"v^{e}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent coefficient")

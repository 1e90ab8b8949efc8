"""Verification suites shared by ``hecke0 verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
property, so a report can list every failure at once.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import linalg
from .affine import AffineWeylGroup, affine_group
from .cocenter import cocenter
from .conjugacy import conjugacy
from .hecke import hecke_pair
from .laurent import LaurentPoly
from .rootdatum import load_datum
from .representations import (
    NOT_COVERED,
    TEST_VALUES,
    VirtualModule,
    catalog,
    char_formula,
    character_vector,
    decompose,
    e_basis_kills,
    is_rigid,
    is_supersingular,
    supersingular_threshold,
)

ACCEPTANCE_DATA = ("A1-sc", "A1-ad", "A2-sc", "A2-ad", "C2", "G2")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}  ({self.seconds:.1f}s)  {self.detail}"


def group(name: str) -> AffineWeylGroup:
    return affine_group(load_datum(name))


def _timed(name: str, fn: Callable[[], tuple[bool, str, list]]) -> CheckResult:
    t = time.perf_counter()
    ok, detail, failures = fn()
    return CheckResult(name, ok, detail, time.perf_counter() - t, failures)


# -- 1. lengths ----------------------------------------------------------------------------


def check_lengths(data: Sequence[str] = ACCEPTANCE_DATA, L: int = 8) -> CheckResult:
    def run():
        bad, count = [], 0
        for name in data:
            W = group(name)
            for e in W.elements_up_to(L):
                word, tau = W.reduced_word(e)
                rebuilt = W.mul(W.full.from_word(word), tau)
                count += 1
                if not (W.length(e) == W.length_hyperplanes(e) == len(word)) or rebuilt != e:
                    bad.append((name, W.name(e)))
        return not bad, f"{count} elements, {len(bad)} disagreements", bad

    return _timed(f"lengths: formula = hyperplanes = reduced word, l <= {L}", run)


# -- 2. Hecke relations ----------------------------------------------------------------------


def check_hecke(data: Sequence[str] = ACCEPTANCE_DATA, L: int = 5, triples: int = 10_000, seed: int = 0) -> CheckResult:
    def run():
        bad = []
        rng = random.Random(seed)
        pools = {}
        for name in data:
            W = group(name)
            hp = hecke_pair(W)
            n = len(W.simple_reflections)
            for mode in ("generic", "zero"):
                alg = hp.algebra(mode)
                for i in range(n):
                    Ts = alg.node(i)
                    if mode == "zero":
                        rhs = -Ts
                    else:
                        q = LaurentPoly.q()
                        rhs = Ts * (q - 1) + alg.one() * q
                    if alg.mul(Ts, Ts) != rhs:
                        bad.append((name, mode, "quadratic", W.node_names[i]))
                for i in range(n):
                    for j in range(i + 1, n):
                        s, t = W.simple_reflections[i], W.simple_reflections[j]
                        m = next((k for k in range(1, 13) if W.power(W.mul(s, t), k) == W.identity), None)
                        if m is None:
                            continue
                        a = alg.one()
                        b = alg.one()
                        for k in range(m):
                            a = alg.mul(a, alg.node((i, j)[k % 2]))
                            b = alg.mul(b, alg.node((j, i)[k % 2]))
                        if a != b:
                            bad.append((name, mode, "braid", W.node_names[i], W.node_names[j]))
            for e in catalog(W, free_values=(1,)):
                try:
                    e.module.check_relations()
                except AssertionError as exc:
                    bad.append((name, "matrices", e.label, str(exc)))
            pools[name] = (W, hp, W.elements_up_to(L))
        names = list(data)
        for k in range(triples):
            name = names[k % len(names)]
            W, hp, pool = pools[name]
            for alg in (hp.zero, hp.generic):
                a, b, c = (alg.T(rng.choice(pool)) for _ in range(3))
                if alg.mul(alg.mul(a, b), c) != alg.mul(a, alg.mul(b, c)):
                    bad.append((name, alg.mode, "associativity"))
        return not bad, f"{triples} random triples per mode, {len(bad)} failures", bad

    return _timed(f"Hecke relations and associativity, factors l <= {L}", run)


# -- 3. cocenter kernel --------------------------------------------------------------------------


def check_commutators(data: Sequence[str] = ("A1-sc", "A2-ad"), L: int = 6) -> CheckResult:
    def run():
        total, bad = 0, []
        for name in data:
            rep = cocenter(group(name)).commutator_check(L)
            total += rep.checked
            bad += [(name,) + v for v in rep.violations]
        return not bad, f"{total} commutators, {len(bad)} with nonzero projection", bad

    return _timed(f"cocenter kills commutators, l <= {L}", run)


# -- 4. path independence of the reduction ----------------------------------------------------------


def check_sigma(data: Sequence[str] = ("A2-ad",), L: int = 5) -> CheckResult:
    def run():
        bad, count = [], 0
        for name in data:
            W = group(name)
            conj = conjugacy(W)
            for e in W.elements_up_to(L):
                count += 1
                cls, sign = conj.sigma_of(e)
                outcomes = conj.sigma_outcomes(e)
                brute = conj.sigma_bruhat(e)
                if outcomes != {cls.representative} or brute != cls:
                    bad.append((name, W.name(e)))
                if sign != (-1) ** ((W.length(e) - cls.length) % 2):
                    bad.append((name, W.name(e), "sign"))
        return not bad, f"{count} elements, {len(bad)} path-dependent or oracle mismatches", bad

    return _timed(f"reduction to minimal length is path independent, l <= {L}", run)


# -- 5 and 6. windows ----------------------------------------------------------------------------------


def check_wk_windows(data: Sequence[str] = ACCEPTANCE_DATA, L: int = 5) -> CheckResult:
    def run():
        bad, count, worst = [], 0, 0
        for name in data:
            W = group(name)
            conj = conjugacy(W)
            z = hecke_pair(W).zero
            for cls in conj.enumerate_min_classes(L):
                rep = conj.check_wk(conj.standard_representative(cls), z)
                count += 1
                worst = max(worst, rep.smallest or 0)
                if not rep.passed:
                    bad.append((name, cls.label, rep.failures))
        return not bad, f"{count} classes, largest smallest-passing n = {worst}", bad

    return _timed(f"power identity for standard representatives, classes l <= {L}", run)


def check_ux_windows(data: Sequence[str] = ("A2-ad", "C2"), L: int = 5) -> CheckResult:
    def run():
        bad, count = [], 0
        for name in data:
            W = group(name)
            conj = conjugacy(W)
            for cls in conj.enumerate_min_classes(L):
                r = conj.standard_representative(cls)
                p = conj.standard_pair(cls)
                r1, r2 = conj.check_u_x(p)
                window = range(r1.threshold, r1.threshold + conj.n0 + 1)
                xg = conj.check_xg(r, p, window)
                count += 1
                if not (r1.passed and r2.passed) or xg:
                    bad.append((name, cls.label, r1.failures, r2.failures, xg))
        return not bad, f"{count} classes, {len(bad)} failures", bad

    return _timed(f"length identities and w_Gamma x^n ~ w_K y^n, classes l <= {L}", run)


# -- 7. character formula ------------------------------------------------------------------------------


def check_char_formula(data: Sequence[str] = ACCEPTANCE_DATA, L: int = 5) -> CheckResult:
    def run():
        bad, covered, uncovered = [], 0, 0
        for name in data:
            W = group(name)
            conj = conjugacy(W)
            classes = conj.enumerate_min_classes(L)
            for entry in catalog(W, TEST_VALUES):
                m = entry.module
                for cls in classes:
                    p = conj.standard_pair(cls)
                    f = char_formula(cls, p, entry.pd, entry.chi)
                    if f == NOT_COVERED:
                        uncovered += 1
                        continue
                    covered += 1
                    if f != m.trace(cls.representative):
                        bad.append((name, entry.label, cls.label, str(f), str(m.trace(cls.representative))))
        return not bad, f"{covered} covered comparisons ({uncovered} not covered), {len(bad)} mismatches", bad

    return _timed(f"closed character formula = matrix trace, classes l <= {L}", run)


# -- 8. independence and decomposition ------------------------------------------------------------------


def character_rank(name: str, L: int, free_values=TEST_VALUES) -> tuple[int, int, int]:
    """(rank, number of catalog modules, number of classes) of the character table."""
    W = group(name)
    classes = conjugacy(W).enumerate_min_classes(L)
    cat = catalog(W, free_values)
    rows = [[e.module.trace(c.representative) for c in classes] for e in cat]
    return linalg.rank(rows), len(cat), len(classes)


def decomposition_roundtrips(name: str, L: int, free_values=TEST_VALUES, trials: int = 5, seed: int = 0):
    """Failures among random integer combinations pushed through decompose()."""
    W = group(name)
    classes = conjugacy(W).enumerate_min_classes(L)
    cat = catalog(W, free_values)
    vecs = {e.label: character_vector(e.module, classes) for e in cat}
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        coef = {e.label: rng.randint(-3, 3) for e in cat}
        target = {c.representative: sum(coef[e.label] * vecs[e.label][c.representative] for e in cat) for c in classes}
        d = decompose(target, classes, cat, vecs)
        if not d.ok or d.coefficients != {k: v for k, v in coef.items() if v}:
            bad.append((name, d.reason, d.offending))
    return bad


def check_independence(data: Sequence[str] = ACCEPTANCE_DATA, L: int = 5, trials: int = 5) -> CheckResult:
    def run():
        bad, parts = [], []
        for name in data:
            r, rows, cols = character_rank(name, L)
            parts.append(f"{name} {r}/{rows}")
            if r < rows:
                bad.append((name, "rank", r, rows, cols))
            bad += decomposition_roundtrips(name, L, trials=trials)
        return not bad, "rank/rows: " + ", ".join(parts), bad

    return _timed(f"character table has full row rank and decompose round-trips, classes l <= {L}", run)


# -- 9. rigidity and supersingularity ------------------------------------------------------------------


def check_rigid_supersingular(data: Sequence[str] = ACCEPTANCE_DATA, L: int = 6, extra: int = 2) -> CheckResult:
    """F0 modules are rigid; the ones with finite complements are supersingular.

    ``extra`` additionally checks E-vanishing on lengths threshold < l <= threshold + extra,
    which is where criterion (1) becomes non-vacuous.
    """

    def run():
        bad, ss, vacuous = [], 0, 0
        for name in data:
            W = group(name)
            F0 = W.full.J
            for entry in catalog(W, TEST_VALUES):
                pd, m = entry.pd, entry.module
                v = VirtualModule([(1, m)])
                if pd.J == F0:
                    if not is_rigid(v, W, L):
                        bad.append((name, entry.label, "not rigid"))
                    thr = supersingular_threshold(pd)
                    if thr is None:
                        continue
                    rep = is_supersingular(v, W, L)
                    if not rep.agree or rep.evaluated != [True] * len(rep.evaluated):
                        bad.append((name, entry.label, "supersingular", rep))
                    if rep.e_basis is None:
                        vacuous += 1
                    if extra:
                        kills, _ = e_basis_kills(m, thr, thr + extra)
                        if kills is not True:
                            bad.append((name, entry.label, "E-basis above threshold", kills))
                    ss += 1
                elif not pd.J and not pd.gamma:
                    rep = is_supersingular(v, W, L)
                    if is_rigid(v, W, L) or not rep.agree or rep.supersingular:
                        bad.append((name, entry.label, "principal series passed", rep))
        return not bad, f"{ss} supersingular modules ({vacuous} with vacuous E-range at l <= {L}), {len(bad)} failures", bad

    return _timed(f"rigidity and supersingularity criteria agree, l <= {L}", run)


# -- 10. E basis -------------------------------------------------------------------------------------------


def check_e_basis(data: Sequence[str] = ("A1-sc", "A2-ad"), L: int = 6) -> CheckResult:
    def run():
        bad, count = [], 0
        for name in data:
            W = group(name)
            hp = hecke_pair(W)
            gammas = conjugacy(W).finite_type_subsets()
            for e in W.elements_up_to(L):
                try:
                    vals = [hp.e_basis(e, *c)[0] for c in hp.e_basis_choices(e, 3)]
                except ArithmeticError as exc:
                    bad.append((name, W.name(e), str(exc)))
                    continue
                if any(v != vals[0] for v in vals):
                    bad.append((name, W.name(e), "choice dependence"))
                for G in gammas:
                    size = len(W.full.parabolic_elements(G)) if G else 1
                    if W.length(e) > 2 * size:
                        count += 1
                        if not hp.support_bound(e, G):
                            bad.append((name, W.name(e), sorted(G)))
        return not bad, f"{count} support conditions, {len(bad)} failures", bad

    return _timed(f"E basis independent of choices, integral, support bound, l <= {L}", run)


ACCEPTANCE = [
    check_lengths,
    check_hecke,
    check_commutators,
    check_sigma,
    check_wk_windows,
    check_ux_windows,
    check_char_formula,
    check_independence,
    check_rigid_supersingular,
    check_e_basis,
]


def run_suite(data: Sequence[str] | None = None, L: int | None = None) -> list[CheckResult]:
    """All checks; ``data`` and ``L`` override every default when given."""
    out = []
    for fn in ACCEPTANCE:
        kwargs = {}
        if data is not None:
            kwargs["data"] = tuple(data)
        if L is not None:
            kwargs["L"] = L
        out.append(fn(**kwargs))
    return out

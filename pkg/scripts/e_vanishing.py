"""E-basis vanishing on supersingular modules above the length threshold.

For every module pi(F0, Gamma, chi) whose Gamma and complement are both of
finite type, reports the threshold 2 max(#W_Gamma, #W_complement), and whether
E_w acts by zero for threshold < l(w) <= threshold + extra, and whether some
E_w with l(w) <= threshold acts nontrivially.

Usage: python3 scripts/e_vanishing.py [--data A1-sc,A2-ad] [--extra 2]
"""

import argparse

from hecke0.checks import group
from hecke0.hecke import hecke_pair
from hecke0.representations import catalog, e_basis_kills, supersingular_threshold


def nonzero_below(module, thr: int) -> bool:
    W = module.W
    hp = hecke_pair(W)
    for e in W.elements_up_to(thr):
        m = module.hecke_matrix(hp.e_zero(e))
        if any(x for row in m for x in row):
            return True
    return False


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", default="A1-sc,A1-ad,A2-ad")
    ap.add_argument("--extra", type=int, default=2)
    args = ap.parse_args()
    print("datum\tmodule\tthreshold\telements_above\tkilled_above\tnonzero_at_or_below")
    for name in args.data.split(","):
        W = group(name)
        for entry in catalog(W, (1,), only_J=W.full.J):
            thr = supersingular_threshold(entry.pd)
            if thr is None:
                continue
            kills, count = e_basis_kills(entry.module, thr, thr + args.extra)
            below = nonzero_below(entry.module, thr)
            print(f"{name}\t{entry.label}\t{thr}\t{count}\t{kills}\t{below}", flush=True)


if __name__ == "__main__":
    main()

"""Rank of the character table of the module catalog as the length bound grows.

For each datum and each L, prints the rank, the number of catalog modules,
the number of classes of length <= L, how many aleph keys have no class yet,
and whether random integer combinations survive decompose().

Usage: python3 scripts/rank_vs_length.py [--data A1-sc,A2-ad] [--lengths 3,5,8] [--free trivial|test]
"""

import argparse

from hecke0.checks import character_rank, decomposition_roundtrips, group
from hecke0.conjugacy import conjugacy
from hecke0.representations import TEST_VALUES, aleph, pair_key


def missing_keys(name: str, L: int) -> int:
    W = group(name)
    conj = conjugacy(W)
    seen = {pair_key(W, conj.standard_pair(c)) for c in conj.enumerate_min_classes(L)}
    return sum(k not in seen for k in aleph(W))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", default="A1-sc,A1-ad,A2-sc,A2-ad,C2")
    ap.add_argument("--lengths", default="3,5,8")
    ap.add_argument("--free", choices=("trivial", "test"), default="trivial")
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()
    free = (1,) if args.free == "trivial" else TEST_VALUES
    print("datum\tL\trank\tmodules\tclasses\tkeys_without_class\troundtrip_failures")
    for name in args.data.split(","):
        for L in map(int, args.lengths.split(",")):
            r, rows, cols = character_rank(name, L, free)
            bad = decomposition_roundtrips(name, L, free, trials=args.trials)
            print(f"{name}\t{L}\t{r}\t{rows}\t{cols}\t{missing_keys(name, L)}\t{len(bad)}", flush=True)


if __name__ == "__main__":
    main()

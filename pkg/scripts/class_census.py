"""Census of minimal-length cyclic-shift classes by length.

Prints, per datum and length, the number of classes, how many are rigid,
how many are straight, and the number of group elements of that length.

Usage: python3 scripts/class_census.py [--data A2-ad,C2,G2] [--max-len 6]
"""

import argparse
from collections import Counter

from hecke0.checks import group
from hecke0.conjugacy import conjugacy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", default="A1-sc,A1-ad,A2-sc,A2-ad,C2,G2")
    ap.add_argument("--max-len", type=int, default=6)
    args = ap.parse_args()
    print("datum\tlength\telements\tclasses\trigid\tstraight")
    for name in args.data.split(","):
        W = group(name)
        elements = Counter(W.length(e) for e in W.elements_up_to(args.max_len))
        classes = conjugacy(W).enumerate_min_classes(args.max_len)
        for n in range(args.max_len + 1):
            here = [c for c in classes if c.length == n]
            rigid = sum(c.rigid for c in here)
            straight = sum(c.straight for c in here)
            print(f"{name}\t{n}\t{elements[n]}\t{len(here)}\t{rigid}\t{straight}", flush=True)


if __name__ == "__main__":
    main()

"""Classify odd conductors up to --nmax and print the counts per class, plus
phi(n) for every n that is not cyclic-G."""

import argparse
from collections import Counter

from quadtwist.exactmath import euler_phi
from quadtwist.twistcert import scan_minimality


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=99)
    args = ap.parse_args()
    verdicts = scan_minimality(args.nmax)
    for v in verdicts:
        if v.classification != "cyclic-G":
            print(f"{v.n:4d}  phi={euler_phi(v.n):4d}  {v.classification}")
    counts = Counter(v.classification for v in verdicts)
    print(", ".join(f"{k}: {c}" for k, c in sorted(counts.items())))


if __name__ == "__main__":
    main()

"""Survey alpha = +-2^k, m in {2, 4, 8} over Q and a few real quadratic fields:
report which combinations are local m-th powers at every checked place but
not global ones."""

import argparse

from quadtwist.localpowers import Field, gw_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=200)
    ap.add_argument("--fields", default="Q,qsqrt:2,qsqrt:7,qsqrt:14,qsqrt:17")
    args = ap.parse_args()
    for label in args.fields.split(","):
        field = Field.parse(label)
        for m in (2, 4, 8):
            for k in range(1, 2 * m + 1):
                for alpha in (2**k, -(2**k)):
                    r = gw_scan(alpha, m, field, args.bound)
                    if r.violation:
                        print(f"{field.label:10s} m={m} alpha={alpha}: local everywhere, not global")


if __name__ == "__main__":
    main()

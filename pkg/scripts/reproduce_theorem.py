"""Certify the twist class for every prime p = 13 (mod 24) up to --pmax and
write one JSON certificate per prime into --out."""

import argparse
import pathlib
import time

from quadtwist.twistcert import ScanConfig, scan_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=200)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results/certificates"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    certs = scan_theorem(args.pmax, ScanConfig(p_cap=max(args.pmax, ScanConfig().p_cap)))
    for cert in certs:
        (args.out / f"p{cert.p}.json").write_text(cert.to_json() + "\n")
        s = cert.summary()
        print(f"p={s['p']:4d} (a,b)=({s['a']},{s['b']}) unverified={s['unverified_count']} {s['verdict']}")
    print(f"{len(certs)} certificates in {time.perf_counter() - start:.2f} s -> {args.out}")


if __name__ == "__main__":
    main()

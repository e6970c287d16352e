"""Command-line front end.

Exit codes: 0 success or verified, 1 mathematical failure, 2 usage error.
Reports go to stdout (or ``--output``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .localpowers import Field, gw_scan
from .selftest import run_all
from .twistcert import (
    PreconditionError,
    ScanConfig,
    VerificationFailure,
    minimality_verdict,
    scan_minimality,
    scan_theorem,
    verify_theorem,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
P_CAP = 1000
PRIME_BOUND_CAP = 10**6


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    args: dict = field(default_factory=dict)
    fmt: str = "text"
    output: Optional[str] = None

    def __post_init__(self):
        p = self.args.get("p")
        if p is not None and p > P_CAP:
            raise UsageError(f"--p {p} exceeds the cap {P_CAP}")
        pmax = self.args.get("pmax")
        if pmax is not None and pmax > P_CAP:
            raise UsageError(f"--pmax {pmax} exceeds the cap {P_CAP}")
        bound = self.args.get("bound")
        if bound is not None and not 2 <= bound <= PRIME_BOUND_CAP:
            raise UsageError(f"--bound must lie in [2, {PRIME_BOUND_CAP}]")
        m = self.args.get("m")
        if m is not None and m < 1:
            raise UsageError("--m must be a positive integer")


def _cert_text(cert) -> List[str]:
    d = cert.to_dict()
    lines = [
        f"p = {cert.p}, n = {cert.n}, (a, b) = ({cert.a}, {cert.b})",
        f"condition (i): pass={d['condition_i']['pass']} witness={d['condition_i']['witness']}",
    ]
    for c in d["condition_ii"]:
        norm = "n/a" if c["norm"] is None else f"{c['norm']:+d}"
        lines.append(f"condition (ii'): <{','.join(map(str, c['subgroup_generators']))}> "
                     f"order {c['order']}: trivial={c['verdict']} norm={norm}")
    for pl in d["condition_iii"]:
        lines.append(f"condition (iii): place {pl['place']}: {pl['status']} "
                     f"(|D| = {pl['decomposition_order']}, cyclic={pl['cyclic']})")
    lines += [
        f"unverified places: {d['unverified_count']}",
        f"odd-degree reduction agrees: {d['odd_reduction_agrees']}",
        f"sign of y * conj(y): {d['conj_sign']}",
        f"verdict: {d['verdict']}",
    ]
    return lines


def _cmd_verify(cfg: CliConfig):
    cert = verify_theorem(cfg.args["p"])
    body = cert.to_dict() if cfg.fmt == "json" else _cert_text(cert)
    return body, EXIT_OK if cert.verified else EXIT_FAIL


def _cmd_minimality(cfg: CliConfig):
    n, n_max = cfg.args.get("n"), cfg.args.get("max")
    if (n is None) == (n_max is None):
        raise UsageError("give either n or --max")
    if n is not None:
        if n < 3 or n % 2 == 0:
            raise UsageError("n must be odd and at least 3")
        verdicts = [minimality_verdict(n)]
    else:
        if n_max < 3:
            raise UsageError("--max must be at least 3")
        verdicts = scan_minimality(n_max)
    if cfg.fmt == "json":
        return [v.to_dict() for v in verdicts], EXIT_OK
    lines = []
    for v in verdicts:
        line = f"{v.n}: {v.classification}"
        if n is not None and v.checks:
            line += "  " + ", ".join(f"{k}={val}" for k, val in v.checks.items())
        lines.append(line)
    return lines, EXIT_OK


def _cmd_scan(cfg: CliConfig):
    certs = scan_theorem(cfg.args["pmax"], ScanConfig(p_cap=P_CAP))
    rows = [c.summary() for c in certs]
    if cfg.fmt == "json":
        return rows, EXIT_OK
    lines = [f"{r['p']}: (a, b) = ({r['a']}, {r['b']}) unverified={r['unverified_count']} {r['verdict']}"
             for r in rows]
    lines.append(f"{len(rows)} certificates verified")
    return lines, EXIT_OK


def _cmd_gw(cfg: CliConfig):
    try:
        alpha = Fraction(cfg.args["alpha"])
        fld = Field.parse(cfg.args["field"])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if alpha == 0:
        raise UsageError("--alpha must be nonzero")
    report = gw_scan(alpha, cfg.args["m"], fld, cfg.args["bound"])
    if cfg.fmt == "json":
        return report.to_dict(), EXIT_OK
    failing = report.failing_places()
    lines = [
        f"alpha = {report.alpha}, m = {report.m}, field = {fld.label}",
        f"places checked: {len(report.places)}",
        "local m-th power at every checked place"
        if not failing else f"not a local m-th power at: {', '.join(failing)}",
        f"global: plus={report.global_plus} minus={report.global_minus}",
        f"violation: {str(report.violation).lower()}",
    ]
    return lines, EXIT_OK


def _cmd_selftest(cfg: CliConfig):
    results = run_all()
    ok = all(r.passed for r in results)
    if cfg.fmt == "json":
        body = [{"suite": r.name, "cases": r.cases, "passed": r.passed, "mismatch": r.mismatch}
                for r in results]
    else:
        body = [f"{r.name}: {'ok' if r.passed else 'MISMATCH ' + r.mismatch} ({r.cases} cases)"
                for r in results]
    return body, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify": _cmd_verify,
    "minimality": _cmd_minimality,
    "scan": _cmd_scan,
    "gw": _cmd_gw,
    "selftest": _cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadtwist", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="certify the class for a prime p = 13 (mod 24)")
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("minimality", parents=[common], help="classify odd conductors")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--max", type=int)

    p = sub.add_parser("scan", parents=[common], help="certify every p = 13 (mod 24) up to --pmax")
    p.add_argument("--pmax", type=int, default=ScanConfig().p_cap)

    p = sub.add_parser("gw", parents=[common], help="local and global m-th power scan")
    p.add_argument("--alpha", required=True, help="nonzero rational, e.g. 16 or -3/4")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--field", default="Q", help="Q or qsqrt:<d>")
    p.add_argument("--bound", type=int, default=100, help="check all primes up to this bound")

    sub.add_parser("selftest", parents=[common], help="run the brute-force oracle suites")
    return parser


def _render(body, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(body, indent=2)
    return "\n".join(body)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "json", "output")}
    try:
        cfg = CliConfig(ns.command, args, "json" if ns.json else "text", ns.output)
        body, code = COMMANDS[cfg.command](cfg)
    except (UsageError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationFailure, AssertionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = _render(body, cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

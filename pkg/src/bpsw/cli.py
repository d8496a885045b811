"""Command-line front end.

Exit codes for `bpsw test`: 0 probable prime, 1 composite, 2 error
(malformed input, selection failure, bad flags).  Other subcommands exit 0
on success and 2 on error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .census import (
    first_k,
    method_comparison,
    overlap_report,
    scan_range,
    write_list_files,
)
from .kinds import CENSUS_KINDS
from .lucas import LucasParams
from .params import METHOD_NAMES
from .pipeline import (
    DEFAULT_SIEVE_BOUND,
    PipelineReport,
    bpsw_enhanced,
    bpsw_original,
    lemma_qr_residue,
    psp_lpsp_vpsp_witness,
    theorem1_params,
    verify_certificate,
    verify_theorem1,
)

EXIT_PRP = 0
EXIT_COMPOSITE = 1
EXIT_ERROR = 2


def parse_n(text: str) -> int:
    """Integer in decimal or 0x-hex."""
    try:
        return int(text, 0)
    except ValueError:
        raise ValueError(f"not an integer: {text!r}") from None


def parse_bound(text: str) -> int:
    """Integer bound, allowing scientific notation like 1e7."""
    try:
        return int(text, 0)
    except ValueError:
        pass
    try:
        from decimal import Decimal

        value = Decimal(text)
    except ArithmeticError:
        raise ValueError(f"not a bound: {text!r}") from None
    if value != value.to_integral_value():
        raise ValueError(f"bound must be an integer: {text!r}")
    return int(value)


def _load_config(path: str | None) -> dict[str, str]:
    """key=value lines; blank lines and #-comments ignored."""
    if not path:
        return {}
    config: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            config[key.strip()] = value.strip()
    return config


def _default_workers() -> int:
    env = os.environ.get("BPSW_WORKERS", "")
    return int(env) if env.isdigit() and int(env) > 0 else 1


def _parse_params(text: str) -> LucasParams:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("--params expects P,Q")
    p, q = (int(part.strip(), 0) for part in parts)
    return LucasParams.from_pq(p, q, "explicit")


def cmd_test(args: argparse.Namespace) -> int:
    n = parse_n(args.n)
    runner = bpsw_enhanced if args.variant == "enhanced" else bpsw_original
    override = _parse_params(args.params) if args.params else None
    report = runner(
        n,
        method=args.method,
        sieve_bound=args.sieve_bound,
        seed=args.seed,
        skip_step1=args.skip_step1,
        params_override=override,
    )
    if args.output == "json":
        print(report.to_json(indent=2))
    else:
        print(f"n = {report.n}: {report.verdict} ({report.variant} test)")
        for step in report.steps:
            status = "pass" if step.passed else "FAIL"
            extra = f"  {step.detail}" if step.detail else ""
            print(f"  {step.step:<9} {status}{extra}")
        if report.params is not None:
            p = report.params
            print(f"  params: D={p.d} P={p.p} Q={p.q} (method {p.source})")
        if report.step5_informative is False:
            print("  note: |Q| is a power of two; the Euler-Q step was vacuous")
        if report.certificate is not None:
            print(f"  certificate: {json.dumps(report.certificate.to_dict())}")
    if report.verdict == "probable-prime":
        return EXIT_PRP
    if report.verdict == "composite":
        return EXIT_COMPOSITE
    return EXIT_ERROR


def cmd_census(args: argparse.Namespace) -> int:
    lo = parse_bound(args.start)
    hi = parse_bound(args.to)
    kinds = tuple(args.kinds.split(",")) if args.kinds else CENSUS_KINDS
    result = scan_range(
        lo,
        hi,
        args.method,
        kinds,
        chunk=args.chunk,
        workers=args.workers,
        seed=args.seed,
        checkpoint=args.checkpoint,
        backend=args.backend,
        allow_above_ceiling=args.allow_above_ceiling,
    )
    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write(result.table.to_csv_text())
    if args.lists:
        write_list_files(result, args.lists)
    if args.output == "json":
        payload = {
            "lo": result.lo,
            "hi": result.hi,
            "method": result.method,
            "kinds": list(result.kinds),
            "records": [
                {"n": r.n, "flags": sorted(r.flags), "params": r.params}
                for r in result.records
            ],
            "counts": [
                {"bound": b, **c}
                for b, c in zip(result.table.bounds, result.table.counts)
            ],
        }
        print(json.dumps(payload, indent=2))
    elif args.output == "csv":
        print(result.table.to_csv_text(), end="")
    else:
        print(f"census [{result.lo}, {result.hi}) method {result.method}")
        header = "bound".rjust(12) + "".join(k.rjust(12) for k in result.kinds)
        print(header)
        for bound, row in zip(result.table.bounds, result.table.counts):
            line = str(bound).rjust(12) + "".join(
                str(row.get(k, 0)).rjust(12) for k in result.kinds
            )
            print(line)
        if result.records:
            shown = ", ".join(str(r.n) for r in result.records[:20])
            more = "" if len(result.records) <= 20 else f", ... ({len(result.records)} total)"
            print(f"flagged: {shown}{more}")
    return 0


def cmd_first(args: argparse.Namespace) -> int:
    ns = first_k(args.kind, args.k, args.method, seed=args.seed)
    if args.output == "json":
        print(json.dumps({"kind": args.kind, "method": args.method, "ns": ns}))
    else:
        print(" ".join(str(n) for n in ns))
    return 0


def cmd_overlap(args: argparse.Namespace) -> int:
    bound = parse_bound(args.to)
    report = overlap_report(bound, args.method, seed=args.seed)
    if args.output == "json":
        payload = {
            " & ".join(combo): ns for combo, ns in report.items()
        }
        print(json.dumps(payload, indent=2))
    else:
        for combo, ns in report.items():
            label = " & ".join(combo)
            listing = "empty" if not ns else ", ".join(str(n) for n in ns)
            print(f"{label} below {bound}: {len(ns)} ({listing})")
    return 0


def cmd_compare_methods(args: argparse.Namespace) -> int:
    bound = parse_bound(args.to)
    methods = tuple(args.methods.split(","))
    rows = method_comparison(bound, methods, seed=args.seed)
    if args.output == "json":
        payload = [
            {
                "method": r.method,
                "lpsp": r.lpsp,
                "vpsp_q_unit": r.vpsp_q_unit,
                "vpsp_q_other": r.vpsp_q_other,
                "both": r.both,
            }
            for r in rows
        ]
        print(json.dumps(payload, indent=2))
    else:
        print(f"{'method':<8}{'lpsp':>10}{'vpsp(Q=±1)':>14}{'vpsp(other)':>14}{'both':>8}")
        for r in rows:
            print(
                f"{r.method:<8}{r.lpsp:>10}{r.vpsp_q_unit:>14}{r.vpsp_q_other:>14}{r.both:>8}"
            )
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    n = parse_n(args.n)
    pair = psp_lpsp_vpsp_witness(n, limit=args.limit)
    if args.output == "json":
        print(json.dumps({"n": n, "witness": None if pair is None else list(pair)}))
    elif pair is None:
        print(f"no (P, Q) pair makes {n} simultaneously psp(2), lpsp and vpsp")
    else:
        print(f"n = {n}: P = {pair[0]}, Q = {pair[1]}")
    return 0


def cmd_theorem1(args: argparse.Namespace) -> int:
    n = parse_n(args.n)
    report = verify_theorem1(n, args.k)
    params = theorem1_params(args.k, n)
    payload = {
        "n": n,
        "k": args.k,
        "params": params.to_dict(),
        "is_spsp2": report.is_spsp2,
        "n_mod_4": report.n_mod_4,
        "hypotheses_hold": report.hypotheses_hold,
        "slprp": report.slprp,
        "vprp": report.vprp,
        "euler_q": report.euler_q,
        "conclusion_holds": report.conclusion_holds,
    }
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    elif not report.hypotheses_hold:
        reason = "not a strong base-2 pseudoprime" if not report.is_spsp2 else "n mod 4 != 3"
        print(f"n = {n}: hypotheses fail ({reason})")
    else:
        print(
            f"n = {n}, k = {args.k}: P={params.p} Q={params.q} D={params.d} -> "
            f"slprp={report.slprp} vprp={report.vprp} euler_q={report.euler_q}"
        )
    return 0


def cmd_lemmaqr(args: argparse.Namespace) -> int:
    a = lemma_qr_residue(args.r)
    if args.output == "json":
        print(json.dumps({"r": args.r, "residue": a, "modulus": 4 * args.r}))
    else:
        print(f"primes p = {a} (mod {4 * args.r}) have ({args.r}/p) = +1")
    return 0


def cmd_verify_cert(args: argparse.Namespace) -> int:
    text = sys.stdin.read() if args.report == "-" else open(args.report).read()
    report = PipelineReport.from_json(text)
    if report.certificate is None:
        print("report carries no certificate (verdict was not composite)", file=sys.stderr)
        return EXIT_ERROR
    ok = verify_certificate(report.certificate)
    print("certificate valid" if ok else "certificate INVALID")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpsw",
        description="Baillie-PSW primality testing and pseudoprime censuses",
    )
    parser.add_argument("--config", help="key=value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, method=True, seed=True, output=("text", "json")):
        if method:
            p.add_argument("--method", choices=METHOD_NAMES, default=None)
        if seed:
            p.add_argument("--seed", type=int, default=None)
        p.add_argument("--output", choices=output, default=None)

    p = sub.add_parser("test", help="run the 3-step or 5-step test on one n")
    p.add_argument("n")
    p.add_argument("--variant", choices=("original", "enhanced"), default="enhanced")
    p.add_argument("--sieve-bound", type=int, default=None)
    p.add_argument("--skip-step1", action="store_true")
    p.add_argument("--params", help="explicit P,Q overriding selection")
    add_common(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("census", help="count pseudoprimes over [start, to)")
    p.add_argument("--from", dest="start", default="3")
    p.add_argument("--to", required=True)
    p.add_argument("--kinds", help="comma list; default all")
    p.add_argument("--chunk", type=int, default=1 << 18)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--checkpoint", help="JSON progress file enabling resume")
    p.add_argument("--csv", help="write cumulative counts CSV here")
    p.add_argument("--lists", help="write per-kind list files to this directory")
    p.add_argument("--backend", choices=("cython", "python"), default=None)
    p.add_argument("--allow-above-ceiling", action="store_true")
    add_common(p, output=("text", "json", "csv"))
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("first", help="first k pseudoprimes of a kind")
    p.add_argument("kind", choices=CENSUS_KINDS)
    p.add_argument("--k", type=int, default=10)
    add_common(p)
    p.set_defaults(func=cmd_first)

    p = sub.add_parser("overlap", help="intersections of pseudoprime kinds")
    p.add_argument("--to", required=True)
    add_common(p)
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("compare-methods", help="lpsp/vpsp tallies per method")
    p.add_argument("--to", required=True)
    p.add_argument("--methods", default=",".join(METHOD_NAMES))
    add_common(p, method=False)
    p.set_defaults(func=cmd_compare_methods)

    p = sub.add_parser("witness", help="search (P,Q) making n psp+lpsp+vpsp")
    p.add_argument("n")
    p.add_argument("--limit", type=int, default=10_000)
    add_common(p, method=False, seed=False)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("theorem1", help="check the 2**k family on one (n, k)")
    p.add_argument("n")
    p.add_argument("k", type=int)
    add_common(p, method=False, seed=False)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("lemmaqr", help="residue class making r a QR mod p")
    p.add_argument("r", type=int)
    add_common(p, method=False, seed=False)
    p.set_defaults(func=cmd_lemmaqr)

    p = sub.add_parser("verify-cert", help="re-check a report's certificate")
    p.add_argument("report", help="JSON report path, or - for stdin")
    add_common(p, method=False, seed=False)
    p.set_defaults(func=cmd_verify_cert)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if getattr(args, "method", None) is None:
            args.method = config.get("method", "A*")
        if getattr(args, "seed", None) is None:
            args.seed = int(config.get("seed", "0"))
        if getattr(args, "output", None) is None:
            args.output = config.get("output", "text")
        if getattr(args, "workers", None) is None and hasattr(args, "workers"):
            args.workers = int(config.get("workers", _default_workers()))
        if getattr(args, "sieve_bound", None) is None and hasattr(args, "sieve_bound"):
            args.sieve_bound = int(config.get("sieve_bound", DEFAULT_SIEVE_BOUND))
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

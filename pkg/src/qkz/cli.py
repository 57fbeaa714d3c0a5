"""Command-line front end.

    qkz verify <SUITE_ID> [--seed S]... [--points P] [--kmax K] [--lmax L]
               [--m M] [--n N] [--jet-order J] [--out PATH] [--format json|csv]
    qkz solve   --kmax K --lmax L --seed S [--m M --n N] [--out FILE]
    qkz laumon  --kmax K --lmax L --seed S [--m M --n N] [--out FILE]
    qkz rmatrix --m M --n N --seed S [--lambda p/s] [--fourd]
    qkz jackson --m M --n N --lmax L --seed S [--a2 p/s] [--out FILE]

Exit code 0 iff every check passes.  QKZ_THREADS caps the worker pool.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, QkzError
from .scalars import rat_from_str, sample_generic_point
from .suites import SuiteConfig, report_passed, run_suite, write_report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qkz", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", metavar="SUITE_ID")
    ver.add_argument("--seed", action="append", type=int, default=None)
    ver.add_argument("--points", type=int, default=1)
    ver.add_argument("--kmax", type=int, default=4)
    ver.add_argument("--lmax", type=int, default=4)
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--N", type=int, default=None, dest="N")
    ver.add_argument("--jet-order", type=int, default=2)
    ver.add_argument("--out", default=None)
    ver.add_argument("--format", choices=("json", "csv"), default="json")

    for name in ("solve", "laumon"):
        cmd = sub.add_parser(name, help="dump the series coefficient table")
        cmd.add_argument("--kmax", type=int, default=4)
        cmd.add_argument("--lmax", type=int, default=4)
        cmd.add_argument("--seed", type=int, required=True)
        cmd.add_argument("--m", type=int, default=None)
        cmd.add_argument("--n", type=int, default=None)
        cmd.add_argument("--out", default=None)

    rmx = sub.add_parser("rmatrix", help="print the connection matrix")
    rmx.add_argument("--m", type=int, required=True)
    rmx.add_argument("--n", type=int, required=True)
    rmx.add_argument("--seed", type=int, required=True)
    rmx.add_argument("--lambda", dest="lam", default=None, metavar="p/s")
    rmx.add_argument("--fourd", action="store_true")
    rmx.add_argument("--out", default=None)

    jck = sub.add_parser("jackson", help="dump the lattice-sum vector and residuals")
    jck.add_argument("--m", type=int, required=True)
    jck.add_argument("--n", type=int, required=True)
    jck.add_argument("--lmax", type=int, default=3)
    jck.add_argument("--seed", type=int, required=True)
    jck.add_argument("--a2", default=None, metavar="p/s")
    jck.add_argument("--out", default=None)
    return parser


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    cfg = SuiteConfig(
        suite=args.suite,
        seeds=tuple(args.seed) if args.seed else (1, 2, 3),
        points=args.points,
        kmax=args.kmax,
        lmax=args.lmax,
        m=args.m,
        n=args.n,
        N=args.N,
        jet_order=args.jet_order,
        out=args.out,
        format=args.format,
    )
    report = run_suite(cfg)
    text = write_report(report, args.out, args.format)
    if args.out:
        summary = "PASS" if report_passed(report) else "FAIL"
        print(f"{cfg.suite}: {summary} ({len(report['checks'])} checks) -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0 if report_passed(report) else 1


def cmd_series_dump(args, use_truncated_overrides: bool) -> int:
    from .cone import solve_shakirov
    from .laumon import z_al

    p = sample_generic_point(args.seed, guard=max(8, args.kmax, args.lmax))
    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None:
            raise ConfigError("--m and --n must be given together")
        p = p.with_overrides(args.m, args.n)
    series = z_al(p, args.kmax, args.lmax) if use_truncated_overrides \
        else solve_shakirov(p, args.kmax, args.lmax)
    _emit(series.dump_csv(), args.out)
    return 0


def cmd_rmatrix(args) -> int:
    from .rmatrix import r1_fourd, r_via_linear_system

    p = sample_generic_point(args.seed, guard=8)
    lam = rat_from_str(args.lam) if args.lam else sample_generic_point(
        args.seed + 1, guard=8).rq
    if args.fourd:
        import random
        rng = random.Random(args.seed)
        m1 = rat_from_str(f"{rng.randint(2, 30)}/{rng.randint(2, 30)}")
        m4 = rat_from_str(f"{rng.randint(2, 30)}/{rng.randint(2, 30)}")
        mat = r1_fourd((m1, -args.m, -args.n, m4), args.m, args.n, lam)
        meta = {"kind": "small-h first order", "m1": str(m1), "m4": str(m4)}
    else:
        mat = r_via_linear_system(args.m, args.n, p.d1, p.d4, lam, p.q)
        meta = {"kind": "connection matrix", "point": json.loads(p.to_json())}
    obj = {
        **meta,
        "m": args.m,
        "n": args.n,
        "lambda": str(lam),
        "rows": [[str(mat[i, j]) for j in range(mat.cols)] for i in range(mat.rows)],
        "index_convention": f"rows/cols are paper indices {-args.n}..{args.m}",
    }
    _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return 0


def cmd_jackson(args) -> int:
    from .jackson import JacksonParams, ito_qkz_check, jackson_vector

    p = sample_generic_point(args.seed, guard=8).with_overrides(args.m, args.n)
    a2 = rat_from_str(args.a2) if args.a2 else rat_from_str("5/7")
    jp = JacksonParams.from_point(p, a2)
    vec, pivot = jackson_vector(jp, args.lmax)
    residuals = ito_qkz_check(jp, args.lmax)
    obj = {
        "point": json.loads(p.to_json()),
        "a2": str(a2),
        "m": args.m,
        "n": args.n,
        "lmax": args.lmax,
        "pivot": str(pivot),
        "components": {
            str(j - args.n): [str(c) for c in vec[j].coeffs]
            for j in range(args.m + args.n + 1)
        },
        "equation_residuals": {
            name: [[str(c) for c in series.coeffs] for series in rs]
            for name, rs in residuals.items()
        },
    }
    _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "solve":
            return cmd_series_dump(args, use_truncated_overrides=False)
        if args.command == "laumon":
            return cmd_series_dump(args, use_truncated_overrides=True)
        if args.command == "rmatrix":
            return cmd_rmatrix(args)
        if args.command == "jackson":
            return cmd_jackson(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except QkzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

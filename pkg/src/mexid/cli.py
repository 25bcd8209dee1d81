"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 I/O failure, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Sequence

from . import identities, mexstats
from .partitions import d2_counts

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _kmax(text: str) -> int:
    v = int(text)
    if not 1 <= v <= mexstats.MAX_K:
        raise argparse.ArgumentTypeError(f"--kmax must be in 1..{mexstats.MAX_K}, got {text}")
    return v


def _add_output(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--out", metavar="PATH", help="write data here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mexid", description="Minimal-excludant statistics and q-series identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="statistics table for n = 0..N")
    t.add_argument("-N", "--order", type=_non_negative, default=20)
    t.add_argument("--no-enum", action="store_true", help="omit enumeration-backed columns")
    _add_output(t, "csv")

    v = sub.add_parser("verify", help="verify registry identities coefficient-wise")
    v.add_argument("target", help="identity id or 'all'")
    v.add_argument("-N", "--order", type=_non_negative)
    v.add_argument("--profile", choices=("default", "stress"), default="default")
    v.add_argument("--identities", metavar="PATH", help="identity file instead of the built-in registry")
    _add_output(v, "json")

    m = sub.add_parser("moments", help="moment table for n = 0..N, k = 1..kmax")
    m.add_argument("-N", "--order", type=_non_negative, default=20)
    m.add_argument("--kmax", type=_kmax, default=3)
    m.add_argument("--no-enum", action="store_true", help="skip the enumeration cross-check")
    _add_output(m, "csv")

    a = sub.add_parser("asymptotic", help="sigma_mex(n) against its asymptotic main term")
    a.add_argument("samples", help="comma list like 100,400,1600 or geometric start:factor:stop")
    _add_output(a, "csv")

    e = sub.add_parser("expr", help="evaluate a q-series expression")
    e.add_argument("text")
    e.add_argument("-N", "--order", type=_non_negative, default=10)
    _add_output(e, "csv")

    r = sub.add_parser("registry", help="export the built-in identities as an identity file")
    r.add_argument("--out", metavar="PATH")
    return parser


def parse_samples(spec: str) -> list[int]:
    try:
        if ":" in spec:
            start, factor, stop = (int(x) for x in spec.split(":"))
            if start < 1 or factor < 2 or stop < start:
                raise UsageError(f"bad geometric sample spec {spec!r}")
            out = []
            n = start
            while n <= stop:
                out.append(n)
                n *= factor
            return out
        samples = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad sample spec {spec!r}") from None
    if not samples or any(n < 1 for n in samples):
        raise UsageError(f"samples must be positive integers: {spec!r}")
    return samples


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([["" if v is None else v for v in row] for row in rows])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _stringify(row: dict) -> dict:
    return {k: (v if k in ("n", "k") or v is None or isinstance(v, bool) else str(v))
            for k, v in row.items()}


def cmd_table(args) -> int:
    enum = not args.no_enum
    if enum and args.order > mexstats.ENUM_LIMIT:
        raise UsageError(
            f"enumeration columns need N <= {mexstats.ENUM_LIMIT}; pass --no-enum for larger N"
        )
    header = list(mexstats.ROW_COLUMNS)
    if enum:
        header += ["d2", "d2e", "d2o"]
    else:
        header = [c for c in header if c not in ("o", "e", "o1", "o3")]
    rows = []
    for n in range(args.order + 1):
        row = mexstats.mex_stat_row(n, enumerate_counts=enum)
        values = {c: getattr(row, c) for c in mexstats.ROW_COLUMNS}
        if enum:
            values["d2"], values["d2e"], values["d2o"] = d2_counts(n)
        rows.append({c: values[c] for c in header})
    if args.format == "csv":
        text = _csv_text(header, [[r[c] for c in header] for r in rows])
    else:
        text = _json_text([_stringify(r) for r in rows])
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    order = args.order
    if order is None:
        order = identities.STRESS_ORDER if args.profile == "stress" else identities.DEFAULT_ORDER
    if args.identities:
        try:
            entries = identities.load_identity_file(args.identities)
        except OSError as exc:
            print(f"mexid: cannot read {args.identities}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        entries = identities.registry()
    if args.target != "all":
        entries = [e for e in entries if e.id == args.target]
        if not entries:
            raise UsageError(f"unknown identity {args.target!r}")
    reports = identities.verify_all(order, entries)
    for r in reports:
        print(f"{r.id}: {r.status} at order {r.order} ({r.elapsed_ms:.1f} ms)", file=sys.stderr)
    if args.format == "json":
        payload = [r.to_dict() for r in reports]
        text = _json_text(payload[0] if args.target != "all" else payload)
    else:
        header = ["id", "order", "status", "exponent", "lhs", "rhs"]
        rows = []
        for r in reports:
            mm = r.mismatch
            rows.append([r.id, r.order, r.status, mm and mm.exponent, mm and mm.lhs, mm and mm.rhs])
        text = _csv_text(header, rows)
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_moments(args) -> int:
    check = not args.no_enum
    header = ["n", "k", "sigma", "sigma_bar", "sigma_o", "sigma_e", "enum_check"]
    rows = []
    failed = False
    for n in range(args.order + 1):
        for k in range(1, args.kmax + 1):
            row = {
                "n": n,
                "k": k,
                "sigma": mexstats.sigma_moment(n, k),
                "sigma_bar": mexstats.sigma_bar_moment(n, k),
                "sigma_o": mexstats.sigma_o_moment(n, k),
                "sigma_e": mexstats.sigma_e_moment(n, k),
                "enum_check": None,
            }
            if check and n <= mexstats.ENUM_LIMIT:
                ok = (
                    row["sigma"] == mexstats.mex_power_sum(n, k)
                    and row["sigma_bar"] == mexstats.mex_power_sum(n, k, signed=True)
                    and row["sigma_o"] == mexstats.mex_power_sum(n, k, parity="odd")
                    and row["sigma_e"] == mexstats.mex_power_sum(n, k, parity="even")
                )
                row["enum_check"] = "ok" if ok else "MISMATCH"
                failed |= not ok
            rows.append(row)
    if args.format == "csv":
        text = _csv_text(header, [[r[c] for c in header] for r in rows])
    else:
        text = _json_text([_stringify(r) for r in rows])
    _emit(text, args.out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_asymptotic(args) -> int:
    samples = parse_samples(args.samples)
    ratios = identities.asymptotic_ratios(samples)
    header = ["n", "sigma_mex", "ratio"]
    rows = [[n, mexstats.sigma_mex(n), r] for n, r in ratios]
    distances = [abs(float(r) - 1) for _, r in ratios]
    monotone = all(b < a for a, b in zip(distances, distances[1:]))
    side = "below" if all(float(r) < 1 for _, r in ratios) else "not uniformly below"
    print(f"ratios {side} 1; monotone approach to 1: {'yes' if monotone else 'no'}", file=sys.stderr)
    if args.format == "csv":
        text = _csv_text(header, rows)
    else:
        text = _json_text([{"n": n, "sigma_mex": str(s), "ratio": r} for n, s, r in rows])
    _emit(text, args.out)
    return EXIT_OK


def cmd_expr(args) -> int:
    s = identities.evaluate(identities.parse(args.text), args.order)
    if args.format == "csv":
        text = ",".join(str(c) for c in s.coeffs) + "\n"
    else:
        text = _json_text(s.to_json())
    _emit(text, args.out)
    return EXIT_OK


def cmd_registry(args) -> int:
    _emit(identities.export_registry(), args.out)
    return EXIT_OK


_COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "moments": cmd_moments,
    "asymptotic": cmd_asymptotic,
    "expr": cmd_expr,
    "registry": cmd_registry,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        code = _COMMANDS[args.command](args)
    except (UsageError, identities.ExpressionError) as exc:
        print(f"mexid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mexid: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"mexid {args.command}: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

Subcommands: construct, verify, scan, table.  Exit codes: 0 success,
1 verification rejected, 2 construction budget exhausted (partial output
still written), 3 certificate unverifiable within the factoring budget,
64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .construct import (
    ConstructionBudgetError,
    WitnessCertificate,
    construct_binomial_power,
    construct_chebyshev,
    construct_cubic,
    construct_cyclotomic,
    construct_quadratic,
    construct_quartic_biquadratic,
    construct_quartic_cubic_linear,
)
from .intpoly import IntPoly
from .numtheory import DEFAULT_FACTOR_BUDGET
from .scan import record_json, scan_parallel
from .specialpoly import chebyshev_t, cyclotomic, psi
from .verify import verify

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_BUDGET = 2
EXIT_UNVERIFIABLE = 3
EXIT_USAGE = 64

CERT_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with the budget
    # exit code; remap to 64 (the BSD EX_USAGE convention)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def cert_to_dict(cert: WitnessCertificate) -> dict:
    return {
        "v": CERT_VERSION,
        "class": cert.class_tag,
        "poly": [str(c) for c in cert.poly.coeffs],
        "n": str(cert.n),
        "factors": [str(f) for f in cert.factors],
        "params": dict(cert.params),
        "mode": cert.mode_hint,
    }


def cert_from_dict(data: dict) -> WitnessCertificate:
    """Parse one certificate object; unknown fields are ignored, unknown
    versions rejected."""
    if not isinstance(data, dict):
        raise ValueError("certificate entry must be an object")
    if data.get("v") != CERT_VERSION:
        raise ValueError(f"unsupported certificate version {data.get('v')!r}")
    for key in ("class", "poly", "n", "factors"):
        if key not in data:
            raise ValueError(f"missing certificate field {key!r}")
    poly = IntPoly(int(c) for c in data["poly"])
    return WitnessCertificate(
        poly=poly,
        class_tag=str(data["class"]),
        n=int(data["n"]),
        factors=tuple(int(f) for f in data["factors"]),
        params={str(k): str(v) for k, v in dict(data.get("params", {})).items()},
        mode_hint=str(data.get("mode", "distinct")),
    )


def _write_certs(certs, path: str | None) -> None:
    text = json.dumps([cert_to_dict(c) for c in certs], indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part.strip()) for part in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _poly_by_degree(polys, degree: int) -> IntPoly:
    for p in polys:
        if p.degree == degree:
            return p
    raise UsageError(f"need a factor of degree {degree}")


def _cmd_construct(args, budget: int) -> int:
    polys = [IntPoly.from_string(p) for p in (args.poly or [])]
    ratio = Fraction(args.ratio)
    try:
        if args.family == "quadratic":
            if len(polys) != 1:
                raise UsageError("quadratic takes exactly one --poly")
            certs = construct_quadratic(polys[0], args.count, seed=args.seed)
        elif args.family == "cubic":
            if len(polys) != 1:
                raise UsageError("cubic takes exactly one --poly")
            certs = construct_cubic(polys[0], args.count)
        elif args.family == "quartic-cl":
            if len(polys) != 2:
                raise UsageError("quartic-cl takes two --poly factors")
            certs = construct_quartic_cubic_linear(
                _poly_by_degree(polys, 3), _poly_by_degree(polys, 1), args.count
            )
        elif args.family == "quartic-qq":
            if len(polys) != 2 or any(p.degree != 2 for p in polys):
                raise UsageError("quartic-qq takes two quadratic --poly factors")
            certs = construct_quartic_biquadratic(polys[0], polys[1], args.count)
        elif args.family == "binomial":
            if args.m is None or not args.s:
                raise UsageError("binomial needs --m and --s")
            certs = construct_binomial_power(args.m, _int_list(args.s), ratio)
        elif args.family == "cyclotomic":
            if args.m is None or not args.s:
                raise UsageError("cyclotomic needs --m and --s")
            certs = construct_cyclotomic(args.m, _int_list(args.s), ratio)
        else:
            if not args.ms or not args.s:
                raise UsageError("chebyshev needs --ms and --s")
            certs = construct_chebyshev(_int_list(args.ms), _int_list(args.s), ratio)
    except ConstructionBudgetError as exc:
        _write_certs(exc.partial, args.out)
        print(json.dumps(exc.report, sort_keys=True), file=sys.stderr)
        return EXIT_BUDGET
    reports = [verify(c, budget=budget, seed=args.seed) for c in certs]
    _write_certs(certs, args.out)
    bad = [r for r in reports if not r.accepted]
    if bad:
        print(
            f"internal error: {len(bad)} emitted certificate(s) failed "
            f"verification ({bad[0].reason})",
            file=sys.stderr,
        )
        return EXIT_REJECT
    return EXIT_OK


def _cmd_verify(args, budget: int) -> int:
    with open(args.file) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise UsageError("certificate file must hold a JSON array")
    any_reject = False
    any_unverifiable = False
    for i, entry in enumerate(data):
        try:
            cert = cert_from_dict(entry)
        except (ValueError, TypeError) as exc:
            print(f"cert {i}: REJECT reason=malformed ({exc})")
            any_reject = True
            continue
        report = verify(cert, budget=budget, seed=args.seed)
        if report.accepted:
            print(
                f"cert {i}: ACCEPT rule={report.rule} n_digits="
                f"{len(str(cert.n))} exponent={report.exponent}"
            )
        elif report.reason == "unverifiable":
            any_unverifiable = True
            print(
                f"cert {i}: UNVERIFIABLE factor={report.unverifiable_factor}"
            )
        else:
            any_reject = True
            print(f"cert {i}: REJECT rule={report.rule} reason={report.reason}")
    if any_reject:
        return EXIT_REJECT
    if any_unverifiable:
        return EXIT_UNVERIFIABLE
    return EXIT_OK


def _cmd_scan(args, budget: int) -> int:
    poly = IntPoly.from_string(args.poly)
    theta = Fraction(args.theta)
    records, summary = scan_parallel(
        poly, args.start, args.stop, theta, args.jobs, division_budget=budget
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in records:
            print(record_json(rec), file=out)
    finally:
        if args.out:
            out.close()
    print(
        json.dumps(
            {
                "examined": summary.examined,
                "hits": summary.hits,
                "unresolved": summary.unresolved,
                "min_exponent": summary.min_exponent,
            },
            sort_keys=True,
        ),
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.kind == "phi":
        rows = [(i, cyclotomic(i)) for i in range(1, args.max + 1)]
    elif args.kind == "psi":
        rows = [(i, psi(i)) for i in range(3, args.max + 1)]
    else:
        rows = [(i, chebyshev_t(i)) for i in range(0, args.max + 1)]
    for i, poly in rows:
        print(f"{i}\t{poly.to_string()}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="factoridiv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build witness certificates")
    con.add_argument(
        "--class",
        dest="family",
        required=True,
        choices=[
            "quadratic",
            "cubic",
            "quartic-cl",
            "quartic-qq",
            "binomial",
            "cyclotomic",
            "chebyshev",
        ],
    )
    con.add_argument("--poly", action="append",
                     help="comma separated coefficients, ascending")
    con.add_argument("--m", type=int, help="order for binomial/cyclotomic")
    con.add_argument("--ms", help="comma separated Chebyshev orders")
    con.add_argument("--s", help="comma separated base values")
    con.add_argument("--count", type=int, default=1)
    con.add_argument("--ratio", default="1",
                     help="Mertens oversampling ratio, e.g. 9/8")
    con.add_argument("--seed", type=int, default=0)
    con.add_argument("--out", help="output file (default stdout)")

    ver = sub.add_parser("verify", help="verify a certificate file")
    ver.add_argument("file")
    ver.add_argument("--budget", type=int, default=None)
    ver.add_argument("--seed", type=int, default=0)

    sca = sub.add_parser("scan", help="scan for smooth polynomial values")
    sca.add_argument("--poly", required=True)
    sca.add_argument("--from", dest="start", type=int, required=True)
    sca.add_argument("--to", dest="stop", type=int, required=True)
    sca.add_argument("--theta", required=True, help="exponent as j/k")
    sca.add_argument("--jobs", type=int, default=1)
    sca.add_argument("--budget", type=int, default=None)
    sca.add_argument("--out", help="output file (default stdout)")

    tab = sub.add_parser("table", help="print polynomial tables")
    tab.add_argument("kind", choices=["phi", "psi", "chebyshev"])
    tab.add_argument("--max", type=int, required=True)

    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2_000_000)
    parser = build_parser()
    args = parser.parse_args(argv)
    env_budget = os.environ.get("FACTORIDIV_BUDGET")
    budget = int(env_budget) if env_budget else DEFAULT_FACTOR_BUDGET
    if getattr(args, "budget", None):
        budget = args.budget
    try:
        if args.command == "construct":
            return _cmd_construct(args, budget)
        if args.command == "verify":
            return _cmd_verify(args, budget)
        if args.command == "scan":
            return _cmd_scan(args, budget)
        return _cmd_table(args)
    except UsageError as exc:
        print(f"factoridiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"factoridiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 domain
error (perfect square, D < 2, period cap exceeded).
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys

from .cf import ITER_CAP_ENV, expand_sqrt, is_square, iter_cap_default
from .closed_forms import classify, closed_form, reduce_pair, solve
from .errors import NotFound, PellError
from .families import CATALOG, FamilyParams, family_convergent
from .pell import brute_fundamental, fundamental_solution, iter_branch
from .survey import DEFAULT_PERIOD_CAP, emit_report, format_percent, survey_range

log = logging.getLogger("rdpell")

EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _emit_json(obj) -> None:
    _out(json.dumps(obj, indent=2))


def cmd_solve(args) -> int:
    res = solve(args.D, fastpath=not args.no_fastpath, verify=not args.no_verify)
    sol, fp = res.solution, res.fast_path
    variant = fp.decomposition.variant if fp else "none"
    reduced = "yes" if fp and fp.reduced else "no"
    if args.json:
        _emit_json(
            {
                "D": sol.D,
                "X": sol.X,
                "Y": sol.Y,
                "fast_path": variant,
                "reduced": reduced == "yes",
                "decomposition": str(fp.decomposition) if fp else None,
            }
        )
    else:
        _out(f"X={sol.X} Y={sol.Y} (fast path: {variant}, reduced: {reduced})")
    return 0


def cmd_cf(args) -> int:
    exp = expand_sqrt(args.D)
    if args.json:
        _emit_json({"D": exp.D, "a0": exp.a0, "period": list(exp.period), "r": exp.r})
    else:
        _out(str(exp))
    return 0


def cmd_classify(args) -> int:
    decs = classify(args.D)
    if args.json:
        _emit_json(
            [
                {"f": d.f, "alpha": d.alpha, "n": d.n, "sign": d.sign, "variant": d.variant, "k": d.k}
                for d in decs
            ]
        )
    elif not decs:
        _out("not covered")
    else:
        for d in decs:
            _out(str(d))
    return 0


def cmd_solutions(args) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    fund = solve(args.D).solution
    rows = list(itertools.islice(iter_branch(fund), args.n))
    if args.json:
        _emit_json([{"n": s.index, "X": s.X, "Y": s.Y} for s in rows])
    else:
        for s in rows:
            _out(f"n={s.index} X={s.X} Y={s.Y}")
    return 0


def _parse_family_params(family: str, tokens: list) -> FamilyParams:
    kwargs = {}
    for tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq:
            raise UsageError(f"family parameter {tok!r} is not key=value")
        if key in ("sign", "inner_sign"):
            kwargs[key] = value
        elif key in ("d", "m", "n", "beta", "alpha"):
            try:
                kwargs[key] = int(value)
            except ValueError:
                raise UsageError(f"{key} must be an integer, got {value!r}") from None
        else:
            raise UsageError(f"unknown family parameter {key!r}")
    if "d" not in kwargs:
        raise UsageError("family needs d=<int>")
    return FamilyParams(family, **kwargs)


def cmd_family(args) -> int:
    if args.id == "list":
        for fam in CATALOG.values():
            _out(f"{fam.id}\t{fam.formula}\tparams={','.join(fam.params)}{',sign' if fam.signed else ''}")
        return 0
    if args.id not in CATALOG:
        raise UsageError(f"unknown family {args.id!r}")
    rad, conv = family_convergent(_parse_family_params(args.id, args.params))
    if args.json:
        _emit_json({"D": rad.D, "p": conv.p, "q": conv.q})
    else:
        _out(f"D={rad.D} p={conv.p} q={conv.q}")
    return 0


def cmd_survey(args) -> int:
    stats, records = survey_range(
        args.N,
        verify=args.verify,
        period_cap=args.period_cap,
        include_nonsquarefree=args.all,
        jobs=args.jobs,
    )
    if args.csv or args.json:
        data = emit_report(stats, records, "csv" if args.csv else "json")
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    else:
        _out(f"bound={stats.bound} (inclusive)")
        _out(f"squarefree={stats.total_squarefree} covered={stats.total_covered} "
             f"percent={format_percent(stats.percent)}")
        _out(f"nonsquare={stats.total_nonsquare} covered={stats.covered_nonsquare} "
             f"percent={format_percent(stats.percent_nonsquare)}")
        for variant, count in stats.per_variant.items():
            _out(f"variant {variant}={count}")
    if args.verify:
        log.info("verified %d covered radicands, %d mismatches", stats.total_covered, len(stats.mismatches))
        if stats.mismatches:
            print(f"verification mismatch at D={stats.mismatches}", file=sys.stderr)
            return EXIT_MISMATCH
    return 0


def cmd_verify(args) -> int:
    """Fast path vs continued fraction vs brute force, for every non-square D <= N."""
    mismatches = []
    checked = {"fastpath": 0, "oracle": 0}
    for D in range(2, args.N + 1):
        if is_square(D):
            continue
        engine = fundamental_solution(D)
        decs = classify(D)
        for dec in decs:
            conv = closed_form(dec)
            fund, _ = reduce_pair(D, conv.p, conv.q, verify=False)
            checked["fastpath"] += 1
            if fund.pair != engine.pair:
                mismatches.append((D, "fastpath", str(dec)))
        try:
            oracle = brute_fundamental(D, args.y_max)
        except NotFound:
            pass
        else:
            checked["oracle"] += 1
            if oracle.pair != engine.pair:
                mismatches.append((D, "oracle", None))
    _out(f"bound={args.N} fastpath_checks={checked['fastpath']} "
         f"oracle_checks={checked['oracle']} mismatches={len(mismatches)}")
    for D, kind, detail in mismatches:
        print(f"mismatch D={D} kind={kind} {detail or ''}".rstrip(), file=sys.stderr)
    return EXIT_MISMATCH if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rdpell", description="Exact Pell equation and continued fraction toolkit.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="fundamental solution of X^2 - D Y^2 = 1")
    p.add_argument("D", type=int)
    p.add_argument("--no-fastpath", action="store_true", help="force the continued fraction engine")
    p.add_argument("--no-verify", action="store_true", help="trust the closed form without a CF cross-check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cf", help="continued fraction of sqrt(D)")
    p.add_argument("D", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("classify", help="closed-form decompositions of D")
    p.add_argument("D", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solutions", help="branch elements 1..n")
    p.add_argument("D", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solutions)

    p = sub.add_parser("family", help="evaluate a named family; 'family list' shows ids")
    p.add_argument("id")
    p.add_argument("params", nargs="*", help="key=value (d, m, n, beta, alpha, sign, inner_sign)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("survey", help="coverage of the closed forms up to N (inclusive)")
    p.add_argument("N", type=int)
    p.add_argument("--verify", action="store_true", help="cross-check covered D against the CF engine")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--all", action="store_true", help="also list non-squarefree D")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--period-cap", type=int, default=DEFAULT_PERIOD_CAP)
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify", help="fast path vs CF engine vs brute force up to N")
    p.add_argument("N", type=int)
    p.add_argument("--y-max", type=int, default=10**4, help="brute-force search range")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        iter_cap_default()
    except ValueError:
        print(f"rdpell: error: invalid {ITER_CAP_ENV}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rdpell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PellError as exc:
        print(f"rdpell: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"rdpell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

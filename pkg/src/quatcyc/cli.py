"""Command line interface.

Data is written to stdout as csv, json or raw symbols; diagnostics go
to stderr through the `rich` console. Exit codes are 0 on success,
1 when verification fails and 2 on invalid input.
"""

import argparse
import csv
import json
import sys

from itertools import product

from quatcyc import __version__
from quatcyc.closed_form import explain_profile
from quatcyc.correlation import cross_correlation
from quatcyc.cyclotomy import (
    build_class_table,
    cyclotomic_number_bf,
    cyclotomic_number_cf,
    level_partition,
)
from quatcyc.number_theory import make_params
from quatcyc.sequences import (
    SequenceKind,
    balance_stats,
    build_sequence,
    index_labels,
)
from quatcyc.utils import DEFAULT_MAX_N, check_size, console
from quatcyc.verification import default_grid, run_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

SEQUENCE_CHOICES = [k.value for k in SequenceKind]


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {text!r}"
        ) from None


def _write_csv(header, rows, out):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _write_json(document, out):
    out.write(json.dumps(document, indent=2))
    out.write("\n")


def _params(args):
    params = make_params(args.p, args.m)
    check_size(params.N, args.max_n)
    return params


def cmd_gen(args, out):
    params = _params(args)
    seq = build_sequence(args.seq, params)
    if args.format == "raw":
        out.write(seq.to_string() + "\n")
        return EXIT_OK

    labels = index_labels(seq)
    if args.format == "csv":
        _write_csv(
            ["index", "symbol", "class_label"],
            (
                (n, symbol, label)
                for n, (symbol, label) in enumerate(
                    zip(seq.to_list(), labels)
                )
            ),
            out,
        )
    else:
        stats = balance_stats(seq)
        _write_json(
            {
                "p": params.p,
                "m": params.m,
                "g": params.g,
                "seq": str(seq.kind),
                "period": len(seq),
                "symbols": seq.to_list(),
                "class_labels": labels,
                "counts": {str(a): c for a, c in stats.counts.items()},
                "balanced": stats.balanced,
            },
            out,
        )
    return EXIT_OK


def _correlation_rows(a, b, params, args):
    seq_a = build_sequence(a, params)
    seq_b = build_sequence(b, params)
    profile = cross_correlation(
        seq_a,
        seq_b,
        n_jobs=args.n_jobs,
        device=args.device,
        max_n=args.max_n,
        verbose=args.verbose,
    )
    branches = explain_profile(a, b, params)
    rows = []
    for shift, (value, branch) in enumerate(zip(profile, branches)):
        rows.append(
            {
                "shift": shift,
                "re": value.re,
                "im": value.im,
                "predicted_re": branch.value.re,
                "predicted_im": branch.value.im,
                "branch_label": branch.label,
                "match": value == branch.value,
            }
        )
    mismatches = sum(1 for row in rows if not row["match"])
    if mismatches:
        console.print(
            f"{mismatches} shifts differ from the closed form",
            style="yellow",
        )
    return rows


def _emit_correlation(rows, shift_name, args, params, kinds, out):
    columns = [
        "re",
        "im",
        "predicted_re",
        "predicted_im",
        "branch_label",
        "match",
    ]
    if args.format == "csv":
        _write_csv(
            [shift_name] + columns,
            (
                [row["shift"]]
                + [
                    str(row[c]).lower() if c == "match" else row[c]
                    for c in columns
                ]
                for row in rows
            ),
            out,
        )
        return
    _write_json(
        {
            "p": params.p,
            "m": params.m,
            "sequences": list(kinds),
            "period": len(rows),
            "values": [
                {
                    shift_name: row["shift"],
                    "value": {"re": row["re"], "im": row["im"]},
                    "predicted": {
                        "re": row["predicted_re"],
                        "im": row["predicted_im"],
                    },
                    "branch_label": row["branch_label"],
                    "match": row["match"],
                }
                for row in rows
            ],
        },
        out,
    )


def cmd_acf(args, out):
    params = _params(args)
    rows = _correlation_rows(args.seq, args.seq, params, args)
    _emit_correlation(rows, "tau", args, params, (args.seq, args.seq), out)
    return EXIT_OK


def cmd_ccf(args, out):
    params = _params(args)
    rows = _correlation_rows(args.a, args.b, params, args)
    _emit_correlation(rows, "k", args, params, (args.a, args.b), out)
    return EXIT_OK


def cmd_cycnum(args, out):
    params = _params(args)
    table = build_class_table(params, verbose=args.verbose)
    rows = []
    for i, j in product((0, 1), (0, 1)):
        brute = cyclotomic_number_bf(i, j, params, table=table)
        closed = cyclotomic_number_cf(i, j, params)
        rows.append((i, j, brute, closed, brute == closed))

    if args.format == "csv":
        _write_csv(
            ["i", "j", "brute", "closed", "match"],
            (row[:4] + (str(row[4]).lower(),) for row in rows),
            out,
        )
    else:
        _write_json(
            {
                "p": params.p,
                "m": params.m,
                "cyclotomic_numbers": [
                    dict(zip(("i", "j", "brute", "closed", "match"), row))
                    for row in rows
                ],
            },
            out,
        )
    return EXIT_OK


def cmd_classes(args, out):
    params = _params(args)
    table = build_class_table(params, verbose=args.verbose)
    if args.partition:
        sets = dict(level_partition(table))
    else:
        sets = table.classes(args.level)
    sets = {
        name: sorted(int(x) for x in values) for name, values in sets.items()
    }

    if args.format == "csv":
        _write_csv(
            ["class", "size", "elements"],
            (
                (name, len(values), " ".join(str(x) for x in values))
                for name, values in sets.items()
            ),
            out,
        )
    else:
        _write_json(
            {
                "p": params.p,
                "m": params.m,
                "g": params.g,
                "level": params.m if args.level is None else args.level,
                "classes": sets,
            },
            out,
        )
    return EXIT_OK


def _grid(args):
    if args.p is None and args.m is None:
        return default_grid(args.max_n)
    ps = args.p if args.p is not None else [p for p, _ in default_grid()]
    ms = args.m if args.m is not None else [1]
    grid = []
    for p, m in product(sorted(set(ps)), sorted(set(ms))):
        # only skip sizes here, invalid (p, m) are reported by run_suite
        if p > 1 and m > 0 and 2 * p**m > args.max_n:
            console.log(f"Skipping (p={p}, m={m}): 2p^m > {args.max_n}")
            continue
        grid.append((p, m))
    return grid


def cmd_verify(args, out):
    report = run_suite(
        _grid(args),
        n_jobs=args.n_jobs,
        max_n=args.max_n,
        device=args.device,
        verbose=args.verbose,
    )
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        _write_csv(
            ["p", "m", "check", "cases", "mismatches"],
            (
                (e.p, e.m, c.id, c.cases, len(c.mismatches))
                for e in report.entries
                for c in e.checks
            ),
            out,
        )

    for t in report.typo_resolutions:
        console.print(
            f"{t.check}: {t.printed} -> {t.resolved}", markup=False
        )
    console.print(f"omega convention: {report.omega_convention}")
    if report.passed:
        console.print("verification passed", style="green")
        return EXIT_OK
    console.print("verification failed", style="red")
    return EXIT_FAILURE


def _add_common(parser, formats=("csv", "json")):
    parser.add_argument("--format", choices=formats, default="csv")
    parser.add_argument(
        "--max-n",
        type=int,
        default=DEFAULT_MAX_N,
        help=f"largest period 2p^m accepted (default: {DEFAULT_MAX_N})",
    )
    parser.add_argument(
        "--verbose", action="store_true", help="log progress to stderr"
    )


def _add_instance(parser):
    parser.add_argument("--p", type=int, required=True, help="odd prime")
    parser.add_argument(
        "--m", type=int, required=True, help="positive exponent"
    )


def _add_compute(parser):
    parser.add_argument(
        "--n-jobs",
        type=int,
        default=1,
        help="number of joblib workers (default: 1)",
    )
    parser.add_argument(
        "--device",
        default="auto",
        help='torch device of the correlation kernel (default: "auto")',
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quatcyc",
        description=(
            "Quaternary sequences of period 2p^m from generalized "
            "cyclotomic classes of order 2, and exact checks of their "
            "correlation."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  quatcyc gen --p 3 --m 2 --seq s --format raw
  quatcyc acf --p 7 --m 1 --seq s
  quatcyc ccf --p 5 --m 1 --a s2 --b s1 --format json
  quatcyc verify --p 3,5,7 --m 1,2 --n-jobs 4
        """,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("gen", help="generate a sequence")
    _add_instance(gen)
    gen.add_argument("--seq", choices=SEQUENCE_CHOICES, default="s")
    _add_common(gen, formats=("raw", "csv", "json"))
    gen.set_defaults(func=cmd_gen)

    acf = subparsers.add_parser(
        "acf", help="autocorrelation with closed-form annotations"
    )
    _add_instance(acf)
    acf.add_argument("--seq", choices=SEQUENCE_CHOICES, default="s")
    _add_common(acf)
    _add_compute(acf)
    acf.set_defaults(func=cmd_acf)

    ccf = subparsers.add_parser(
        "ccf", help="cross-correlation with closed-form annotations"
    )
    _add_instance(ccf)
    pair_choices = ["s1", "s2", "u", "v"]
    ccf.add_argument("--a", choices=pair_choices, required=True)
    ccf.add_argument("--b", choices=pair_choices, required=True)
    _add_common(ccf)
    _add_compute(ccf)
    ccf.set_defaults(func=cmd_ccf)

    cycnum = subparsers.add_parser(
        "cycnum", help="cyclotomic numbers of order 2, brute and closed"
    )
    _add_instance(cycnum)
    _add_common(cycnum)
    cycnum.set_defaults(func=cmd_cycnum)

    classes = subparsers.add_parser(
        "classes", help="cyclotomic classes of one level"
    )
    _add_instance(classes)
    classes.add_argument(
        "--level", type=int, default=None, help="level j <= m (default: m)"
    )
    classes.add_argument(
        "--partition",
        action="store_true",
        help="list the decomposition of Z_2p^m across all levels",
    )
    _add_common(classes)
    classes.set_defaults(func=cmd_classes)

    verify = subparsers.add_parser(
        "verify", help="compare brute force with every closed form"
    )
    verify.add_argument(
        "--p",
        type=_int_list,
        default=None,
        help="comma separated primes (default: all odd primes <= 31)",
    )
    verify.add_argument(
        "--m",
        type=_int_list,
        default=None,
        help="comma separated exponents",
    )
    _add_common(verify)
    _add_compute(verify)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ValueError as e:
        console.print(f"error: {e}", style="red", markup=False)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

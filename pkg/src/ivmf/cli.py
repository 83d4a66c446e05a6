"""Command-line interface.

Exit codes: 0 success, 1 data/validation errors, 2 usage errors (argparse's
own convention). All data output is deterministic: identical invocations on
identical files produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .dataio import (
    DataError,
    bundled_weights_path,
    canonical_dumps,
    dataset_to_document,
    load_bundled_dataset,
    load_bundled_weights,
    load_dataset,
    load_weights,
    write_report,
)
from .discrepancies import discrepancies_markdown
from .scoring import ivmf_scores
from .stats import histogram, sensitivity_table
from .trustexpr import lint_dataset

_FORMATS = ("md", "markdown", "csv", "json")

# Scenario files shipped for each sensitivity level. The scenario names come
# from the published analysis; their weight vectors do not (they are
# placeholders, see README), so sensitivity runs against them are
# illustrative, not reproductions.
DEFAULT_VARIANTS = {
    "IVMF": ("ivmf-tm-weighted", "ivmf-cmpx-weighted", "ivmf-pu-weighted", "equal"),
    "TM": ("tm-anonymity-security-weighted", "tm-verifiability-weighted", "equal"),
}


def _add_common(parser: argparse.ArgumentParser, weights: bool = True) -> None:
    parser.add_argument(
        "--dataset",
        metavar="PATH",
        default=None,
        help="dataset file (default: $IVMF_DATASET or the bundled dataset)",
    )
    if weights:
        parser.add_argument(
            "--weights",
            metavar="PATH",
            default=None,
            help="weight-scheme file (default: the bundled default scheme)",
        )
    parser.add_argument(
        "--format",
        choices=_FORMATS,
        default="md",
        help="output format (default: md)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivmf",
        description="Internet-voting maturity scoring: rankings, trust-model "
        "composites, and weight-sensitivity analysis.",
    )
    parser.add_argument("--version", action="version", version=f"ivmf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="score the dataset and print the ranking table")
    _add_common(p)

    p = sub.add_parser("score", help="print the full per-protocol score breakdown")
    _add_common(p)
    p.set_defaults(format="json")

    p = sub.add_parser("sensitivity", help="rank-correlate variant weight schemes "
                                           "against a baseline")
    _add_common(p, weights=False)
    p.add_argument("--baseline", metavar="PATH", default=None,
                   help="baseline scheme file (default: bundled default)")
    p.add_argument("--variants", metavar="PATH", nargs="+", default=None,
                   help="variant scheme files (default: bundled scenario schemes)")
    p.add_argument("--level", choices=("ivmf", "tm"), default="ivmf",
                   help="which composite to rank (default: ivmf)")

    p = sub.add_parser("lint", help="cross-check stored scores against "
                                    "collusion-expression annotations")
    _add_common(p, weights=False)
    p.add_argument("--strict", action="store_true",
                   help="exit 1 when findings exist (for CI)")

    p = sub.add_parser("hist", help="bin the normalized maturity scores")
    _add_common(p)
    p.add_argument("--bins", type=int, default=10, help="bin count (default: 10)")
    p.add_argument("--range", nargs=2, type=float, default=(0.0, 1.0),
                   metavar=("LO", "HI"), help="histogram range (default: 0 1)")
    p.add_argument("--figure", metavar="PNG", default=None,
                   help="also render the histogram to this image file")

    p = sub.add_parser("report", help="write scores, sensitivity tables, histogram "
                                      "data and figures to a directory")
    _add_common(p)
    p.add_argument("--outdir", metavar="DIR", required=True)
    p.add_argument("--bins", type=int, default=10)

    p = sub.add_parser("serve", help="start the HTTP scoring service")
    p.add_argument("--dataset", metavar="PATH", default=None)
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors-origin", metavar="ORIGIN", action="append", default=None,
                   help="allow this origin for cross-origin requests (repeatable)")

    return parser


def _load_dataset(args):
    path = args.dataset or os.environ.get("IVMF_DATASET")
    if path:
        return load_dataset(path)
    return load_bundled_dataset()


def _load_weights(args):
    weights = getattr(args, "weights", None)
    if weights:
        return load_weights(weights)
    return load_bundled_weights("default")


def _warn(table) -> None:
    for column in table.warnings:
        print(f"warning: column {column} is constant; normalized to zeros",
              file=sys.stderr)


def cmd_rank(args) -> int:
    table = ivmf_scores(_load_dataset(args), _load_weights(args))
    _warn(table)
    sys.stdout.write(write_report(table, args.format))
    return 0


def cmd_score(args) -> int:
    table = ivmf_scores(_load_dataset(args), _load_weights(args))
    _warn(table)
    sys.stdout.write(write_report(table, args.format))
    return 0


def cmd_sensitivity(args) -> int:
    dataset = _load_dataset(args)
    baseline = load_weights(args.baseline) if args.baseline else load_bundled_weights()
    level = args.level.upper()
    if args.variants:
        variants = [load_weights(p) for p in args.variants]
    else:
        variants = [load_weights(bundled_weights_path(name))
                    for name in DEFAULT_VARIANTS[level]]
    rows = sensitivity_table(dataset, baseline, variants, level=level)
    sys.stdout.write(write_report(rows, args.format))
    return 0


def cmd_lint(args) -> int:
    findings = lint_dataset(_load_dataset(args))
    if findings:
        sys.stdout.write(write_report(findings, args.format))
    else:
        print("no findings")
    if findings and args.strict:
        return 1
    return 0


def cmd_hist(args) -> int:
    table = ivmf_scores(_load_dataset(args), _load_weights(args))
    lo, hi = args.range
    spec = histogram([r.ivmf_norm for r in table.rows], args.bins, lo, hi)
    sys.stdout.write(write_report(spec, args.format))
    if args.figure:
        from .figures import render_histogram

        render_histogram(spec, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def cmd_report(args) -> int:
    from .figures import render_histogram

    dataset = _load_dataset(args)
    scheme = _load_weights(args)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    table = ivmf_scores(dataset, scheme)
    _warn(table)
    for fmt, suffix in (("json", "json"), ("csv", "csv"), ("markdown", "md")):
        (outdir / f"scores.{suffix}").write_text(write_report(table, fmt), "utf-8")

    for level in ("IVMF", "TM"):
        variants = [load_weights(bundled_weights_path(name))
                    for name in DEFAULT_VARIANTS[level]]
        rows = sensitivity_table(dataset, scheme, variants, level=level)
        stem = f"sensitivity-{level.lower()}"
        for fmt, suffix in (("json", "json"), ("csv", "csv"), ("markdown", "md")):
            (outdir / f"{stem}.{suffix}").write_text(write_report(rows, fmt), "utf-8")

    spec = histogram([r.ivmf_norm for r in table.rows], args.bins, 0.0, 1.0)
    (outdir / "histogram.csv").write_text(write_report(spec, "csv"), "utf-8")
    (outdir / "histogram.json").write_text(write_report(spec, "json"), "utf-8")
    render_histogram(spec, outdir / "maturity-histogram.png")

    findings = lint_dataset(dataset)
    if findings:
        (outdir / "lint.md").write_text(write_report(findings, "markdown"), "utf-8")

    (outdir / "dataset.json").write_text(
        canonical_dumps(dataset_to_document(dataset)), "utf-8"
    )
    (outdir / "discrepancies.md").write_text(discrepancies_markdown(), "utf-8")

    print(f"report written to {outdir}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    path = args.dataset or os.environ.get("IVMF_DATASET")
    app = create_app(dataset_path=path, cors_origins=args.cors_origin)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "rank": cmd_rank,
    "score": cmd_score,
    "sensitivity": cmd_sensitivity,
    "lint": cmd_lint,
    "hist": cmd_hist,
    "report": cmd_report,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

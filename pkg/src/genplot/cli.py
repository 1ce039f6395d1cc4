"""Command-line interface: ``genplot generate | verify | vocab build``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .errors import ConfigError, GeneratorError
from .pipeline import GenConfig, run_generation
from .series import PLOT_TYPES

THROUGHPUT_TARGET = 100.0  # charts/s on 4 desktop cores; informational only


def _generate(args):
    from .config import load_config, parse_type_weights

    kwargs = load_config(args.config) if args.config else {}
    for flag, name in (("total", "total"), ("seed", "root_seed"), ("out", "output_dir"),
                       ("workers", "workers"), ("png_scale", "png_scale"),
                       ("groups", "groups_path"), ("places", "places_path")):
        value = getattr(args, flag)
        if value is not None:
            kwargs[name] = value
    if args.types is not None:
        kwargs["type_weights"] = parse_type_weights(args.types)
    if args.png:
        kwargs["emit_png"] = True
    if args.overwrite:
        kwargs["overwrite"] = True
    if "total" not in kwargs or "output_dir" not in kwargs:
        raise ValueError("generate: --total and --out are required (flag or config file)")
    config = GenConfig(**kwargs)
    summary = run_generation(config)
    print(f"manifest\t{summary.manifest_path}")
    for t in PLOT_TYPES:
        print(f"count_{t}\t{summary.counts[t]}")
    print(f"failed\t{len(summary.failures)}")
    print(f"seconds\t{summary.seconds:.3f}")
    print(f"charts_per_second\t{summary.charts_per_second:.1f}\t(soft target {THROUGHPUT_TARGET:.0f})")
    return 1 if summary.failures else 0


def _verify(args):
    from .verify import verify_dataset

    report = verify_dataset(args.manifest)
    print(f"records\t{report.checked}")
    for name, count in report.counts.items():
        print(f"{name}\t{count}")
    for v in report.violations:
        print(f"violation\t{v.id}\t{v.invariant}\t{v.detail}")
    if args.report:
        from .report import write_report

        for p in write_report(report, args.report):
            print(f"wrote\t{p}")
    return 0 if report.ok else 1


def _vocab_build(args):
    from .vocab import build_word_groups, load_embeddings, read_lines, save_word_groups

    table = load_embeddings(args.embeddings, filter_ascii=not args.keep_non_ascii)
    seeds = read_lines(args.seeds)
    groups = build_word_groups(table, seeds, k=args.k, hops=args.hops)
    save_word_groups(groups, args.out)
    print(f"words\t{len(table)}")
    print(f"groups\t{len(groups)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genplot", description=__doc__)
    p.add_argument("--version", action="version", version=f"genplot {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a chart corpus")
    g.add_argument("--total", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.add_argument("--types", help="weights, e.g. vbar=1,hbar=1,scatter=1,line=1,dot=1")
    g.add_argument("--png", action="store_true", help="also rasterise each chart to PNG")
    g.add_argument("--png-scale", type=float, dest="png_scale")
    g.add_argument("--workers", type=int)
    g.add_argument("--config")
    g.add_argument("--groups", help="word-group JSONL file (default: bundled)")
    g.add_argument("--places", help="place-name list (default: bundled)")
    g.add_argument("--overwrite", action="store_true", help="replace an existing corpus in --out")
    g.set_defaults(func=_generate)

    v = sub.add_parser("verify", help="re-check a generated corpus")
    v.add_argument("--manifest", required=True)
    v.add_argument("--report", metavar="DIR", help="write TSV tables and summary figures here")
    v.set_defaults(func=_verify)

    voc = sub.add_parser("vocab", help="vocabulary tools")
    vsub = voc.add_subparsers(dest="vocab_command", required=True)
    b = vsub.add_parser("build", help="build word groups from an embedding file")
    b.add_argument("--embeddings", required=True)
    b.add_argument("--seeds", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--k", type=int, default=25)
    b.add_argument("--hops", type=int, choices=(1, 2), default=2)
    b.add_argument("--keep-non-ascii", action="store_true")
    b.set_defaults(func=_vocab_build)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GeneratorError, ValueError, FileExistsError, OSError) as exc:
        print(f"genplot: error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, (ValueError, FileExistsError, ConfigError)) else 1


if __name__ == "__main__":
    sys.exit(main())

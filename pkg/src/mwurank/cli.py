"""Command-line pipeline: prep -> count -> score -> rank -> eval -> report.

Each stage reads the previous stage's file artifact, so intermediate
results stay inspectable and cacheable. Exit codes: 0 success, 1 usage
error, 2 data/format error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from pathlib import Path

from . import counts, prep, report as report_mod, scoring
from .errors import (DataFormatError, InconsistentTableError, MwuRankError,
                     UsageError)
from .measures import MEASURES
from .ranking import (EvaluationConfig, RankedList, evaluate_rankings,
                      stopword_boundary_filter)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

MEASURE_CHOICES = sorted(MEASURES) + ["mi"]


def _load_charset(path: str) -> frozenset[str]:
    """Read a character-set file: every non-whitespace character counts."""
    text = Path(path).read_text(encoding="utf-8")
    return frozenset(c for c in text if not c.isspace())


def _load_wordlist(path: str) -> frozenset[str]:
    return frozenset(Path(path).read_text(encoding="utf-8").split())


def _norm_config(args) -> prep.NormalizationConfig:
    kwargs = {}
    if getattr(args, "locale", None):
        kwargs["locale"] = args.locale
    if getattr(args, "nontoken", None):
        kwargs["nontoken_chars"] = _load_charset(args.nontoken)
    if getattr(args, "delimiters", None):
        kwargs["segment_delimiters"] = frozenset(args.delimiters) | {"\n"}
    return prep.NormalizationConfig(**kwargs)


def _eval_config(args) -> EvaluationConfig:
    kwargs = {}
    if getattr(args, "anchor", None):
        anchor = tuple(args.anchor.split())
        kwargs["positive_anchor"] = anchor
        kwargs["negative_prefix"] = anchor
        kwargs["stop_whitelist"] = frozenset({anchor})
    if getattr(args, "depth", None):
        kwargs["inspection_depth"] = args.depth
    if getattr(args, "stoplist", None):
        kwargs["stop_set"] = _load_wordlist(args.stoplist)
    return EvaluationConfig(**kwargs)


def _input_paths(raw: list[str]) -> list[Path]:
    """Expand files and directories; directory contents in sorted order."""
    out: list[Path] = []
    for item in raw:
        p = Path(item)
        if p.is_dir():
            out.extend(sorted(q for q in p.rglob("*") if q.is_file()))
        elif p.is_file():
            out.append(p)
        else:
            raise DataFormatError(f"cannot read input path: {item}")
    return out


def cmd_prep(args) -> int:
    cfg = _norm_config(args)
    if args.inputs == ["-"]:
        texts = [prep.decode_bytes(sys.stdin.buffer.read(), args.encoding)]
    else:
        texts = [prep.decode_bytes(p.read_bytes(), args.encoding)
                 for p in _input_paths(args.inputs)]
    segments = []
    for text in texts:
        segments.extend(prep.build_corpus(text, cfg).segments)
    corpus = prep.SegmentedCorpus(segments)
    if args.output:
        prep.write_corpus(corpus, args.output, encoding=args.encoding)
    else:
        for line in prep.corpus_to_lines(corpus):
            print(line)
    print(f"segments: {corpus.segment_count}  tokens: {corpus.token_count}",
          file=sys.stderr)
    return EXIT_OK


def _count_sharded(corpus: prep.SegmentedCorpus, n: int,
                   threads: int) -> counts.NgramCountTable:
    if threads <= 1 or corpus.segment_count < 2 * threads:
        return counts.count_ngrams(corpus, n)
    step = -(-corpus.segment_count // threads)
    shards = [prep.SegmentedCorpus(corpus.segments[i:i + step])
              for i in range(0, corpus.segment_count, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        tables = list(pool.map(lambda sh: counts.count_ngrams(sh, n), shards))
    return reduce(counts.merge_tables, tables)


def cmd_count(args) -> int:
    corpus = prep.read_corpus(args.corpus, encoding=args.encoding)
    table = _count_sharded(corpus, args.ngram, args.threads)
    table = counts.apply_cutoff(table, counts.CutoffPolicy(args.remove))
    if args.format == "tsv":
        counts.write_count_tsv(table, args.output, encoding=args.encoding)
    else:
        counts.write_count_file(table, args.output, encoding=args.encoding)
    print(f"{args.ngram}-grams kept: {len(table.joint)}  "
          f"windows: {table.total}", file=sys.stderr)
    return EXIT_OK


def cmd_score(args) -> int:
    table = counts.read_count_file(args.countfile, encoding=args.encoding)
    ranked = scoring.score_table(table, args.measure,
                                 precision=args.precision)
    writer = {"nsp": scoring.write_score_file,
              "tsv": scoring.write_score_tsv}.get(args.format)
    if writer:
        writer(ranked, args.output, precision=args.precision,
               encoding=args.encoding)
    else:
        scoring.write_score_json(ranked, args.output, encoding=args.encoding)
    return EXIT_OK


def cmd_rank(args) -> int:
    ranked = scoring.read_score_file(args.scorefile, args.measure, args.ngram,
                                     encoding=args.encoding)
    if args.stopfilter:
        ranked = stopword_boundary_filter(ranked, _eval_config(args))
    excerpt = RankedList(ranked.measure, ranked.n, ranked.top(args.depth))
    scoring.write_score_file(excerpt, args.output, precision=args.precision,
                             encoding=args.encoding)
    return EXIT_OK


def _parse_score_specs(specs: list[str], encoding: str) -> list[RankedList]:
    lists = []
    for spec in specs:
        parts = spec.split(":", 2)
        if len(parts) != 3:
            raise UsageError(
                f"--scores entry {spec!r} must look like measure:n:path")
        measure, n_str, path = parts
        try:
            n = int(n_str)
        except ValueError:
            raise UsageError(f"bad gram size in --scores entry {spec!r}")
        lists.append(scoring.read_score_file(path, measure, n,
                                             encoding=encoding))
    return lists


def cmd_eval(args) -> int:
    lists = _parse_score_specs(args.scores, args.encoding)
    rep = evaluate_rankings(lists, _eval_config(args))
    if args.format == "json":
        report_mod.write_report_json(rep, args.output or "/dev/stdout")
    elif args.format == "tsv":
        report_mod.write_report_tsv(rep, args.output or "/dev/stdout")
    else:
        text = report_mod.report_text(rep)
        if args.output:
            Path(args.output).write_text(text, encoding=args.encoding)
        else:
            print(text, end="")
    return EXIT_OK


def cmd_report(args) -> int:
    lists = _parse_score_specs(args.scores, args.encoding)
    rep = evaluate_rankings(lists, _eval_config(args))
    written = report_mod.write_report(rep, args.outdir, rankings=lists,
                                      encoding=args.encoding)
    for path in written:
        print(path, file=sys.stderr)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--encoding", default="utf-8",
                   help="text encoding for all files (default utf-8)")
    p.add_argument("--config", metavar="FILE",
                   help="JSON config file; its values override flags")


def _add_eval_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scores", metavar="MEASURE:N:PATH", action="append",
                   required=True, help="score file with its measure and "
                   "gram size; repeatable")
    p.add_argument("--anchor", default=None,
                   help="positive anchor bigram (default 'ya da')")
    p.add_argument("--depth", type=int, default=None,
                   help="inspection depth (default 20)")
    p.add_argument("--stoplist", metavar="FILE",
                   help="stop-word list, one word per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwurank",
        description="Extract, score, and validate multi-word-unit "
                    "candidate n-grams from raw text corpora.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prep", help="normalize, segment, and tokenize text")
    p.add_argument("inputs", nargs="+",
                   help="text files or directories; '-' reads stdin")
    p.add_argument("--output", "-o", help="corpus file (default stdout)")
    p.add_argument("--locale", choices=("turkish", "default"),
                   default="turkish")
    p.add_argument("--nontoken", metavar="FILE",
                   help="file of characters to treat as token separators")
    p.add_argument("--delimiters",
                   help="segment delimiter characters (newline always "
                        "included)")
    _add_common(p)
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("count", help="count n-grams with a frequency cutoff")
    p.add_argument("corpus", help="line-per-segment corpus file")
    p.add_argument("--ngram", type=int, choices=counts.VALID_NGRAM_SIZES,
                   default=2)
    p.add_argument("--remove", type=int, default=10, metavar="F",
                   help="drop n-grams occurring fewer than F times "
                        "(default 10)")
    p.add_argument("--threads", type=int, default=1,
                   help="shard-parallel counting; output is identical for "
                        "any value")
    p.add_argument("--format", choices=("nsp", "tsv"), default="nsp")
    p.add_argument("--output", "-o", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("score", help="score a count file with one measure")
    p.add_argument("countfile")
    p.add_argument("--measure", required=True, choices=MEASURE_CHOICES)
    p.add_argument("--format", choices=("nsp", "tsv", "json"), default="nsp")
    p.add_argument("--precision", type=int, default=scoring.DEFAULT_PRECISION)
    p.add_argument("--output", "-o", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("rank", help="top-K excerpt of a score file, with "
                                    "optional stop-word boundary filtering")
    p.add_argument("scorefile")
    p.add_argument("--measure", required=True, choices=MEASURE_CHOICES)
    p.add_argument("--ngram", type=int, choices=counts.VALID_NGRAM_SIZES,
                   required=True)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--stopfilter", action="store_true",
                   help="apply the stop-word boundary filter")
    p.add_argument("--stoplist", metavar="FILE")
    p.add_argument("--anchor", default=None)
    p.add_argument("--precision", type=int, default=scoring.DEFAULT_PRECISION)
    p.add_argument("--output", "-o", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("eval", help="validity verdicts for score files")
    _add_eval_opts(p)
    p.add_argument("--format", choices=("text", "tsv", "json"),
                   default="text")
    p.add_argument("--output", "-o", help="report file (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("report", help="full report: text, TSV, JSON, figures")
    _add_eval_opts(p)
    p.add_argument("--outdir", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_report)

    return parser


def _apply_config_file(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    try:
        overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataFormatError(f"cannot read config file: {exc}") from exc
    if not isinstance(overrides, dict):
        raise DataFormatError("config file must hold a JSON object")
    for key, value in overrides.items():
        if not hasattr(args, key):
            raise UsageError(f"config key {key!r} is not an option of "
                             f"the {args.command!r} command")
        setattr(args, key, value)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for bad usage; remap to our convention
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        _apply_config_file(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InconsistentTableError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except MwuRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def run() -> None:
    sys.exit(main())

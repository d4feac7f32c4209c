"""Command line entry point dispatching the toolkit subcommands.

Exit codes: 0 success, 1 usage error (with usage text), 2 data error (with
file or line context). Every run echoes its resolved configuration to stderr
so outputs can be reproduced.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import NoReturn

from . import aligner, metrics, mixing, partials, session
from .corpus import (
    detokenize,
    format_alignment,
    load_corpus,
    read_alignments,
    read_lines,
    write_lines,
)
from .errors import CorpusMismatchError, DataError, TranslatorError

DEFAULT_SEED = 17


class UsageError(Exception):
    def __init__(self, message: str, usage: str = "") -> None:
        self.usage = usage
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems via UsageError."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, self.format_usage())


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation, echoed to stderr for reproducibility."""

    command: str
    seed: int
    verbose: int
    options: dict[str, object]

    def render(self) -> str:
        parts = [f"command={self.command}", f"seed={self.seed}", f"verbose={self.verbose}"]
        parts += [f"{k}={v}" for k, v in sorted(self.options.items())]
        return "config: " + " ".join(parts)


def _echo_config(args: argparse.Namespace) -> None:
    options = {
        k: v
        for k, v in vars(args).items()
        if k not in {"func", "parser", "command", "seed", "verbose"} and v is not None
    }
    config = RunConfig(args.command, args.seed, args.verbose, options)
    print(config.render(), file=sys.stderr)


def _note(args: argparse.Namespace, message: str) -> None:
    if args.verbose:
        print(message, file=sys.stderr)


def _lenient_tokens(lines: list[str]) -> list[tuple[str, ...]]:
    return [tuple(line.split()) for line in lines]


def cmd_align(args: argparse.Namespace) -> int:
    if args.iterations < 1:
        raise UsageError("--iterations must be >= 1", args.parser.format_usage())
    corpus = load_corpus(args.src, args.tgt)
    table = aligner.train_model1(corpus, args.iterations)
    _note(args, f"trained on {len(corpus)} pairs, {args.iterations} iterations")
    alignments = aligner.align_corpus(table, corpus)
    write_lines(args.out, [format_alignment(a) for a in alignments])
    if args.table_out:
        write_lines(
            args.table_out,
            [f"{e}\t{f}\t{p:.12g}" for e, f, p in aligner.table_rows(table)],
        )
    return 0


def cmd_gen_partial(args: argparse.Namespace) -> int:
    method = partials.Method(args.method)
    if args.min_i < 1:
        raise UsageError("--min-i must be >= 1", args.parser.format_usage())
    if method is partials.Method.ALIGNMENT and not args.alignments:
        raise UsageError(
            "--alignments is required with --method alignment",
            args.parser.format_usage(),
        )
    corpus = load_corpus(args.src, args.tgt)
    alignments = None
    if method is partials.Method.ALIGNMENT:
        alignments = read_alignments(read_lines(args.alignments), corpus)
    partial = partials.generate_partial(corpus, method, alignments, args.min_i)
    _note(args, f"generated {len(partial)} prefix rows from {len(corpus)} pairs")
    src_lines, tgt_lines = partials.partial_lines(partial)
    write_lines(f"{args.out_prefix}.src", src_lines)
    write_lines(f"{args.out_prefix}.tgt", tgt_lines)
    write_lines(f"{args.out_prefix}.manifest.tsv", partials.manifest_lines(partial))
    return 0


def cmd_mix(args: argparse.Namespace) -> int:
    full = load_corpus(args.full_src, args.full_tgt)
    partial = partials.read_partial(
        read_lines(args.partial_src), read_lines(args.partial_tgt)
    )
    mixed, manifest = mixing.mix(full, partial, args.seed)
    _note(args, f"mixed {manifest.full_count} full + {manifest.partial_sampled} partial rows")
    write_lines(f"{args.out_prefix}.src", [detokenize(p.source) for p in mixed])
    write_lines(f"{args.out_prefix}.tgt", [detokenize(p.target) for p in mixed])
    write_lines(
        f"{args.out_prefix}.manifest.txt",
        [
            f"full_count: {manifest.full_count}",
            f"partial_total: {manifest.partial_total}",
            f"partial_sampled: {manifest.partial_sampled}",
            f"seed: {manifest.seed}",
            f"output_size: {manifest.output_size}",
        ],
    )
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    hyp_lines = read_lines(args.hyp)
    ref_lines = read_lines(args.ref)
    if len(hyp_lines) != len(ref_lines):
        raise CorpusMismatchError(len(hyp_lines), len(ref_lines))
    if not hyp_lines:
        raise DataError("nothing to score: both files are empty")
    hyps = _lenient_tokens(hyp_lines)
    refs = _lenient_tokens(ref_lines)
    if args.metric == "bleu":
        value = metrics.bleu(hyps, refs, smooth=args.smooth)
        print(f"bleu\t{value:.4f}")
        print(f"bleu100\t{100 * value:.4f}")
    elif args.metric == "gleu":
        value = metrics.mean_gleu(hyps, refs)
        print(f"gleu\t{value:.4f}")
    else:
        edits = 0
        ref_total = 0
        for hyp, ref in zip(hyps, refs):
            e, _ = metrics.wer(hyp, ref)
            edits += e
            ref_total += len(ref)
        print(f"wer\t{edits / ref_total:.4f}")
    return 0


def cmd_reseg(args: argparse.Namespace) -> int:
    stream: tuple[str, ...] = ()
    for line in read_lines(args.hyp_stream):
        stream += tuple(line.split())
    refs = [tuple(line.split()) for line in read_lines(args.refs)]
    segments = metrics.resegment(stream, refs)
    write_lines(args.out, [detokenize(s) for s in segments])
    return 0


def _build_translator(spec: str, timeout: float):
    name, _, rest = spec.partition(":")
    if name == "identity":
        return session.identity_translator, None
    if name == "dict":
        if not rest:
            raise UsageError("dict translator needs a file: dict:FILE")
        lexicon = session.load_tsv_map(read_lines(rest), what="lexicon")
        for src, tgt in lexicon.items():
            if len(src.split()) != 1 or len(tgt.split()) != 1:
                raise DataError(f"lexicon entry {src!r} -> {tgt!r} is not word-to-word")
        return session.dictionary_translator(lexicon), None
    if name == "script":
        if not rest:
            raise UsageError("script translator needs a file: script:FILE")
        return session.scripted_translator(
            session.load_tsv_map(read_lines(rest), what="script")
        ), None
    if name == "cmd":
        if not rest:
            raise UsageError("cmd translator needs a command: cmd:\"...\"")
        adapter = session.CommandTranslator(rest, timeout=timeout)
        return adapter, adapter
    raise UsageError(f"unknown translator {spec!r}")


def cmd_simulate(args: argparse.Namespace) -> int:
    events = session.read_events(read_lines(args.events))
    translator, adapter = _build_translator(args.translator, args.timeout)
    try:
        logs = session.run_session(events, translator)
    finally:
        if adapter is not None:
            adapter.close()
    if args.log_out:
        lines = []
        for log in logs:
            for step, (source, translation) in enumerate(log.steps):
                lines.append(
                    json.dumps(
                        {
                            "utterance_id": log.utterance_id,
                            "step": step,
                            "source": detokenize(source),
                            "translation": detokenize(translation),
                        },
                        ensure_ascii=False,
                    )
                )
        write_lines(args.log_out, lines)
    report_lines = []
    if args.refs:
        refs = [tuple(line.split()) for line in read_lines(args.refs)]
        report = session.evaluate_sessions(logs, refs)
        report_lines.append(f"bleu: {report.bleu:.4f}")
        report_lines.append(f"word_up: {report.words_updated}")
        report_lines.append(f"mssg_up: {report.messages_updated}")
        report_lines.append(f"updates_total: {report.updates_total}")
    else:
        totals = metrics.CorrectionReport(0, 0, 0)
        for log in logs:
            totals = totals + metrics.correction_report(log.translations)
        report_lines.append(f"word_up: {totals.words_updated}")
        report_lines.append(f"mssg_up: {totals.messages_updated}")
        report_lines.append(f"updates_total: {totals.updates_total}")
    for line in report_lines:
        print(line)
    if args.report_out:
        write_lines(args.report_out, report_lines)
    return 0


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="extra diagnostics"
    )

    parser = _Parser(prog="retrans", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("align", parents=[common], help="train a lexical table and align a corpus")
    p.add_argument("--src", required=True, help="source corpus file")
    p.add_argument("--tgt", required=True, help="target corpus file")
    p.add_argument("--iterations", type=int, default=5, help="EM iterations")
    p.add_argument("--out", required=True, help="output alignment file")
    p.add_argument("--table-out", help="optional TSV dump of the lexical table")
    p.set_defaults(func=cmd_align, parser=p)

    p = sub.add_parser("gen-partial", parents=[common], help="generate prefix-pair training rows")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--method", required=True, choices=[m.value for m in partials.Method])
    p.add_argument("--alignments", help="alignment file (required for --method alignment)")
    p.add_argument("--min-i", type=int, default=1, dest="min_i")
    p.add_argument("--out-prefix", required=True, dest="out_prefix")
    p.set_defaults(func=cmd_gen_partial, parser=p)

    p = sub.add_parser("mix", parents=[common], help="mix full and prefix corpora 1:1")
    p.add_argument("--full-src", required=True, dest="full_src")
    p.add_argument("--full-tgt", required=True, dest="full_tgt")
    p.add_argument("--partial-src", required=True, dest="partial_src")
    p.add_argument("--partial-tgt", required=True, dest="partial_tgt")
    p.add_argument("--out-prefix", required=True, dest="out_prefix")
    p.set_defaults(func=cmd_mix, parser=p)

    p = sub.add_parser("score", parents=[common], help="score hypothesis files")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--metric", required=True, choices=["bleu", "gleu", "wer"])
    p.add_argument("--smooth", action="store_true", help="add-one smoothing for bleu")
    p.set_defaults(func=cmd_score, parser=p)

    p = sub.add_parser("reseg", parents=[common], help="resegment a stream against references")
    p.add_argument("--hyp-stream", required=True, dest="hyp_stream")
    p.add_argument("--refs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reseg, parser=p)

    p = sub.add_parser("simulate", parents=[common], help="replay an update stream through a translator")
    p.add_argument("--events", required=True, help="JSON-lines update events")
    p.add_argument(
        "--translator",
        required=True,
        help="identity | dict:FILE | script:FILE | cmd:\"...\"",
    )
    p.add_argument("--refs", help="reference stream for BLEU (one segment per line)")
    p.add_argument("--log-out", dest="log_out", help="JSON-lines step log")
    p.add_argument("--report-out", dest="report_out", help="key:value metrics file")
    p.add_argument("--timeout", type=float, default=30.0, help="per-line timeout for cmd translators")
    p.set_defaults(func=cmd_simulate, parser=p)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        if err.usage:
            print(err.usage, file=sys.stderr, end="")
        print(f"error: {err}", file=sys.stderr)
        return 1
    _echo_config(args)
    try:
        return args.func(args)
    except UsageError as err:
        if err.usage:
            print(err.usage, file=sys.stderr, end="")
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (DataError, TranslatorError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()

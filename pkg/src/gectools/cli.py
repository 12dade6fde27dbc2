"""Command-line interface.

Subcommands cover the full pipeline: edit extraction (extract), scoring
(score), corpus statistics (stats), corpus filtering (filter), synthetic
error generation (synth), language-model training and scoring (lm-train,
lm-score) and n-best re-ranking (rerank).

Exit codes: 0 on success, 1 on data errors (malformed or inconsistent
input files), 2 on usage errors, including paired inputs whose lengths
do not match.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from typing import IO, Iterator

from gectools import lm as lm_mod
from gectools import synth as synth_mod
from gectools.align import extract_edits
from gectools.classify import classify_all
from gectools.errors import GecToolsError, LengthMismatch
from gectools.lexicon import Lexicon
from gectools.m2 import read_m2, write_m2
from gectools.score import corpus_stats, format_stats, score_corpus
from gectools.text import parse_conllu, render, tokenize

log = logging.getLogger("gectools")


@contextlib.contextmanager
def _open_in(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


@contextlib.contextmanager
def _open_out(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _read_sentences(path: str, conllu: bool):
    with _open_in(path) as fh:
        if conllu:
            return parse_conllu(fh)
        return [tokenize(line) for line in fh if line.strip()]


def cmd_extract(args) -> int:
    log.info(
        "extract: orig=%s corr=%s conllu=%s lexicon=%s", args.orig, args.corr, args.conllu, args.lexicon
    )
    orig_sents = _read_sentences(args.orig, args.conllu)
    corr_sents = _read_sentences(args.corr, args.conllu)
    if len(orig_sents) != len(corr_sents):
        raise LengthMismatch(
            f"{args.orig} has {len(orig_sents)} sentences, {args.corr} has {len(corr_sents)}"
        )
    pairs = list(zip(orig_sents, corr_sents))
    if args.conllu and args.lexicon:
        lexicon = Lexicon.from_file(args.lexicon)
        edit_lists = classify_all(pairs, lexicon)
    else:
        edit_lists = [extract_edits(orig, corr) for orig, corr in pairs]
    with _open_out(args.output) as out:
        for (orig, _), edits in zip(pairs, edit_lists):
            write_m2(orig, edits, out)
    return 0


def cmd_score(args) -> int:
    log.info("score: ref=%s hyp=%s beta=%s", args.ref, args.hyp, args.beta)
    with _open_in(args.ref) as fh:
        ref = read_m2(fh)
    with _open_in(args.hyp) as fh:
        hyp = read_m2(fh)
    if len(ref) != len(hyp):
        raise LengthMismatch(f"{args.ref} has {len(ref)} sentences, {args.hyp} has {len(hyp)}")
    report = score_corpus([edits for _, edits in ref], [edits for _, edits in hyp], beta=args.beta)
    print(f"TP {report.tp}  FP {report.fp}  FN {report.fn}")
    print(
        f"Precision {report.precision:.4f}  Recall {report.recall:.4f}  "
        f"F{report.beta:g} {report.fscore:.4f}"
    )
    for etype in sorted(report.per_type):
        counts = report.per_type[etype]
        p, r, f = report.type_prf(etype)
        print(
            f"{etype:<16} tp={counts.tp:<5} fp={counts.fp:<5} fn={counts.fn:<5} "
            f"P={p:.4f} R={r:.4f} F{report.beta:g}={f:.4f}"
        )
    return 0


def cmd_stats(args) -> int:
    with _open_in(args.m2) as fh:
        entries = read_m2(fh)
    print(format_stats(corpus_stats([edits for _, edits in entries])))
    return 0


def _filter_config(args) -> synth_mod.FilterConfig:
    return synth_mod.FilterConfig(
        min_words=args.min_words,
        min_diacritic_ratio=args.min_diacritic_ratio,
        max_foreign_ratio=args.max_foreign_ratio,
    )


def _add_filter_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-words", type=int, default=9, help="minimum word count (default 9)")
    parser.add_argument(
        "--min-diacritic-ratio",
        type=float,
        default=0.01,
        help="minimum diacritic/non-diacritic ratio (default 0.01)",
    )
    parser.add_argument(
        "--max-foreign-ratio",
        type=float,
        default=0.025,
        help="maximum foreign-character ratio (default 0.025)",
    )


def cmd_filter(args) -> int:
    cfg = _filter_config(args)
    log.info("filter: input=%s %s", args.input, cfg)
    total = accepted = 0
    rejected: dict[int, int] = {}
    with _open_in(args.input) as fh, _open_out(args.output) as out:
        for raw_line in fh:
            line = raw_line.rstrip("\n")
            total += 1
            rule = synth_mod.filter_sentence(line, cfg)
            if rule is None:
                accepted += 1
                out.write(line + "\n")
            else:
                rejected[rule] = rejected.get(rule, 0) + 1
    print(f"input lines: {total}", file=sys.stderr)
    print(f"accepted: {accepted}", file=sys.stderr)
    for rule in sorted(rejected):
        print(
            f"rejected by rule {rule} ({synth_mod.RULE_NAMES[rule]}): {rejected[rule]}",
            file=sys.stderr,
        )
    return 0


def cmd_synth(args) -> int:
    filter_cfg = _filter_config(args)
    synth_cfg = synth_mod.SynthConfig(
        mean_error_rate=args.mean_error_rate,
        std_error_rate=args.std_error_rate,
        confusion_size=args.confusion_size,
        char_word_rate=args.char_word_rate,
        seed=args.seed,
    )
    log.info("synth: input=%s seed=%d jobs=%d %s %s", args.input, args.seed, args.jobs, filter_cfg, synth_cfg)
    lexicon = Lexicon.from_file(args.lexicon)
    provider = synth_mod.ConfusionProvider(lexicon, max_distance=args.max_distance)
    with _open_in(args.input) as fh, _open_out(args.output) as out:
        stats = synth_mod.generate_corpus(fh, filter_cfg, synth_cfg, provider, out, jobs=args.jobs)
    print(stats.format(), file=sys.stderr)
    return 0


def cmd_lm_train(args) -> int:
    log.info("lm-train: input=%s order=%d discount=%s output=%s", args.input, args.order, args.discount, args.output)

    def sentences():
        with _open_in(args.input) as fh:
            for line in fh:
                if line.strip():
                    yield tokenize(line)

    counts = lm_mod.count_ngrams(sentences(), args.order)
    model = lm_mod.train_kneser_ney(counts, discounts=args.discount)
    with _open_out(args.output) as out:
        lm_mod.write_arpa(model, out)
    return 0


def cmd_lm_score(args) -> int:
    log.info("lm-score: model=%s input=%s", args.model, args.input)
    with _open_in(args.model) as fh:
        model = lm_mod.read_arpa(fh)
    total_logprob = 0.0
    total_tokens = 0
    with _open_in(args.input) as fh, _open_out(args.output) as out:
        for line in fh:
            if not line.strip():
                continue
            sentence = tokenize(line)
            lp = lm_mod.logprob(model, sentence)
            out.write(f"{lp:.4f}\t{lp / (len(sentence) + 1):.4f}\n")
            total_logprob += lp
            total_tokens += len(sentence) + 1
    if total_tokens:
        ppl = 10.0 ** (-total_logprob / total_tokens)
        print(f"tokens: {total_tokens}  logprob: {total_logprob:.4f}  perplexity: {ppl:.4f}", file=sys.stderr)
    return 0


def cmd_rerank(args) -> int:
    log.info(
        "rerank: model=%s nbest=%s lm_weight=%s length_normalize=%s",
        args.model, args.nbest, args.lm_weight, args.length_normalize,
    )
    with _open_in(args.model) as fh:
        model = lm_mod.read_arpa(fh)
    with _open_in(args.nbest) as fh:
        groups = lm_mod.read_nbest(fh)
    cfg = lm_mod.RerankConfig(lm_weight=args.lm_weight, length_normalize=args.length_normalize)
    with _open_out(args.output) as out:
        for group in groups:
            best = lm_mod.rerank(group, model, cfg)
            out.write(render(best.sentence) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gectools",
        description="Grammatical-error-correction data tools: edit extraction, "
        "classification, scoring, corpus synthesis and LM re-ranking.",
    )
    parser.add_argument("--verbose", action="store_true", help="log effective configuration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract (and optionally classify) edits into M2")
    p.add_argument("orig", help="original sentences (text or CoNLL-U)")
    p.add_argument("corr", help="corrected sentences (text or CoNLL-U)")
    p.add_argument("--conllu", action="store_true", help="inputs are CoNLL-U files")
    p.add_argument("--lexicon", help="word list enabling error-type classification")
    p.add_argument("-o", "--output", help="output M2 file (default stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("score", help="score hypothesis edits against reference edits")
    p.add_argument("ref", help="reference M2 file")
    p.add_argument("hyp", help="hypothesis M2 file")
    p.add_argument("--beta", type=float, default=0.5, help="F-score beta (default 0.5)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("stats", help="error-type distribution of an M2 file")
    p.add_argument("m2", help="M2 file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("filter", help="keep clean, well-formed sentences")
    p.add_argument("input", help="raw corpus, one sentence per line ('-' for stdin)")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    _add_filter_flags(p)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("synth", help="filter a corpus and generate corrupted/original pairs")
    p.add_argument("input", help="raw corpus, one sentence per line ('-' for stdin)")
    p.add_argument("--lexicon", required=True, help="word list (word[<TAB>frequency] per line)")
    p.add_argument("--seed", type=int, required=True, help="base random seed")
    p.add_argument("-o", "--output", help="output TSV file (default stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--mean-error-rate", type=float, default=0.15)
    p.add_argument("--std-error-rate", type=float, default=0.2)
    p.add_argument("--confusion-size", type=int, default=20)
    p.add_argument("--char-word-rate", type=float, default=0.1)
    p.add_argument("--max-distance", type=int, default=2)
    _add_filter_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("lm-train", help="train a Kneser-Ney n-gram model, write ARPA")
    p.add_argument("input", help="training text, one sentence per line ('-' for stdin)")
    p.add_argument("-o", "--output", help="output ARPA file (default stdout)")
    p.add_argument("--order", type=int, default=5, help="model order (default 5)")
    p.add_argument(
        "--discount",
        type=float,
        default=None,
        help="fixed discount for all orders (default: estimate from data)",
    )
    p.set_defaults(func=cmd_lm_train)

    p = sub.add_parser("lm-score", help="score sentences with an ARPA model")
    p.add_argument("model", help="ARPA model file")
    p.add_argument("input", help="text to score, one sentence per line ('-' for stdin)")
    p.add_argument("-o", "--output", help="output TSV (logprob, normalized; default stdout)")
    p.set_defaults(func=cmd_lm_score)

    p = sub.add_parser("rerank", help="pick the best hypothesis of each n-best list")
    p.add_argument("model", help="ARPA model file")
    p.add_argument("nbest", help="n-best lists: 'sentence<TAB>score' lines, blank-line separated")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--lm-weight", type=float, default=1.0)
    p.add_argument("--length-normalize", action="store_true")
    p.set_defaults(func=cmd_rerank)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except LengthMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GecToolsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

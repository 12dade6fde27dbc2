"""Kneser-Ney n-gram language models.

Counting pads each sentence with order-1 <s> tokens and one </s>.
Estimation is interpolated Kneser-Ney with a single discount per order,
estimated from count-of-counts as n1/(n1 + 2*n2).  Lower-order counts
are continuation counts (the number of distinct left extensions) except
for grams starting with <s>, which keep their raw counts.  Models are
stored the standard ARPA way: per-gram log10 probability plus a log10
backoff weight on every gram that serves as a context.

<s> is never predicted.  Grams ending in <s> (necessarily runs of <s>
from the padding) therefore carry no probability mass; they appear as
dummy entries with log10 probability -99 so they can hold their backoff
weight, mirroring the conventional treatment of the <s> unigram.  With
that convention, the probabilities of any observed context sum to one
over the vocabulary minus <s>.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from gectools.errors import DegenerateCounts, EmptyInput, MalformedArpa, MalformedLine
from gectools.text import Sentence, Token

SOS = "<s>"
EOS = "</s>"
UNK = "<unk>"

DUMMY_LOGPROB = -99.0
FALLBACK_DISCOUNT = 0.75


@dataclass(frozen=True)
class NgramCounts:
    """Raw n-gram counts for every order up to `order`."""

    order: int
    counts: tuple[dict[tuple[str, ...], int], ...]

    def raw(self, n: int) -> dict[tuple[str, ...], int]:
        return self.counts[n - 1]


def count_ngrams(sentences: Iterable[Sentence], order: int) -> NgramCounts:
    """Count n-grams of all orders 1..order over a sentence stream."""
    if order < 1:
        raise ValueError("order must be at least 1")
    counts: tuple[dict[tuple[str, ...], int], ...] = tuple({} for _ in range(order))
    pad = (SOS,) * (order - 1)
    for sentence in sentences:
        padded = pad + tuple(t.form for t in sentence.tokens) + (EOS,)
        for n in range(1, order + 1):
            table = counts[n - 1]
            for i in range(len(padded) - n + 1):
                gram = padded[i : i + n]
                table[gram] = table.get(gram, 0) + 1
    return NgramCounts(order=order, counts=counts)


def _adjusted_counts(counts: NgramCounts) -> list[dict[tuple[str, ...], int]]:
    """Kneser-Ney adjusted counts, with grams ending in <s> removed.

    The highest order keeps raw counts.  Below it, a gram's count is the
    number of distinct words that precede it, except that grams starting
    with <s> (which can never be preceded) keep their raw counts.
    """
    order = counts.order
    adjusted: list[dict[tuple[str, ...], int]] = [dict() for _ in range(order)]
    adjusted[order - 1] = {
        gram: c for gram, c in counts.raw(order).items() if gram[-1] != SOS
    }
    for n in range(order - 1, 0, -1):
        continuation: dict[tuple[str, ...], int] = {}
        for gram in counts.raw(n + 1):
            suffix = gram[1:]
            if suffix[0] != SOS:
                continuation[suffix] = continuation.get(suffix, 0) + 1
        table = {}
        for gram, c in counts.raw(n).items():
            if gram[-1] == SOS:
                continue
            if gram[0] == SOS:
                table[gram] = c
            else:
                cont = continuation.get(gram, 0)
                if cont > 0:
                    table[gram] = cont
        adjusted[n - 1] = table
    return adjusted


def _estimate_discount(adjusted: dict[tuple[str, ...], int], n: int) -> float:
    n1 = sum(1 for c in adjusted.values() if c == 1)
    n2 = sum(1 for c in adjusted.values() if c == 2)
    if n1 == 0 or n2 == 0:
        warnings.warn(
            f"order {n}: count-of-counts too sparse to estimate a discount "
            f"(n1={n1}, n2={n2}); using {FALLBACK_DISCOUNT}",
            DegenerateCounts,
        )
        return FALLBACK_DISCOUNT
    return n1 / (n1 + 2 * n2)


@dataclass(frozen=True)
class ArpaModel:
    """A backoff n-gram model in memory.

    tables[n-1] maps each n-gram to (log10 probability, log10 backoff
    weight); the backoff weight is 0.0 for grams that never serve as a
    context and for grams of the highest order.
    """

    order: int
    tables: tuple[dict[tuple[str, ...], tuple[float, float]], ...]

    @property
    def vocab(self) -> frozenset[str]:
        return frozenset(gram[0] for gram in self.tables[0])

    def word_logprob(self, word: str, context: tuple[str, ...]) -> float:
        """log10 P(word | context), backing off as needed.

        The context must already be truncated to at most order-1 words;
        out-of-vocabulary words must already be mapped to <unk>.
        """
        acc = 0.0
        while True:
            entry = self.tables[len(context)].get(context + (word,))
            if entry is not None:
                return acc + entry[0]
            if not context:
                unk = self.tables[0].get((UNK,))
                return acc + (unk[0] if unk is not None else DUMMY_LOGPROB)
            ctx_entry = self.tables[len(context) - 1].get(context)
            if ctx_entry is not None:
                acc += ctx_entry[1]
            context = context[1:]


def train_kneser_ney(
    counts: NgramCounts, discounts: float | Sequence[float] | None = None
) -> ArpaModel:
    """Estimate an interpolated Kneser-Ney model from counts.

    discounts may be a single value for all orders or one per order;
    each must lie strictly between 0 and 1.  When omitted, each order's
    discount is estimated from its count-of-counts, falling back to 0.75
    (with a DegenerateCounts warning) when the statistics are too sparse.
    """
    order = counts.order
    adjusted = _adjusted_counts(counts)
    if not adjusted[0]:
        raise EmptyInput("cannot train a model from an empty corpus")

    if discounts is None:
        ds = [_estimate_discount(adjusted[n - 1], n) for n in range(1, order + 1)]
    else:
        if isinstance(discounts, (int, float)):
            ds = [float(discounts)] * order
        else:
            ds = [float(d) for d in discounts]
            if len(ds) != order:
                raise ValueError(f"expected {order} discounts, got {len(ds)}")
        for d in ds:
            if not 0.0 < d < 1.0:
                raise ValueError(f"discount must lie strictly between 0 and 1, got {d}")

    tables: list[dict[tuple[str, ...], tuple[float, float]]] = [dict() for _ in range(order)]
    gammas: list[dict[tuple[str, ...], float]] = [dict() for _ in range(order)]

    # Unigrams: leftover mass goes to <unk>.
    d1 = ds[0]
    total = sum(adjusted[0].values())
    n1plus = len(adjusted[0])
    gamma_empty = d1 * n1plus / total
    probs: dict[tuple[str, ...], float] = {
        gram: (c - d1) / total for gram, c in adjusted[0].items()
    }
    probs[(UNK,)] = probs.get((UNK,), 0.0) + gamma_empty
    for gram, p in probs.items():
        tables[0][gram] = (math.log10(p), 0.0)

    for n in range(2, order + 1):
        dn = ds[n - 1]
        ctx_total: dict[tuple[str, ...], int] = {}
        ctx_distinct: dict[tuple[str, ...], int] = {}
        for gram, c in adjusted[n - 1].items():
            ctx = gram[:-1]
            ctx_total[ctx] = ctx_total.get(ctx, 0) + c
            ctx_distinct[ctx] = ctx_distinct.get(ctx, 0) + 1
        for ctx, den in ctx_total.items():
            gammas[n - 2][ctx] = dn * ctx_distinct[ctx] / den
        lower = tables[n - 2]
        for gram, c in adjusted[n - 1].items():
            ctx = gram[:-1]
            den = ctx_total[ctx]
            # Suffix closure: the next-lower-order gram is always present.
            p_low = 10.0 ** lower[gram[1:]][0]
            p = max(c - dn, 0.0) / den + gammas[n - 2][ctx] * p_low
            tables[n - 1][gram] = (math.log10(p), 0.0)

    # Dummy entries for the all-<s> grams so they can carry backoff
    # weights; and the <s> unigram itself even in a unigram model.
    for n in range(1, order):
        gram = (SOS,) * n
        if gram in counts.raw(n):
            tables[n - 1][gram] = (DUMMY_LOGPROB, 0.0)
    if order == 1 and (SOS,) not in tables[0]:
        tables[0][(SOS,)] = (DUMMY_LOGPROB, 0.0)

    # Attach backoff weights to context grams.
    for n in range(1, order):
        for ctx, gamma in gammas[n - 1].items():
            logp, _ = tables[n - 1][ctx]
            tables[n - 1][ctx] = (logp, math.log10(gamma))

    return ArpaModel(order=order, tables=tuple(tables))


def write_arpa(model: ArpaModel, out: IO[str]) -> None:
    """Write the model in the textual ARPA format.

    Fields are tab-separated: log10 probability, the space-joined gram,
    and (below the highest order) the log10 backoff weight.  Entries are
    sorted so output is reproducible.
    """
    out.write("\\data\\\n")
    for n in range(1, model.order + 1):
        out.write(f"ngram {n}={len(model.tables[n - 1])}\n")
    for n in range(1, model.order + 1):
        out.write(f"\n\\{n}-grams:\n")
        for gram in sorted(model.tables[n - 1]):
            logp, logbo = model.tables[n - 1][gram]
            words = " ".join(gram)
            if n < model.order:
                out.write(f"{logp:.10f}\t{words}\t{logbo:.10f}\n")
            else:
                out.write(f"{logp:.10f}\t{words}\n")
    out.write("\n\\end\\\n")


def read_arpa(lines: Iterable[str]) -> ArpaModel:
    """Parse a textual ARPA model."""
    declared: list[int] = []
    tables: list[dict[tuple[str, ...], tuple[float, float]]] = []
    section = 0  # 0: preamble, 1: \data\, 2: n-gram sections
    current = -1
    saw_end = False
    last_line_no = 0

    for line_no, raw_line in enumerate(lines, start=1):
        last_line_no = line_no
        line = raw_line.rstrip("\n")
        if not line.strip():
            continue
        if line == "\\data\\":
            section = 1
            continue
        if line == "\\end\\":
            saw_end = True
            break
        if line.startswith("\\") and line.endswith("-grams:"):
            try:
                current = int(line[1:-7])
            except ValueError:
                raise MalformedArpa(line_no, f"bad section header: {line!r}") from None
            if not declared:
                raise MalformedArpa(line_no, "n-gram section before \\data\\ header")
            if not 1 <= current <= len(declared):
                raise MalformedArpa(line_no, f"unexpected section order {current}")
            section = 2
            continue
        if section == 1:
            if not line.startswith("ngram "):
                raise MalformedArpa(line_no, f"expected 'ngram N=count', got {line!r}")
            body = line[len("ngram "):]
            n_str, _, count_str = body.partition("=")
            try:
                n, count = int(n_str), int(count_str)
            except ValueError:
                raise MalformedArpa(line_no, f"bad count line: {line!r}") from None
            if n != len(declared) + 1:
                raise MalformedArpa(line_no, f"out-of-order count line: {line!r}")
            declared.append(count)
            tables.append({})
            continue
        if section == 2 and current > 0:
            fields = line.split("\t")
            if len(fields) not in (2, 3):
                raise MalformedArpa(line_no, f"expected 2 or 3 tab-separated fields, got {len(fields)}")
            try:
                logp = float(fields[0])
                logbo = float(fields[2]) if len(fields) == 3 else 0.0
            except ValueError:
                raise MalformedArpa(line_no, f"bad numeric field in {line!r}") from None
            gram = tuple(fields[1].split(" "))
            if len(gram) != current or any(not w for w in gram):
                raise MalformedArpa(line_no, f"gram does not match section order: {fields[1]!r}")
            tables[current - 1][gram] = (logp, logbo)
            continue
        raise MalformedArpa(line_no, f"unexpected line: {line!r}")

    if not saw_end:
        raise MalformedArpa(last_line_no, "missing \\end\\ marker")
    if not declared:
        raise MalformedArpa(last_line_no, "missing \\data\\ header")
    for n, count in enumerate(declared, start=1):
        if len(tables[n - 1]) != count:
            raise MalformedArpa(
                last_line_no,
                f"section {n} has {len(tables[n - 1])} entries, header declared {count}",
            )
    return ArpaModel(order=len(declared), tables=tuple(tables))


def _mapped_forms(model: ArpaModel, sentence: Sentence) -> list[str]:
    vocab = model.tables[0]
    return [t.form if (t.form,) in vocab else UNK for t in sentence.tokens]


def logprob(model: ArpaModel, sentence: Sentence) -> float:
    """log10 probability of the sentence, </s> included."""
    words = _mapped_forms(model, sentence) + [EOS]
    history = [SOS] * (model.order - 1)
    total = 0.0
    for word in words:
        context = tuple(history[len(history) - (model.order - 1):]) if model.order > 1 else ()
        total += model.word_logprob(word, context)
        history.append(word)
    return total


def normalized_logprob(model: ArpaModel, sentence: Sentence) -> float:
    """Sentence log10 probability per predicted token (</s> counts)."""
    return logprob(model, sentence) / (len(sentence) + 1)


def perplexity(model: ArpaModel, sentences: Iterable[Sentence]) -> float:
    """Corpus perplexity, </s> included in the token count."""
    total = 0.0
    tokens = 0
    for sentence in sentences:
        total += logprob(model, sentence)
        tokens += len(sentence) + 1
    if tokens == 0:
        raise EmptyInput("cannot compute perplexity of an empty corpus")
    return 10.0 ** (-total / tokens)


@dataclass(frozen=True)
class Hypothesis:
    """One candidate correction with the decoder's score."""

    sentence: Sentence
    model_score: float


@dataclass(frozen=True)
class RerankConfig:
    lm_weight: float = 1.0
    length_normalize: bool = False


def rerank(hypotheses: Sequence[Hypothesis], model: ArpaModel, cfg: RerankConfig = RerankConfig()) -> Hypothesis:
    """Pick the best hypothesis by decoder score plus weighted LM score.

    The LM contributes its normalized log probability.  Ties keep the
    earliest hypothesis.
    """
    if not hypotheses:
        raise EmptyInput("cannot rerank an empty hypothesis list")
    best = None
    best_score = -math.inf
    for hyp in hypotheses:
        base = hyp.model_score
        if cfg.length_normalize:
            base = base / max(len(hyp.sentence), 1)
        combined = base + cfg.lm_weight * normalized_logprob(model, hyp.sentence)
        if combined > best_score:
            best, best_score = hyp, combined
    return best


def read_nbest(lines: Iterable[str]) -> list[list[Hypothesis]]:
    """Parse n-best lists: "tokens<TAB>score" lines, blank-line separated.

    Sentences are split on whitespace (decoder output is assumed to be
    tokenized already).
    """
    groups: list[list[Hypothesis]] = []
    current: list[Hypothesis] = []
    for line_no, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\n")
        if not line.strip():
            if current:
                groups.append(current)
                current = []
            continue
        text, sep, score_str = line.rpartition("\t")
        if not sep:
            raise MalformedLine(line_no, "expected 'sentence<TAB>score'")
        try:
            score = float(score_str)
        except ValueError:
            raise MalformedLine(line_no, f"bad score: {score_str!r}") from None
        tokens = tuple(Token(f) for f in text.split())
        current.append(Hypothesis(sentence=Sentence(tokens), model_score=score))
    if current:
        groups.append(current)
    return groups

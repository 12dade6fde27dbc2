"""Corpus filtering and synthetic error generation.

A raw monolingual corpus is first filtered to clean, well-formed
sentences (seven rules, applied in a fixed order).  Accepted sentences
are then corrupted with stochastic word-level operations (substitution
from a confusion set, deletion, insertion, adjacent swap) followed by a
round of character-level noise, producing corrupted/original pairs for
training correction models.

Corruption is deterministic given a seed: every input line uses its own
generator seeded with seed XOR line-index, so results do not depend on
how the work is split across processes.
"""

from __future__ import annotations

import random
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import IO, Iterable

from gectools.errors import EmptySentence
from gectools.kernels import scan_distances
from gectools.lexicon import Lexicon
from gectools.text import Sentence, Token, render, tokenize

# Romanian diacritics, including the legacy cedilla codepoints that many
# corpora still carry.
DIACRITICS = frozenset("ăâîșțĂÂÎȘȚşţŞŢ")

# Characters inserted/substituted by character-level noise.
ALPHABET = "aăâbcdefghiîjklmnopqrsștțuvwxyz"

QUOTE_CHARS = frozenset('"\'«»„“”‘’‚‹›')

RULE_NAMES = {
    1: "first letter not uppercase",
    2: "quotation marks or link markers",
    3: "unbalanced brackets",
    4: "no sentence-final punctuation",
    5: "too few diacritics",
    6: "too many foreign characters",
    7: "too short",
}


@dataclass(frozen=True)
class FilterConfig:
    """Thresholds and character inventories of the corpus filter."""

    min_words: int = 9
    min_diacritic_ratio: float = 0.01
    max_foreign_ratio: float = 0.025
    end_marks: frozenset[str] = frozenset(".!?")
    quote_chars: frozenset[str] = QUOTE_CHARS
    link_markers: tuple[str, ...] = ("www.", "http")
    abbreviations: frozenset[str] = frozenset(
        {"etc", "nr", "dl", "dna", "dr", "str", "art", "ex", "pag", "tel", "vol", "sec"}
    )


def diacritic_ratio(text: str) -> float:
    """Diacritic characters per non-diacritic character; 0 when the text
    has no non-diacritic characters."""
    dia = sum(1 for ch in text if ch in DIACRITICS)
    other = len(text) - dia
    return dia / other if other else 0.0


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _final_period_is_abbreviation(text: str, cfg: FilterConfig) -> bool:
    chunks = text.split()
    if not chunks:
        return False
    last = chunks[-1]
    start, end = 0, len(last)
    while start < end and _is_punct_char(last[start]):
        start += 1
    while end > start and _is_punct_char(last[end - 1]):
        end -= 1
    return last[start:end].lower() in cfg.abbreviations


def filter_sentence(text: str, cfg: FilterConfig = FilterConfig()) -> int | None:
    """Check one raw sentence against the filter.

    Returns None when the sentence is accepted, otherwise the number
    (1-7) of the first rule that rejects it.
    """
    # 1: the first letter must be uppercase.
    first_alpha = next((ch for ch in text if ch.isalpha()), None)
    if first_alpha is None or not first_alpha.isupper():
        return 1
    # 2: no quotation marks and no link markers.
    if any(ch in cfg.quote_chars for ch in text):
        return 2
    lowered = text.lower()
    if any(marker in lowered for marker in cfg.link_markers):
        return 2
    # 3: balanced round and square brackets.
    if text.count("(") != text.count(")") or text.count("[") != text.count("]"):
        return 3
    # 4: the last punctuation character is an end mark and, for a
    # period, does not belong to a known abbreviation.
    last_punct = next((ch for ch in reversed(text) if _is_punct_char(ch)), None)
    if last_punct is None or last_punct not in cfg.end_marks:
        return 4
    if last_punct == "." and _final_period_is_abbreviation(text, cfg):
        return 4
    # 5: enough Romanian diacritics.
    if diacritic_ratio(text) <= cfg.min_diacritic_ratio:
        return 5
    # 6: few enough characters outside ASCII + Romanian diacritics.
    foreign = sum(1 for ch in text if ord(ch) >= 128 and ch not in DIACRITICS)
    native = len(text) - foreign
    if native == 0 or foreign / native > cfg.max_foreign_ratio:
        return 6
    # 7: long enough.
    if len(text.split()) < cfg.min_words:
        return 7
    return None


@dataclass(frozen=True)
class SynthConfig:
    """Parameters of the corruption process."""

    mean_error_rate: float = 0.15
    std_error_rate: float = 0.2
    p_substitute: float = 0.7
    p_delete: float = 0.1
    p_insert: float = 0.1
    p_swap: float = 0.1
    confusion_size: int = 20
    char_word_rate: float = 0.1
    seed: int = 0

    def __post_init__(self):
        total = self.p_substitute + self.p_delete + self.p_insert + self.p_swap
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"operation probabilities must sum to 1, got {total}")


class ConfusionProvider:
    """Finds lexicon words close to a given word in character distance.

    Candidates are ranked by distance, then frequency (descending), then
    alphabetically.  Results are cached; the provider builds length
    buckets once so each lookup only scans words of a similar length.
    """

    def __init__(self, lexicon: Lexicon, max_distance: int = 2, cache_limit: int = 200_000):
        self.lexicon = lexicon
        self.max_distance = max_distance
        self._cache_limit = cache_limit
        self._cache: dict[tuple[str, int], list[str]] = {}
        self._buckets: dict[int, list[str]] = {}
        for word in lexicon.sorted_words:
            self._buckets.setdefault(len(word), []).append(word)

    def confusion_set(self, word: str, k: int = 20) -> list[str]:
        """Up to k in-lexicon alternatives for word (the word itself is
        never among them)."""
        lowered = word.lower()
        key = (lowered, k)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        scored: list[tuple[int, int, str]] = []
        for length in range(
            max(1, len(lowered) - self.max_distance), len(lowered) + self.max_distance + 1
        ):
            bucket = self._buckets.get(length)
            if not bucket:
                continue
            for cand, dist in scan_distances(lowered, bucket, self.max_distance):
                if cand != lowered:
                    scored.append((dist, -self.lexicon.freq(cand), cand))
        scored.sort()
        result = [cand for _, _, cand in scored[:k]]
        if len(self._cache) >= self._cache_limit:
            self._cache.clear()
        self._cache[key] = result
        return result

    def random_word(self, rng: random.Random) -> str:
        words = self.lexicon.sorted_words
        return words[rng.randrange(len(words))]


@dataclass
class CorruptionStats:
    """Tallies of what the corruption process actually did.

    Operation counters count draws; a drawn operation that turns out to
    be inapplicable (swap in a one-word sentence, substitution with an
    empty confusion set) still counts toward the mix.
    """

    sentences: int = 0
    changed_fraction_sum: float = 0.0
    word_ops: Counter = field(default_factory=Counter)
    char_ops: Counter = field(default_factory=Counter)
    no_candidate_subs: int = 0

    def merge(self, other: "CorruptionStats") -> None:
        self.sentences += other.sentences
        self.changed_fraction_sum += other.changed_fraction_sum
        self.word_ops.update(other.word_ops)
        self.char_ops.update(other.char_ops)
        self.no_candidate_subs += other.no_candidate_subs

    @property
    def mean_changed_fraction(self) -> float:
        return self.changed_fraction_sum / self.sentences if self.sentences else 0.0

    def word_op_fraction(self, op: str) -> float:
        total = sum(self.word_ops.values())
        return self.word_ops[op] / total if total else 0.0


def _round_half_away(x: float) -> int:
    # x is never negative here.
    return int(x + 0.5)


def _draw_op(cfg: SynthConfig, rng: random.Random) -> str:
    r = rng.random()
    if r < cfg.p_substitute:
        return "substitute"
    if r < cfg.p_substitute + cfg.p_delete:
        return "delete"
    if r < cfg.p_substitute + cfg.p_delete + cfg.p_insert:
        return "insert"
    return "swap"


def corrupt_sentence(
    sentence: Sentence,
    cfg: SynthConfig,
    provider: ConfusionProvider,
    rng: random.Random,
    stats: CorruptionStats | None = None,
) -> Sentence:
    """Corrupt one sentence.

    An error rate is drawn from a normal distribution and clamped to
    [0, 1]; that fraction of word positions (rounded, half away from
    zero) is sampled without replacement and hit with one operation
    each.  A second pass applies character-level noise to a fraction of
    the surviving words.
    """
    n = len(sentence)
    if n == 0:
        raise EmptySentence("cannot corrupt a sentence with no tokens")

    p_err = min(1.0, max(0.0, rng.gauss(cfg.mean_error_rate, cfg.std_error_rate)))
    n_changed = _round_half_away(p_err * n)
    if stats is not None:
        stats.sentences += 1
        stats.changed_fraction_sum += n_changed / n

    work = [t.form for t in sentence.tokens]
    # Original position -> current index in work (None once deleted).
    where: list[int | None] = list(range(n))

    if n_changed > 0:
        for pos in rng.sample(range(n), n_changed):
            op = _draw_op(cfg, rng)
            if stats is not None:
                stats.word_ops[op] += 1
            cur = where[pos]
            if cur is None:
                continue
            if op == "substitute":
                candidates = provider.confusion_set(work[cur], cfg.confusion_size)
                if candidates:
                    work[cur] = candidates[rng.randrange(len(candidates))]
                elif stats is not None:
                    stats.no_candidate_subs += 1
            elif op == "delete":
                work.pop(cur)
                where[pos] = None
                for i in range(n):
                    w = where[i]
                    if w is not None and w > cur:
                        where[i] = w - 1
            elif op == "insert":
                work.insert(cur + 1, provider.random_word(rng))
                for i in range(n):
                    w = where[i]
                    if w is not None and w > cur:
                        where[i] = w + 1
            else:  # swap with the next word, or the previous one when last
                if len(work) < 2:
                    continue
                other = cur + 1 if cur + 1 < len(work) else cur - 1
                work[cur], work[other] = work[other], work[cur]
                for i in range(n):
                    w = where[i]
                    if w == cur:
                        where[i] = other
                    elif w == other:
                        where[i] = cur

    n_char = _round_half_away(cfg.char_word_rate * len(work))
    if n_char > 0 and work:
        for pos in rng.sample(range(len(work)), min(n_char, len(work))):
            op = _draw_op(cfg, rng)
            if stats is not None:
                stats.char_ops[op] += 1
            word = work[pos]
            if op == "substitute":
                i = rng.randrange(len(word))
                word = word[:i] + ALPHABET[rng.randrange(len(ALPHABET))] + word[i + 1 :]
            elif op == "delete":
                if len(word) < 2:
                    continue
                i = rng.randrange(len(word))
                word = word[:i] + word[i + 1 :]
            elif op == "insert":
                i = rng.randrange(len(word) + 1)
                word = word[:i] + ALPHABET[rng.randrange(len(ALPHABET))] + word[i:]
            else:
                if len(word) < 2:
                    continue
                i = rng.randrange(len(word) - 1)
                word = word[:i] + word[i + 1] + word[i] + word[i + 2 :]
            work[pos] = word

    return Sentence(tuple(Token(form) for form in work))


@dataclass
class SynthStats:
    """Filtering and corruption tallies for one generation run."""

    total_lines: int = 0
    accepted: int = 0
    rejected_by_rule: Counter = field(default_factory=Counter)
    corruption: CorruptionStats = field(default_factory=CorruptionStats)

    def format(self) -> str:
        lines = [f"input lines: {self.total_lines}", f"accepted: {self.accepted}"]
        for rule in sorted(self.rejected_by_rule):
            lines.append(
                f"rejected by rule {rule} ({RULE_NAMES[rule]}): {self.rejected_by_rule[rule]}"
            )
        total_ops = sum(self.corruption.word_ops.values())
        if total_ops:
            mix = ", ".join(
                f"{op}={self.corruption.word_op_fraction(op):.3f}"
                for op in ("substitute", "delete", "insert", "swap")
            )
            lines.append(f"word operations: {total_ops} ({mix})")
            lines.append(f"char operations: {sum(self.corruption.char_ops.values())}")
            lines.append(
                f"mean changed-word fraction: {self.corruption.mean_changed_fraction:.4f}"
            )
        return "\n".join(lines)


_WORKER: dict = {}


def _init_worker(filter_cfg, synth_cfg, provider):
    _WORKER["filter_cfg"] = filter_cfg
    _WORKER["synth_cfg"] = synth_cfg
    _WORKER["provider"] = provider


def _corrupt_one(index: int, line: str, filter_cfg, synth_cfg, provider):
    rule = filter_sentence(line, filter_cfg)
    if rule is not None:
        return rule, None, None
    sentence = tokenize(line)
    stats = CorruptionStats()
    rng = random.Random(synth_cfg.seed ^ index)
    corrupted = corrupt_sentence(sentence, synth_cfg, provider, rng, stats)
    return None, f"{render(corrupted)}\t{render(sentence)}", stats


def _worker(item):
    index, line = item
    return _corrupt_one(
        index, line.rstrip("\n"), _WORKER["filter_cfg"], _WORKER["synth_cfg"], _WORKER["provider"]
    )


def generate_corpus(
    lines: Iterable[str],
    filter_cfg: FilterConfig,
    synth_cfg: SynthConfig,
    provider: ConfusionProvider,
    out: IO[str],
    jobs: int = 1,
) -> SynthStats:
    """Filter a raw corpus and write corrupted<TAB>original pairs.

    Output lines appear in input order and are identical for a given
    seed whatever the value of jobs.
    """
    stats = SynthStats()

    def consume(result):
        rule, out_line, cstats = result
        stats.total_lines += 1
        if rule is not None:
            stats.rejected_by_rule[rule] += 1
            return
        stats.accepted += 1
        out.write(out_line + "\n")
        stats.corruption.merge(cstats)

    if jobs <= 1:
        for index, line in enumerate(lines):
            consume(_corrupt_one(index, line.rstrip("\n"), filter_cfg, synth_cfg, provider))
        return stats

    with Pool(jobs, initializer=_init_worker, initargs=(filter_cfg, synth_cfg, provider)) as pool:
        for result in pool.imap(_worker, enumerate(lines), chunksize=64):
            consume(result)
    return stats

"""Scoring hypothesis edits against reference edits.

Edits match on (original span, replacement text); the error type plays
no part in matching and is only used to attribute counts per type.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gectools.align import Edit
from gectools.errors import LengthMismatch

# Label edits that were never classified.
UNTYPED = "UNK"


def f_beta(precision: float, recall: float, beta: float = 0.5) -> float:
    """Weighted harmonic mean of precision and recall.

    beta < 1 favours precision; beta = 0.5 weighs precision twice as
    much as recall.
    """
    den = beta * beta * precision + recall
    if den == 0.0:
        return 0.0
    return (1 + beta * beta) * precision * recall / den


def _key(edit: Edit) -> tuple[int, int, str]:
    return (edit.o_start, edit.o_end, edit.c_text)


def compare(ref_edits: Sequence[Edit], hyp_edits: Sequence[Edit]) -> tuple[int, int, int]:
    """(tp, fp, fn) between one sentence's reference and hypothesis edits.

    Matching is multiset-based: duplicate edits must be matched by
    duplicates on the other side.
    """
    ref_keys = Counter(_key(e) for e in ref_edits)
    hyp_keys = Counter(_key(e) for e in hyp_edits)
    tp = sum(min(count, hyp_keys.get(key, 0)) for key, count in ref_keys.items())
    return tp, sum(hyp_keys.values()) - tp, sum(ref_keys.values()) - tp


@dataclass
class TypeCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0


@dataclass(frozen=True)
class ScoreReport:
    """Micro-aggregated scores over a corpus."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    fscore: float
    beta: float
    per_type: dict[str, TypeCounts] = field(default_factory=dict)

    def type_prf(self, etype: str) -> tuple[float, float, float]:
        counts = self.per_type[etype]
        p, r = _precision_recall(counts.tp, counts.fp, counts.fn)
        return p, r, f_beta(p, r, self.beta)


def _precision_recall(tp: int, fp: int, fn: int) -> tuple[float, float]:
    # Proposing nothing is perfect precision; having nothing to find is
    # perfect recall.  An edit-free corpus therefore scores 1.0 across
    # the board.
    precision = tp / (tp + fp) if tp + fp > 0 else 1.0
    recall = tp / (tp + fn) if tp + fn > 0 else 1.0
    return precision, recall


def score_corpus(
    ref_edit_lists: Sequence[Sequence[Edit]],
    hyp_edit_lists: Sequence[Sequence[Edit]],
    beta: float = 0.5,
) -> ScoreReport:
    """Score a corpus of per-sentence edit lists.

    Counts are micro-aggregated over sentences.  Per-type counts
    attribute true positives and false negatives to the reference
    edit's type and false positives to the hypothesis edit's type.
    """
    if len(ref_edit_lists) != len(hyp_edit_lists):
        raise LengthMismatch(
            f"reference has {len(ref_edit_lists)} sentences, "
            f"hypothesis has {len(hyp_edit_lists)}"
        )
    tp = fp = fn = 0
    per_type: dict[str, TypeCounts] = {}

    def counts_for(edit: Edit) -> TypeCounts:
        return per_type.setdefault(edit.etype or UNTYPED, TypeCounts())

    for ref_edits, hyp_edits in zip(ref_edit_lists, hyp_edit_lists):
        ref_by_key: dict[tuple, list[Edit]] = {}
        for edit in ref_edits:
            ref_by_key.setdefault(_key(edit), []).append(edit)
        hyp_by_key: dict[tuple, list[Edit]] = {}
        for edit in hyp_edits:
            hyp_by_key.setdefault(_key(edit), []).append(edit)

        for key, redits in ref_by_key.items():
            hedits = hyp_by_key.get(key, [])
            matched = min(len(redits), len(hedits))
            tp += matched
            fn += len(redits) - matched
            fp += len(hedits) - matched
            for edit in redits[:matched]:
                counts_for(edit).tp += 1
            for edit in redits[matched:]:
                counts_for(edit).fn += 1
            for edit in hedits[matched:]:
                counts_for(edit).fp += 1
        for key, hedits in hyp_by_key.items():
            if key not in ref_by_key:
                fp += len(hedits)
                for edit in hedits:
                    counts_for(edit).fp += 1

    precision, recall = _precision_recall(tp, fp, fn)
    return ScoreReport(
        tp=tp,
        fp=fp,
        fn=fn,
        precision=precision,
        recall=recall,
        fscore=f_beta(precision, recall, beta),
        beta=beta,
        per_type=per_type,
    )


def group_of(etype: str) -> str:
    """Coarse group of an error-type label."""
    if etype.startswith("POS"):
        return "POS"
    if etype in ("MORPH", "ORTH", "SPELL", "ORDER"):
        return etype
    return "OTHER"


@dataclass(frozen=True)
class CorpusStats:
    """Error-type distribution of a corpus of typed edits."""

    by_type: dict[str, int]
    by_group: dict[str, int]
    total: int

    def percent(self, group: str) -> float:
        if self.total == 0:
            return 0.0
        return 100.0 * self.by_group.get(group, 0) / self.total


def corpus_stats(edit_lists: Iterable[Sequence[Edit]]) -> CorpusStats:
    by_type: Counter[str] = Counter()
    for edits in edit_lists:
        for edit in edits:
            by_type[edit.etype or UNTYPED] += 1
    by_group: Counter[str] = Counter()
    for etype, count in by_type.items():
        by_group[group_of(etype)] += count
    return CorpusStats(by_type=dict(by_type), by_group=dict(by_group), total=sum(by_type.values()))


def format_stats(stats: CorpusStats) -> str:
    """Readable table of type counts and group percentages."""
    lines = ["type counts:"]
    for etype in sorted(stats.by_type):
        lines.append(f"  {etype:<16} {stats.by_type[etype]}")
    lines.append("group distribution:")
    order = ("POS", "MORPH", "ORTH", "SPELL", "ORDER", "OTHER")
    for group in order:
        if group in stats.by_group:
            lines.append(
                f"  {group:<8} {stats.by_group[group]:>8}  {stats.percent(group):6.2f}%"
            )
    lines.append(f"total edits: {stats.total}")
    return "\n".join(lines)

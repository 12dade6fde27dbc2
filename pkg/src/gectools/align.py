"""Token-level alignment of original/corrected sentence pairs.

The aligner runs a Damerau-Levenshtein dynamic program over tokens with
unit insert/delete/transpose costs and a weighted substitution cost that
blends lemma identity, UPOS identity and normalized character distance.
Maximal runs of non-match operations are then merged into Edits.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from gectools.errors import OverlappingEdits, SpanOutOfBounds
from gectools.kernels import dl_distance
from gectools.text import Sentence, Token, is_punct

MATCH = "match"
SUBSTITUTE = "substitute"
TRANSPOSE = "transpose"
DELETE = "delete"
INSERT = "insert"

# When costs tie, earlier kinds win.
_PREFERENCE = (MATCH, SUBSTITUTE, TRANSPOSE, DELETE, INSERT)


@dataclass(frozen=True)
class CostParams:
    """Weights of the alignment cost model."""

    w_lemma: float = 0.499
    w_pos: float = 0.25
    w_char: float = 0.25
    insert_cost: float = 1.0
    delete_cost: float = 1.0
    transpose_cost: float = 1.0

    def __post_init__(self):
        for name in ("w_lemma", "w_pos", "w_char"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        # A substitution must never cost more than deleting and
        # re-inserting the token, or substitutions become unreachable.
        if self.w_lemma + self.w_pos + self.w_char >= self.insert_cost + self.delete_cost:
            raise ValueError("substitution weights must sum to less than insert_cost + delete_cost")


DEFAULT_COSTS = CostParams()


def sub_cost(a: Token, b: Token, params: CostParams = DEFAULT_COSTS) -> float:
    """Substitution cost between two tokens.

    Identical forms cost 0.  Otherwise each of the lemma and UPOS terms
    contributes its full weight when both sides carry the annotation and
    they differ, half weight when the annotation is missing on either
    side, and 0 when both are present and equal.  The character term is
    the Damerau-Levenshtein distance between the forms normalized by the
    longer form.
    """
    if a.form == b.form:
        return 0.0
    if a.lemma is None or b.lemma is None:
        lemma_term = 0.5
    else:
        lemma_term = 1.0 if a.lemma != b.lemma else 0.0
    if a.upos is None or b.upos is None:
        pos_term = 0.5
    else:
        pos_term = 1.0 if a.upos != b.upos else 0.0
    char_term = dl_distance(a.form, b.form) / max(len(a.form), len(b.form))
    return params.w_lemma * lemma_term + params.w_pos * pos_term + params.w_char * char_term


@dataclass(frozen=True)
class AlignOp:
    """One step of an alignment path.

    o_index/c_index are the cursor positions in the original/corrected
    sentence when the operation is applied: the tokens consumed are
    orig[o_index:...] and corr[c_index:...] depending on the kind
    (transpose consumes two on each side, insert none on the original
    side, delete none on the corrected side).
    """

    kind: str
    o_index: int
    c_index: int


def align(orig: Sentence, corr: Sentence, params: CostParams = DEFAULT_COSTS) -> list[AlignOp]:
    """Minimum-cost alignment path between two sentences.

    Ties are broken by preferring match > substitute > transpose >
    delete > insert, which makes the result deterministic.
    """
    n, m = len(orig), len(corr)
    o_toks, c_toks = orig.tokens, corr.tokens

    dist = [[0.0] * (m + 1) for _ in range(n + 1)]
    op = [[""] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i * params.delete_cost
        op[i][0] = DELETE
    for j in range(1, m + 1):
        dist[0][j] = j * params.insert_cost
        op[0][j] = INSERT

    for i in range(1, n + 1):
        a = o_toks[i - 1]
        for j in range(1, m + 1):
            b = c_toks[j - 1]
            if a.form == b.form:
                best_cost = dist[i - 1][j - 1]
                best_kind = MATCH
            else:
                best_cost = dist[i - 1][j - 1] + sub_cost(a, b, params)
                best_kind = SUBSTITUTE
            if (
                i > 1
                and j > 1
                and a.form == c_toks[j - 2].form
                and o_toks[i - 2].form == b.form
            ):
                cand = dist[i - 2][j - 2] + params.transpose_cost
                if cand < best_cost:
                    best_cost, best_kind = cand, TRANSPOSE
            cand = dist[i - 1][j] + params.delete_cost
            if cand < best_cost:
                best_cost, best_kind = cand, DELETE
            cand = dist[i][j - 1] + params.insert_cost
            if cand < best_cost:
                best_cost, best_kind = cand, INSERT
            dist[i][j] = best_cost
            op[i][j] = best_kind

    path: list[AlignOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        kind = op[i][j]
        if kind in (MATCH, SUBSTITUTE):
            i -= 1
            j -= 1
        elif kind == TRANSPOSE:
            i -= 2
            j -= 2
        elif kind == DELETE:
            i -= 1
        else:
            j -= 1
        path.append(AlignOp(kind, i, j))
    path.reverse()
    return path


@dataclass(frozen=True)
class Edit:
    """A contiguous rewrite of orig[o_start:o_end] into corr[c_start:c_end].

    o_text/c_text are the space-joined forms of the two spans; either may
    be empty (pure insertion or deletion).  etype is the error type label
    once classified, None before.
    """

    o_start: int
    o_end: int
    c_start: int
    c_end: int
    o_text: str
    c_text: str
    etype: str | None = None

    @property
    def o_span(self) -> tuple[int, int]:
        return (self.o_start, self.o_end)

    @property
    def c_span(self) -> tuple[int, int]:
        return (self.c_start, self.c_end)

    def with_type(self, etype: str) -> "Edit":
        return replace(self, etype=etype)


def _make_edit(orig: Sentence, corr: Sentence, o_start, o_end, c_start, c_end) -> Edit:
    return Edit(
        o_start=o_start,
        o_end=o_end,
        c_start=c_start,
        c_end=c_end,
        o_text=" ".join(t.form for t in orig.tokens[o_start:o_end]),
        c_text=" ".join(t.form for t in corr.tokens[c_start:c_end]),
    )


def _touches_punct(orig: Sentence, corr: Sentence, edit: Edit) -> bool:
    spans = (
        orig.tokens[edit.o_start : edit.o_end],
        corr.tokens[edit.c_start : edit.c_end],
    )
    return any(is_punct(t.form) for span in spans for t in span)


def merge_ops(ops: list[AlignOp], orig: Sentence, corr: Sentence) -> list[Edit]:
    """Group alignment operations into edits.

    Every maximal run of non-match operations becomes one edit.  Two
    edits separated by exactly one matched punctuation token are then
    merged (bridging the punctuation) when either of them touches
    punctuation itself.
    """
    edits: list[Edit] = []
    oi = ci = 0
    run: tuple[int, int] | None = None
    for step in ops:
        if step.kind == MATCH:
            if run is not None:
                edits.append(_make_edit(orig, corr, run[0], oi, run[1], ci))
                run = None
            oi += 1
            ci += 1
            continue
        if run is None:
            run = (oi, ci)
        if step.kind == TRANSPOSE:
            oi += 2
            ci += 2
        elif step.kind == DELETE:
            oi += 1
        elif step.kind == INSERT:
            ci += 1
        else:
            oi += 1
            ci += 1
    if run is not None:
        edits.append(_make_edit(orig, corr, run[0], oi, run[1], ci))

    if not edits:
        return edits
    merged = [edits[0]]
    for edit in edits[1:]:
        prev = merged[-1]
        bridged = (
            edit.o_start == prev.o_end + 1
            and edit.c_start == prev.c_end + 1
            and is_punct(orig.tokens[prev.o_end].form)
            and (_touches_punct(orig, corr, prev) or _touches_punct(orig, corr, edit))
        )
        if bridged:
            merged[-1] = _make_edit(orig, corr, prev.o_start, edit.o_end, prev.c_start, edit.c_end)
        else:
            merged.append(edit)
    return merged


def extract_edits(orig: Sentence, corr: Sentence, params: CostParams = DEFAULT_COSTS) -> list[Edit]:
    """Edits that rewrite orig into corr, from the minimum-cost alignment."""
    return merge_ops(align(orig, corr, params), orig, corr)


def apply_edits(sentence: Sentence, edits: list[Edit]) -> Sentence:
    """Apply edits to a sentence, producing the corrected surface tokens.

    Edits must be sorted by original span and non-overlapping.  The
    resulting tokens carry no annotations.
    """
    cursor = 0
    out: list[Token] = []
    for edit in edits:
        if not (0 <= edit.o_start <= edit.o_end <= len(sentence)):
            raise SpanOutOfBounds(
                f"edit span ({edit.o_start}, {edit.o_end}) does not fit a "
                f"sentence of {len(sentence)} tokens"
            )
        if edit.o_start < cursor:
            raise OverlappingEdits(
                f"edit at ({edit.o_start}, {edit.o_end}) overlaps the previous edit"
            )
        out.extend(sentence.tokens[cursor : edit.o_start])
        out.extend(Token(form) for form in edit.c_text.split())
        cursor = edit.o_end
    out.extend(sentence.tokens[cursor:])
    return Sentence(tuple(out))

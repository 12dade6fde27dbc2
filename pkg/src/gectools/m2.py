"""Reading and writing edits in the M2 annotation format.

Each sentence is a block: an "S" line with the tokenized original text,
one "A" line per edit, and a blank line.  A sentence without edits gets
the conventional noop annotation.  Spans index original tokens; the
corrected span of each edit is reconstructed on read from the running
length difference of the preceding edits.
"""

from __future__ import annotations

from typing import IO, Iterable

from gectools.align import Edit
from gectools.errors import MalformedM2
from gectools.score import UNTYPED
from gectools.text import Sentence, Token

NOOP_LINE = "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0"


def write_m2(sentence: Sentence, edits: Iterable[Edit], out: IO[str]) -> None:
    """Write one sentence block."""
    forms = " ".join(t.form for t in sentence.tokens)
    out.write(f"S {forms}".rstrip() + "\n")
    wrote_any = False
    for edit in edits:
        label = edit.etype or UNTYPED
        out.write(
            f"A {edit.o_start} {edit.o_end}|||{label}|||{edit.c_text}|||REQUIRED|||-NONE-|||0\n"
        )
        wrote_any = True
    if not wrote_any:
        out.write(NOOP_LINE + "\n")
    out.write("\n")


def _build_edits(
    raw: list[tuple[int, int, str, str]], tokens: tuple[Token, ...], s_line_no: int
) -> list[Edit]:
    raw = sorted(raw, key=lambda r: (r[0], r[1]))
    edits: list[Edit] = []
    delta = 0
    prev_end = 0
    for start, end, label, c_text in raw:
        if not (0 <= start <= end <= len(tokens)):
            raise MalformedM2(s_line_no, f"edit span ({start}, {end}) out of range")
        if start < prev_end:
            raise MalformedM2(s_line_no, f"overlapping edit at ({start}, {end})")
        prev_end = end
        c_forms = c_text.split()
        c_start = start + delta
        c_end = c_start + len(c_forms)
        delta += len(c_forms) - (end - start)
        edits.append(
            Edit(
                o_start=start,
                o_end=end,
                c_start=c_start,
                c_end=c_end,
                o_text=" ".join(t.form for t in tokens[start:end]),
                c_text=" ".join(c_forms),
                etype=label,
            )
        )
    return edits


def read_m2(lines: Iterable[str]) -> list[tuple[Sentence, list[Edit]]]:
    """Parse an M2 stream into (sentence, edits) pairs."""
    results: list[tuple[Sentence, list[Edit]]] = []
    tokens: tuple[Token, ...] | None = None
    raw_edits: list[tuple[int, int, str, str]] = []
    s_line_no = 0

    def flush():
        nonlocal tokens, raw_edits
        if tokens is not None:
            results.append((Sentence(tokens), _build_edits(raw_edits, tokens, s_line_no)))
        tokens = None
        raw_edits = []

    for line_no, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line == "S" or line.startswith("S "):
            flush()
            tokens = tuple(Token(f) for f in line[2:].split())
            s_line_no = line_no
            continue
        if line.startswith("A "):
            if tokens is None:
                raise MalformedM2(line_no, "annotation line before any sentence line")
            fields = line[2:].split("|||")
            if len(fields) < 6:
                raise MalformedM2(line_no, f"expected 6 '|||'-separated fields, got {len(fields)}")
            span = fields[0].split()
            if len(span) != 2:
                raise MalformedM2(line_no, f"bad span field: {fields[0]!r}")
            try:
                start, end = int(span[0]), int(span[1])
            except ValueError:
                raise MalformedM2(line_no, f"bad span field: {fields[0]!r}") from None
            label, correction = fields[1], fields[2]
            if label == "noop":
                continue
            if correction == "-NONE-":
                correction = ""
            raw_edits.append((start, end, label, correction))
            continue
        raise MalformedM2(line_no, f"unrecognized line: {line!r}")
    flush()
    return results

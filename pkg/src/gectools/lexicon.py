"""Word-list lexicon with optional frequencies."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable


@dataclass(frozen=True)
class Lexicon:
    """A case-insensitive word list; words are stored lowercased."""

    words: frozenset[str]
    frequencies: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.words:
            raise ValueError("lexicon must contain at least one word")

    @classmethod
    def from_words(cls, words: Iterable[str], frequencies: dict[str, int] | None = None) -> "Lexicon":
        lowered = frozenset(w.lower() for w in words if w.strip())
        freqs = {w.lower(): int(c) for w, c in (frequencies or {}).items()}
        return cls(words=lowered, frequencies=freqs)

    @classmethod
    def from_file(cls, path: str | Path) -> "Lexicon":
        """Load a lexicon from a text file.

        One word per line; an optional tab-separated integer after the
        word is taken as its frequency.
        """
        words: list[str] = []
        freqs: dict[str, int] = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                word, _, count = line.partition("\t")
                word = word.lower()
                words.append(word)
                if count.strip():
                    freqs[word] = freqs.get(word, 0) + int(count)
        return cls.from_words(words, freqs)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)

    def freq(self, word: str) -> int:
        return self.frequencies.get(word.lower(), 0)

    @cached_property
    def sorted_words(self) -> tuple[str, ...]:
        return tuple(sorted(self.words))

"""Corpus preparation: locale-aware lowercasing, segmentation, tokenization.

The prepared corpus is a list of token sequences ("segments"); n-grams are
later formed only inside a segment, so every delimiter acts as a hard
boundary for candidate extraction.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable

from .errors import DataFormatError, UsageError

# Turkish dotted/dotless i: plain str.lower() maps I -> i and leaves a
# combining dot after lowering İ, both wrong for Turkish text.
_TURKISH_FOLDS = {"I": "ı", "İ": "i"}

DEFAULT_DELIMITERS = frozenset({"\n", ",", ".", "!", "?", "…"})

# Apostrophe stays token-internal: Turkish proper nouns take suffixes
# after an apostrophe (İzmir'de).
DEFAULT_NONTOKENS = frozenset(set(string.punctuation) - {"'"})


@dataclass(frozen=True)
class NormalizationConfig:
    """Immutable per-run normalization rules.

    locale: "turkish" applies the I/İ overrides before standard Unicode
    lowercasing; "default" uses str.lower() alone.
    """

    locale: str = "turkish"
    segment_delimiters: frozenset[str] = DEFAULT_DELIMITERS
    nontoken_chars: frozenset[str] = DEFAULT_NONTOKENS

    def __post_init__(self):
        for name, chars in (("segment_delimiters", self.segment_delimiters),
                            ("nontoken_chars", self.nontoken_chars)):
            for item in chars:
                if any(c.isalnum() for c in item):
                    raise UsageError(
                        f"{name} entry {item!r} contains a letter or digit")
        object.__setattr__(self, "segment_delimiters",
                           frozenset(self.segment_delimiters))
        object.__setattr__(self, "nontoken_chars",
                           frozenset(self.nontoken_chars))


@dataclass
class SegmentedCorpus:
    """Normalized token sequences partitioned into segments."""

    segments: list[list[str]]

    @property
    def segment_count(self) -> int:
        return len(self.segments)

    @property
    def token_count(self) -> int:
        return sum(len(seg) for seg in self.segments)


def normalize(text: str, cfg: NormalizationConfig) -> str:
    """Case-fold text under the configured locale. Idempotent."""
    if cfg.locale == "turkish":
        text = text.translate(str.maketrans(_TURKISH_FOLDS))
    return text.lower()


def segment(text: str, cfg: NormalizationConfig) -> list[str]:
    """Split normalized text at every delimiter, dropping empty pieces.

    Surrounding whitespace is stripped from each piece; delimiter
    characters never survive into the output.
    """
    if not text:
        return []
    pattern = "|".join(
        re.escape(d) for d in sorted(cfg.segment_delimiters, key=len, reverse=True))
    pieces = re.split(pattern, text) if pattern else [text]
    return [p.strip() for p in pieces if p.strip()]


def tokenize(seg: str, cfg: NormalizationConfig) -> list[str]:
    """Split a segment into maximal runs of non-separator characters.

    Separators are whitespace plus every nontoken character; nontoken
    characters are discarded, never kept inside a token.
    """
    if cfg.nontoken_chars:
        seg = seg.translate(str.maketrans({c: " " for c in cfg.nontoken_chars}))
    return seg.split()


def build_corpus(text: str, cfg: NormalizationConfig) -> SegmentedCorpus:
    """normalize -> segment -> tokenize; segments with no tokens are dropped."""
    segments = []
    for piece in segment(normalize(text, cfg), cfg):
        tokens = tokenize(piece, cfg)
        if tokens:
            segments.append(tokens)
    return SegmentedCorpus(segments)


def decode_bytes(data: bytes, encoding: str = "utf-8") -> str:
    try:
        return data.decode(encoding)
    except UnicodeDecodeError as exc:
        raise DataFormatError(
            f"undecodable input as {encoding}: bad byte at offset {exc.start}"
        ) from exc


def corpus_to_lines(corpus: SegmentedCorpus) -> Iterable[str]:
    """One segment per line, tokens space-separated (the counter's input)."""
    for seg in corpus.segments:
        yield " ".join(seg)


def write_corpus(corpus: SegmentedCorpus, path, encoding: str = "utf-8") -> None:
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        for line in corpus_to_lines(corpus):
            fh.write(line + "\n")


def read_corpus(path, encoding: str = "utf-8") -> SegmentedCorpus:
    """Read a line-per-segment corpus file written by write_corpus."""
    segments = []
    with open(path, "rb") as fh:
        text = decode_bytes(fh.read(), encoding)
    for line in text.splitlines():
        tokens = line.split()
        if tokens:
            segments.append(tokens)
    return SegmentedCorpus(segments)

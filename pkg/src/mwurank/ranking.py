"""Deterministic rankings and their linguistic validation.

A ranking is valid for general multi-word-unit extraction when its top
entry matches the expected high-frequency anchor bigram ("ya da" by
default); a trigram ranking is invalid when its top entry starts with
that same pair. Orthographic reduplication detection and stop-word
boundary filtering annotate the rankings further.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import UsageError

Ngram = tuple[str, ...]

DEFAULT_STOP_WORDS = frozenset({"ve", "de", "da", "bir"})


@dataclass(frozen=True)
class MeasureScore:
    ngram: Ngram
    measure: str
    value: float
    observed_freq: int


@dataclass
class RankedList:
    measure: str
    n: int
    entries: list[MeasureScore]

    def top(self, depth: int) -> list[MeasureScore]:
        return self.entries[:depth]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class EvaluationConfig:
    positive_anchor: Ngram = ("ya", "da")
    negative_prefix: Ngram = ("ya", "da")
    inspection_depth: int = 20
    stop_set: frozenset[str] = DEFAULT_STOP_WORDS
    stop_whitelist: frozenset[Ngram] = frozenset({("ya", "da")})

    def __post_init__(self):
        if self.inspection_depth < 1:
            raise UsageError("inspection_depth must be >= 1")


def rank(scores: Iterable[MeasureScore], n: int | None = None) -> RankedList:
    """Total, deterministic order: score descending, then joint frequency
    descending, then lexicographic token order."""
    entries = list(scores)
    if not entries:
        raise UsageError("cannot rank an empty score set")
    measures = {e.measure for e in entries}
    if len(measures) > 1:
        raise UsageError(f"mixed measures in one ranking: {sorted(measures)}")
    sizes = {len(e.ngram) for e in entries}
    if len(sizes) > 1:
        raise UsageError(f"mixed gram sizes in one ranking: {sorted(sizes)}")
    if n is not None and sizes != {n}:
        raise UsageError(f"expected {n}-grams, got {sizes.pop()}-grams")
    entries.sort(key=lambda e: (-e.value, -e.observed_freq, e.ngram))
    return RankedList(measure=entries[0].measure, n=len(entries[0].ngram),
                      entries=entries)


@dataclass
class Verdict:
    valid: bool
    evidence: list[str]
    anchor_hits: int = 0


def validate_bigram_ranking(rl: RankedList, cfg: EvaluationConfig) -> Verdict:
    """Valid iff the top entry is the positive anchor bigram."""
    if rl.n != 2:
        raise UsageError("bigram validation requires a 2-gram ranking")
    if not rl.entries:
        raise UsageError("cannot validate an empty ranking")
    top = rl.entries[0].ngram
    valid = top == cfg.positive_anchor
    hits = sum(1 for e in rl.top(cfg.inspection_depth)
               if e.ngram == cfg.positive_anchor)
    return Verdict(valid=valid, evidence=[f"rank 1: {' '.join(top)}"],
                   anchor_hits=hits)


def validate_trigram_ranking(rl: RankedList, cfg: EvaluationConfig) -> Verdict:
    """Invalid iff the top entry begins with the negative prefix pair;
    evidence counts prefix hits over the whole inspection depth."""
    if rl.n != 3:
        raise UsageError("trigram validation requires a 3-gram ranking")
    if not rl.entries:
        raise UsageError("cannot validate an empty ranking")
    prefix = cfg.negative_prefix
    top_entries = rl.top(cfg.inspection_depth)
    hits = sum(1 for e in top_entries if e.ngram[: len(prefix)] == prefix)
    invalid = rl.entries[0].ngram[: len(prefix)] == prefix
    evidence = [f"rank 1: {' '.join(rl.entries[0].ngram)}",
                f"prefix hits in top {len(top_entries)}: {hits}"]
    return Verdict(valid=not invalid, evidence=evidence, anchor_hits=hits)


def stopword_boundary_filter(rl: RankedList,
                             cfg: EvaluationConfig) -> RankedList:
    """Drop entries whose first or last token is a stop word, unless
    whitelisted. Survivors keep their relative order and are re-ranked
    densely."""
    kept = [e for e in rl.entries
            if e.ngram in cfg.stop_whitelist
            or (e.ngram[0] not in cfg.stop_set
                and e.ngram[-1] not in cfg.stop_set)]
    return RankedList(measure=rl.measure, n=rl.n, entries=kept)


# Orthographic near-repetition rule: shared prefix of at least 3
# characters covering at least half of the shorter token.
MIN_PARTIAL_PREFIX = 3


def detect_reduplication(bigram: Sequence[str]) -> str:
    """Classify a bigram as 'full', 'partial', or 'none' reduplication.

    Purely orthographic; lexical pairs with unrelated stems ("allak
    bullak") are documented misses.
    """
    if len(bigram) != 2:
        raise UsageError("reduplication detection requires exactly two tokens")
    first, second = bigram
    if first == second:
        return "full"
    lcp = 0
    for a, b in zip(first, second):
        if a != b:
            break
        lcp += 1
    shortest = min(len(first), len(second))
    if lcp >= MIN_PARTIAL_PREFIX and lcp >= -(-shortest // 2):
        return "partial"
    return "none"


def compare_rankings(a: RankedList, b: RankedList,
                     depth: int) -> tuple[float, int, int]:
    """Top-depth overlap fraction and identical-prefix length.

    depth is truncated to the shorter list; returns (overlap, prefix,
    actual_depth).
    """
    if a.n != b.n:
        raise UsageError("cannot compare rankings of different gram sizes")
    actual = min(depth, len(a.entries), len(b.entries))
    if actual == 0:
        return 0.0, 0, 0
    top_a = [e.ngram for e in a.top(actual)]
    top_b = [e.ngram for e in b.top(actual)]
    overlap = len(set(top_a) & set(top_b)) / actual
    prefix = 0
    for ga, gb in zip(top_a, top_b):
        if ga != gb:
            break
        prefix += 1
    return overlap, prefix, actual


def pattern_filter(rl: RankedList, tags: Mapping[str, str],
                   patterns: Iterable[Sequence[str]]) -> RankedList:
    """Keep entries whose per-token tag sequence matches a template.

    Tags come from an external analyzer; tokens without a tag never match.
    Hook for grammatical-pattern filtering, no analyzer is bundled.
    """
    wanted = {tuple(p) for p in patterns}
    kept = []
    for e in rl.entries:
        sequence = tuple(tags.get(tok, "") for tok in e.ngram)
        if sequence in wanted:
            kept.append(e)
    return RankedList(measure=rl.measure, n=rl.n, entries=kept)


@dataclass
class RankingEvaluation:
    measure: str
    n: int
    verdict: str                      # "valid" or "invalid"
    evidence: list[str]
    anchor_hits: int
    reduplication_share: float        # top-depth fraction, bigrams only
    filtered_count: int               # stop-filter removals in top-depth
    depth: int


@dataclass
class EvaluationReport:
    config: EvaluationConfig
    results: list[RankingEvaluation] = field(default_factory=list)


def evaluate_ranking(rl: RankedList, cfg: EvaluationConfig) -> RankingEvaluation:
    """Verdict plus annotations for one (measure, n) ranking.

    Bigrams and trigrams use the anchor tests. Four-gram rankings have no
    anchor; they count as valid when the stop-word boundary filter leaves
    at least one entry in the inspection window, mirroring filter-first
    extraction for the longer grams.
    """
    depth = cfg.inspection_depth
    top = rl.top(depth)
    filtered = stopword_boundary_filter(
        RankedList(rl.measure, rl.n, list(top)), cfg)
    removed = len(top) - len(filtered.entries)
    redup_share = 0.0
    if rl.n == 2:
        flagged = sum(1 for e in top
                      if detect_reduplication(e.ngram) != "none")
        redup_share = flagged / len(top) if top else 0.0
        verdict = validate_bigram_ranking(rl, cfg)
    elif rl.n == 3:
        verdict = validate_trigram_ranking(rl, cfg)
    elif rl.n == 4:
        survivors = len(filtered.entries)
        verdict = Verdict(
            valid=survivors > 0,
            evidence=[f"rank 1: {' '.join(rl.entries[0].ngram)}",
                      f"stop filter kept {survivors} of top {len(top)}"])
    else:
        raise UsageError(f"no validation defined for {rl.n}-grams")
    return RankingEvaluation(
        measure=rl.measure, n=rl.n,
        verdict="valid" if verdict.valid else "invalid",
        evidence=verdict.evidence, anchor_hits=verdict.anchor_hits,
        reduplication_share=redup_share, filtered_count=removed, depth=depth)


def evaluate_rankings(lists: Iterable[RankedList],
                      cfg: EvaluationConfig) -> EvaluationReport:
    report = EvaluationReport(config=cfg)
    for rl in lists:
        report.results.append(evaluate_ranking(rl, cfg))
    return report

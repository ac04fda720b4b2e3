"""Scoring a count table with a measure, and the score-file format.

Score files carry one line per n-gram: rank, tokens joined by "<>",
the score with fixed decimal formatting, and the joint count.
"""

from __future__ import annotations

import json

from .counts import TOKEN_SEP, NgramCountTable, contingency
from .errors import DataFormatError
from .measures import check_applicability
from .ranking import MeasureScore, RankedList, rank

DEFAULT_PRECISION = 6


def score_table(table: NgramCountTable, measure_name: str,
                precision: int | None = DEFAULT_PRECISION) -> RankedList:
    """Score every n-gram in the table and return the deterministic ranking.

    Scores are rounded to the reporting precision before ranking, so
    n-grams whose reported scores coincide tie and fall back to the joint
    frequency; precision=None ranks on full float precision.
    """
    measure = check_applicability(measure_name, table.n)
    scores = []
    for gram in table.joint:
        ct = contingency(table, gram)
        value = measure.func(ct)
        if precision is not None:
            value = round(value, precision)
        scores.append(MeasureScore(ngram=gram, measure=measure.name,
                                   value=value,
                                   observed_freq=table.joint[gram]))
    return rank(scores, n=table.n)


def write_score_file(rl: RankedList, path, precision: int = DEFAULT_PRECISION,
                     encoding: str = "utf-8") -> None:
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        for idx, entry in enumerate(rl.entries, start=1):
            fh.write(f"{idx} {TOKEN_SEP.join(entry.ngram)} "
                     f"{entry.value:.{precision}f} {entry.observed_freq}\n")


def write_score_tsv(rl: RankedList, path, precision: int = DEFAULT_PRECISION,
                    encoding: str = "utf-8") -> None:
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        fh.write("rank\t" + "\t".join(f"token{i + 1}" for i in range(rl.n))
                 + "\tscore\tjoint\n")
        for idx, entry in enumerate(rl.entries, start=1):
            fh.write(f"{idx}\t" + "\t".join(entry.ngram)
                     + f"\t{entry.value:.{precision}f}\t{entry.observed_freq}\n")


def write_score_json(rl: RankedList, path, encoding: str = "utf-8") -> None:
    payload = {
        "measure": rl.measure,
        "n": rl.n,
        "entries": [
            {"rank": idx, "ngram": list(entry.ngram), "score": entry.value,
             "joint": entry.observed_freq}
            for idx, entry in enumerate(rl.entries, start=1)
        ],
    }
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def read_score_file(path, measure: str, n: int,
                    encoding: str = "utf-8") -> RankedList:
    """Parse a score file back into a RankedList.

    The file format does not name its measure or gram size; callers supply
    both (the CLI takes them as measure:n:path triplets).
    """
    entries = []
    with open(path, "r", encoding=encoding) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split(" ")
            if len(parts) != 4:
                raise DataFormatError(
                    "expected 'rank tokens score joint'", line=lineno)
            rank_str, tokens, score_str, joint_str = parts
            gram = tuple(tokens.split(TOKEN_SEP))
            if len(gram) != n:
                raise DataFormatError(
                    f"expected {n} tokens, got {len(gram)}", line=lineno)
            try:
                int(rank_str)
                value = float(score_str)
                joint = int(joint_str)
            except ValueError:
                raise DataFormatError("non-numeric field", line=lineno) from None
            entries.append(MeasureScore(ngram=gram, measure=measure,
                                        value=value, observed_freq=joint))
    if not entries:
        raise DataFormatError("empty score file", line=1)
    return RankedList(measure=measure, n=n, entries=entries)

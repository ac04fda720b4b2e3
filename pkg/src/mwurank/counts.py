"""N-gram counting, frequency cutoff, and contingency-table reconstruction.

Counts are exact and hash-map based. For each observed n-gram the table
keeps the joint count plus a marginal map for every non-empty proper
subset of positions, all derivable from (and kept consistent with) the
joint map. The grand total is the number of n-gram windows.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from functools import lru_cache

from .errors import DataFormatError, InconsistentTableError, UsageError
from .prep import SegmentedCorpus

VALID_NGRAM_SIZES = (2, 3, 4)

Ngram = tuple[str, ...]


@lru_cache(maxsize=None)
def position_subsets(n: int) -> tuple[tuple[int, ...], ...]:
    """All non-empty proper subsets of {0..n-1}, ordered by size then
    lexicographically. This ordering defines the marginal column order of
    the count-file format (n=2: first-position, second-position)."""
    out = []
    for size in range(1, n):
        out.extend(combinations(range(n), size))
    return tuple(out)


@dataclass(frozen=True)
class CutoffPolicy:
    min_freq: int = 10

    def __post_init__(self):
        if self.min_freq < 1:
            raise UsageError("min_freq must be >= 1")


@dataclass
class NgramCountTable:
    n: int
    joint: dict[Ngram, int]
    marginals: dict[tuple[int, ...], dict[Ngram, int]]
    total: int

    @classmethod
    def from_joints(cls, n: int, joint: dict[Ngram, int]) -> "NgramCountTable":
        """Derive all marginal maps and the total from a joint map."""
        marginals: dict[tuple[int, ...], dict[Ngram, int]] = {}
        for subset in position_subsets(n):
            m: dict[Ngram, int] = {}
            get = m.get
            for gram, count in joint.items():
                key = tuple(gram[i] for i in subset)
                m[key] = get(key, 0) + count
            marginals[subset] = m
        return cls(n=n, joint=dict(joint), marginals=marginals,
                   total=sum(joint.values()))

    def marginal(self, subset: tuple[int, ...], gram: Ngram) -> int:
        """Count of windows matching gram on the given positions."""
        if len(subset) == 0:
            return self.total
        if len(subset) == self.n:
            return self.joint.get(gram, 0)
        return self.marginals[subset].get(tuple(gram[i] for i in subset), 0)

    def validate(self) -> None:
        if sum(self.joint.values()) != self.total:
            raise InconsistentTableError("joint counts do not sum to total")
        for subset, m in self.marginals.items():
            if sum(m.values()) != self.total:
                raise InconsistentTableError(
                    f"marginal map {subset} does not sum to total")
        for gram, count in self.joint.items():
            if count < 1:
                raise InconsistentTableError(f"non-positive joint for {gram}")
            for subset in position_subsets(self.n):
                if self.marginal(subset, gram) < count:
                    raise InconsistentTableError(
                        f"marginal below joint for {gram} at {subset}")


def count_ngrams(corpus: SegmentedCorpus, n: int) -> NgramCountTable:
    """Count every window of n consecutive tokens lying inside one segment.

    Segments shorter than n contribute nothing; windows never cross a
    segment boundary.
    """
    if n not in VALID_NGRAM_SIZES:
        raise UsageError(f"n must be one of {VALID_NGRAM_SIZES}, got {n}")
    joint: Counter[Ngram] = Counter()
    for seg in corpus.segments:
        if len(seg) < n:
            continue
        joint.update(zip(*(seg[i:] for i in range(n))))
    return NgramCountTable.from_joints(n, joint)


def merge_tables(a: NgramCountTable, b: NgramCountTable) -> NgramCountTable:
    """Pointwise sum of two shard tables; equals counting the concatenated
    corpus provided no segment was split across shards."""
    if a.n != b.n:
        raise UsageError("cannot merge tables of different gram sizes")
    joint = Counter(a.joint)
    joint.update(b.joint)
    return NgramCountTable.from_joints(a.n, joint)


def apply_cutoff(table: NgramCountTable, policy: CutoffPolicy) -> NgramCountTable:
    """Drop every n-gram below min_freq and rebuild marginals and total
    from the survivors, so removed n-grams leave no trace in any count."""
    if policy.min_freq <= 1:
        return table
    surviving = {g: c for g, c in table.joint.items() if c >= policy.min_freq}
    return NgramCountTable.from_joints(table.n, surviving)


@dataclass
class ContingencyTable:
    """Full 2^n cell table for one n-gram.

    Cells are indexed by a bitmask: bit i set means the window carries the
    target token at position i. observed[-1] is the joint count; expected
    cells come from the all-singles independence model.
    """

    n: int
    observed: list[int]
    expected: list[float]
    total: int
    singles: tuple[int, ...]

    @property
    def joint(self) -> int:
        return self.observed[-1]

    @property
    def expected_joint(self) -> float:
        return self.expected[-1]

    # 2x2 accessors, used by the bigram-only measures
    @property
    def n11(self) -> int:
        return self.observed[3]

    @property
    def n1p(self) -> int:
        return self.singles[0]

    @property
    def np1(self) -> int:
        return self.singles[1]

    @property
    def npp(self) -> int:
        return self.total

    @classmethod
    def from_bigram_marginals(cls, n11: int, n1p: int, np1: int,
                              npp: int) -> "ContingencyTable":
        marg = {(): npp, (0,): n1p, (1,): np1, (0, 1): n11}
        return build_contingency(2, marg.__getitem__, npp)


def build_contingency(n: int, marg, total: int) -> ContingencyTable:
    """Reconstruct all 2^n observed cells by inclusion-exclusion over the
    marginal lookup marg(subset) and attach independence-model expecteds.

    marg must accept any subset of positions as a sorted tuple, with
    marg(()) == total and marg(full) == the joint count.
    """
    size = 1 << n
    observed = [0] * size
    for mask in range(size):
        present = tuple(i for i in range(n) if mask >> i & 1)
        absent = [i for i in range(n) if not mask >> i & 1]
        cell = 0
        for r in range(len(absent) + 1):
            for extra in combinations(absent, r):
                subset = tuple(sorted(present + extra))
                cell += (-1) ** r * marg(subset)
        observed[mask] = cell
    singles = tuple(marg((i,)) for i in range(n))
    if any(c < 0 for c in observed):
        raise InconsistentTableError(
            f"negative reconstructed cell in {observed} "
            f"(singles={singles}, total={total})")
    if sum(observed) != total:
        raise InconsistentTableError("reconstructed cells do not sum to total")
    denom = float(total) ** (n - 1)
    expected = []
    for mask in range(size):
        prod = 1.0
        for i in range(n):
            prod *= singles[i] if mask >> i & 1 else total - singles[i]
        expected.append(prod / denom if denom else 0.0)
    return ContingencyTable(n=n, observed=observed, expected=expected,
                            total=total, singles=singles)


def contingency(table: NgramCountTable, gram: Ngram) -> ContingencyTable:
    if gram not in table.joint:
        raise UsageError(f"n-gram {gram} not present in table")
    return build_contingency(table.n,
                             lambda subset: table.marginal(subset, gram),
                             table.total)


TOKEN_SEP = "<>"


def write_count_file(table: NgramCountTable, path, encoding="utf-8") -> None:
    """Count-file format: line 1 is the total; then one line per n-gram,
    tokens joined by "<>", followed by the joint count and the marginals
    in subset order, space-separated. Lines are emitted in deterministic
    (frequency-descending, then lexicographic) order."""
    subsets = position_subsets(table.n)
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        fh.write(f"{table.total}\n")
        for gram in sorted(table.joint, key=lambda g: (-table.joint[g], g)):
            counts = [table.joint[gram]]
            counts.extend(table.marginal(s, gram) for s in subsets)
            fh.write(TOKEN_SEP.join(gram) + TOKEN_SEP
                     + " ".join(str(c) for c in counts) + "\n")


def write_count_tsv(table: NgramCountTable, path, encoding="utf-8") -> None:
    """TSV export: token columns, joint, one column per marginal, total."""
    subsets = position_subsets(table.n)
    header = ([f"token{i + 1}" for i in range(table.n)] + ["joint"]
              + ["m" + "".join(str(i + 1) for i in s) for s in subsets]
              + ["total"])
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        fh.write("\t".join(header) + "\n")
        for gram in sorted(table.joint, key=lambda g: (-table.joint[g], g)):
            row = list(gram) + [str(table.joint[gram])]
            row += [str(table.marginal(s, gram)) for s in subsets]
            row.append(str(table.total))
            fh.write("\t".join(row) + "\n")


def read_count_file(path, encoding="utf-8") -> NgramCountTable:
    """Parse a count file, infer n, and verify every stated marginal
    against recomputation from the surviving joints."""
    with open(path, "r", encoding=encoding) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DataFormatError("empty count file", line=1)
    try:
        total = int(lines[0])
    except ValueError:
        raise DataFormatError(f"bad total {lines[0]!r}", line=1) from None
    joint: dict[Ngram, int] = {}
    stated: list[tuple[int, Ngram, list[int]]] = []
    n = None
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(TOKEN_SEP)
        if len(parts) < 3:
            raise DataFormatError("expected tokens separated by '<>'",
                                  line=lineno)
        gram = tuple(parts[:-1])
        if n is None:
            n = len(gram)
            if n not in VALID_NGRAM_SIZES:
                raise DataFormatError(f"unsupported gram size {n}", line=lineno)
        elif len(gram) != n:
            raise DataFormatError("inconsistent gram size", line=lineno)
        try:
            numbers = [int(tok) for tok in parts[-1].split()]
        except ValueError:
            raise DataFormatError("non-integer count", line=lineno) from None
        if len(numbers) != 1 + len(position_subsets(n)):
            raise DataFormatError("wrong number of count columns", line=lineno)
        if gram in joint:
            raise DataFormatError(f"duplicate n-gram {TOKEN_SEP.join(gram)}",
                                  line=lineno)
        joint[gram] = numbers[0]
        stated.append((lineno, gram, numbers[1:]))
    if n is None:
        if total != 0:
            raise DataFormatError("no n-gram lines but non-zero total", line=1)
        return NgramCountTable(2, {}, {s: {} for s in position_subsets(2)}, 0)
    table = NgramCountTable.from_joints(n, joint)
    if table.total != total:
        raise DataFormatError(
            f"total {total} does not match sum of joints {table.total}", line=1)
    subsets = position_subsets(n)
    for lineno, gram, numbers in stated:
        for subset, value in zip(subsets, numbers):
            if table.marginal(subset, gram) != value:
                raise DataFormatError(
                    f"marginal {value} inconsistent with joints for "
                    f"{TOKEN_SEP.join(gram)}", line=lineno)
    return table

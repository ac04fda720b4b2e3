import random

import pytest

from mwurank.counts import (ContingencyTable, CutoffPolicy, NgramCountTable,
                            apply_cutoff, build_contingency, contingency,
                            count_ngrams, merge_tables, position_subsets,
                            read_count_file, write_count_file,
                            write_count_tsv)
from mwurank.errors import (DataFormatError, InconsistentTableError,
                            UsageError)
from mwurank.prep import SegmentedCorpus

from oracles import naive_window_counts


def corpus(*segments):
    return SegmentedCorpus([list(s) for s in segments])


def test_subset_order_defines_marginal_columns():
    assert position_subsets(2) == ((0,), (1,))
    assert position_subsets(3) == ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2))
    assert len(position_subsets(4)) == 14


def test_count_bigrams_alternating():
    table = count_ngrams(corpus("ababa"), 2)
    assert table.joint == {("a", "b"): 2, ("b", "a"): 2}
    assert table.marginals[(0,)] == {("a",): 2, ("b",): 2}
    assert table.marginals[(1,)] == {("a",): 2, ("b",): 2}
    assert table.total == 4


def test_count_respects_segment_boundaries():
    table = count_ngrams(corpus("ab", "ab"), 2)
    assert table.joint == {("a", "b"): 2}
    assert ("b", "a") not in table.joint


def test_count_short_segments_contribute_nothing():
    table = count_ngrams(corpus("x"), 2)
    assert table.joint == {}
    assert table.total == 0


def test_count_rejects_bad_n():
    with pytest.raises(UsageError):
        count_ngrams(corpus("abc"), 5)


def test_cutoff_removes_everything_below_threshold():
    table = count_ngrams(corpus("ababa"), 2)
    cut = apply_cutoff(table, CutoffPolicy(10))
    assert cut.joint == {}
    assert cut.total == 0


def test_cutoff_one_is_identity():
    table = count_ngrams(corpus("ababa"), 2)
    cut = apply_cutoff(table, CutoffPolicy(1))
    assert cut.joint == table.joint
    assert cut.total == table.total


def test_cutoff_subtracts_from_marginals():
    joint = {("a", "b"): 12, ("a", "c"): 3}
    table = NgramCountTable.from_joints(2, joint)
    assert table.marginal((0,), ("a", "b")) == 15
    cut = apply_cutoff(table, CutoffPolicy(10))
    assert cut.joint == {("a", "b"): 12}
    assert cut.marginal((0,), ("a", "b")) == 12
    assert cut.total == 12
    cut.validate()


def test_cutoff_policy_validation():
    with pytest.raises(UsageError):
        CutoffPolicy(0)


def random_corpus(rng, max_tokens=1000, alphabet=20):
    vocab = [f"w{i}" for i in range(rng.randint(2, alphabet))]
    segments = []
    tokens = 0
    while tokens < max_tokens:
        length = rng.randint(1, 12)
        segments.append([rng.choice(vocab) for _ in range(length)])
        tokens += length
        if rng.random() < 0.05:
            break
    return SegmentedCorpus(segments)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_recount_oracle(n):
    rng = random.Random(20 + n)
    for _ in range(25):
        c = random_corpus(rng)
        table = count_ngrams(c, n)
        joint, marginals, total = naive_window_counts(c.segments, n)
        assert table.joint == joint
        assert table.total == total
        for subset, m in marginals.items():
            assert table.marginals[subset] == m
        table.validate()


def test_merge_equals_concatenated_count():
    rng = random.Random(7)
    for n in (2, 3):
        a = random_corpus(rng, max_tokens=300)
        b = random_corpus(rng, max_tokens=300)
        merged = merge_tables(count_ngrams(a, n), count_ngrams(b, n))
        whole = count_ngrams(SegmentedCorpus(a.segments + b.segments), n)
        assert merged.joint == whole.joint
        assert merged.marginals == whole.marginals
        assert merged.total == whole.total


def test_merge_rejects_mixed_sizes():
    with pytest.raises(UsageError):
        merge_tables(count_ngrams(corpus("abc"), 2),
                     count_ngrams(corpus("abc"), 3))


def test_contingency_hand_example():
    ct = ContingencyTable.from_bigram_marginals(10, 20, 40, 100)
    # cell order: (absent, absent), (present, absent), (absent, present),
    # (present, present)
    assert ct.observed == [50, 10, 30, 10]
    assert ct.expected == [48.0, 12.0, 32.0, 8.0]
    assert ct.n11 == 10 and ct.n1p == 20 and ct.np1 == 40 and ct.npp == 100


def test_contingency_perfect_association():
    k = 7
    ct = ContingencyTable.from_bigram_marginals(k, k, k, k)
    assert ct.observed == [0, 0, 0, k]


def test_contingency_trigram_single_type():
    j = 5
    marg = {(): j, (0,): j, (1,): j, (2,): j,
            (0, 1): j, (0, 2): j, (1, 2): j, (0, 1, 2): j}
    ct = build_contingency(3, marg.__getitem__, j)
    assert ct.observed[-1] == j
    assert sum(ct.observed) == j
    assert all(c == 0 for c in ct.observed[:-1])


def test_contingency_negative_cell_signals_corruption():
    # n11 > n1p is impossible in a real table
    with pytest.raises(InconsistentTableError):
        ContingencyTable.from_bigram_marginals(10, 5, 40, 100)


def test_contingency_requires_gram_present():
    table = count_ngrams(corpus("ababa"), 2)
    with pytest.raises(UsageError):
        contingency(table, ("z", "z"))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_contingency_cells_nonnegative_and_sum_to_total(n):
    rng = random.Random(40 + n)
    c = random_corpus(rng, max_tokens=400, alphabet=6)
    table = count_ngrams(c, n)
    for gram in table.joint:
        ct = contingency(table, gram)
        assert all(cell >= 0 for cell in ct.observed)
        assert sum(ct.observed) == table.total
        assert sum(ct.expected) == pytest.approx(table.total, rel=1e-9)


def test_count_file_roundtrip(tmp_path):
    for n in (2, 3, 4):
        c = random_corpus(random.Random(60 + n), max_tokens=300, alphabet=5)
        table = count_ngrams(c, n)
        path = tmp_path / f"{n}.count"
        write_count_file(table, path)
        again = read_count_file(path)
        assert again.joint == table.joint
        assert again.marginals == table.marginals
        assert again.total == table.total


def test_count_file_format_shape(tmp_path):
    table = NgramCountTable.from_joints(2, {("ya", "da"): 5, ("ya", "ya"): 2})
    path = tmp_path / "pair.count"
    write_count_file(table, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "7"
    assert lines[1] == "ya<>da<>5 7 5"
    assert lines[2] == "ya<>ya<>2 7 2"


def test_count_tsv_has_total_column(tmp_path):
    table = NgramCountTable.from_joints(2, {("a", "b"): 3})
    path = tmp_path / "pair.tsv"
    write_count_tsv(table, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].split("\t") == ["token1", "token2", "joint", "m1", "m2",
                                    "total"]
    assert lines[1].split("\t") == ["a", "b", "3", "3", "3", "3"]


def test_count_file_bad_total(tmp_path):
    path = tmp_path / "bad.count"
    path.write_text("abc\n", encoding="utf-8")
    with pytest.raises(DataFormatError, match="line 1"):
        read_count_file(path)


def test_count_file_inconsistent_marginal(tmp_path):
    path = tmp_path / "bad.count"
    path.write_text("5\na<>b<>5 9 5\n", encoding="utf-8")
    with pytest.raises(DataFormatError, match="line 2"):
        read_count_file(path)


def test_count_file_empty_table(tmp_path):
    path = tmp_path / "empty.count"
    path.write_text("0\n", encoding="utf-8")
    table = read_count_file(path)
    assert table.joint == {}
    assert table.total == 0

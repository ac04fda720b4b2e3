import json

import pytest

from mwurank.cli import main
from mwurank.prep import SegmentedCorpus, write_corpus

import refdata


@pytest.fixture
def corpus_file(tmp_path):
    corpus = SegmentedCorpus([
        ["ya", "da", "bir", "gün"],
        ["ya", "da", "iki", "gün"],
        ["ya", "da", "bir", "hafta"],
        ["bir", "gün", "daha"],
    ])
    path = tmp_path / "corpus.txt"
    write_corpus(corpus, path)
    return path


def run(args):
    return main([str(a) for a in args])


class TestPrep:
    def test_writes_segments_and_counts(self, tmp_path, capsys):
        src = tmp_path / "raw.txt"
        src.write_text(refdata.SAMPLE_RAW_TEXT, encoding="utf-8")
        out = tmp_path / "corpus.txt"
        assert run(["prep", src, "-o", out]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines == refdata.SAMPLE_PREPARED_LINES
        assert "tokens:" in capsys.readouterr().err

    def test_empty_file(self, tmp_path, capsys):
        src = tmp_path / "empty.txt"
        src.write_text("", encoding="utf-8")
        out = tmp_path / "corpus.txt"
        assert run(["prep", src, "-o", out]) == 0
        assert out.read_text(encoding="utf-8") == ""
        assert "tokens: 0" in capsys.readouterr().err

    def test_directory_inputs_in_sorted_order(self, tmp_path):
        d = tmp_path / "docs"
        d.mkdir()
        (d / "b.txt").write_text("ikinci belge\n", encoding="utf-8")
        (d / "a.txt").write_text("birinci belge\n", encoding="utf-8")
        out = tmp_path / "corpus.txt"
        assert run(["prep", d, "-o", out]) == 0
        assert out.read_text(encoding="utf-8").splitlines() == [
            "birinci belge", "ikinci belge"]

    def test_missing_path_is_data_error(self, tmp_path):
        assert run(["prep", tmp_path / "nope.txt",
                    "-o", tmp_path / "out"]) == 2

    def test_undecodable_input(self, tmp_path):
        src = tmp_path / "bad.txt"
        src.write_bytes(b"abc\xff")
        assert run(["prep", src, "-o", tmp_path / "out"]) == 2


class TestCountScore:
    def test_count_cutoff_applies(self, corpus_file, tmp_path):
        out = tmp_path / "out.count"
        assert run(["count", corpus_file, "--ngram", 2, "--remove", 3,
                    "-o", out]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "3"
        assert lines[1] == "ya<>da<>3 3 3"
        assert len(lines) == 2

    def test_count_then_score_roundtrip(self, corpus_file, tmp_path):
        countfile = tmp_path / "out.count"
        scorefile = tmp_path / "out.ll"
        assert run(["count", corpus_file, "--ngram", 2, "--remove", 1,
                    "-o", countfile]) == 0
        assert run(["score", countfile, "--measure", "ll",
                    "-o", scorefile]) == 0
        lines = scorefile.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("1 ya<>da ")

    def test_score_rejects_out_of_matrix_measure(self, corpus_file, tmp_path):
        countfile = tmp_path / "out.count"
        run(["count", corpus_file, "--ngram", 3, "--remove", 1,
             "-o", countfile])
        assert run(["score", countfile, "--measure", "tscore",
                    "-o", tmp_path / "s"]) == 1

    def test_malformed_count_file_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.count"
        bad.write_text("5\na<>b<>oops\n", encoding="utf-8")
        assert run(["score", bad, "--measure", "ll",
                    "-o", tmp_path / "s"]) == 2

    def test_deterministic_outputs(self, corpus_file, tmp_path):
        outputs = []
        for tag in ("one", "two"):
            countfile = tmp_path / f"{tag}.count"
            scorefile = tmp_path / f"{tag}.score"
            run(["count", corpus_file, "--ngram", 2, "--remove", 1,
                 "-o", countfile])
            run(["score", countfile, "--measure", "tscore",
                 "-o", scorefile])
            outputs.append(countfile.read_bytes() + scorefile.read_bytes())
        assert outputs[0] == outputs[1]

    def test_threads_do_not_change_output(self, corpus_file, tmp_path):
        blobs = []
        for threads in (1, 4):
            out = tmp_path / f"t{threads}.count"
            assert run(["count", corpus_file, "--ngram", 2, "--remove", 1,
                        "--threads", threads, "-o", out]) == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_tsv_and_json_formats(self, corpus_file, tmp_path):
        countfile = tmp_path / "out.count"
        run(["count", corpus_file, "--ngram", 2, "--remove", 1,
             "-o", countfile])
        tsv = tmp_path / "scores.tsv"
        assert run(["score", countfile, "--measure", "dice",
                    "--format", "tsv", "-o", tsv]) == 0
        assert tsv.read_text(encoding="utf-8").startswith("rank\ttoken1")
        js = tmp_path / "scores.json"
        assert run(["score", countfile, "--measure", "dice",
                    "--format", "json", "-o", js]) == 0
        payload = json.loads(js.read_text(encoding="utf-8"))
        assert payload["measure"] == "dice"
        assert payload["entries"][0]["rank"] == 1


class TestRankEvalReport:
    @pytest.fixture
    def score_file(self, corpus_file, tmp_path):
        countfile = tmp_path / "out.count"
        scorefile = tmp_path / "out.score"
        run(["count", corpus_file, "--ngram", 2, "--remove", 1,
             "-o", countfile])
        run(["score", countfile, "--measure", "tscore", "-o", scorefile])
        return scorefile

    def test_rank_excerpt(self, score_file, tmp_path):
        out = tmp_path / "top.score"
        assert run(["rank", score_file, "--measure", "tscore", "--ngram", 2,
                    "--depth", 3, "-o", out]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 3
        assert lines[0].split(" ")[0] == "1"

    def test_rank_with_stopfilter(self, score_file, tmp_path):
        out = tmp_path / "top.score"
        assert run(["rank", score_file, "--measure", "tscore", "--ngram", 2,
                    "--depth", 20, "--stopfilter", "-o", out]) == 0
        for line in out.read_text(encoding="utf-8").splitlines():
            tokens = line.split(" ")[1].split("<>")
            if tokens != ["ya", "da"]:
                assert tokens[0] not in {"ve", "de", "da", "bir"}
                assert tokens[-1] not in {"ve", "de", "da", "bir"}

    def test_eval_text_and_json(self, score_file, tmp_path, capsys):
        assert run(["eval", "--scores", f"tscore:2:{score_file}"]) == 0
        assert "tscore" in capsys.readouterr().out
        out = tmp_path / "report.json"
        assert run(["eval", "--scores", f"tscore:2:{score_file}",
                    "--format", "json", "-o", out]) == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["results"][0]["verdict"] == "valid"

    def test_eval_bad_spec_is_usage_error(self, score_file):
        assert run(["eval", "--scores", str(score_file)]) == 1

    def test_custom_anchor_changes_verdict(self, score_file):
        assert run(["eval", "--scores", f"tscore:2:{score_file}",
                    "--anchor", "bir gün"]) == 0

    def test_report_writes_figures_and_tables(self, score_file, tmp_path):
        outdir = tmp_path / "report"
        assert run(["report", "--scores", f"tscore:2:{score_file}",
                    "--outdir", outdir]) == 0
        names = {p.name for p in outdir.iterdir()}
        assert {"report.txt", "report.tsv", "report.json",
                "verdicts.png", "top_tscore_2gram.png"} <= names

    def test_config_file_overrides_flags(self, score_file, tmp_path,
                                         capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"depth": 1}), encoding="utf-8")
        assert run(["eval", "--scores", f"tscore:2:{score_file}",
                    "--depth", 5, "--config", cfg]) == 0
        assert "depth: 1" in capsys.readouterr().out


def test_unknown_subcommand_is_usage_error():
    assert run(["frobnicate"]) == 1

from __future__ import annotations

from pathlib import Path


from retrans.cli import main
from retrans.corpus import read_lines


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


class TestUsageErrors:
    def test_gen_partial_alignment_method_needs_alignments(self, capsys, tmp_path, fixtures):
        code, _, err = run(
            capsys,
            "gen-partial",
            "--src", str(fixtures / "tiny.en"),
            "--tgt", str(fixtures / "tiny.es"),
            "--method", "alignment",
            "--out-prefix", str(tmp_path / "p"),
        )
        assert code == 1
        assert "usage:" in err
        assert "--alignments" in err

    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1
        assert "usage:" in err

    def test_missing_required_flag(self, capsys):
        code, _, err = run(capsys, "score", "--hyp", "x")
        assert code == 1
        assert "usage:" in err

    def test_unknown_translator(self, capsys, tmp_path, fixtures):
        code, _, err = run(
            capsys,
            "simulate",
            "--events", str(fixtures / "tiny.events.jsonl"),
            "--translator", "magic",
        )
        assert code == 1
        assert "magic" in err


class TestDataErrors:
    def test_score_mismatched_line_counts(self, capsys, tmp_path):
        hyp = write(tmp_path / "hyp.txt", "a b\nc d\n")
        ref = write(tmp_path / "ref.txt", "a b\n")
        code, _, err = run(
            capsys, "score", "--hyp", str(hyp), "--ref", str(ref), "--metric", "bleu"
        )
        assert code == 2
        assert "2" in err and "1" in err

    def test_empty_corpus_line_names_position(self, capsys, tmp_path):
        src = write(tmp_path / "s.txt", "a\n\nb\n")
        tgt = write(tmp_path / "t.txt", "x\ny\nz\n")
        code, _, err = run(
            capsys,
            "align",
            "--src", str(src),
            "--tgt", str(tgt),
            "--out", str(tmp_path / "a.align"),
        )
        assert code == 2
        assert "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "score",
            "--hyp", str(tmp_path / "none.txt"),
            "--ref", str(tmp_path / "none.txt"),
            "--metric", "bleu",
        )
        assert code == 2

    def test_bad_alignment_file(self, capsys, tmp_path, fixtures):
        bad = write(tmp_path / "bad.align", "9-9\n" * 20)
        code, _, err = run(
            capsys,
            "gen-partial",
            "--src", str(fixtures / "tiny.en"),
            "--tgt", str(fixtures / "tiny.es"),
            "--method", "alignment",
            "--alignments", str(bad),
            "--out-prefix", str(tmp_path / "p"),
        )
        assert code == 2


class TestScore:
    def test_bleu_output_format(self, capsys, tmp_path):
        hyp = write(tmp_path / "hyp.txt", "a b c d\n")
        ref = write(tmp_path / "ref.txt", "a b c d e f g h\n")
        code, out, _ = run(
            capsys, "score", "--hyp", str(hyp), "--ref", str(ref), "--metric", "bleu"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "bleu\t0.3679"
        assert lines[1] == "bleu100\t36.7879"

    def test_gleu_metric(self, capsys, tmp_path):
        hyp = write(tmp_path / "hyp.txt", "yo animo a todo el mundo\n")
        ref = write(tmp_path / "ref.txt", "yo animo a\n")
        code, out, _ = run(
            capsys, "score", "--hyp", str(hyp), "--ref", str(ref), "--metric", "gleu"
        )
        assert code == 0
        assert out.splitlines()[0] == "gleu\t0.3333"

    def test_wer_metric(self, capsys, tmp_path):
        hyp = write(tmp_path / "hyp.txt", "a x c\n")
        ref = write(tmp_path / "ref.txt", "a b c\n")
        code, out, _ = run(
            capsys, "score", "--hyp", str(hyp), "--ref", str(ref), "--metric", "wer"
        )
        assert code == 0
        assert out.splitlines()[0] == "wer\t0.3333"

    def test_config_echoed_to_stderr(self, capsys, tmp_path):
        hyp = write(tmp_path / "hyp.txt", "a\n")
        code, _, err = run(
            capsys, "score", "--hyp", str(hyp), "--ref", str(hyp), "--metric", "bleu"
        )
        assert code == 0
        assert err.startswith("config: command=score seed=17 verbose=0")


class TestAlign:
    def test_writes_alignments_and_table(self, capsys, tmp_path, fixtures):
        out = tmp_path / "tiny.align"
        table = tmp_path / "table.tsv"
        code, _, _ = run(
            capsys,
            "align",
            "--src", str(fixtures / "tiny.en"),
            "--tgt", str(fixtures / "tiny.es"),
            "--iterations", "5",
            "--out", str(out),
            "--table-out", str(table),
        )
        assert code == 0
        align_lines = read_lines(out)
        assert len(align_lines) == 20
        first = read_lines(table)[0].split("\t")
        assert first[0] == "<NULL>"
        assert 0.0 <= float(first[2]) <= 1.0


class TestGenPartialAndMix:
    def test_ratio_generation_and_mixing(self, capsys, tmp_path, fixtures):
        prefix = tmp_path / "partial"
        code, _, _ = run(
            capsys,
            "gen-partial",
            "--src", str(fixtures / "tiny.en"),
            "--tgt", str(fixtures / "tiny.es"),
            "--method", "ratio",
            "--out-prefix", str(prefix),
        )
        assert code == 0
        src_lines = read_lines(f"{prefix}.src")
        manifest = read_lines(f"{prefix}.manifest.tsv")
        assert manifest[0] == "parent_id\ti\tj\tmethod"
        assert len(src_lines) == len(manifest) - 1

        out = tmp_path / "mixed"
        code, _, _ = run(
            capsys,
            "mix",
            "--full-src", str(fixtures / "tiny.en"),
            "--full-tgt", str(fixtures / "tiny.es"),
            "--partial-src", f"{prefix}.src",
            "--partial-tgt", f"{prefix}.tgt",
            "--out-prefix", str(out),
            "--seed", "17",
        )
        assert code == 0
        mixed_src = read_lines(f"{out}.src")
        assert len(mixed_src) == 40
        keys = dict(
            line.split(": ", 1) for line in read_lines(f"{out}.manifest.txt")
        )
        assert keys["full_count"] == "20"
        assert keys["partial_sampled"] == "20"
        assert keys["output_size"] == "40"
        assert keys["seed"] == "17"


class TestReseg:
    def test_segments_match_reference_count(self, capsys, tmp_path, fixtures):
        out = tmp_path / "segments.txt"
        code, _, _ = run(
            capsys,
            "reseg",
            "--hyp-stream", str(fixtures / "tiny.hyp.es"),
            "--refs", str(fixtures / "tiny.es"),
            "--out", str(out),
        )
        assert code == 0
        segments = Path(out).read_text(encoding="utf-8").splitlines()
        assert len(segments) == 20


class TestSimulate:
    def test_dict_translator_full_report(self, capsys, tmp_path, fixtures):
        log = tmp_path / "log.jsonl"
        report = tmp_path / "report.txt"
        code, out, _ = run(
            capsys,
            "simulate",
            "--events", str(fixtures / "tiny.events.jsonl"),
            "--translator", f"dict:{fixtures / 'tiny.lexicon.tsv'}",
            "--refs", str(fixtures / "tiny.refs.txt"),
            "--log-out", str(log),
            "--report-out", str(report),
        )
        assert code == 0
        report_lines = read_lines(report)
        assert report_lines == out.splitlines()
        keys = dict(line.split(": ", 1) for line in report_lines)
        assert set(keys) == {"bleu", "word_up", "mssg_up", "updates_total"}
        assert keys["updates_total"] == "5"
        # The word-by-word translator never retracts words on extends, and
        # the replace-style streams here are consistent extensions too.
        assert keys["word_up"] == "0"
        log_lines = read_lines(log)
        assert len(log_lines) == 8

    def test_identity_translator_without_refs(self, capsys, tmp_path, fixtures):
        code, out, _ = run(
            capsys,
            "simulate",
            "--events", str(fixtures / "tiny.events.jsonl"),
            "--translator", "identity",
        )
        assert code == 0
        keys = dict(line.split(": ", 1) for line in out.splitlines())
        assert set(keys) == {"word_up", "mssg_up", "updates_total"}

    def test_scripted_translator_replay_fixture(self, capsys, tmp_path, fixtures):
        report = tmp_path / "report.txt"
        code, _, _ = run(
            capsys,
            "simulate",
            "--events", str(fixtures / "replay.events.jsonl"),
            "--translator", f"script:{fixtures / 'replay.baseline.tsv'}",
            "--report-out", str(report),
        )
        assert code == 0
        keys = dict(line.split(": ", 1) for line in read_lines(report))
        assert keys["word_up"] == "18"
        assert keys["mssg_up"] == "6"

    def test_word_to_word_lexicon_enforced(self, capsys, tmp_path, fixtures):
        bad = write(tmp_path / "bad.tsv", "source\ttwo words\n")
        code, _, err = run(
            capsys,
            "simulate",
            "--events", str(fixtures / "tiny.events.jsonl"),
            "--translator", f"dict:{bad}",
        )
        assert code == 2
        assert "word-to-word" in err


def test_determinism_across_runs(capsys, tmp_path, fixtures):
    outputs = []
    for run_dir in ("a", "b"):
        d = tmp_path / run_dir
        d.mkdir()
        code, _, _ = run(
            capsys,
            "gen-partial",
            "--src", str(fixtures / "tiny.en"),
            "--tgt", str(fixtures / "tiny.es"),
            "--method", "ratio",
            "--out-prefix", str(d / "p"),
        )
        assert code == 0
        code, _, _ = run(
            capsys,
            "mix",
            "--full-src", str(fixtures / "tiny.en"),
            "--full-tgt", str(fixtures / "tiny.es"),
            "--partial-src", str(d / "p.src"),
            "--partial-tgt", str(d / "p.tgt"),
            "--out-prefix", str(d / "m"),
            "--seed", "99",
        )
        assert code == 0
        outputs.append(
            [(d / name).read_bytes() for name in ("m.src", "m.tgt", "m.manifest.txt")]
        )
    assert outputs[0] == outputs[1]

"""Command line behavior, exit codes, and serialization formats."""

import json

import pytest

from epimine.cli import (
    CorpusOptions,
    load_sequence,
    render_episodes,
    run,
    worker_count,
)
from epimine.miner import ConfigError

from helpers import DIAMOND, S1, S3


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "events.txt"
    path.write_text(" ".join(S1), encoding="utf-8")
    return path


def lines_of(capsys):
    return capsys.readouterr().out.splitlines()


class TestLoadSequence:
    def test_plain(self, corpus):
        seq = load_sequence(corpus)
        assert seq.tokens == tuple(S1)

    def test_filters_apply_in_order(self, tmp_path):
        doc = tmp_path / "doc.txt"
        doc.write_text("The cat, the hat.", encoding="utf-8")
        stops = tmp_path / "stop.txt"
        stops.write_text("the\n", encoding="utf-8")
        seq = load_sequence(
            doc,
            CorpusOptions(
                lowercase=True, strip_punctuation=True, stopword_file=str(stops)
            ),
        )
        assert seq.tokens == ("cat", "hat")

    def test_empty_after_filtering(self, tmp_path):
        from epimine.cli import EmptySequenceError

        doc = tmp_path / "doc.txt"
        doc.write_text("...", encoding="utf-8")
        with pytest.raises(EmptySequenceError):
            load_sequence(doc, CorpusOptions(strip_punctuation=True))


class TestExitCodes:
    def test_success(self, corpus, capsys):
        assert run(["--window", "5", "--min-freq", "2", str(corpus)]) == 0
        assert lines_of(capsys)

    def test_config_error(self, corpus, capsys):
        assert run(["--window", "5", "--min-freq", "0", str(corpus)]) == 2
        assert "min_freq" in capsys.readouterr().err

    def test_bad_thread_env(self, corpus, capsys, monkeypatch):
        monkeypatch.setenv("EPISODE_THREADS", "many")
        assert run(["--window", "5", "--min-freq", "2", str(corpus)]) == 2

    def test_missing_file(self, tmp_path, capsys):
        missing = tmp_path / "nope.txt"
        assert run(["--window", "5", "--min-freq", "2", str(missing)]) == 1

    def test_empty_file(self, tmp_path, capsys):
        doc = tmp_path / "doc.txt"
        doc.write_text("", encoding="utf-8")
        assert run(["--window", "5", "--min-freq", "2", str(doc)]) == 1


class TestWorkerCount:
    def test_explicit(self, monkeypatch):
        monkeypatch.setenv("EPISODE_THREADS", "3")
        assert worker_count() == 3

    def test_zero_means_cpus(self, monkeypatch):
        monkeypatch.setenv("EPISODE_THREADS", "0")
        assert worker_count() >= 1

    def test_negative_rejected(self, monkeypatch):
        monkeypatch.setenv("EPISODE_THREADS", "-2")
        with pytest.raises(ConfigError):
            worker_count()


class TestTextOutput:
    def test_diamond_shown_only_in_iclosed(self, corpus, capsys):
        diamond_line = (
            "freq=2 nodes=[a,b,c,d] edges=[(0,1),(0,2),(0,3),(1,3),(2,3)]"
        )
        base = ["--window", "5", "--min-freq", "2", "--measure", "disjoint"]
        assert run(base + ["--emit", "i-closed", str(corpus)]) == 0
        assert diamond_line in lines_of(capsys)
        assert run(base + [str(corpus)]) == 0
        assert diamond_line not in lines_of(capsys)

    def test_every_line_well_formed(self, corpus, capsys):
        from epimine.episode import parse_episode

        assert run(["--window", "5", "--min-freq", "2", str(corpus)]) == 0
        out = lines_of(capsys)
        assert len(out) == 54
        for line in out:
            freq_part, episode_part = line.split(" ", 1)
            assert int(freq_part.removeprefix("freq=")) >= 2
            parse_episode(episode_part)

    def test_out_file(self, corpus, tmp_path, capsys):
        target = tmp_path / "episodes.txt"
        assert run(
            ["--window", "5", "--min-freq", "2", "--out", str(target), str(corpus)]
        ) == 0
        assert capsys.readouterr().out == ""
        assert len(target.read_text(encoding="utf-8").splitlines()) == 54


class TestJsonlOutput:
    def test_round_trip(self, corpus, capsys):
        assert run(
            ["--window", "5", "--min-freq", "2", "--format", "jsonl",
             "--emit", "i-closed", str(corpus)]
        ) == 0
        rows = [json.loads(line) for line in lines_of(capsys)]
        assert len(rows) == 91
        want = {
            "nodes": list(DIAMOND.labels),
            "edges": [list(e) for e in DIAMOND.edges],
            "freq_fixed": 2,
            "freq_disjoint": 2,
            "closed_kind": "i-closed",
        }
        assert want in rows

    def test_unknown_format_rejected_by_renderer(self):
        with pytest.raises(ValueError):
            render_episodes([], "yaml", "fixed", "f-closed")


class TestReport:
    def test_totals_match_lines(self, corpus, tmp_path, capsys):
        report = tmp_path / "stats.csv"
        assert run(
            ["--window", "5", "--min-freq", "2", "--report", str(report), str(corpus)]
        ) == 0
        episode_lines = lines_of(capsys)
        text = report.read_text(encoding="utf-8").splitlines()
        assert text[0] == (
            "# window=5 min_freq=2 measure=fixed closure=i"
            " max_nodes=none emit=f-closed"
        )
        assert text[1] == "size,f_closed,i_closed,runtime_ms"
        *rows, total = text[2:]
        f_sum = i_sum = 0
        for row in rows:
            size, f, i, runtime = row.split(",")
            assert runtime == ""
            f_sum += int(f)
            i_sum += int(i)
        assert f_sum == len(episode_lines) == 54
        assert i_sum == 91
        tot = total.split(",")
        assert tot[:3] == ["total", "54", "91"]
        assert int(tot[3]) >= 0

    def test_cap_echoed(self, corpus, tmp_path):
        report = tmp_path / "stats.csv"
        assert run(
            ["--window", "5", "--min-freq", "2", "--max-nodes", "4",
             "--report", str(report), str(corpus)]
        ) == 0
        assert "max_nodes=4" in report.read_text(encoding="utf-8").splitlines()[0]


def test_thread_count_never_changes_output(tmp_path, monkeypatch, capsys):
    doc = tmp_path / "doc.txt"
    doc.write_text(" ".join(S3), encoding="utf-8")
    argv = ["--window", "3", "--min-freq", "1", "--emit", "i-closed", str(doc)]
    outputs = []
    for threads in ("1", "2", "5"):
        monkeypatch.setenv("EPISODE_THREADS", threads)
        assert run(argv) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]

import shutil

import pytest

from groupaccretion.candidates import parse_report
from groupaccretion.cli import main
from groupaccretion.pipeline import read_ranked
from groupaccretion.corpus import ingest


def run(*argv):
    return main([str(a) for a in argv])


def test_stats_writes_table(tmp_path, demo_corpus_path, capsys):
    assert run("stats", "--corpus", demo_corpus_path, "--split", "A.1", "--split", "1992-1993:1994-1995",
               "--out", tmp_path) == 0
    text = (tmp_path / "stats.tsv").read_text()
    assert text.startswith("# groupaccretion")
    rows = [ln.split("\t") for ln in text.splitlines() if not ln.startswith("#")]
    header, a1 = rows[0], dict(zip(rows[0], rows[1]))
    assert header[0] == "split" and len(rows) == 3
    assert (a1["nag"], a1["oag"], a1["total_igs"], a1["total_sgs"]) == ("1", "7", "5", "5")
    assert a1["pct_old_actor_groups"] == "87.50"
    assert "A.1" in capsys.readouterr().out


def test_score_and_evaluate(tmp_path, demo_corpus_path, capsys):
    assert run("score", "--corpus", demo_corpus_path, "--split", "A.1", "--n-top", 10, "--n-top-group", 5,
               "--out", tmp_path) == 0
    for method in ("gks", "brws", "glps"):
        for mode in ("ia", "sa"):
            assert (tmp_path / f"{method}_{mode}.tsv").is_file()
            assert (tmp_path / f"{method}_{mode}_groups_000.tsv").is_file()
    ranked = read_ranked(tmp_path / "gks_ia.tsv", ingest(demo_corpus_path))
    assert ranked.meta["mode"] == "ia" and ranked.meta["n_top"] == "10"
    assert ranked.meta["mu"] == "0.1" and ranked.meta["mu_per_group"] == "0.5"
    assert [r[0] for r in ranked.rows] == list(range(1, 11))
    scores = [r[1] for r in ranked.rows]
    assert scores == sorted(scores, reverse=True)

    capsys.readouterr()
    assert run("evaluate", "--corpus", demo_corpus_path, "--split", "A.1", "--ranked", tmp_path / "gks",
               "--out", tmp_path) == 0
    values = parse_report(capsys.readouterr().out)
    assert len(values) == 8
    assert all(v is None or 0 <= v <= 1 for v in values.values())
    saved = parse_report((tmp_path / "gks_report.txt").read_text())
    assert saved == values


def test_evaluate_single_file(tmp_path, demo_corpus_path, capsys):
    run("score", "--corpus", demo_corpus_path, "--split", "A.1", "--method", "gks", "--mode", "ia",
        "--n-top", 10, "--n-top-group", 0, "--out", tmp_path)
    capsys.readouterr()
    assert run("evaluate", "--corpus", demo_corpus_path, "--split", "A.1", "--ranked", tmp_path / "gks_ia.tsv",
               "--out", tmp_path) == 0
    values = parse_report(capsys.readouterr().out)
    assert values["precision_at_N_ia"] is not None and values["precision_at_N_sa"] is None


def test_config_file_and_override(tmp_path, demo_corpus_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"corpus={demo_corpus_path}\nsplit=A.1\nmethod=gks\nmode=ia\nn-top=3\nbeta=0.3\n")
    assert run("score", "--config", cfg, "--beta", 0.2, "--n-top-group", 0, "--out", tmp_path) == 0
    meta = read_ranked(tmp_path / "gks_ia.tsv", ingest(demo_corpus_path)).meta
    assert meta["beta"] == "0.2" and meta["n_top"] == "3"


def test_verify_passes_and_negative_control_fails(demo_corpus_path, capsys):
    assert run("verify", "--corpus", demo_corpus_path, "--split", "A.1") == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert run("verify", "--corpus", demo_corpus_path, "--split", "A.1", "--mutate") == 2
    assert "FAIL" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["score", "--corpus", "missing.tsv", "--split", "A.1"],
    ["score", "--split", "A.1", "--method", "pagerank"],
    ["score", "--split", "Z.9"],
    ["score", "--split", "A.1", "--beta", "-1"],
    ["score", "--split", "A.1", "--mode", "xa"],
    ["verify", "--split", "main"],
])
def test_input_errors_exit_one(argv, demo_corpus_path, tmp_path, capsys):
    if "--corpus" not in argv:
        argv = argv + ["--corpus", str(demo_corpus_path)]
    assert main(argv + ["--out", str(tmp_path)]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_bad_corpus_line_reported(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("2000\ta,b\nnot a record\n")
    assert run("stats", "--corpus", bad, "--split", "A.1", "--out", tmp_path) == 1
    assert "line 2" in capsys.readouterr().err


def test_unknown_config_key(tmp_path, demo_corpus_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour=blue\n")
    assert run("score", "--config", cfg, "--corpus", demo_corpus_path, "--out", tmp_path) == 1


def test_score_is_deterministic(tmp_path, demo_corpus_path):
    for d in ("a", "b"):
        run("score", "--corpus", demo_corpus_path, "--split", "A.1", "--n-top", 20, "--out", tmp_path / d)
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    shutil.rmtree(tmp_path / "b")

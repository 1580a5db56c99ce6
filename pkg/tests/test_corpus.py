import logging
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from groupaccretion import oracles
from groupaccretion.corpus import (
    AccretionIndex, AccretionStats, CollaborationCorpus, SplitSpec, classify_test_groups,
    compute_accretion_stats, format_stats_rows, ingest, make_split, resolve_split, round_pct, write_corpus,
)
from groupaccretion.errors import InputError

from conftest import hypergraphs


def write(tmp_path, text, name="c.tsv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_ingest_minimal(tmp_path):
    c = ingest(write(tmp_path, "2003\tA,B\n2004\tB,C\n"))
    assert c.actors == ["A", "B", "C"]
    assert [(r.year, r.members) for r in c.records] == [(2003, (0, 1)), (2004, (1, 2))]


def test_ingest_deduplicates_members(tmp_path):
    c = ingest(write(tmp_path, "2003\tB,A,B\n"))
    assert c.records[0].members == (0, 1)


def test_ingest_skips_comments_and_blank_lines(tmp_path):
    c = ingest(write(tmp_path, "# header\n\n2003\tA,B\n"))
    assert len(c.records) == 1


def test_malformed_line_reports_line_number(tmp_path):
    with pytest.raises(InputError, match="line 3"):
        ingest(write(tmp_path, "2003\tA,B\n2004\tC\n20x5\tD,E\n"))
    with pytest.raises(InputError, match="line 2"):
        ingest(write(tmp_path, "2003\tA,B\n2004 C,D\n"))
    with pytest.raises(InputError, match="line 1"):
        ingest(write(tmp_path, "2003\tA,,B\n"))


def test_empty_file_is_an_error(tmp_path):
    with pytest.raises(InputError):
        ingest(write(tmp_path, "# nothing\n"))


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(InputError):
        ingest(tmp_path / "absent.tsv")


def test_oversized_groups_dropped_with_warning(tmp_path, caplog):
    big = ",".join(f"x{i}" for i in range(21))
    ok = ",".join(f"y{i}" for i in range(20))
    with caplog.at_level(logging.WARNING):
        c = ingest(write(tmp_path, f"2003\t{big}\n2003\t{ok}\n"))
    assert len(c.records) == 1 and len(c.records[0].members) == 20
    assert "dropping" in caplog.text


def test_round_trip_is_exact(tmp_path, demo_corpus_path):
    c = ingest(demo_corpus_path)
    out = tmp_path / "rt.tsv"
    write_corpus(c, out)
    again = ingest(out)
    assert again.actors == c.actors and again.records == c.records
    out2 = tmp_path / "rt2.tsv"
    write_corpus(again, out2)
    assert out.read_bytes() == out2.read_bytes()


def test_registry_independent_of_record_order(demo_corpus_path):
    lines = [ln for ln in demo_corpus_path.read_text().splitlines() if ln and not ln.startswith("#")]
    records = [(int(y), names.split(",")) for y, names in (ln.split("\t") for ln in lines)]
    base = CollaborationCorpus.from_named_records(records)
    rng = random.Random(4)
    for _ in range(5):
        rng.shuffle(records)
        other = CollaborationCorpus.from_named_records([(y, list(reversed(n))) for y, n in records])
        assert other.actors == base.actors and other.records == base.records


def test_split_presets_and_parsing():
    assert str(resolve_split("A.1")) == "1992-1995:1996-1998"
    assert str(resolve_split("main")) == "2003-2007:2008-2010"
    assert resolve_split("2000-2001:2002-2003") == SplitSpec(2000, 2001, 2002, 2003)
    for bad in ("A.10", "2000-2001", "2001-2000:2002-2003", "2000-2002:2002-2003"):
        with pytest.raises(InputError):
            resolve_split(bad)


def test_make_split_unique_sorted(demo_corpus_path):
    c = ingest(demo_corpus_path)
    train, test = make_split(c, resolve_split("A.1"))
    assert len(train) == 8  # abc appears twice
    assert train == sorted(train) and test == sorted(test)
    assert len(test) == 8


def test_empty_side_warns(demo_corpus_path, caplog):
    c = ingest(demo_corpus_path)
    with caplog.at_level(logging.WARNING):
        train, test = make_split(c, SplitSpec(1980, 1981, 1982, 1983))
    assert train == [] and test == []
    assert "empty training side" in caplog.text


@given(hypergraphs(), st.lists(st.frozensets(st.integers(0, 12), min_size=1, max_size=4), max_size=8))
def test_classification_matches_brute_force(case, raw_test):
    train, _ = case
    test = sorted({tuple(sorted(t)) for t in raw_test})
    tags = classify_test_groups(train, test)
    for t in test:
        assert tags[t].old_actors == all(any(v in g for g in train) for v in t)
        assert tags[t].old_group == any(tuple(g) == t for g in train)


@given(hypergraphs(max_n=8, max_groups=5), st.lists(st.frozensets(st.integers(0, 9), min_size=1, max_size=5),
                                                    min_size=1, max_size=6), st.booleans())
def test_accretion_detection_matches_oracle(case, raw_test, outside_parent):
    train, _ = case
    index = AccretionIndex(train)
    for t in {tuple(sorted(x)) for x in raw_test}:
        if not all(index.known(v) for v in t):
            continue
        expected = oracles.accretion_oracle(train, t, outside_parent)
        assert (index.is_ig(t), index.is_sg(t, outside_parent)) == expected


def test_accretion_sources_are_exact():
    train = [(0, 1), (0, 1, 2), (3, 4)]
    index = AccretionIndex(train)
    assert index.ig_sources((0, 1, 3)) == [(0, 3)]
    assert sorted(index.sg_sources((0, 3))) == [(0, 3), (1, 3), (2, 0)]
    # by default the absorbed actor must come from outside the parent group
    assert index.sg_sources((0, 2)) == [(0, 2)]
    assert sorted(index.sg_sources((0, 2), outside_parent=False)) == [(0, 2), (1, 0), (1, 2)]


def test_demo_statistics(demo_corpus_path):
    c = ingest(demo_corpus_path)
    train, test = make_split(c, resolve_split("A.1"))
    s = compute_accretion_stats(train, test)
    assert (s.new_actor_groups, s.old_actor_groups) == (1, 7)
    assert (s.old_igs, s.new_igs) == (0, 5)
    assert (s.old_sgs, s.new_sgs) == (1, 4)


def test_stats_arithmetic_and_na():
    s = AccretionStats.from_counts(7863, 2343, new_igs=499)
    assert s.total_groups == 10206
    assert s.pct_old == pytest.approx(100 * 2343 / 10206)
    assert s.pct_of_oag(s.total_igs) == pytest.approx(100 * 499 / 2343)
    empty = AccretionStats.from_counts(0, 0)
    assert empty.pct_old is None and empty.row()["pct_igs_new"] is None
    text = format_stats_rows([("x", empty)])
    assert "NA" in text and "nan" not in text


def test_round_pct_half_up():
    assert round_pct(22.955) == "22.96"  # float repr, not binary expansion
    assert round_pct(21.2974) == "21.30"
    assert round_pct(None) == "NA"


@given(hypergraphs(), st.permutations(range(10)))
def test_stats_invariant_under_relabelling(case, perm):
    train, n = case
    test = [tuple(sorted({*g, (g[0] + 1) % n})) for g in train] + [(n + 5,)]
    relabel = lambda gs: [tuple(sorted(perm[v] if v < 10 else v for v in g)) for g in gs]
    assert compute_accretion_stats(train, test) == compute_accretion_stats(relabel(train), relabel(test))

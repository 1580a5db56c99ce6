"""
How often do groups grow by one actor?
======================================

For a train/test split, every test group is tagged by whether all its
members were seen in training and whether it extends a training group (or
one of its proper subgroups) by exactly one actor.
"""

from pathlib import Path

import groupaccretion
from groupaccretion.corpus import compute_accretion_stats, format_stats_rows, ingest, make_split, resolve_split

corpus = ingest(Path(groupaccretion.__file__).parent / "data" / "demo_corpus.tsv")
print(corpus.n, "actors,", len(corpus.records), "records")

rows = []
for name in ("A.1", "1993-1995:1996-1997"):
    train, test = make_split(corpus, resolve_split(name))
    rows.append((name, compute_accretion_stats(train, test)))
print(format_stats_rows(rows))

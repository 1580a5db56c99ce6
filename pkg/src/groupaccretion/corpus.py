"""
Timestamped collaboration records, temporal train/test splits, and the
accretion statistics of a test period.

Corpus files are UTF-8 text with one record per line::

    <year>\t<name>(,<name>)*

Names may contain spaces but not tabs, commas or newlines.  Lines starting
with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError
from .network import GroupKey

log = logging.getLogger(__name__)

MAX_GROUP_SIZE = 20


@dataclass(frozen=True)
class GroupRecord:
    year: int
    members: GroupKey


@dataclass
class CollaborationCorpus:
    """Group records plus the actor name registry.

    ``actors[i]`` is the name of actor ``i``.  Records are sorted by year and
    then by member key.
    """

    actors: list[str]
    records: list[GroupRecord]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.index = {name: i for i, name in enumerate(self.actors)}

    @property
    def n(self) -> int:
        return len(self.actors)

    def names(self, key: Iterable[int]) -> list[str]:
        return [self.actors[i] for i in key]

    @classmethod
    def from_named_records(cls, records: Iterable[tuple[int, Iterable[str]]],
                           max_group_size: int | None = MAX_GROUP_SIZE) -> "CollaborationCorpus":
        """Build a corpus from ``(year, names)`` pairs.

        The registry does not depend on input order: actors are numbered by
        first appearance once records are ordered by year and sorted names.
        """
        cleaned = []
        for year, names in records:
            uniq = tuple(sorted(set(names)))
            if not uniq:
                raise InputError(f"record for year {year} has no members")
            if any(not name for name in uniq):
                raise InputError(f"record for year {year} has an empty member name")
            if max_group_size is not None and len(uniq) > max_group_size:
                log.warning("dropping %d-member record from %d (limit %d)", len(uniq), year, max_group_size)
                continue
            cleaned.append((int(year), uniq))
        cleaned.sort()

        index: dict[str, int] = {}
        for _, names in cleaned:
            for name in names:
                index.setdefault(name, len(index))
        recs = [GroupRecord(year, tuple(sorted(index[x] for x in names))) for year, names in cleaned]
        recs.sort(key=lambda r: (r.year, r.members))
        return cls(actors=list(index), records=recs)


def parse_line(line: str, lineno: int) -> tuple[int, list[str]] | None:
    text = line.rstrip("\r\n")
    if not text.strip() or text.lstrip().startswith("#"):
        return None
    parts = text.split("\t")
    if len(parts) != 2:
        raise InputError(f"line {lineno}: expected '<year>\\t<names>', got {text!r}")
    try:
        year = int(parts[0].strip())
    except ValueError:
        raise InputError(f"line {lineno}: bad year {parts[0]!r}") from None
    names = [name.strip() for name in parts[1].split(",")]
    if any(not name for name in names):
        raise InputError(f"line {lineno}: empty member name")
    return year, names


def ingest(path: str | Path, max_group_size: int | None = MAX_GROUP_SIZE) -> CollaborationCorpus:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parsed = parse_line(line, lineno)
        if parsed is not None:
            records.append(parsed)
    if not records:
        raise InputError(f"{path}: no records")
    return CollaborationCorpus.from_named_records(records, max_group_size=max_group_size)


def write_corpus(corpus: CollaborationCorpus, path: str | Path) -> None:
    lines = [f"{r.year}\t{','.join(corpus.names(r.members))}\n" for r in corpus.records]
    Path(path).write_text("".join(lines), encoding="utf-8")


@dataclass(frozen=True)
class SplitSpec:
    train_start: int
    train_end: int
    test_start: int
    test_end: int

    def __post_init__(self) -> None:
        if not (self.train_start <= self.train_end < self.test_start <= self.test_end):
            raise InputError(f"invalid split {self}")

    def __str__(self) -> str:
        return f"{self.train_start}-{self.train_end}:{self.test_start}-{self.test_end}"


SPLIT_PRESETS: dict[str, SplitSpec] = {
    "A.1": SplitSpec(1992, 1995, 1996, 1998),
    "A.2": SplitSpec(1993, 1995, 1996, 1998),
    "A.3": SplitSpec(1993, 1995, 1996, 1999),
    "A.4": SplitSpec(1997, 2000, 2001, 2003),
    "A.5": SplitSpec(1998, 2000, 2001, 2003),
    "A.6": SplitSpec(1998, 2000, 2001, 2004),
    "A.7": SplitSpec(2002, 2005, 2006, 2008),
    "A.8": SplitSpec(2003, 2005, 2006, 2008),
    "A.9": SplitSpec(2003, 2005, 2006, 2009),
    "main": SplitSpec(2003, 2007, 2008, 2010),
    # same test period with a one-year-shorter training window
    "main-2004": SplitSpec(2004, 2007, 2008, 2010),
}


def resolve_split(text: str) -> SplitSpec:
    """Preset name (``A.1`` .. ``A.9``, ``main``, ``main-2004``) or ``Y0-Y1:Y2-Y3``."""
    if text in SPLIT_PRESETS:
        return SPLIT_PRESETS[text]
    try:
        train, test = text.split(":")
        a, b = train.split("-")
        c, d = test.split("-")
        return SplitSpec(int(a), int(b), int(c), int(d))
    except ValueError:
        raise InputError(f"unknown split {text!r}; use a preset ({', '.join(SPLIT_PRESETS)}) "
                         "or TRAIN_START-TRAIN_END:TEST_START-TEST_END") from None


def make_split(corpus: CollaborationCorpus, spec: SplitSpec) -> tuple[list[GroupKey], list[GroupKey]]:
    """Unique training and test groups, each sorted by key.

    A group that wrote several papers inside one period is counted once.
    """
    train, test = set(), set()
    for r in corpus.records:
        if spec.train_start <= r.year <= spec.train_end:
            train.add(r.members)
        elif spec.test_start <= r.year <= spec.test_end:
            test.add(r.members)
    if not train:
        log.warning("split %s has an empty training side", spec)
    if not test:
        log.warning("split %s has an empty test side", spec)
    return sorted(train), sorted(test)


@dataclass(frozen=True)
class GroupTag:
    old_actors: bool  # OAG: every member appears in training
    old_group: bool  # the exact group appears in training


def classify_test_groups(train_groups: Iterable[GroupKey], test_groups: Iterable[GroupKey]) -> dict[GroupKey, GroupTag]:
    train = set(train_groups)
    seen = {v for g in train for v in g}
    return {t: GroupTag(all(v in seen for v in t), t in train) for t in test_groups}


class AccretionIndex:
    """Lookups over training groups for detecting IGs and SGs in a test period."""

    def __init__(self, train_groups: Iterable[GroupKey]):
        self.groups = sorted(set(train_groups))
        self.group_set = set(self.groups)
        self.by_actor: dict[int, set[int]] = defaultdict(set)
        for gi, g in enumerate(self.groups):
            for v in g:
                self.by_actor[v].add(gi)

    def known(self, actor: int) -> bool:
        return actor in self.by_actor

    def _containing(self, members: Sequence[int]) -> set[int]:
        sets = sorted((self.by_actor.get(v, set()) for v in members), key=len)
        out = set(sets[0])
        for s in sets[1:]:
            out &= s
            if not out:
                break
        return out

    def ig_sources(self, t: GroupKey) -> list[tuple[int, int]]:
        """``(group index, absorbed actor)`` for every training group that grows into ``t``."""
        if len(t) < 2 or not all(self.known(v) for v in t):
            return []
        out = []
        for k, x in enumerate(t):
            g = t[:k] + t[k + 1:]
            if g in self.group_set:
                out.append((bisect_left(self.groups, g), x))
        return out

    def sg_sources(self, t: GroupKey, outside_parent: bool = True) -> list[tuple[int, int]]:
        """``(group index, absorbed actor)`` for every training group with a proper
        subgroup that grows into ``t``.

        With ``outside_parent`` the absorbed actor must lie outside the whole
        parent group, not only outside the subgroup.
        """
        if len(t) < 2 or not all(self.known(v) for v in t):
            return []
        out = []
        for k, x in enumerate(t):
            s = t[:k] + t[k + 1:]
            for gi in sorted(self._containing(s)):
                g = self.groups[gi]
                if len(g) <= len(s):
                    continue
                if outside_parent and gi in self.by_actor[x]:
                    continue
                out.append((gi, x))
        return out

    def is_ig(self, t: GroupKey) -> bool:
        return bool(self.ig_sources(t))

    def is_sg(self, t: GroupKey, outside_parent: bool = True) -> bool:
        return bool(self.sg_sources(t, outside_parent))


def _pct(num: int, den: int) -> float | None:
    return None if den == 0 else 100.0 * num / den


def round_pct(value: float | None) -> str:
    """Two decimals, halves rounded away from zero; ``NA`` when absent."""
    if value is None:
        return "NA"
    return str(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class AccretionStats:
    """Counts of actor-novelty classes and accretion events in a test period.

    Percentages are raw floats (``None`` when the denominator is zero);
    rounding happens only when formatting.
    """

    new_actor_groups: int
    old_actor_groups: int
    old_igs: int
    new_igs: int
    old_sgs: int
    new_sgs: int

    @classmethod
    def from_counts(cls, new_actor_groups: int, old_actor_groups: int, old_igs: int = 0,
                    new_igs: int = 0, old_sgs: int = 0, new_sgs: int = 0) -> "AccretionStats":
        return cls(new_actor_groups, old_actor_groups, old_igs, new_igs, old_sgs, new_sgs)

    @property
    def total_groups(self) -> int:
        return self.new_actor_groups + self.old_actor_groups

    @property
    def total_igs(self) -> int:
        return self.old_igs + self.new_igs

    @property
    def total_sgs(self) -> int:
        return self.old_sgs + self.new_sgs

    @property
    def pct_new(self):
        return _pct(self.new_actor_groups, self.total_groups)

    @property
    def pct_old(self):
        return _pct(self.old_actor_groups, self.total_groups)

    def pct_of_oag(self, count: int):
        return _pct(count, self.old_actor_groups)

    def row(self) -> dict[str, object]:
        """Column name -> value in table order (IG family, then SG family)."""
        out: dict[str, object] = {
            "nag": self.new_actor_groups,
            "oag": self.old_actor_groups,
            "total_groups": self.total_groups,
            "pct_new_actor_groups": self.pct_new,
            "pct_old_actor_groups": self.pct_old,
        }
        for tag, old, new, total in (("ig", self.old_igs, self.new_igs, self.total_igs),
                                     ("sg", self.old_sgs, self.new_sgs, self.total_sgs)):
            out[f"old_{tag}s"] = old
            out[f"new_{tag}s"] = new
            out[f"total_{tag}s"] = total
            out[f"pct_oag_new_{tag}s"] = self.pct_of_oag(new)
            out[f"pct_oag_old_{tag}s"] = self.pct_of_oag(old)
            out[f"pct_oag_total_{tag}s"] = self.pct_of_oag(total)
            out[f"pct_{tag}s_new"] = _pct(new, total)
            out[f"pct_{tag}s_old"] = _pct(old, total)
        return out


STATS_COLUMNS = ["split"] + list(AccretionStats(0, 0, 0, 0, 0, 0).row())


def compute_accretion_stats(train_groups: Iterable[GroupKey], test_groups: Iterable[GroupKey],
                            sg_outside_parent: bool = True) -> AccretionStats:
    train = sorted(set(train_groups))
    test = sorted(set(test_groups))
    index = AccretionIndex(train)
    tags = classify_test_groups(train, test)

    counts = defaultdict(int)
    for t in test:
        tag = tags[t]
        if not tag.old_actors:
            counts["nag"] += 1
            continue
        counts["oag"] += 1
        age = "old" if tag.old_group else "new"
        if index.is_ig(t):
            counts[f"{age}_ig"] += 1
        if index.is_sg(t, sg_outside_parent):
            counts[f"{age}_sg"] += 1
    return AccretionStats(counts["nag"], counts["oag"], counts["old_ig"], counts["new_ig"],
                          counts["old_sg"], counts["new_sg"])


def format_stats_rows(rows: Iterable[tuple[str, AccretionStats]]) -> str:
    lines = ["\t".join(STATS_COLUMNS)]
    for name, stats in rows:
        cells = [name]
        for value in stats.row().values():
            cells.append(str(value) if isinstance(value, int) else round_pct(value))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"

"""
Candidate future groups, their ranking, and precision/recall against a test
period.

Incremental accretion (IA) adds one outside actor ``a`` to a whole training
group ``g``; subgroup accretion (SA) adds it to a proper non-empty subgroup
``s`` of ``g``.  Both candidates inherit the group-to-actor score S(g, a).
Repeated candidates (the same resulting member set reached from several
groups or subgroups) keep their maximum score.  Ties are broken by the
resulting member key, ascending.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .corpus import AccretionIndex
from .errors import InputError
from .network import GroupKey
from .scores import GroupActorScores

log = logging.getLogger(__name__)

SA_ENUMERATION_CAP = 12
MODES = ("ia", "sa")


@dataclass(frozen=True, order=True)
class CandidateGroup:
    """One IG or SG: ``base_group`` (training group index) absorbs
    ``absorbed_actor``; for SA, ``subgroup_mask`` selects the participating
    members (bit ``b`` stands for ``group[b]``)."""

    base_group: int
    absorbed_actor: int
    subgroup_mask: int | None
    key: GroupKey
    score: float = field(compare=False, default=0.0)

    @property
    def provenance(self) -> tuple[int, int, int]:
        return (self.base_group, -1 if self.subgroup_mask is None else self.subgroup_mask, self.absorbed_actor)


def insert_actor(sub: GroupKey, actor: int) -> GroupKey:
    k = bisect_left(sub, actor)
    return sub[:k] + (actor,) + sub[k:]


def subgroup_count(c: int) -> int:
    return max(2 ** c - 2, 0)


def proper_subgroups(group: GroupKey) -> list[tuple[int, GroupKey]]:
    """``(mask, members)`` for every proper non-empty subgroup, masks ascending."""
    c = len(group)
    return [(mask, tuple(group[b] for b in range(c) if mask >> b & 1)) for mask in range(1, 2 ** c - 1)]


def enumerate_ia(scores: GroupActorScores) -> list[CandidateGroup]:
    g = scores.group
    return [CandidateGroup(scores.group_index, int(a), None, insert_actor(g, int(a)), float(v))
            for a, v in zip(scores.actors, scores.values)]


def enumerate_sa(scores: GroupActorScores, max_subgroup_size: int = SA_ENUMERATION_CAP) -> list[CandidateGroup]:
    g = scores.group
    if len(g) < 2:
        return []
    if len(g) > max_subgroup_size:
        log.warning("skipping SA enumeration for a %d-member group (cap %d)", len(g), max_subgroup_size)
        return []
    out = []
    for mask, sub in proper_subgroups(g):
        for a, v in zip(scores.actors, scores.values):
            out.append(CandidateGroup(scores.group_index, int(a), mask, insert_actor(sub, int(a)), float(v)))
    return out


@dataclass
class RankedList:
    """Unique candidate groups sorted by score (descending) then key."""

    entries: list[CandidateGroup]
    n_top: int
    mode: str = "ia"

    def keys(self) -> list[GroupKey]:
        return [e.key for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def sort_key(c: CandidateGroup):
    return (-c.score, c.key)


def rank_global(candidates: Iterable[CandidateGroup], n_top: int, mode: str = "ia") -> RankedList:
    """Deduplicate by resulting key keeping the maximum score, sort, truncate."""
    best: dict[GroupKey, CandidateGroup] = {}
    for c in candidates:
        cur = best.get(c.key)
        if cur is None or c.score > cur.score or (c.score == cur.score and c.provenance < cur.provenance):
            best[c.key] = c
    entries = sorted(best.values(), key=sort_key)[:n_top]
    return RankedList(entries, n_top, mode)


# ---------------------------------------------------------------------------
# exact top-N selection without materialising every candidate


def _streams(group: GroupKey, mode: str) -> list[tuple[int | None, GroupKey]]:
    return [(None, group)] if mode == "ia" else proper_subgroups(group)


def _take_block(block: Mapping[int, np.ndarray], groups: Sequence[GroupKey], mode: str, score: float,
                need: int, seen: set[GroupKey]) -> list[CandidateGroup]:
    """Smallest ``need`` unseen keys among candidates that all share ``score``.

    For a fixed (sub)group the key s + {a} grows with a, so each stream only
    has to be walked until it has produced ``need`` unseen keys.
    """
    found: dict[GroupKey, CandidateGroup] = {}
    for gi in sorted(block):
        actors = block[gi]
        for mask, sub in _streams(groups[gi], mode):
            got = 0
            for a in actors:
                key = insert_actor(sub, int(a))
                if key in seen:
                    continue
                cand = CandidateGroup(gi, int(a), mask, key, score)
                cur = found.get(key)
                if cur is None or cand.provenance < cur.provenance:
                    found[key] = cand
                got += 1
                if got >= need:
                    break
    return [found[k] for k in sorted(found)[:need]]


def select_top(scores: np.ndarray, group_idx: np.ndarray, actors: np.ndarray, groups: Sequence[GroupKey],
               mode: str, n_top: int, zero_actors: Callable[[int], np.ndarray] | None = None,
               zero_groups: Iterable[int] = ()) -> list[CandidateGroup]:
    """Top ``n_top`` unique candidates from scored (group, actor) pairs.

    ``scores``/``group_idx``/``actors`` list the positive pairs.  If they
    yield fewer than ``n_top`` unique keys, zero-scored pairs of
    ``zero_groups`` (actors given by ``zero_actors``) fill the remainder.
    """
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    out: list[CandidateGroup] = []
    seen: set[GroupKey] = set()
    if n_top <= 0:
        return out
    order = np.lexsort((actors, group_idx, -scores))
    s_sorted = scores[order]
    bounds = np.flatnonzero(np.diff(s_sorted)) + 1
    starts = np.concatenate(([0], bounds)) if len(order) else np.zeros(0, dtype=int)
    ends = np.concatenate((bounds, [len(order)])) if len(order) else np.zeros(0, dtype=int)
    for lo, hi in zip(starts, ends):
        idx = order[lo:hi]
        block: dict[int, list[int]] = defaultdict(list)
        for gi, a in zip(group_idx[idx].tolist(), actors[idx].tolist()):
            block[gi].append(a)
        taken = _take_block({k: np.array(sorted(v)) for k, v in block.items()}, groups, mode,
                            float(s_sorted[lo]), n_top - len(out), seen)
        out.extend(taken)
        seen.update(c.key for c in taken)
        if len(out) >= n_top:
            return out
    if zero_actors is not None:
        block = {gi: zero_actors(gi) for gi in zero_groups}
        block = {gi: a for gi, a in block.items() if len(a)}
        if block:
            out.extend(_take_block(block, groups, mode, 0.0, n_top - len(out), seen))
    return out


def sa_eligible(group: GroupKey, cap: int) -> bool:
    return 2 <= len(group) <= cap


class CandidatePool:
    """Accumulates group scores and produces the global top-N list for one mode.

    Only positive scores are buffered; when the buffer grows large it is cut
    back to the pairs that can still reach the top ``n_top``.
    """

    def __init__(self, groups: Sequence[GroupKey], n: int, mode: str, n_top: int,
                 sa_cap: int = SA_ENUMERATION_CAP, buffer_limit: int | None = None):
        if mode not in MODES:
            raise InputError(f"unknown mode {mode!r}")
        self.groups = list(groups)
        self.n = n
        self.mode = mode
        self.n_top = n_top
        self.sa_cap = sa_cap
        self.buffer_limit = buffer_limit or max(20 * n_top, 2_000_000)
        self.cutoff = 0.0
        self._parts: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        self._size = 0
        self._pos_actors: dict[int, np.ndarray] = {}
        self._skipped = 0

    def eligible(self, gi: int) -> bool:
        return self.mode == "ia" or sa_eligible(self.groups[gi], self.sa_cap)

    def add(self, s: GroupActorScores) -> None:
        if not self.eligible(s.group_index):
            if self.mode == "sa" and len(s.group) > self.sa_cap:
                self._skipped += 1
            return
        actors, values = s.positive()
        self._pos_actors[s.group_index] = actors
        keep = values >= self.cutoff
        actors, values = actors[keep], values[keep]
        if len(actors) == 0:
            return
        self._parts.append((values, np.full(len(actors), s.group_index, dtype=np.int64), actors.astype(np.int64)))
        self._size += len(actors)
        if self._size > self.buffer_limit:
            self._compress()

    def _arrays(self):
        if not self._parts:
            z = np.zeros(0)
            return z, z.astype(np.int64), z.astype(np.int64)
        return tuple(np.concatenate(p) for p in zip(*self._parts))

    def _compress(self) -> None:
        scores, gidx, actors = self._arrays()
        top = select_top(scores, gidx, actors, self.groups, self.mode, self.n_top)
        if len(top) >= self.n_top:
            self.cutoff = max(self.cutoff, top[-1].score)
        keep = scores >= self.cutoff
        self._parts = [(scores[keep], gidx[keep], actors[keep])]
        self._size = int(keep.sum())

    def _zero_actors(self, gi: int) -> np.ndarray:
        mask = np.ones(self.n, dtype=bool)
        mask[list(self.groups[gi])] = False
        pos = self._pos_actors.get(gi)
        if pos is not None:
            mask[pos] = False
        return np.flatnonzero(mask)

    def ranked(self) -> RankedList:
        if self._skipped:
            log.warning("%d groups above the SA enumeration cap of %d were skipped", self._skipped, self.sa_cap)
        scores, gidx, actors = self._arrays()
        zero_groups = [gi for gi in range(len(self.groups)) if self.eligible(gi)]
        entries = select_top(scores, gidx, actors, self.groups, self.mode, self.n_top,
                             self._zero_actors, zero_groups)
        return RankedList(entries, self.n_top, self.mode)


def top_for_group(s: GroupActorScores, mode: str, n_top: int, sa_cap: int = SA_ENUMERATION_CAP) -> RankedList:
    """Per-group ranked list of one group's own IGs or SGs."""
    if mode == "sa" and not sa_eligible(s.group, sa_cap):
        return RankedList([], n_top, mode)
    gi = s.group_index
    groups = {gi: s.group}
    actors, values = s.positive()
    zero = s.actors[s.values <= 0]
    entries = select_top(values, np.full(len(actors), gi, dtype=np.int64), actors.astype(np.int64), groups,
                         mode, n_top, lambda _: zero, [gi])
    return RankedList(entries, n_top, mode)


# ---------------------------------------------------------------------------
# metrics


@dataclass
class EvaluationReport:
    precision_at_N_ia: float | None = None
    recall_at_N_ia: float | None = None
    precision_at_N_sa: float | None = None
    recall_at_N_sa: float | None = None
    avg_precision_at_Ng_ia: float | None = None
    avg_recall_at_Ng_ia: float | None = None
    avg_precision_at_Ng_sa: float | None = None
    avg_recall_at_Ng_sa: float | None = None
    per_group: dict[str, list[tuple[int, float, float | None]]] = field(default_factory=dict, repr=False)

    KEYS = ("precision_at_N_ia", "recall_at_N_ia", "precision_at_N_sa", "recall_at_N_sa",
            "avg_precision_at_Ng_ia", "avg_recall_at_Ng_ia", "avg_precision_at_Ng_sa", "avg_recall_at_Ng_sa")

    def values(self) -> dict[str, float | None]:
        return {k: getattr(self, k) for k in self.KEYS}

    def format(self, header: str = "") -> str:
        lines = [header] if header else []
        for k, v in self.values().items():
            lines.append(f"{k}={'NA' if v is None else repr(float(v))}")
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, float | None]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"report line {lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = None if v.strip() == "NA" else float(v)
    return out


def actual_events(train_groups: Sequence[GroupKey], test_groups: Iterable[GroupKey], mode: str,
                  sg_outside_parent: bool = True) -> tuple[int, dict[int, int]]:
    """Number of test groups produced by IA (or SA), overall and per training group."""
    index = AccretionIndex(train_groups)
    total = 0
    per_group: dict[int, int] = defaultdict(int)
    for t in set(test_groups):
        if mode == "ia":
            sources = index.ig_sources(t)
        else:
            sources = index.sg_sources(t, sg_outside_parent)
        if sources:
            total += 1
        for gi in {gi for gi, _ in sources}:
            per_group[gi] += 1
    return total, dict(per_group)


def global_metrics(keys: Sequence[GroupKey], n_top: int, test_groups: Iterable[GroupKey],
                   n_actual: int) -> tuple[float, float | None]:
    """Precision@N (hits / N) and recall@N (hits / actual events, ``None`` if there are none)."""
    test = set(test_groups)
    hits = sum(1 for k in keys[:n_top] if k in test)
    precision = hits / n_top if n_top else 0.0
    recall = None if n_actual == 0 else hits / n_actual
    return precision, recall


def per_group_metrics(lists: Mapping[int, Sequence[GroupKey]], n_groups: int, test_groups: Iterable[GroupKey],
                      actual: Mapping[int, int], n_top: int, convention: str = "zero"):
    """Average per-group precision and recall over all ``n_groups`` training groups.

    ``convention`` decides what happens to groups that produced no actual
    events: ``"zero"`` counts their recall as 0, ``"exclude"`` drops them
    from the recall average.  Returns ``(avg_precision, avg_recall, detail)``
    where detail rows are ``(group, precision, recall)``.
    """
    if convention not in ("zero", "exclude"):
        raise InputError(f"unknown recall convention {convention!r}")
    test = set(test_groups)
    detail = []
    p_sum = r_sum = 0.0
    r_count = 0
    for gi in range(n_groups):
        keys = lists.get(gi, ())
        hits = sum(1 for k in keys if k in test)
        p = hits / n_top
        den = actual.get(gi, 0)
        r = hits / den if den else None
        detail.append((gi, p, r))
        p_sum += p
        if r is not None:
            r_sum += r
            r_count += 1
        elif convention == "zero":
            r_count += 1
    avg_p = p_sum / n_groups if n_groups else None
    if convention == "zero":
        avg_r = r_sum / n_groups if n_groups else None
    else:
        avg_r = r_sum / r_count if r_count else None
    return avg_p, avg_r, detail

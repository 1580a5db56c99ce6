"""
Glue between a corpus split and the scorers: the training view, per-method
scoring, candidate pools, and the ranked-list file format.

Ranked-list files are TSV with a ``#`` configuration header followed by::

    rank  score  members  base_group  absorbed_actor  subgroup

``members`` and ``subgroup`` are comma-separated actor names, ``base_group``
is the index of the training group (training groups sorted by key), and
``subgroup`` is empty for IA candidates.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from . import birw, gks, glps
from .candidates import SA_ENUMERATION_CAP, CandidateGroup, CandidatePool, RankedList, top_for_group
from .corpus import CollaborationCorpus, SplitSpec, make_split
from .errors import InputError
from .network import GroupKey, NetworkSnapshot, build_snapshot
from .scores import GroupActorScores

log = logging.getLogger(__name__)

METHODS = ("gks", "brws", "glps")
SHARD_SIZE = 10_000
RANKED_COLUMNS = ("rank", "score", "members", "base_group", "absorbed_actor", "subgroup")


@dataclass
class TrainingView:
    """A split seen from the training period.

    Only actors that appear in some training group are scored; they are
    renumbered 0..n-1 in corpus order, so ``actors[local] == corpus index``.
    """

    corpus: CollaborationCorpus
    split: SplitSpec
    train_groups: list[GroupKey]  # corpus indices, sorted
    test_groups: list[GroupKey]  # corpus indices, sorted
    actors: np.ndarray
    snapshot: NetworkSnapshot

    @property
    def n(self) -> int:
        return self.snapshot.n

    @property
    def groups(self) -> tuple[GroupKey, ...]:
        return self.snapshot.groups

    def to_corpus(self, key: Sequence[int]) -> GroupKey:
        return tuple(int(self.actors[v]) for v in key)

    def names(self, key: Sequence[int]) -> list[str]:
        return self.corpus.names(self.to_corpus(key))

    def local_test_groups(self) -> list[GroupKey]:
        """Test groups made only of training actors, in local indices."""
        local = {int(v): k for k, v in enumerate(self.actors)}
        return [tuple(local[v] for v in t) for t in self.test_groups if all(v in local for v in t)]


def training_view(corpus: CollaborationCorpus, split: SplitSpec) -> TrainingView:
    train, test = make_split(corpus, split)
    actors = np.array(sorted({v for g in train for v in g}), dtype=np.int64)
    local = {int(v): k for k, v in enumerate(actors)}
    snapshot = build_snapshot([tuple(local[v] for v in g) for g in train], len(actors))
    return TrainingView(corpus, split, train, test, actors, snapshot)


@dataclass(frozen=True)
class MethodParams:
    beta: float = 0.5
    max_length: int = 4
    alpha: float = 0.6
    l_group: int = 4
    l_outer: int = 4
    mu: float = 0.1
    mu_per_group: float = 0.5
    tol: float = 1e-8
    solver: str = "auto"

    def katz(self) -> gks.KatzParams:
        return gks.KatzParams(self.beta, self.max_length)

    def birw(self) -> birw.BirwParams:
        return birw.BirwParams(self.alpha, self.l_group, self.l_outer)

    def glps(self, per_group: bool = False) -> glps.GlpsParams:
        return glps.GlpsParams(self.mu_per_group if per_group else self.mu, self.solver, self.tol)


def _chunks(n: int, threads: int) -> list[range]:
    size = max(1, -(-n // max(1, threads * 4)))
    return [range(k, min(n, k + size)) for k in range(0, n, size)]


def score_groups(snapshot: NetworkSnapshot, method: str, params: MethodParams = MethodParams(),
                 per_group: bool = False, threads: int = 1) -> Iterator[GroupActorScores]:
    """Scores of every training group for every outside actor.

    Results may come out of group order (GLPS batches by component); each
    carries its ``group_index``.
    """
    groups = snapshot.groups
    if method == "glps":
        yield from glps.GroupPropagator(snapshot, params.glps(per_group)).score(groups)
        return
    if method == "gks":
        katz = gks.compute_katz(snapshot, params.katz())

        def work(rng):
            return list(gks.score_groups_gks(snapshot, katz, [groups[k] for k in rng], rng))
    elif method == "brws":
        bp = params.birw()

        def work(rng):
            return list(birw.score_groups_brws(snapshot, [groups[k] for k in rng], bp, rng))
    else:
        raise InputError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")

    chunks = _chunks(len(groups), threads)
    if threads <= 1:
        for rng in chunks:
            yield from work(rng)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(work, chunks):
            yield from part


@dataclass
class ScoreResult:
    method: str
    global_lists: dict[str, RankedList]
    group_lists: dict[str, dict[int, RankedList]]


def run_scoring(view: TrainingView, method: str, modes: Sequence[str], n_top: int, n_top_group: int | None,
                params: MethodParams = MethodParams(), sa_cap: int = SA_ENUMERATION_CAP,
                threads: int = 1) -> ScoreResult:
    """Global top-``n_top`` lists per mode and, if ``n_top_group`` is set, per-group lists."""
    snap = view.snapshot
    pools = {m: CandidatePool(snap.groups, snap.n, m, n_top, sa_cap) for m in modes}
    group_lists: dict[str, dict[int, RankedList]] = {m: {} for m in modes}

    separate = method == "glps" and params.mu != params.mu_per_group
    for s in score_groups(snap, method, params, per_group=False, threads=threads):
        for m in modes:
            pools[m].add(s)
            if n_top_group and not separate:
                group_lists[m][s.group_index] = top_for_group(s, m, n_top_group, sa_cap)
    if n_top_group and separate:
        for s in score_groups(snap, method, params, per_group=True, threads=threads):
            for m in modes:
                group_lists[m][s.group_index] = top_for_group(s, m, n_top_group, sa_cap)
    return ScoreResult(method, {m: pools[m].ranked() for m in modes}, group_lists if n_top_group else {})


# ---------------------------------------------------------------------------
# files


def config_header(config: dict[str, object]) -> str:
    lines = ["# groupaccretion"]
    lines += [f"# {k}={config[k]}" for k in sorted(config)]
    return "\n".join(lines) + "\n"


def _subgroup_names(view: TrainingView, c: CandidateGroup) -> str:
    if c.subgroup_mask is None:
        return ""
    g = view.groups[c.base_group]
    sub = tuple(g[b] for b in range(len(g)) if c.subgroup_mask >> b & 1)
    return ",".join(view.names(sub))


def format_ranked(view: TrainingView, entries: Sequence[CandidateGroup], header: str) -> str:
    out = [header, "\t".join(RANKED_COLUMNS) + "\n"]
    for rank, c in enumerate(entries, 1):
        out.append("\t".join((str(rank), repr(float(c.score)), ",".join(view.names(c.key)), str(c.base_group),
                              view.corpus.actors[int(view.actors[c.absorbed_actor])], _subgroup_names(view, c)))
                   + "\n")
    return "".join(out)


def write_ranked(path: Path, view: TrainingView, ranked: RankedList, config: dict[str, object]) -> None:
    header = config_header({**config, "mode": ranked.mode, "n_top": ranked.n_top, "list": "global"})
    path.write_text(format_ranked(view, ranked.entries, header), encoding="utf-8")


def write_group_lists(prefix: Path, view: TrainingView, lists: dict[int, RankedList], mode: str,
                      n_top_group: int, config: dict[str, object]) -> list[Path]:
    """Per-group lists, one shard file per ``SHARD_SIZE`` training groups."""
    paths = []
    m = len(view.groups)
    for shard, start in enumerate(range(0, max(m, 1), SHARD_SIZE)):
        header = config_header({**config, "mode": mode, "n_top": n_top_group, "list": "per-group",
                                "shard": shard, "groups": f"{start}-{min(m, start + SHARD_SIZE) - 1}"})
        body = []
        for gi in range(start, min(m, start + SHARD_SIZE)):
            ranked = lists.get(gi)
            if ranked is None:
                continue
            text = format_ranked(view, ranked.entries, "")
            body.append(text.split("\n", 1)[1])
        path = prefix.with_name(f"{prefix.name}_{mode}_groups_{shard:03d}.tsv")
        path.write_text(header + "\t".join(RANKED_COLUMNS) + "\n" + "".join(body), encoding="utf-8")
        paths.append(path)
    return paths


@dataclass
class RankedFile:
    meta: dict[str, str]
    rows: list[tuple[int, float, GroupKey, int, str, str]]  # key in corpus indices


def read_ranked(path: Path, corpus: CollaborationCorpus) -> RankedFile:
    meta: dict[str, str] = {}
    rows = []
    saw_columns = False
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                meta[k] = v
            continue
        if not line.strip():
            continue
        cells = line.split("\t")
        if not saw_columns:
            if tuple(cells) != RANKED_COLUMNS:
                raise InputError(f"{path}:{lineno}: expected column header {RANKED_COLUMNS}")
            saw_columns = True
            continue
        if len(cells) != len(RANKED_COLUMNS):
            raise InputError(f"{path}:{lineno}: expected {len(RANKED_COLUMNS)} columns, got {len(cells)}")
        try:
            rank, score, base = int(cells[0]), float(cells[1]), int(cells[3])
            key = tuple(sorted(corpus.index[name] for name in cells[2].split(",")))
        except (ValueError, KeyError) as exc:
            raise InputError(f"{path}:{lineno}: cannot parse row ({exc})") from None
        rows.append((rank, score, key, base, cells[4], cells[5]))
    if not saw_columns:
        raise InputError(f"{path}: missing column header")
    if "mode" not in meta or "n_top" not in meta:
        raise InputError(f"{path}: header lacks mode/n_top")
    return RankedFile(meta, rows)


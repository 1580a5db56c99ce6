"""Synthetic collaboration histories with planted accretion events."""

from __future__ import annotations

import numpy as np

from .corpus import CollaborationCorpus


def generate_corpus(n_actors: int = 2000, n_train_groups: int = 500, n_test_groups: int = 200,
                    train_years: tuple[int, int] = (2003, 2007), test_years: tuple[int, int] = (2008, 2010),
                    accretion_share: float = 0.3, spread: float = 15.0, max_size: int = 6,
                    seed: int = 0) -> CollaborationCorpus:
    """Groups of 2..``max_size`` actors drawn around random centres on a ring of actors.

    Locality (``spread``) gives the actor network community structure.  A
    share of the test groups are planted accretions: a training group, or a
    proper subgroup of one, plus one nearby outside actor.
    """
    rng = np.random.default_rng(seed)

    def local_group(size: int) -> list[int]:
        centre = rng.integers(n_actors)
        members: set[int] = set()
        while len(members) < size:
            members.add(int(centre + round(rng.normal(0, spread))) % n_actors)
        return sorted(members)

    def name(v: int) -> str:
        return f"a{v:06d}"

    records = []
    train = []
    for _ in range(n_train_groups):
        g = local_group(int(rng.integers(2, max_size + 1)))
        train.append(g)
        records.append((int(rng.integers(train_years[0], train_years[1] + 1)), [name(v) for v in g]))

    for _ in range(n_test_groups):
        year = int(rng.integers(test_years[0], test_years[1] + 1))
        if rng.random() < accretion_share and train:
            g = train[rng.integers(len(train))]
            base = list(g)
            if rng.random() < 0.5 and len(g) > 1:
                keep = int(rng.integers(1, len(g)))
                base = sorted(rng.choice(g, size=keep, replace=False).tolist())
            while True:
                extra = int(g[rng.integers(len(g))] + round(rng.normal(0, spread))) % n_actors
                if extra not in g:
                    break
            members = sorted(set(base) | {extra})
        else:
            members = local_group(int(rng.integers(2, max_size + 1)))
        records.append((year, [name(v) for v in members]))
    return CollaborationCorpus.from_named_records(records)

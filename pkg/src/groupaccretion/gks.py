"""
Generalized Katz score: average truncated Katz proximity between the members
of a group and each outside actor.

    K = sum_{l=1..L} beta^l A^l
    S(g, j) = (1/|g|) sum_{p in g} K(p, j)

Walks (entries of A^l) are counted, not simple paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InputError
from .network import GroupKey, NetworkSnapshot, canonical, external_actors, spmm_multiply
from .scores import GroupActorScores


@dataclass(frozen=True)
class KatzParams:
    beta: float = 0.5
    max_length: int = 4

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise InputError(f"beta must lie in (0, 1), got {self.beta}")
        if self.max_length < 1:
            raise InputError(f"max_length must be >= 1, got {self.max_length}")


def compute_katz(snapshot: NetworkSnapshot, params: KatzParams = KatzParams()) -> sp.csr_matrix:
    """Truncated Katz matrix by repeated sparse multiplication."""
    a = snapshot.adjacency
    power = a
    katz = params.beta * a
    coeff = params.beta
    for _ in range(1, params.max_length):
        power = spmm_multiply(power, a)
        coeff *= params.beta
        katz = katz + coeff * power
    return canonical(katz)


def score_group_gks(snapshot: NetworkSnapshot, katz: sp.csr_matrix, group: GroupKey,
                    group_index: int = -1) -> GroupActorScores:
    actors = external_actors(snapshot.n, group)
    rows = katz[list(group)]
    mean = np.asarray(rows.sum(axis=0)).ravel() / len(group)
    return GroupActorScores(group_index, group, actors, mean[actors])


def score_groups_gks(snapshot: NetworkSnapshot, katz: sp.csr_matrix, groups, indices=None):
    """Batched variant of :func:`score_group_gks`; yields one result per group."""
    if indices is None:
        indices = range(len(groups))
    for gi, g in zip(indices, groups):
        yield score_group_gks(snapshot, katz, g, gi)

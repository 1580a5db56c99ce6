"""
Bi-random walk score.

A group is split off from the actor network into three pieces: the clique
over its members (c x c), the outer network on the remaining actors, and the
bipartite inter network X of direct member-to-outsider ties.  The affinity
matrix R (members x outsiders) is the minimiser of

    alpha * sum (N_g kron N_o)_{(i,u),(j,v)} (R(i,u) - R(j,v))^2
        + (1 - alpha) * sum (R(i,u) - X(i,u))^2

reached through the recursion R = alpha N_g R N_o + (1 - alpha) X, run for a
fixed number of group-side and outer-side steps (the sequential bi-random
walk).  No Kronecker product is materialised.  A group's score for an
outsider is the column mean of R.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InputError
from .network import GroupKey, NetworkSnapshot, restrict_adjacency
from .scores import GroupActorScores


@dataclass(frozen=True)
class BirwParams:
    alpha: float = 0.6
    l_group: int = 4
    l_outer: int = 4
    normalize: str = "total"  # "total": divide X by its grand sum; "row": per-row sums

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise InputError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.l_group < 1 or self.l_outer < 1:
            raise InputError("path length caps must be >= 1")
        if self.normalize not in ("total", "row"):
            raise InputError(f"unknown normalization {self.normalize!r}")


@dataclass(frozen=True)
class AlignmentProblem:
    group: GroupKey
    clique: np.ndarray  # c x c, ones off the diagonal
    outer: sp.csr_matrix  # (n-c) x (n-c)
    inter: sp.csr_matrix  # c x (n-c)
    index_map: np.ndarray  # outer position -> global actor

    @property
    def degenerate(self) -> bool:
        return self.outer.shape[0] == 0


def clique_adjacency(c: int) -> np.ndarray:
    return np.ones((c, c)) - np.eye(c)


def build_alignment_problem(snapshot: NetworkSnapshot, group: GroupKey) -> AlignmentProblem:
    if not group:
        raise InputError("empty group")
    outer, index_map = restrict_adjacency(snapshot, group)
    inter = snapshot.adjacency[list(group)][:, index_map].tocsr()
    return AlignmentProblem(group, clique_adjacency(len(group)), outer, inter, index_map)


def birw_seq(problem: AlignmentProblem, params: BirwParams = BirwParams()) -> np.ndarray:
    """Run the sequential bi-random walk and return R (members x outsiders)."""
    return birw_iterate(problem, params.alpha, params.l_group, params.l_outer, params.normalize)


def birw_iterate(problem: AlignmentProblem, alpha: float, l_group: int, l_outer: int,
                 normalize: str = "total") -> np.ndarray:
    """The recursion behind :func:`birw_seq` without parameter validation.

    Useful for the alpha = 0 edge case, where R collapses to X.
    """
    x = problem.inter.toarray()
    if normalize == "total":
        total = x.sum()
        if total == 0:
            return np.zeros_like(x)
        r = x / total
    else:
        sums = x.sum(axis=1, keepdims=True)
        if not sums.any():
            return np.zeros_like(x)
        r = np.divide(x, sums, out=np.zeros_like(x), where=sums > 0)

    prior = (1.0 - alpha) * x
    outer_t = problem.outer.T.tocsr()
    for t in range(1, max(l_group, l_outer) + 1):
        if t <= l_group:
            r = alpha * (problem.clique @ r) + prior
        if t <= l_outer:
            # R @ N_o computed as (N_o^T @ R^T)^T to keep the sparse operand on the left
            r = alpha * (outer_t @ r.T).T + prior
    return r


def score_group_brws(r: np.ndarray, problem: AlignmentProblem, group_index: int = -1) -> GroupActorScores:
    if r.shape != problem.inter.shape:
        raise InputError(f"R has shape {r.shape}, expected {problem.inter.shape}")
    values = r.mean(axis=0) if r.shape[0] else np.zeros(r.shape[1])
    return GroupActorScores(group_index, problem.group, problem.index_map, values)


def score_groups_brws(snapshot: NetworkSnapshot, groups, params: BirwParams = BirwParams(), indices=None):
    if indices is None:
        indices = range(len(groups))
    for gi, g in zip(indices, groups):
        problem = build_alignment_problem(snapshot, g)
        if problem.degenerate:
            yield GroupActorScores(gi, g, problem.index_map, np.zeros(0))
            continue
        yield score_group_brws(birw_seq(problem, params), problem, gi)

"""
Group label propagation score on the network of groups.

Members of a group get label 1, everyone else 0, and the labels are smoothed
over the hypergraph by minimising f^T L_h f + mu ||f - y||^2 with the
normalised hypergraph Laplacian L_h = I - theta,

    theta = D_v^{-1/2} H W D_e^{-1} H^T D_v^{-1/2},   W = I.

The minimiser is f* = (1 - alpha) (I - alpha theta)^{-1} y, alpha = 1/(1 + mu),
and a group's score for an outside actor j is f*(j).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.sparse.csgraph import connected_components

from .errors import InputError
from .network import GroupKey, NetworkSnapshot, canonical, external_actors
from .scores import GroupActorScores

log = logging.getLogger(__name__)

# above this many vertices the iterative solver is used by default
DIRECT_SOLVE_LIMIT = 5000


@dataclass(frozen=True)
class GlpsParams:
    mu: float = 0.1
    solver: str = "auto"  # "closed", "iterative" or "auto"
    tol: float = 1e-8
    max_iter: int = 10000

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise InputError(f"mu must be positive, got {self.mu}")
        if self.solver not in ("auto", "closed", "iterative"):
            raise InputError(f"unknown solver {self.solver!r}")
        if not self.tol > 0:
            raise InputError(f"tol must be positive, got {self.tol}")

    @property
    def alpha(self) -> float:
        return 1.0 / (1.0 + self.mu)

    def resolved_solver(self, n: int) -> str:
        if self.solver != "auto":
            return self.solver
        return "iterative" if n > DIRECT_SOLVE_LIMIT else "closed"


def build_propagation_operator(snapshot: NetworkSnapshot) -> sp.csr_matrix:
    """theta for unit hyperedge weights; degree-0 vertices get zero rows and columns."""
    d = snapshot.vertex_degree
    inv_sqrt_d = np.zeros_like(d)
    np.divide(1.0, np.sqrt(d), out=inv_sqrt_d, where=d > 0)
    inv_delta = np.zeros_like(snapshot.edge_degree)
    np.divide(1.0, snapshot.edge_degree, out=inv_delta, where=snapshot.edge_degree > 0)
    left = sp.diags(inv_sqrt_d) @ snapshot.incidence
    theta = left @ sp.diags(inv_delta) @ left.T
    return canonical(theta)


@dataclass
class Propagation:
    values: np.ndarray  # n, or n x k for several label vectors
    converged: bool = True
    iterations: int = 0


def label_vector(n: int, group: GroupKey) -> np.ndarray:
    if group and (group[0] < 0 or group[-1] >= n):
        raise InputError(f"group {group} has a member outside 0..{n - 1}")
    y = np.zeros(n)
    y[list(group)] = 1.0
    return y


def _iterate(theta: sp.csr_matrix, y: np.ndarray, alpha: float, tol: float, max_iter: int) -> Propagation:
    f = y.copy()
    prior = (1.0 - alpha) * y
    for k in range(1, max_iter + 1):
        nxt = alpha * (theta @ f) + prior
        step = np.max(np.abs(nxt - f)) if f.size else 0.0
        f = nxt
        if step <= tol:
            return Propagation(f, True, k)
    log.warning("label propagation stopped after %d iterations without reaching tol=%g", max_iter, tol)
    return Propagation(f, False, max_iter)


def _closed(theta: sp.csr_matrix, y: np.ndarray, alpha: float) -> Propagation:
    n = theta.shape[0]
    if n == 0:
        return Propagation(y.copy())
    system = (sp.identity(n, format="csc") - alpha * theta).tocsc()
    lu = spla.splu(system)
    return Propagation((1.0 - alpha) * lu.solve(np.asarray(y, dtype=float)))


def propagate(theta: sp.csr_matrix, y_or_group: np.ndarray | GroupKey, params: GlpsParams = GlpsParams()) -> Propagation:
    """Solve (I - alpha theta) f = (1 - alpha) y for one label vector (or a block of them).

    ``y_or_group`` is either a label array (n or n x k) or a group key.
    """
    n = theta.shape[0]
    y = np.asarray(y_or_group, dtype=float) if isinstance(y_or_group, np.ndarray) else label_vector(n, y_or_group)
    if params.resolved_solver(n) == "closed":
        return _closed(theta, y, params.alpha)
    return _iterate(theta, y, params.alpha, params.tol, params.max_iter)


def residual(theta: sp.csr_matrix, f: np.ndarray, y: np.ndarray, alpha: float) -> float:
    """Max-norm of (I - alpha theta) f - (1 - alpha) y."""
    return float(np.max(np.abs(f - alpha * (theta @ f) - (1.0 - alpha) * y), initial=0.0))


def score_group_glps(f: np.ndarray, group: GroupKey, group_index: int = -1) -> GroupActorScores:
    actors = external_actors(len(f), group)
    return GroupActorScores(group_index, group, actors, np.asarray(f)[actors])


class GroupPropagator:
    """Shares one theta (and, for direct solves, one factorisation per
    connected component) across many groups.

    Labels never leave the connected component that holds the group, so each
    component is solved on its own; the result is identical to a solve over
    the whole vertex set.
    """

    def __init__(self, snapshot: NetworkSnapshot, params: GlpsParams = GlpsParams()):
        self.n = snapshot.n
        self.params = params
        self.theta = build_propagation_operator(snapshot)
        self.n_components, self.labels = connected_components(self.theta, directed=False)
        self._members: dict[int, np.ndarray] = {}
        self._lu: dict[int, object] = {}
        self.unconverged = 0

    def _component(self, c: int) -> np.ndarray:
        if c not in self._members:
            self._members[c] = np.flatnonzero(self.labels == c)
        return self._members[c]

    def _solve(self, c: int, y: np.ndarray) -> np.ndarray:
        idx = self._component(c)
        sub = self.theta[idx][:, idx]
        alpha = self.params.alpha
        if self.params.resolved_solver(self.n) == "closed":
            if c not in self._lu:
                system = (sp.identity(len(idx), format="csc") - alpha * sub).tocsc()
                self._lu[c] = spla.splu(system)
            return (1.0 - alpha) * self._lu[c].solve(y)
        result = _iterate(sub.tocsr(), y, alpha, self.params.tol, self.params.max_iter)
        if not result.converged:
            self.unconverged += 1
        return result.values

    def score(self, groups: Sequence[GroupKey], indices: Iterable[int] | None = None, batch: int = 256):
        """Yield :class:`GroupActorScores` for ``groups``.

        Results come out grouped by connected component, not in input order;
        ``group_index`` identifies each one.
        """
        indices = list(range(len(groups)) if indices is None else indices)
        comp = [int(self.labels[g[0]]) for g in groups]
        order = sorted(range(len(groups)), key=lambda k: (comp[k], k))
        start = 0
        while start < len(order):
            c = comp[order[start]]
            stop = start
            while stop < len(order) and comp[order[stop]] == c and stop - start < batch:
                stop += 1
            idx = self._component(c)
            pos = {int(v): k for k, v in enumerate(idx)}
            chunk = order[start:stop]
            y = np.zeros((len(idx), len(chunk)))
            for col, k in enumerate(chunk):
                y[[pos[v] for v in groups[k]], col] = 1.0
            f = self._solve(c, y)
            for col, k in enumerate(chunk):
                full = np.zeros(self.n)
                full[idx] = f[:, col]
                yield score_group_glps(full, groups[k], indices[k])
            start = stop

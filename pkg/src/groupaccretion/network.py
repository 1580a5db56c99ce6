"""
Sparse views of a collaboration history: the network of groups (a hypergraph
with incidence matrix H, actors x groups) and the network of actors (the
clique expansion of H, adjacency A).

Groups are represented everywhere by their canonical key, a strictly
increasing tuple of actor indices.  All matrices are scipy CSR matrices kept
in canonical form (sorted indices, no duplicates, no stored zeros).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import InputError

GroupKey = tuple[int, ...]


def group_key(members: Iterable[int]) -> GroupKey:
    """Canonical key of a member collection (sorted, duplicates removed)."""
    key = tuple(sorted({int(m) for m in members}))
    if not key:
        raise InputError("a group needs at least one member")
    if key[0] < 0:
        raise InputError(f"negative actor index in group {key}")
    return key


def canonical(m: sp.spmatrix | np.ndarray) -> sp.csr_matrix:
    """Return ``m`` as a CSR matrix in canonical form."""
    out = sp.csr_matrix(m, dtype=float, copy=True)
    out.sum_duplicates()
    out.eliminate_zeros()
    out.sort_indices()
    return out


@dataclass(frozen=True)
class NetworkSnapshot:
    """Training-period views of the actor and group networks.

    ``incidence`` is H (n x m, 0/1), ``adjacency`` is A (n x n, symmetric,
    zero diagonal, 0/1).  ``vertex_degree`` is d (row sums of H under unit
    hyperedge weights) and ``edge_degree`` is delta (column sums of H).
    """

    n: int
    groups: tuple[GroupKey, ...]
    incidence: sp.csr_matrix
    adjacency: sp.csr_matrix
    vertex_degree: np.ndarray
    edge_degree: np.ndarray

    @property
    def m(self) -> int:
        return len(self.groups)


def build_snapshot(groups: Sequence[Iterable[int]], n: int) -> NetworkSnapshot:
    """Build H, A and the degree vectors for ``groups`` over ``n`` actors.

    Groups are canonicalised; a group key occurring more than once is an
    input error because the caller is expected to deduplicate per period.
    """
    keys = []
    seen = set()
    for raw in groups:
        key = group_key(raw)
        if key[-1] >= n:
            raise InputError(f"group {key} has a member outside 0..{n - 1}")
        if key in seen:
            raise InputError(f"group {key} appears twice; deduplicate before building")
        seen.add(key)
        keys.append(key)

    m = len(keys)
    sizes = np.fromiter((len(k) for k in keys), dtype=np.int64, count=m)
    rows = np.fromiter((v for k in keys for v in k), dtype=np.int64, count=int(sizes.sum()))
    cols = np.repeat(np.arange(m, dtype=np.int64), sizes)
    incidence = canonical(sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, m)))

    # co-membership counts, then clip to 0/1 and drop the diagonal
    co = (incidence @ incidence.T).tocoo()
    off = co.row != co.col
    adjacency = canonical(
        sp.csr_matrix((np.ones(int(off.sum())), (co.row[off], co.col[off])), shape=(n, n))
    )

    return NetworkSnapshot(
        n=n,
        groups=tuple(keys),
        incidence=incidence,
        adjacency=adjacency,
        vertex_degree=np.asarray(incidence.sum(axis=1)).ravel(),
        edge_degree=sizes.astype(float),
    )


def spmm_multiply(a: sp.spmatrix, b: sp.spmatrix) -> sp.csr_matrix:
    """Exact sparse product ``a @ b`` in canonical form."""
    if a.shape[1] != b.shape[0]:
        raise InputError(f"dimension mismatch: {a.shape} x {b.shape}")
    return canonical(sp.csr_matrix(a) @ sp.csr_matrix(b))


def external_actors(n: int, group: GroupKey) -> np.ndarray:
    """Ascending indices of the actors outside ``group``."""
    mask = np.ones(n, dtype=bool)
    mask[list(group)] = False
    return np.flatnonzero(mask)


def restrict_adjacency(snapshot: NetworkSnapshot, excluded: GroupKey) -> tuple[sp.csr_matrix, np.ndarray]:
    """Principal submatrix of A on the actors outside ``excluded``.

    Returns ``(outer, index_map)`` where ``index_map[q]`` is the global actor
    index of row/column ``q`` of ``outer``.
    """
    if excluded and excluded[-1] >= snapshot.n:
        raise InputError(f"group {excluded} has a member outside 0..{snapshot.n - 1}")
    index_map = external_actors(snapshot.n, excluded)
    outer = snapshot.adjacency[index_map][:, index_map]
    return canonical(outer), index_map

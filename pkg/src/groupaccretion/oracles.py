"""
Brute-force reference implementations.

These are deliberately naive: plain Python lists and loops, no numpy or
scipy kernels shared with the scorers, so agreement between the two is real
evidence.  They refuse inputs larger than their stated limits.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError

WALK_MAX_VERTICES = 12
WALK_MAX_LENGTH = 6
DENSE_MAX_VERTICES = 200


def _rows(adjacency) -> list[list[float]]:
    if hasattr(adjacency, "toarray"):
        adjacency = adjacency.toarray()
    return [[float(x) for x in row] for row in adjacency]


def walk_count_oracle(adjacency, i: int, j: int, length: int) -> int:
    """Number of length-``length`` walks from ``i`` to ``j``, by depth-first enumeration."""
    a = _rows(adjacency)
    n = len(a)
    if n > WALK_MAX_VERTICES or length > WALK_MAX_LENGTH:
        raise InputError(f"walk oracle limited to {WALK_MAX_VERTICES} vertices and length {WALK_MAX_LENGTH}")
    if length < 1:
        raise InputError("walk length must be >= 1")
    nbrs = [[q for q in range(n) if a[p][q]] for p in range(n)]

    def walk(p: int, left: int) -> int:
        if left == 0:
            return 1 if p == j else 0
        return sum(walk(q, left - 1) for q in nbrs[p])

    return walk(i, length)


def katz_oracle(adjacency, beta: float, max_length: int) -> list[list[float]]:
    n = len(_rows(adjacency))
    return [[sum(beta ** l * walk_count_oracle(adjacency, i, j, l) for l in range(1, max_length + 1))
             for j in range(n)] for i in range(n)]


def gks_oracle(adjacency, group: Sequence[int], beta: float, max_length: int) -> dict[int, float]:
    k = katz_oracle(adjacency, beta, max_length)
    n = len(k)
    return {j: sum(k[p][j] for p in group) / len(group) for j in range(n) if j not in group}


def adjacency_oracle(groups: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """A(p, q) = 1 iff some group holds both p and q, by exhaustive scan."""
    groups = [set(g) for g in groups]
    return [[int(p != q and any(p in g and q in g for g in groups)) for q in range(n)] for p in range(n)]


def theta_oracle(groups: Sequence[Sequence[int]], n: int) -> list[list[float]]:
    """theta(u, v) = sum over hyperedges holding u and v of 1 / (|g| sqrt(d(u) d(v)))."""
    d = [sum(1 for g in groups if v in g) for v in range(n)]
    out = [[0.0] * n for _ in range(n)]
    for g in groups:
        for u in g:
            for v in g:
                out[u][v] += 1.0 / (len(g) * (d[u] * d[v]) ** 0.5)
    return out


def dense_solve_oracle(theta, y: Sequence[float], alpha: float) -> list[float]:
    """Solve (I - alpha theta) f = (1 - alpha) y by Gaussian elimination with partial pivoting."""
    t = _rows(theta)
    n = len(t)
    if n > DENSE_MAX_VERTICES:
        raise InputError(f"dense oracle limited to {DENSE_MAX_VERTICES} vertices")
    m = [[(1.0 if i == j else 0.0) - alpha * t[i][j] for j in range(n)] + [(1.0 - alpha) * float(y[i])]
         for i in range(n)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if abs(m[piv][col]) < 1e-14:
            raise InputError("singular system")
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            if factor:
                for c in range(col, n + 1):
                    m[r][c] -= factor * m[col][c]
    f = [0.0] * n
    for r in range(n - 1, -1, -1):
        f[r] = (m[r][n] - sum(m[r][c] * f[c] for c in range(r + 1, n))) / m[r][r]
    return f


def birw_oracle(adjacency, group: Sequence[int], alpha: float, l_group: int, l_outer: int) -> dict[int, float]:
    """Sequential bi-random walk written out with explicit loops; returns outsider -> column mean."""
    a = _rows(adjacency)
    n = len(a)
    members = sorted(group)
    outside = [q for q in range(n) if q not in members]
    c, o = len(members), len(outside)
    x = [[a[p][q] for q in outside] for p in members]
    total = sum(map(sum, x))
    if total == 0:
        return {q: 0.0 for q in outside}
    r = [[v / total for v in row] for row in x]
    for t in range(1, max(l_group, l_outer) + 1):
        if t <= l_group:
            # clique: (N_g R)(p, u) = sum of R over the other members
            r = [[alpha * sum(r[k][u] for k in range(c) if k != p) + (1 - alpha) * x[p][u] for u in range(o)]
                 for p in range(c)]
        if t <= l_outer:
            r = [[alpha * sum(r[p][v] * a[outside[v]][outside[u]] for v in range(o)) + (1 - alpha) * x[p][u]
                  for u in range(o)] for p in range(c)]
    return {q: sum(r[p][u] for p in range(c)) / c for u, q in enumerate(outside)}


def exhaustive_match_oracle(candidates: Iterable[Sequence[int]], test_groups: Iterable[Sequence[int]]) -> set[frozenset]:
    """Candidates whose member set equals some test group, by pairwise comparison."""
    tests = [frozenset(t) for t in test_groups]
    hits = set()
    for cand in candidates:
        cs = frozenset(cand)
        for t in tests:
            if cs == t:
                hits.add(cs)
    return hits


def accretion_oracle(train_groups: Iterable[Sequence[int]], t: Sequence[int],
                     outside_parent: bool = True) -> tuple[bool, bool]:
    """``(is_ig, is_sg)`` for test group ``t`` by enumerating every subset of every training group."""
    train = [frozenset(g) for g in train_groups]
    seen = set().union(*train) if train else set()
    ts = frozenset(t)
    if not ts <= seen:
        return False, False
    is_ig = any(g < ts and len(ts) == len(g) + 1 for g in train)
    is_sg = False
    for g in train:
        for size in range(1, len(g)):
            for s in combinations(sorted(g), size):
                s = frozenset(s)
                extra = ts - s
                if s < ts and len(extra) == 1:
                    (a,) = extra
                    if not outside_parent or a not in g:
                        is_sg = True
    return is_ig, is_sg

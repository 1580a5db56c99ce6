import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given

from groupaccretion import oracles
from groupaccretion.errors import InputError
from groupaccretion.network import build_snapshot, group_key, restrict_adjacency, spmm_multiply

from conftest import hypergraphs


def test_single_clique():
    snap = build_snapshot([(0, 1, 2)], 3)
    assert (snap.adjacency.toarray() == np.ones((3, 3)) - np.eye(3)).all()
    assert (snap.incidence.toarray() == np.ones((3, 1))).all()
    assert snap.edge_degree.tolist() == [3]
    assert snap.vertex_degree.tolist() == [1, 1, 1]


def test_shared_actor_path():
    snap = build_snapshot([(0, 1), (1, 2)], 3)
    a = snap.adjacency.toarray()
    assert a[0, 2] == 0 and a[0, 1] == 1 and a[1, 2] == 1
    assert snap.vertex_degree.tolist() == [1, 2, 1]


def test_two_overlapping_hyperedges():
    # six actors in two hyperedges sharing one actor: the actor network is two
    # cliques glued at the shared actor
    snap = build_snapshot([(0, 1, 2, 3), (3, 4, 5)], 6)
    a = snap.adjacency.toarray()
    expected = np.zeros((6, 6))
    for g in [(0, 1, 2, 3), (3, 4, 5)]:
        for p in g:
            for q in g:
                expected[p, q] = p != q
    assert (a == expected).all()


def test_isolated_actor_keeps_index():
    snap = build_snapshot([(0, 1)], 4)
    assert snap.adjacency.shape == (4, 4)
    assert snap.vertex_degree.tolist() == [1, 1, 0, 0]


def test_out_of_range_member_names_group():
    with pytest.raises(InputError, match=r"\(0, 5\)"):
        build_snapshot([(0, 5)], 3)


def test_duplicate_group_rejected():
    with pytest.raises(InputError):
        build_snapshot([(0, 1), (1, 0)], 2)


def test_group_key_canonical():
    assert group_key([3, 1, 3, 2]) == (1, 2, 3)
    with pytest.raises(InputError):
        group_key([])


@given(hypergraphs())
def test_snapshot_invariants(case):
    groups, n = case
    snap = build_snapshot(groups, n)
    a = snap.adjacency.toarray()
    assert (a == a.T).all()
    assert (np.diag(a) == 0).all()
    assert (a == np.array(oracles.adjacency_oracle(groups, n))).all()
    h = snap.incidence.toarray()
    assert set(np.unique(h)) <= {0.0, 1.0}
    assert h.sum(axis=0).tolist() == [len(g) for g in snap.groups]
    assert h.sum(axis=1).tolist() == [sum(v in g for g in groups) for v in range(n)]
    assert snap.vertex_degree.tolist() == h.sum(axis=1).tolist()


@given(hypergraphs())
def test_snapshot_deterministic(case):
    groups, n = case
    s1, s2 = build_snapshot(groups, n), build_snapshot(list(groups), n)
    for m1, m2 in [(s1.adjacency, s2.adjacency), (s1.incidence, s2.incidence)]:
        assert (m1.indptr == m2.indptr).all() and (m1.indices == m2.indices).all()
        assert m1.data.tobytes() == m2.data.tobytes()


def test_spmm_identity_and_zero():
    m = sp.csr_matrix(np.array([[0.0, 2.0], [3.0, 0.0]]))
    assert (spmm_multiply(sp.identity(2), m).toarray() == m.toarray()).all()
    assert spmm_multiply(sp.csr_matrix((2, 2)), m).nnz == 0


def test_spmm_hand_product():
    a = sp.csr_matrix(np.array([[1.0, 2.0], [0.0, 3.0]]))
    b = sp.csr_matrix(np.array([[4.0, 0.0], [5.0, 6.0]]))
    # [[1*4+2*5, 2*6], [3*5, 3*6]]
    assert spmm_multiply(a, b).toarray().tolist() == [[14.0, 12.0], [15.0, 18.0]]


def test_spmm_canonical_form():
    a = sp.csr_matrix(np.array([[1.0, -1.0], [0.0, 0.0]]))
    b = sp.csr_matrix(np.array([[1.0, 0.0], [1.0, 0.0]]))
    out = spmm_multiply(a, b)
    assert out.nnz == 0  # cancellation leaves no stored zero
    assert out.has_sorted_indices


def test_spmm_dimension_mismatch():
    with pytest.raises(InputError):
        spmm_multiply(sp.csr_matrix((2, 3)), sp.csr_matrix((2, 3)))


def test_restrict_everything_excluded():
    snap = build_snapshot([(0, 1, 2)], 3)
    outer, index_map = restrict_adjacency(snap, (0, 1, 2))
    assert outer.shape == (0, 0) and len(index_map) == 0


def test_restrict_path_middle():
    snap = build_snapshot([(0, 1), (1, 2)], 3)
    outer, index_map = restrict_adjacency(snap, (1,))
    assert outer.nnz == 0
    assert index_map.tolist() == [0, 2]


def test_restrict_group_with_outer_ring():
    # group {a,b,c,d} = 0..3; e=4 tied to a, f=5 tied to b, e-f tied
    snap = build_snapshot([(0, 1, 2, 3), (0, 4), (1, 5), (4, 5)], 6)
    outer, index_map = restrict_adjacency(snap, (0, 1, 2, 3))
    assert index_map.tolist() == [4, 5]
    assert outer.toarray().tolist() == [[0, 1], [1, 0]]


@given(hypergraphs())
def test_restrict_is_principal_submatrix(case):
    groups, n = case
    snap = build_snapshot(groups, n)
    g = groups[0]
    outer, index_map = restrict_adjacency(snap, g)
    a = snap.adjacency.toarray()
    assert sorted(set(index_map.tolist()) | set(g)) == list(range(n))
    assert (outer.toarray() == a[np.ix_(index_map, index_map)]).all()

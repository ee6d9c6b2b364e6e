import numpy as np
import pytest

import radonflow as rf


@pytest.fixture(scope="module")
def oms42():
    return rf.enumerate_acyclic_oms(4, 2)


@pytest.fixture(scope="module")
def poset42(oms42):
    return rf.MatroidPoset.from_elements(oms42)


def test_enumeration_4_2_matches_known_census(oms42):
    assert len(oms42) == 25
    assert sum(1 for m in oms42 if m.is_uniform) == 7
    assert all(m.acyclic for m in oms42)
    assert all(rf.check_circuit_axioms(m).ok for m in oms42)


def test_enumeration_is_closed_under_relabeling(oms42):
    keys = {m.circuit_key() for m in oms42}
    swap = {1: 2, 2: 1, 3: 4, 4: 3}
    cycle = {1: 2, 2: 3, 3: 4, 4: 1}
    for m in oms42[::5]:
        assert m.relabeled(swap).circuit_key() in keys
        assert m.relabeled(cycle).circuit_key() in keys


def test_enumeration_is_deterministic(oms42):
    again = rf.enumerate_acyclic_oms(4, 2)
    assert [m.circuit_key() for m in again] == [m.circuit_key() for m in oms42]


def test_enumeration_range_errors():
    with pytest.raises(rf.UnsupportedRangeError):
        rf.enumerate_acyclic_oms(7, 2)
    with pytest.raises(rf.UnsupportedRangeError):
        rf.enumerate_acyclic_oms(9, 2)
    with pytest.raises(rf.UnsupportedRangeError):
        rf.enumerate_acyclic_oms(3, 2)  # n < d + 2
    with pytest.raises(rf.UnsupportedRangeError):
        rf.enumerate_acyclic_oms(4, 0)


def test_poset_4_2_structure(poset42):
    assert len(poset42) == 25
    k = len(poset42)
    assert all(poset42.leq[i, i] for i in range(k))
    uniform = [i for i, m in enumerate(poset42.elements) if m.is_uniform]
    assert poset42.maximal_indices() == uniform
    strict = poset42.leq & ~np.eye(k, dtype=bool)
    for i, j in poset42.hasse_pairs():
        assert strict[i, j]
        assert not (strict[i] & strict[:, j]).any()


def test_order_complex_4_2(poset42):
    oc = rf.order_complex(poset42)
    assert oc.counts() == [25, 72, 48]
    assert oc.euler_characteristic() == 1
    assert rf.gf2_betti(oc) == [1, 1, 1]


def test_three_chain_poset():
    g = rf.GroundSet(4, 2)
    bottom = rf.OrientedMatroid(g, frozenset({rf.Circuit.make({2}, {4})}))
    middle = rf.OrientedMatroid(g, frozenset({rf.Circuit.make({2, 3}, {4})}))
    top = rf.OrientedMatroid(g, frozenset({rf.Circuit.make({1, 4}, {2, 3})}))
    p = rf.MatroidPoset.from_elements([bottom, middle, top])
    assert p.leq[0, 1] and p.leq[1, 2] and p.leq[0, 2]
    assert not p.leq[1, 0] and not p.leq[2, 1]
    assert p.hasse_pairs() == [(0, 1), (1, 2)]
    assert p.maximal_indices() == [2]
    oc = rf.order_complex(p)
    assert oc.counts() == [3, 3, 1]
    assert oc.euler_characteristic() == 1
    assert rf.gf2_betti(oc) == [1, 0, 0]


def test_poset_rejects_non_antisymmetric_input():
    g = rf.GroundSet(4, 2)
    m = rf.OrientedMatroid(g, frozenset({rf.Circuit.make({1, 4}, {2, 3})}))
    with pytest.raises(ValueError, match="antisymmetric"):
        rf.MatroidPoset.from_elements([m, m])


def test_gf2_rank():
    assert rf.gf2_rank(np.eye(3, dtype=int)) == 3
    assert rf.gf2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert rf.gf2_rank(np.array([[1, 1], [1, 0]])) == 2
    assert rf.gf2_rank(np.zeros((2, 3), dtype=int)) == 0
    # over GF(2) the all-ones 3x3 has rank 1, not 2 as over the rationals
    assert rf.gf2_rank(np.ones((3, 3), dtype=int)) == 1


def test_gf2_betti_on_known_spaces():
    circle = rf.SimplicialComplex.from_maximal_faces([(1, 2), (1, 3), (2, 3)])
    assert rf.gf2_betti(circle) == [1, 1]

    sphere = rf.SimplicialComplex.from_maximal_faces(
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    )
    assert rf.gf2_betti(sphere) == [1, 0, 1]

    disk = rf.SimplicialComplex.from_maximal_faces([(1, 2, 3)])
    assert rf.gf2_betti(disk) == [1, 0, 0]

    two_points = rf.SimplicialComplex.from_maximal_faces([(1,), (2,)])
    assert rf.gf2_betti(two_points) == [2]

    # 6-vertex closed surface with euler characteristic 1
    projective_plane = rf.SimplicialComplex.from_maximal_faces(
        [
            (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
            (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
        ]
    )
    assert projective_plane.counts() == [6, 15, 10]
    assert projective_plane.euler_characteristic() == 1
    assert rf.gf2_betti(projective_plane) == [1, 1, 1]


def test_order_complex_betti_matches_cell_betti(poset42):
    # the chain complex of the 25-element poset carries the same GF(2)
    # homology as the 7-facet cell structure it subdivides
    oc = rf.order_complex(poset42)
    assert rf.gf2_betti(oc) == [1, 1, 1]
    assert oc.euler_characteristic() == rf.cell_structure_m42().euler_characteristic


def test_cell_structure_m42():
    report = rf.cell_structure_m42()
    assert report.face_vector == (6, 12, 7)
    assert report.euler_characteristic == 1
    assert report.square_facets == 3
    assert report.triangle_facets == 4
    assert report.matroid_facet_bijection
    assert report.ok
    d = report.to_dict()
    assert d["face_vector"] == [6, 12, 7] and d["ok"] is True


def test_simplicial_complex_basics():
    c = rf.SimplicialComplex.from_maximal_faces([(3, 1, 2), (2, 3)])
    assert c.dim == 2
    assert c.counts() == [3, 3, 1]
    assert c.simplices[0] == [(1,), (2,), (3,)]
    empty = rf.SimplicialComplex.from_maximal_faces([])
    assert empty.counts() == []
    assert rf.gf2_betti(empty) == []

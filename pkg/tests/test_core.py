import numpy as np
import pytest

import radonflow as rf
from conftest import HEXAGON, LINE4, SQUARE, TRI_INTERIOR, sample_spanning_points
from oracles import exact_circuits


def circuit_set(m):
    return {(c.pos, c.neg) for c in m.circuits}


def test_square_has_one_crossing_circuit(square_matroid):
    assert circuit_set(square_matroid) == {(frozenset({1, 4}), frozenset({2, 3}))}


def test_triangle_interior_circuit(tri_interior_config):
    m = rf.circuits_of_points(tri_interior_config)
    # interior point against the three corners, canonicalized
    assert circuit_set(m) == {(frozenset({1, 2, 3}), frozenset({4}))}


def test_pentagon_has_one_circuit_per_four_subset(pentagon_config):
    m = rf.circuits_of_points(pentagon_config)
    assert len(m.circuits) == 5
    supports = {c.support for c in m.circuits}
    assert supports == {
        frozenset({1, 2, 3, 4, 5}) - {e} for e in range(1, 6)
    }
    assert m.is_uniform and m.acyclic


def test_line_circuits_are_all_triples(line_config):
    m = rf.circuits_of_points(line_config)
    assert {c.support for c in m.circuits} == {
        frozenset(s) for s in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))
    }
    # middle point carries the opposite sign
    assert (frozenset({1, 3}), frozenset({2})) in circuit_set(m)


def test_coincident_pair_is_a_two_element_circuit():
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    m = rf.circuits_of_points(rf.PointConfiguration(pts, 2))
    assert circuit_set(m) == {(frozenset({1}), frozenset({2}))}


def test_circuits_match_exact_oracle_on_fixed_configs():
    for pts, d in ((SQUARE, 2), (TRI_INTERIOR, 2), (HEXAGON, 2), (LINE4, 1)):
        ints = [[int(v) for v in row] for row in pts]
        if any(float(a) != b for row, irow in zip(pts, ints) for a, b in zip(row, irow)):
            continue
        m = rf.circuits_of_points(rf.PointConfiguration(np.asarray(pts), d))
        assert circuit_set(m) == exact_circuits(ints, d)


def test_circuits_match_exact_oracle_random():
    rng = np.random.default_rng(2024)
    for n, d in ((5, 2), (6, 3)):
        for _ in range(25):
            pts = sample_spanning_points(n, d, rng)
            m = rf.circuits_of_points(rf.PointConfiguration(pts.astype(float), d))
            assert circuit_set(m) == exact_circuits(pts.tolist(), d)


def test_rejects_rank_deficient_points():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
    with pytest.raises(rf.RankDeficientError):
        rf.circuits_of_points(rf.PointConfiguration(pts, 2))


def test_point_configuration_validation():
    with pytest.raises(ValueError):
        rf.PointConfiguration(np.zeros((3, 2)), 2)  # need d + 2 points
    with pytest.raises(ValueError):
        rf.PointConfiguration(np.array([[np.inf, 0.0]] * 4), 2)
    with pytest.raises(ValueError):
        rf.GroundSet(3, 2)
    with pytest.raises(ValueError):
        rf.GroundSet(4, 0)


def test_circuit_canonicalization():
    c = rf.Circuit.make({3, 4}, {1, 2})
    assert 1 in c.pos  # smallest support element forced positive
    assert c == rf.Circuit.make({1, 2}, {3, 4})
    assert c.reversed().reversed() == c


def test_is_radon_partition_square(square_matroid):
    m = square_matroid
    assert rf.is_radon_partition(m, {1, 4}, {2, 3})
    assert rf.is_radon_partition(m, {2, 3}, {1, 4})  # orientation symmetric
    assert rf.is_radon_partition(m, {1, 4, 2}, {3})  is False
    assert rf.is_radon_partition(m, {1, 4}, {2}) is False
    with pytest.raises(ValueError):
        rf.is_radon_partition(m, {1, 2}, {2, 3})


def test_weak_map_order(square_matroid, tri_interior_config):
    m_tri = rf.circuits_of_points(tri_interior_config)
    assert rf.weak_map_leq(square_matroid, square_matroid)  # reflexive
    assert not rf.weak_map_leq(square_matroid, m_tri)
    assert not rf.weak_map_leq(m_tri, square_matroid)


def test_weak_map_degeneration_is_below():
    generic = rf.circuits_of_points(
        rf.PointConfiguration(np.asarray(TRI_INTERIOR), 2)
    )
    # interior point slid onto the edge between points 1 and 2
    collapsed = rf.circuits_of_points(
        rf.PointConfiguration(np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [1.0, 0.0]]), 2)
    )
    assert circuit_set(collapsed) == {(frozenset({1, 2}), frozenset({4}))}
    assert rf.weak_map_leq(collapsed, generic)
    assert not rf.weak_map_leq(generic, collapsed)


def test_axioms_pass_for_computed_matroids(pentagon_config, hexagon_config):
    for cfg in (pentagon_config, hexagon_config):
        report = rf.check_circuit_axioms(rf.circuits_of_points(cfg))
        assert report.ok, report.summary()


def test_axioms_catch_support_nesting():
    m = rf.OrientedMatroid(
        rf.GroundSet(4, 2),
        frozenset({rf.Circuit.make({1, 2}, {3}), rf.Circuit.make({1, 2, 3}, {4})}),
    )
    report = rf.check_circuit_axioms(m)
    assert report.support_minimality and not report.ok


def test_axioms_catch_noncanonical_storage():
    m = rf.OrientedMatroid(
        rf.GroundSet(4, 2),
        frozenset({rf.Circuit(frozenset({2}), frozenset({1}))}),
    )
    report = rf.check_circuit_axioms(m)
    assert report.canonicalization


def test_axioms_catch_missing_elimination():
    m = rf.OrientedMatroid(
        rf.GroundSet(4, 2),
        frozenset({rf.Circuit.make({1, 3}, {2}), rf.Circuit.make({2, 4}, {3})}),
    )
    report = rf.check_circuit_axioms(m)
    assert report.weak_elimination


def test_matroid_serialization_roundtrip(square_matroid):
    again = rf.OrientedMatroid.from_dict(square_matroid.to_dict())
    assert again == square_matroid


def test_relabeling_permutes_circuits(square_matroid):
    perm = {1: 2, 2: 3, 3: 4, 4: 1}
    moved = square_matroid.relabeled(perm)
    assert circuit_set(moved) == {(frozenset({1, 2}), frozenset({3, 4}))}

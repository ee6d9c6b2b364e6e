import numpy as np
import pytest

import radonflow as rf


def zero_sum_vectors(rng, n, count):
    for _ in range(count):
        x = rng.standard_normal(n)
        x -= x.mean()
        if np.abs(x).sum() > 1e-6:
            yield x


def test_project_lands_on_polytope():
    rng = np.random.default_rng(101)
    for x in zero_sum_vectors(rng, 6, 200):
        y = rf.project_to_gamma(x)
        assert rf.on_gamma(y)
        assert abs(y.sum()) < 1e-12
        # radial: direction unchanged
        assert np.allclose(y / np.linalg.norm(y), x / np.linalg.norm(x))


def test_project_is_idempotent():
    rng = np.random.default_rng(102)
    for x in zero_sum_vectors(rng, 5, 50):
        y = rf.project_to_gamma(x)
        assert np.allclose(rf.project_to_gamma(y), y, atol=1e-14)


def test_project_scale_invariant():
    x = np.array([3.0, -1.0, -2.0, 0.0])
    assert np.allclose(rf.project_to_gamma(x), rf.project_to_gamma(10.0 * x))


def test_project_rejects_near_zero():
    with pytest.raises(rf.DegeneratePointError):
        rf.project_to_gamma(np.zeros(4))
    with pytest.raises(rf.DegeneratePointError):
        rf.project_to_gamma(np.full(4, 1e-12) * np.array([1, -1, 1, -1]))


def test_project_rejects_nonzero_sum():
    with pytest.raises(rf.GammaMembershipError):
        rf.project_to_gamma(np.array([1.0, 1.0, -1.0, 0.0]))


def test_face_of_reads_sign_pattern():
    lab = rf.face_of(np.array([1.0, -1.0, 0.0, 0.0]))
    assert lab.pos == frozenset({1})
    assert lab.neg == frozenset({2})


def test_face_of_ignores_coordinates_below_eps():
    a = 5e-10  # below the sign threshold, within membership tolerance
    lab = rf.face_of(np.array([1.0, -1.0, a, -a]))
    assert lab == rf.FaceLabel(frozenset({1}), frozenset({2}))


def test_face_of_requires_membership():
    with pytest.raises(rf.GammaMembershipError):
        rf.face_of(np.array([1.0, 1.0, -1.0, 0.0]))
    with pytest.raises(rf.GammaMembershipError):
        rf.face_of(np.array([2.0, -2.0, 0.0, 0.0]))


def test_support_projection_zeroes_off_support():
    x = np.array([3.0, 1.0, -2.0, 5.0, 0.5])
    y = rf.support_projection([1, 3, 4], x)
    assert y[1] == 0.0 and y[4] == 0.0
    assert abs(y[[0, 2, 3]].sum()) < 1e-12


def test_support_projection_is_orthogonal():
    # residual is orthogonal to every difference direction of the support
    rng = np.random.default_rng(103)
    for _ in range(100):
        x = rng.standard_normal(6)
        sup = [1, 2, 5, 6]
        y = rf.support_projection(sup, x)
        r = x - y
        for i in sup:
            for j in sup:
                if i < j:
                    e = np.zeros(6)
                    e[i - 1], e[j - 1] = 1.0, -1.0
                    assert abs(r @ e) < 1e-12
        assert np.allclose(rf.support_projection(sup, y), y, atol=1e-14)


def test_support_projection_validates_input():
    with pytest.raises(ValueError):
        rf.support_projection([1], np.zeros(4))
    with pytest.raises(ValueError):
        rf.support_projection([1, 9], np.zeros(4))


def test_ambient_vertices_and_barycenters():
    amb = rf.AmbientSpace(4)
    v = amb.vertex(2, 4)
    assert rf.on_gamma(v)
    assert v[1] == 1.0 and v[3] == -1.0
    c = rf.Circuit(frozenset({1, 4}), frozenset({2, 3}))
    b = amb.barycenter(c)
    assert rf.on_gamma(b)
    assert amb.face_of(b) == rf.FaceLabel(c.pos, c.neg)
    assert np.allclose(amb.barycenter(c, -1), -b)


def test_ambient_validates_labels():
    amb = rf.AmbientSpace(4)
    with pytest.raises(ValueError):
        amb.vertex(1, 1)
    with pytest.raises(ValueError):
        amb.vertex(0, 2)
    with pytest.raises(ValueError):
        rf.AmbientSpace(2)
    with pytest.raises(ValueError):
        amb.project(np.zeros(5))

import numpy as np
import pytest

from mebsmote.geometry import welzl_meb
from mebsmote.neighbors import (
    InsufficientNeighborsError,
    NeighborSet,
    centroid,
    k_nearest,
)


class TestKNearest:
    def test_ordered_by_distance(self):
        pool = [(0, 0), (1, 0), (3, 0)]
        hood = k_nearest(pool, 1, 2)
        assert list(hood.neighbor_indices) == [0, 2]
        assert hood.points == pytest.approx(np.array([[0.0, 0.0], [3.0, 0.0]]))

    def test_pool_too_small(self):
        with pytest.raises(InsufficientNeighborsError, match="at least 6"):
            k_nearest([(0, 0), (1, 1), (2, 2)], 0, 5)

    def test_tie_broken_by_index(self):
        pool = [(0, 0), (2, 0), (0, 2)]
        hood = k_nearest(pool, 0, 2)
        assert list(hood.neighbor_indices) == [1, 2]

    def test_query_excluded_even_with_coincident_point(self):
        pool = [(1, 1), (1, 1), (5, 5)]
        hood = k_nearest(pool, 0, 2)
        assert 0 not in hood.neighbor_indices
        assert list(hood.neighbor_indices) == [1, 2]

    def test_bad_query_index(self):
        with pytest.raises(IndexError):
            k_nearest([(0, 0), (1, 1)], 5, 1)

    def test_permutation_stability(self):
        rng = np.random.default_rng(3)
        pool = rng.uniform(-5, 5, (12, 3))
        hood = k_nearest(pool, 4, 5)
        perm = rng.permutation(12)
        permuted_pool = pool[perm]
        permuted_query = int(np.flatnonzero(perm == 4)[0])
        hood2 = k_nearest(permuted_pool, permuted_query, 5)
        original = {tuple(p) for p in hood.points}
        remapped = {tuple(p) for p in hood2.points}
        assert original == remapped


class TestNeighborSet:
    def test_rejects_base_among_neighbors(self):
        with pytest.raises(ValueError, match="own neighbor"):
            NeighborSet(0, np.array([0, 1]), 2, np.zeros((2, 2)))

    def test_rejects_duplicate_indices(self):
        with pytest.raises(ValueError, match="distinct"):
            NeighborSet(5, np.array([1, 1]), 2, np.zeros((2, 2)))

    def test_rejects_wrong_count(self):
        with pytest.raises(ValueError, match="expected 3"):
            NeighborSet(5, np.array([0, 1]), 3, np.zeros((2, 2)))


class TestCentroid:
    def test_three_points(self):
        assert centroid([(0, 0), (2, 0), (1, 3)]) == pytest.approx([1.0, 1.0])

    def test_single_point_identity(self):
        assert centroid([(4.5, -1.0)]) == pytest.approx([4.5, -1.0])

    def test_pulled_toward_dense_cluster(self):
        pts = [(0, 0)] * 4 + [(10, 0)]
        assert centroid(pts) == pytest.approx([2.0, 0.0])

    def test_empty_input(self):
        with pytest.raises(ValueError, match="non-empty"):
            centroid(np.empty((0, 2)))

    def test_within_axis_bounds(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            pts = rng.uniform(-20, 20, (int(rng.integers(1, 9)), 3))
            c = centroid(pts)
            assert np.all(pts.min(axis=0) - 1e-12 <= c)
            assert np.all(c <= pts.max(axis=0) + 1e-12)

    def test_centroid_inside_meb(self):
        rng = np.random.default_rng(20)
        for _ in range(50):
            pts = rng.normal(0, 5, (int(rng.integers(2, 10)), int(rng.integers(1, 5))))
            ball = welzl_meb(pts, rng=int(rng.integers(2**32)))
            assert ball.contains(centroid(pts))

"""Brute-force nearest-neighbor queries and the centroid representative point."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["InsufficientNeighborsError", "NeighborSet", "centroid", "k_nearest"]


class InsufficientNeighborsError(ValueError):
    """The pool is too small for the requested neighbor count."""


@dataclass(frozen=True)
class NeighborSet:
    """The k nearest pool members of one query point, nearest first.

    ``neighbor_indices`` index into the pool the query was run against;
    ``points`` carries the corresponding coordinates so downstream samplers
    need no back-reference to the pool.
    """

    base_index: int
    neighbor_indices: np.ndarray
    k: int
    points: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.neighbor_indices)
        if idx.shape[0] != self.k:
            raise ValueError(f"expected {self.k} neighbor indices, got {idx.shape[0]}")
        if self.points.shape[0] != self.k:
            raise ValueError(f"expected {self.k} neighbor points, got {self.points.shape[0]}")
        if len(np.unique(idx)) != self.k:
            raise ValueError("neighbor indices must be distinct")
        if self.base_index in idx:
            raise ValueError("the query point cannot be its own neighbor")


def k_nearest(points, query_index: int, k: int) -> NeighborSet:
    """The k pool members nearest to ``points[query_index]``, excluding itself.

    Ordered by ascending Euclidean distance; equal distances break toward
    the lower pool index, so the result is deterministic.
    """
    pool = np.asarray(points, dtype=float)
    if pool.ndim != 2:
        raise ValueError("pool must be a 2-d array of coordinate rows")
    n = pool.shape[0]
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= query_index < n:
        raise IndexError(f"query index {query_index} out of range for pool of {n}")
    if n < k + 1:
        raise InsufficientNeighborsError(
            f"need at least {k + 1} pool points for k={k} neighbors, got {n}"
        )
    dist = np.linalg.norm(pool - pool[query_index], axis=1)
    order = np.lexsort((np.arange(n), dist))
    order = order[order != query_index][:k]
    return NeighborSet(query_index, order, k, pool[order].copy())


def centroid(points) -> np.ndarray:
    """Coordinate-wise mean of a non-empty point set."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("centroid needs a non-empty 2-d array of points")
    return pts.mean(axis=0)

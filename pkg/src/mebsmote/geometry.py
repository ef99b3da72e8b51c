"""Exact minimum enclosing balls in n-dimensional space.

The minimum enclosing ball (MEB) of a finite point set is the unique
smallest-radius ball containing every point.  This module solves it exactly
with Welzl's randomized algorithm and also provides a subset-enumeration
oracle (`brute_force_meb`) for verifying the solver on small inputs.
"""

from __future__ import annotations

import itertools
import sys
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Ball",
    "DegenerateSupportError",
    "ball_from_support",
    "brute_force_meb",
    "contains",
    "euclidean_distance",
    "welzl_meb",
]

# Relative slack for containment tests; keeps points sitting numerically on
# the sphere from being treated as outside.
BOUNDARY_RTOL = 1e-9

# Difference vectors with an orthogonal component below this (relative) pivot
# are treated as affinely dependent.
_PIVOT_TOL = 1e-12

# Above this many points the move-to-front form is used, whose stack depth is
# bounded by the dimension instead of the point count.
_DIRECT_RECURSION_LIMIT = 1000


class DegenerateSupportError(ValueError):
    """The support points admit no covering equidistant center."""


@dataclass(frozen=True)
class Ball:
    """A closed ball ``{x : ||x - center|| <= radius}``.

    ``support`` holds the points assumed to lie on the boundary; a solver
    never needs more than ``dim + 1`` of them.
    """

    center: np.ndarray
    radius: float
    support: tuple[np.ndarray, ...] = ()

    @property
    def dim(self) -> int:
        return int(self.center.shape[0])

    def contains(self, point, tol: float | None = None) -> bool:
        """True iff ``point`` lies in the ball, allowing slack ``tol``.

        ``tol=None`` selects the default relative slack
        ``BOUNDARY_RTOL * (1 + radius)``.
        """
        p = _as_point(point)
        if p.shape[0] != self.dim:
            raise ValueError(
                f"dimension mismatch: ball is {self.dim}-d, point is {p.shape[0]}-d"
            )
        if tol is None:
            tol = BOUNDARY_RTOL * (1.0 + self.radius)
        elif tol < 0:
            raise ValueError("tol must be >= 0")
        return float(np.linalg.norm(p - self.center)) <= self.radius + tol


def contains(ball: Ball, point, tol: float | None = None) -> bool:
    """Functional form of :meth:`Ball.contains`."""
    return ball.contains(point, tol)


def euclidean_distance(a, b) -> float:
    """Euclidean distance ``sqrt(sum_p (a_p - b_p)^2)`` between two points."""
    pa = _as_point(a)
    pb = _as_point(b)
    if pa.shape != pb.shape:
        raise ValueError(
            f"dimension mismatch: {pa.shape[0]}-d point vs {pb.shape[0]}-d point"
        )
    return float(np.linalg.norm(pa - pb))


def ball_from_support(support, dim: int | None = None) -> Ball:
    """Smallest ball whose boundary passes through all support points.

    The center is the unique point in the affine hull of the support that is
    equidistant from every support point, found by solving a small linear
    system over the pairwise difference vectors.  An affinely dependent
    support is first reduced to a maximal independent subset; the dropped
    points must still be covered by the reduced ball, otherwise
    :class:`DegenerateSupportError` is raised.

    An empty support yields a radius-0 ball at the origin (``dim`` is then
    required); its empty ``support`` tuple marks it as enclosing nothing.
    """
    pts = _as_points(support, allow_empty=True)
    if pts.shape[0] == 0:
        if dim is None:
            raise ValueError("dim is required for an empty support")
        return Ball(np.zeros(dim), 0.0, ())
    if dim is not None and pts.shape[1] != dim:
        raise ValueError(f"support points are {pts.shape[1]}-d, expected {dim}-d")

    base = pts[0]
    if pts.shape[0] == 1:
        return Ball(base.copy(), 0.0, (base.copy(),))

    # Modified Gram-Schmidt over the difference vectors: points whose
    # difference adds no rank are set aside for a containment check below.
    kept: list[int] = [0]
    dropped: list[int] = []
    basis: list[np.ndarray] = []
    for i in range(1, pts.shape[0]):
        v = pts[i] - base
        w = v.copy()
        for q in basis:
            w -= (w @ q) * q
        norm_w = float(np.linalg.norm(w))
        if norm_w > _PIVOT_TOL * max(1.0, float(np.linalg.norm(v))):
            basis.append(w / norm_w)
            kept.append(i)
        else:
            dropped.append(i)

    m = len(basis)
    if m == 0:
        center = base.copy()
        radius = 0.0
    else:
        # Equidistance from base and kept point i pins the center's component
        # along the hull: (c - base) . v_i = ||v_i||^2 / 2.  In the
        # orthonormal basis this is a triangular system.
        q_mat = np.array(basis)
        v_mat = pts[kept[1:]] - base
        rhs = 0.5 * np.einsum("ij,ij->i", v_mat, v_mat)
        coef = v_mat @ q_mat.T
        if m == 1:
            mu = rhs / coef[0, 0]
        else:
            mu = np.linalg.solve(coef, rhs)
        center = base + mu @ q_mat
        radius = float(np.max(np.linalg.norm(pts[kept] - center, axis=1)))

    tol = BOUNDARY_RTOL * (1.0 + radius)
    for i in dropped:
        if float(np.linalg.norm(pts[i] - center)) > radius + tol:
            raise DegenerateSupportError(
                "affinely dependent support: reduced ball does not cover all "
                "support points"
            )
    return Ball(center, radius, tuple(pts[i].copy() for i in kept))


def welzl_meb(points, rng=None) -> Ball:
    """Minimum enclosing ball of a non-empty point set.

    Randomized exact solver: the points are shuffled once with ``rng``, then
    the ball is grown recursively while maintaining a boundary support of at
    most ``dim + 1`` points.  The result is independent of ``rng`` (the MEB
    is unique); the shuffle only protects the expected running time.

    ``rng`` may be a ``numpy.random.Generator``, a seed, or ``None`` for an
    unseeded generator.
    """
    pts = _as_points(points)
    pts = np.unique(pts, axis=0)  # correctness argument assumes distinct points
    gen = rng if hasattr(rng, "permutation") else np.random.default_rng(rng)
    pts = pts[gen.permutation(pts.shape[0])]
    n, d = pts.shape
    if n <= _DIRECT_RECURSION_LIMIT:
        with _recursion_headroom(n + d + 64):
            return _welzl_recursive(pts, n, [])
    return _welzl_move_to_front(pts)


def brute_force_meb(points) -> Ball:
    """MEB by exhaustive enumeration of candidate boundary subsets.

    Builds :func:`ball_from_support` for every subset of at most ``dim + 1``
    points and returns the smallest ball that encloses the whole set.  The
    cost is combinatorial; intended as a verification oracle for small
    inputs (roughly <= 12 points, dimension <= 6).
    """
    pts = _as_points(points)
    pts = np.unique(pts, axis=0)
    n, d = pts.shape
    best: Ball | None = None
    for size in range(1, min(n, d + 1) + 1):
        for combo in itertools.combinations(range(n), size):
            try:
                ball = ball_from_support(pts[list(combo)])
            except DegenerateSupportError:
                continue
            if best is not None and ball.radius >= best.radius:
                continue
            tol = BOUNDARY_RTOL * (1.0 + ball.radius)
            dist = np.linalg.norm(pts - ball.center, axis=1)
            if np.all(dist <= ball.radius + tol):
                best = ball
    if best is None:  # unreachable: the true support subset always qualifies
        raise DegenerateSupportError("no support subset encloses the point set")
    return best


def _welzl_recursive(pts: np.ndarray, n: int, support: list[np.ndarray]) -> Ball:
    d = pts.shape[1]
    if n == 0 or len(support) == d + 1:
        return ball_from_support(support, dim=d)
    ball = _welzl_recursive(pts, n - 1, support)
    p = pts[n - 1]
    if _inside(ball, p):
        return ball
    return _welzl_recursive(pts, n - 1, support + [p])


def _welzl_move_to_front(pts: np.ndarray) -> Ball:
    d = pts.shape[1]
    order = list(range(pts.shape[0]))

    def solve(end: int, support: list[np.ndarray]) -> Ball:
        # Recursion depth is bounded by the support size, never the point
        # count, so arbitrarily large inputs fit in the default stack.
        ball = ball_from_support(support, dim=d)
        if len(support) == d + 1:
            return ball
        i = 0
        while i < end:
            p = pts[order[i]]
            if not _inside(ball, p):
                ball = solve(i, support + [p])
                order.insert(0, order.pop(i))
            i += 1
        return ball

    return solve(len(order), [])


def _inside(ball: Ball, p: np.ndarray) -> bool:
    slack = BOUNDARY_RTOL * (1.0 + ball.radius)
    return float(np.linalg.norm(p - ball.center)) <= ball.radius + slack


@contextmanager
def _recursion_headroom(frames: int):
    # setrecursionlimit is process-global: raise it only when needed, restore
    # only if nobody else moved it meanwhile.
    needed = _stack_depth() + frames
    old = sys.getrecursionlimit()
    if needed <= old:
        yield
        return
    sys.setrecursionlimit(needed)
    try:
        yield
    finally:
        if sys.getrecursionlimit() == needed:
            sys.setrecursionlimit(old)


def _stack_depth() -> int:
    frame = sys._getframe()
    depth = 0
    while frame is not None:
        depth += 1
        frame = frame.f_back
    return depth


def _as_point(point) -> np.ndarray:
    p = np.asarray(point, dtype=float)
    if p.ndim != 1 or p.shape[0] == 0:
        raise ValueError("a point must be a non-empty flat coordinate sequence")
    if not np.all(np.isfinite(p)):
        raise ValueError("point has non-finite coordinates")
    return p


def _as_points(points, allow_empty: bool = False) -> np.ndarray:
    try:
        pts = np.asarray(points, dtype=float)
    except (ValueError, TypeError) as exc:
        raise ValueError("points must all share one dimension") from exc
    if pts.size == 0:
        if allow_empty:
            return pts.reshape(0, pts.shape[1] if pts.ndim == 2 else 0)
        raise ValueError("empty point set")
    if pts.ndim != 2 or pts.shape[1] == 0:
        raise ValueError("points must be a 2-d array of coordinate rows")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain non-finite coordinates")
    return pts

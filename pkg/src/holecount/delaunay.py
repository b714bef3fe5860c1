"""Delaunay triangulation of a planar cloud with edge/face adjacency.

The triangulation itself is delegated to Qhull (scipy.spatial.Delaunay),
which gives the expected O(n log n) construction.  On top of it we build a
flat edge table in which every edge knows its two incident faces; hull edges
carry the EXTERNAL sentinel as their second face, so the unbounded region
behaves like one more triangle everywhere downstream.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial import Delaunay as _SciPyDelaunay
from scipy.spatial import QhullError

from ._fastdel import HAVE_NUMBA, _edge_table, build_triangulation

#: Face id of the unbounded external region.
EXTERNAL = -1


class TooFewPointsError(ValueError):
    """Fewer than 3 distinct points: no triangulation exists."""


class AllCollinearError(ValueError):
    """All points lie on one line: no triangulation exists."""


class DuplicatePointsWarning(UserWarning):
    """Duplicate input points were removed before triangulating."""


@dataclass(frozen=True)
class Cloud:
    """An ordered sequence of distinct 2D points."""

    points: np.ndarray  # (n, 2) float64

    @classmethod
    def from_points(cls, points) -> "Cloud":
        pts = np.ascontiguousarray(np.asarray(points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"expected an (n, 2) array, got shape {pts.shape}")
        if not np.isfinite(pts).all():
            raise ValueError("cloud contains non-finite coordinates")
        # view rows as complex so the duplicate scan sorts scalars, not a
        # structured array; ordering is lexicographic either way
        _, first = np.unique(pts.view(np.complex128).ravel(), return_index=True)
        if len(first) < len(pts):
            warnings.warn(
                f"removed {len(pts) - len(first)} duplicate point(s)",
                DuplicatePointsWarning,
                stacklevel=2,
            )
            pts = pts[np.sort(first)]
        return cls(points=pts)

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Edge:
    """One Delaunay edge: two endpoint indices, two face ids, its length."""

    v0: int
    v1: int
    f0: int
    f1: int
    length: float


@dataclass(frozen=True)
class Triangulation:
    """Delaunay triangulation with a flat, numpy-backed edge table."""

    points: np.ndarray       # (n, 2)
    triangles: np.ndarray    # (k, 3) vertex indices, CCW
    edge_vertices: np.ndarray  # (E, 2) canonical (min, max) endpoint indices
    edge_faces: np.ndarray     # (E, 2) triangle ids; EXTERNAL for hull edges
    edge_length_sq: np.ndarray  # (E,) float64

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    @property
    def num_edges(self) -> int:
        return len(self.edge_vertices)

    @property
    def hull_edge_count(self) -> int:
        return int(np.count_nonzero(self.edge_faces[:, 1] == EXTERNAL))

    def edge(self, i: int) -> Edge:
        v0, v1 = self.edge_vertices[i]
        f0, f1 = self.edge_faces[i]
        return Edge(int(v0), int(v1), int(f0), int(f1), float(np.sqrt(self.edge_length_sq[i])))

    def edge_lengths(self) -> np.ndarray:
        return np.sqrt(self.edge_length_sq)


def _qhull_triangles(pts: np.ndarray):
    """Qhull triangulation, CCW-normalized; exact fallback path."""
    try:
        dt = _SciPyDelaunay(pts)
    except QhullError as exc:
        raise AllCollinearError("points are collinear or otherwise degenerate") from exc
    if dt.simplices.shape[0] == 0:
        raise AllCollinearError("points are collinear: empty triangulation")

    tris = dt.simplices.astype(np.int32, copy=True)
    neigh = dt.neighbors.astype(np.int32, copy=True)

    # Normalize triangles to CCW; swap the last two vertices (and the
    # corresponding neighbor slots) where the signed area is negative.
    a, b, c = pts[tris[:, 0]], pts[tris[:, 1]], pts[tris[:, 2]]
    cross = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (
        c[:, 0] - a[:, 0]
    )
    flip = cross < 0
    tris[flip, 1], tris[flip, 2] = tris[flip, 2], tris[flip, 1].copy()
    neigh[flip, 1], neigh[flip, 2] = neigh[flip, 2], neigh[flip, 1].copy()
    return tris, neigh


def triangulate(cloud: Cloud) -> Triangulation:
    """Build the Delaunay triangulation of the cloud.

    The incremental builder handles the common case; inputs with degenerate
    or near-degenerate predicates (exactly cocircular points, points on a
    shared line) fall back to Qhull, which resolves them symbolically.
    Raises TooFewPointsError / AllCollinearError on degenerate input.
    """
    pts = cloud.points
    if len(pts) < 3:
        raise TooFewPointsError(f"need at least 3 distinct points, got {len(pts)}")
    fast = build_triangulation(pts)
    if fast is not None:
        tris, neigh = fast
    else:
        tris, neigh = _qhull_triangles(pts)

    if HAVE_NUMBA:
        edge_vertices, edge_faces, edge_length_sq = _edge_table(pts, tris, neigh)
    else:
        # Each triangle contributes the edge opposite each of its vertices;
        # keep one copy per edge (the one seen from the lower face id).
        k = len(tris)
        face_ids = np.repeat(np.arange(k, dtype=np.int32), 3)
        opp = neigh.reshape(-1)  # neighbor across the edge opposite vertex j
        e0 = tris[:, [1, 2, 0]].reshape(-1)
        e1 = tris[:, [2, 0, 1]].reshape(-1)
        keep = (opp == -1) | (opp > face_ids)

        v0, v1 = e0[keep], e1[keep]
        lo = np.minimum(v0, v1)
        hi = np.maximum(v0, v1)
        edge_vertices = np.stack([lo, hi], axis=1)
        edge_faces = np.stack([face_ids[keep], opp[keep]], axis=1)
        edge_faces[edge_faces[:, 1] == -1, 1] = EXTERNAL

        d = pts[hi] - pts[lo]
        edge_length_sq = d[:, 0] ** 2 + d[:, 1] ** 2

    return Triangulation(
        points=pts,
        triangles=tris,
        edge_vertices=edge_vertices,
        edge_faces=edge_faces,
        edge_length_sq=edge_length_sq,
    )


def _exact_length_sq(pts: np.ndarray, v0: int, v1: int) -> Fraction:
    dx = Fraction(float(pts[v1, 0])) - Fraction(float(pts[v0, 0]))
    dy = Fraction(float(pts[v1, 1])) - Fraction(float(pts[v0, 1]))
    return dx * dx + dy * dy


def edges_sorted_desc(tri: Triangulation) -> np.ndarray:
    """Edge ids sorted by length descending, deterministically.

    Ties in the floating squared length are re-ordered by the exact rational
    squared length (descending) and finally by the canonical endpoint pair
    (ascending), so the sweep order is a total order independent of the
    construction history.
    """
    len_sq = tri.edge_length_sq
    order = np.argsort(-len_sq, kind="stable")

    # Refine runs of equal floating squared length with exact arithmetic.
    sorted_len = len_sq[order]
    tied = np.flatnonzero(sorted_len[:-1] == sorted_len[1:])
    if len(tied):
        run_breaks = np.flatnonzero(sorted_len[:-1] != sorted_len[1:]) + 1
        starts = np.concatenate(([0], run_breaks))
        ends = np.concatenate((run_breaks, [len(order)]))
        for s, e in zip(starts[ends - starts >= 2], ends[ends - starts >= 2]):
            run = order[s:e]
            keyed = sorted(
                run,
                key=lambda i: (
                    -_exact_length_sq(tri.points, *tri.edge_vertices[i]),
                    int(tri.edge_vertices[i, 0]),
                    int(tri.edge_vertices[i, 1]),
                ),
            )
            order[s:e] = keyed
    return order

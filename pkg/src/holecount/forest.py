"""Descending-scale sweep over sorted Delaunay edges.

One union-find node per triangle plus one for the external region.  Edges are
processed from longest to shortest; at each edge the two dual nodes are
classified as gray (still covered, birth time 0) or white (already part of a
hole region), and one of four cases applies.  Case 4 — two white regions
merging — emits a (birth, death) pair for the younger region, with birth and
death swapped into the ascending-offset convention.

Union is strictly by weight and find_root does no path compression, which
keeps every parent chain logarithmic in the tree size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._fastdel import HAVE_NUMBA, _sweep_arrays, _triangle_births
from .delaunay import Cloud, Triangulation, edges_sorted_desc, triangulate
from .diagrams import Diagram
from .predicates import Point2, circumradius, is_acute

CASE_SAME_REGION = 1
CASE_GRAY_JOINS_WHITE = 2
CASE_TWO_GRAY = 3
CASE_WHITE_MERGE = 4

# Tolerance band inside which acuteness is re-decided exactly.
_ACUTE_BAND = 1e-12


@dataclass(frozen=True)
class SweepEvent:
    """Outcome of processing one edge."""

    case: int
    alpha: float
    pair: Optional[tuple] = None  # (birth, death), Case 4 only


class DualForest:
    """Union-find over triangle-dual nodes, plus the external node.

    Nodes 0..k-1 are the triangles; node k is the unbounded region with
    birth +inf.  Each node stores a parent id (self if root), the number of
    nodes below it in its tree, and its birth scale (0 while gray).
    """

    __slots__ = ("parent", "weight", "birth", "links", "num_triangles", "max_find_steps")

    def __init__(self, births: np.ndarray):
        k = len(births)
        self.num_triangles = k
        self.parent = list(range(k + 1))
        self.weight = [0] * (k + 1)
        self.birth = births.tolist() + [math.inf]
        self.links = 0
        self.max_find_steps = 0

    @property
    def external(self) -> int:
        return self.num_triangles

    def find_root(self, node: int) -> int:
        """Walk parent links to the root; no path compression."""
        steps = 0
        parent = self.parent
        while parent[node] != node:
            node = parent[node]
            steps += 1
        if steps > self.max_find_steps:
            self.max_find_steps = steps
        return node

    def link_gray_to_white(self, u: int, rootv: int) -> None:
        """Case 2: attach the gray singleton u below the white root."""
        assert self.parent[u] == u and self.birth[u] == 0.0
        assert self.parent[rootv] == rootv and self.birth[rootv] > 0.0
        self.parent[u] = rootv
        self.birth[u] = self.birth[rootv]
        self.weight[rootv] += 1
        self.links += 1

    def link_two_gray(self, u: int, v: int, alpha: float) -> None:
        """Case 3: two gray singletons form a new white component born now."""
        assert self.parent[u] == u and self.birth[u] == 0.0
        assert self.parent[v] == v and self.birth[v] == 0.0
        self.parent[v] = u
        self.birth[u] = alpha
        self.birth[v] = alpha
        self.weight[u] = 1
        self.links += 1

    def merge_white(self, rootu: int, rootv: int, alpha: float) -> tuple:
        """Case 4: merge two white regions; the younger one dies.

        Returns the emitted (birth, death) pair in ascending-offset
        convention: the hole is born when the current edge enters the offset
        and dies at the younger region's birth scale.
        """
        assert rootu != rootv
        bu, bv = self.birth[rootu], self.birth[rootv]
        assert bu > 0.0 and bv > 0.0
        pair = (alpha, min(bu, bv))
        if self.weight[rootu] > self.weight[rootv]:
            parent, child = rootu, rootv
        else:
            parent, child = rootv, rootu
        self.parent[child] = parent
        self.weight[parent] += self.weight[child] + 1
        self.birth[parent] = max(bu, bv)  # elder rule: older birth survives
        self.links += 1
        return pair


def triangle_births(tri: Triangulation) -> np.ndarray:
    """Birth scale per triangle: circumradius if acute, else 0.

    Right triangles count as non-acute; their circumcenter lies on the
    hypotenuse, so they enter a hole region exactly when that edge leaves
    the complex and need no value of their own.
    """
    pts = tri.points
    if HAVE_NUMBA:
        births = _triangle_births(pts, tri.triangles, _ACUTE_BAND)
        borderline = np.flatnonzero(np.isnan(births))
    else:
        a = pts[tri.triangles[:, 0]]
        b = pts[tri.triangles[:, 1]]
        c = pts[tri.triangles[:, 2]]
        ab = ((b - a) ** 2).sum(axis=1)
        bc = ((c - b) ** 2).sum(axis=1)
        ca = ((a - c) ** 2).sum(axis=1)
        total = ab + bc + ca
        longest = np.maximum(ab, np.maximum(bc, ca))
        gap = total - 2.0 * longest
        acute = gap > _ACUTE_BAND * total
        borderline = np.flatnonzero(np.abs(gap) <= _ACUTE_BAND * total)

        cross = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (
            b[:, 1] - a[:, 1]
        ) * (c[:, 0] - a[:, 0])
        births = np.zeros(len(tri.triangles))
        with np.errstate(divide="ignore", invalid="ignore"):
            radius = np.sqrt(ab * bc * ca) / (2.0 * np.abs(cross))
        # clamp: an acute circumradius is at least half the longest edge,
        # and the rounded quotient must not fall below that edge's scale
        radius = np.maximum(radius, 0.5 * np.sqrt(longest))
        births[acute] = radius[acute]

    # Near-right triangles are re-decided with exact arithmetic.
    for t in borderline:
        i, j, k = (Point2(*pts[v]) for v in tri.triangles[t])
        if is_acute(i, j, k):
            d2 = max(
                (j.x - i.x) ** 2 + (j.y - i.y) ** 2,
                (k.x - j.x) ** 2 + (k.y - j.y) ** 2,
                (i.x - k.x) ** 2 + (i.y - k.y) ** 2,
            )
            births[t] = max(circumradius(i, j, k), 0.5 * math.sqrt(d2))
        else:
            births[t] = 0.0
    return births


def init_forest(tri: Triangulation) -> DualForest:
    """One node per triangle (birth = circumradius if acute, else 0) plus the
    external node with birth +inf."""
    return DualForest(triangle_births(tri))


def process_edge(forest: DualForest, tri: Triangulation, edge_id: int) -> SweepEvent:
    """Dispatch one edge of the descending sweep to its case."""
    f0, f1 = tri.edge_faces[edge_id]
    u = int(f0) if f0 >= 0 else forest.external
    v = int(f1) if f1 >= 0 else forest.external
    alpha = 0.5 * math.sqrt(tri.edge_length_sq[edge_id])

    rootu = forest.find_root(u)
    rootv = forest.find_root(v)
    if rootu == rootv:
        return SweepEvent(CASE_SAME_REGION, alpha)
    bu, bv = forest.birth[rootu], forest.birth[rootv]
    if bu == 0.0 and bv == 0.0:
        forest.link_two_gray(u, v, alpha)
        return SweepEvent(CASE_TWO_GRAY, alpha)
    if bu == 0.0:
        forest.link_gray_to_white(u, rootv)
        return SweepEvent(CASE_GRAY_JOINS_WHITE, alpha)
    if bv == 0.0:
        forest.link_gray_to_white(v, rootu)
        return SweepEvent(CASE_GRAY_JOINS_WHITE, alpha)
    pair = forest.merge_white(rootu, rootv, alpha)
    return SweepEvent(CASE_WHITE_MERGE, alpha, pair)


def sweep_events(cloud: Cloud) -> list:
    """Run the full sweep through process_edge, returning every event.

    Slower than sweep(); used for traces and tests.
    """
    tri = triangulate(cloud)
    forest = init_forest(tri)
    order = edges_sorted_desc(tri)
    events = []
    k = forest.num_triangles
    for edge_id in order:
        if forest.links >= k:
            break
        events.append(process_edge(forest, tri, int(edge_id)))
    return events


def sweep(forest: DualForest, tri: Triangulation, order: np.ndarray,
          track_depth: bool = False) -> list:
    """Process all edges in the given order; returns the Case-4 pairs.

    Same algorithm as process_edge, inlined over flat lists so large clouds
    stay fast.  With track_depth=True every root query updates
    forest.max_find_steps.
    """
    k = forest.num_triangles
    faces = tri.edge_faces[order].copy()
    faces[faces < 0] = k
    nodes_u = faces[:, 0].tolist()
    nodes_v = faces[:, 1].tolist()
    alphas = (0.5 * np.sqrt(tri.edge_length_sq[order])).tolist()

    parent = forest.parent
    weight = forest.weight
    birth = forest.birth
    links = forest.links
    max_steps = forest.max_find_steps
    pairs = []

    for u, v, alpha in zip(nodes_u, nodes_v, alphas):
        if links >= k:
            break
        if track_depth:
            steps = 0
            r = u
            while parent[r] != r:
                r = parent[r]
                steps += 1
            if steps > max_steps:
                max_steps = steps
            steps = 0
            s = v
            while parent[s] != s:
                s = parent[s]
                steps += 1
            if steps > max_steps:
                max_steps = steps
        else:
            r = u
            while parent[r] != r:
                r = parent[r]
            s = v
            while parent[s] != s:
                s = parent[s]
        if r == s:
            continue
        bu = birth[r]
        bv = birth[s]
        if bu == 0.0:
            if bv == 0.0:
                # Case 3: two gray singletons
                parent[s] = r
                birth[r] = alpha
                birth[s] = alpha
                weight[r] = 1
            else:
                # Case 2: gray u joins the white region of v
                parent[r] = s
                birth[r] = bv
                weight[s] += 1
        elif bv == 0.0:
            # Case 2 mirrored
            parent[s] = r
            birth[s] = bu
            weight[r] += 1
        else:
            # Case 4: white regions merge, younger dies
            pairs.append((alpha, bu if bu < bv else bv))
            if weight[r] > weight[s]:
                parent[s] = r
                weight[r] += weight[s] + 1
                birth[r] = bu if bu > bv else bv
            else:
                parent[r] = s
                weight[s] += weight[r] + 1
                birth[s] = bu if bu > bv else bv
        links += 1

    forest.links = links
    forest.max_find_steps = max_steps
    return pairs


def hole_persistence(cloud: Cloud, track_depth: bool = False) -> Diagram:
    """Persistence pairs of all holes of the cloud's offset filtration."""
    diagram, _, _ = hole_persistence_stats(cloud, track_depth=track_depth)
    return diagram


def hole_persistence_stats(cloud: Cloud, track_depth: bool = False) -> tuple:
    """(diagram, deepest root walk, triangle count) of one pipeline run.

    The depth statistic is only meaningful with track_depth=True; it backs
    the logarithmic bound on parent chains under union by weight.
    """
    tri = triangulate(cloud)
    order = edges_sorted_desc(tri)
    pairs, max_steps = sweep_pairs(tri, order, track_depth=track_depth)
    return Diagram.from_pairs(pairs), max_steps, tri.num_triangles


def sweep_pairs(tri: Triangulation, order: np.ndarray,
                track_depth: bool = False) -> tuple:
    """(pairs, deepest root walk) of one sweep over pre-sorted edges.

    Runs the compiled array sweep when available, the list sweep otherwise;
    the two are exercised against each other in the tests.
    """
    k = tri.num_triangles
    if HAVE_NUMBA:
        births = triangle_births(tri)
        parent = np.arange(k + 1, dtype=np.int32)
        weight = np.zeros(k + 1, dtype=np.int32)
        birth = np.concatenate([births, [np.inf]])
        pairs, _, max_steps = _sweep_arrays(
            order, tri.edge_faces, tri.edge_length_sq,
            parent, weight, birth, k, track_depth,
        )
        return pairs, int(max_steps)
    forest = init_forest(tri)
    pairs = sweep(forest, tri, order, track_depth=track_depth)
    return pairs, forest.max_find_steps

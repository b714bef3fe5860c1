"""Incremental Delaunay triangulation over flat int32 arrays.

Bowyer-Watson insertion in Morton order with a walk-based point location,
compiled with numba.  The unbounded region is represented by ghost
triangles (two hull vertices plus the infinite vertex n), so cavity search
and retriangulation treat the outside uniformly.

All predicates run in floating point with a conservative error filter; any
uncertain sign aborts the construction with a nonzero status and the caller
falls back to a slower exact path.  Peak memory is a few small arrays of
the output size, which keeps the whole pipeline linear in n.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

_EPS = np.finfo(np.float64).eps
_ORIENT_FILTER = 8.0 * _EPS
_INCIRCLE_FILTER = 32.0 * _EPS

STATUS_OK = 0
STATUS_UNCERTAIN = 1
STATUS_OVERFLOW = 2


def morton_argsort(points: np.ndarray) -> np.ndarray:
    """Insertion order along a Z-order curve; keeps successive points close
    so the locate walk is short."""
    lo = points.min(axis=0)
    span = float(np.ptp(points, axis=0).max())
    if span <= 0.0:
        return np.arange(len(points))
    scale = (2 ** 16 - 1) / span
    q = ((points - lo) * scale).astype(np.uint64)
    key = np.zeros(len(points), dtype=np.uint64)
    for axis, shift0 in ((0, 0), (1, 1)):
        v = q[:, axis]
        v = (v | (v << np.uint64(16))) & np.uint64(0x0000FFFF0000FFFF)
        v = (v | (v << np.uint64(8))) & np.uint64(0x00FF00FF00FF00FF)
        v = (v | (v << np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        v = (v | (v << np.uint64(2))) & np.uint64(0x3333333333333333)
        v = (v | (v << np.uint64(1))) & np.uint64(0x5555555555555555)
        key |= v << np.uint64(shift0)
    return np.argsort(key, kind="stable")


@njit(cache=True, inline="always")
def _orient(ax, ay, bx, by, cx, cy):
    """Sign of the CCW test, or -2 when the filter cannot certify it."""
    t1 = (ax - cx) * (by - cy)
    t2 = (ay - cy) * (bx - cx)
    det = t1 - t2
    bound = _ORIENT_FILTER * (abs(t1) + abs(t2))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    if bound == 0.0:
        return 0
    return -2


@njit(cache=True, inline="always")
def _incircle(ax, ay, bx, by, cx, cy, px, py):
    """Sign of the in-circumcircle test for CCW (a, b, c), filter as above."""
    adx = ax - px
    ady = ay - py
    bdx = bx - px
    bdy = by - py
    cdx = cx - px
    cdy = cy - py
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    m1 = adx * (bdy * cd - cdy * bd)
    m2 = ady * (bdx * cd - cdx * bd)
    m3 = ad * (bdx * cdy - cdx * bdy)
    det = m1 - m2 + m3
    mag = (
        abs(adx) * (abs(bdy) * cd + abs(cdy) * bd)
        + abs(ady) * (abs(bdx) * cd + abs(cdx) * bd)
        + ad * (abs(bdx) * abs(cdy) + abs(cdx) * abs(bdy))
    )
    bound = _INCIRCLE_FILTER * mag
    if det > bound:
        return 1
    if det < -bound:
        return -1
    if bound == 0.0:
        return 0
    return -2


@njit(cache=True)
def _build(pts, order):
    """Insert points in the given order; returns (tris, neighbors, status).

    Triangle slots hold vertex indices, with index n standing for the
    infinite vertex of ghost triangles; dead slots have first vertex -1.
    neighbors[t, j] is the triangle across the edge opposite vertex j.
    """
    n = len(pts)
    inf = n
    cap = 2 * n + 16
    tris = np.full((cap, 3), -1, dtype=np.int32)
    neigh = np.full((cap, 3), -1, dtype=np.int32)
    free = np.empty(cap, dtype=np.int32)
    n_free = 0
    # scratch for cavity search and retriangulation
    stack = np.empty(cap, dtype=np.int32)
    bad = np.empty(cap, dtype=np.int32)
    in_cavity = np.zeros(cap, dtype=np.uint8)
    bnd_u = np.empty(cap, dtype=np.int32)
    bnd_v = np.empty(cap, dtype=np.int32)
    bnd_out = np.empty(cap, dtype=np.int32)
    new_tri = np.empty(cap, dtype=np.int32)

    # First triangle from the first non-collinear triple in insertion order.
    a = order[0]
    b = order[1]
    c = -1
    third = 2
    s = 0
    while third < n:
        c = order[third]
        s = _orient(pts[a, 0], pts[a, 1], pts[b, 0], pts[b, 1],
                    pts[c, 0], pts[c, 1])
        if s == -2:
            return tris, neigh, 0, STATUS_UNCERTAIN
        if s != 0:
            break
        third += 1
    if third >= n or s == 0:
        return tris, neigh, 0, STATUS_UNCERTAIN
    third_point = c
    if s < 0:
        b, c = c, b
    tris[0, 0] = a
    tris[0, 1] = b
    tris[0, 2] = c
    # ghosts across edges (b,c), (c,a), (a,b)
    tris[1, 0] = c
    tris[1, 1] = b
    tris[1, 2] = inf
    tris[2, 0] = a
    tris[2, 1] = c
    tris[2, 2] = inf
    tris[3, 0] = b
    tris[3, 1] = a
    tris[3, 2] = inf
    neigh[0, 0] = 1
    neigh[0, 1] = 2
    neigh[0, 2] = 3
    # ghost (c,b,inf): edge opposite c is (b,inf) shared with ghost of edge
    # (a,b); edge opposite b is (inf,c) shared with ghost of (c,a); edge
    # opposite inf is (c,b) shared with the real triangle.
    neigh[1, 0] = 3
    neigh[1, 1] = 2
    neigh[1, 2] = 0
    neigh[2, 0] = 1
    neigh[2, 1] = 3
    neigh[2, 2] = 0
    neigh[3, 0] = 2
    neigh[3, 1] = 1
    neigh[3, 2] = 0
    n_tris = 4
    last = 0

    for idx in range(2, n):
        p = order[idx]
        if p == third_point and idx == third:
            continue
        if idx < third:
            continue
        px = pts[p, 0]
        py = pts[p, 1]

        # -- locate: walk from the last created triangle ------------------
        t = last
        guard = 0
        max_guard = 4 * n_tris + 64
        while True:
            guard += 1
            if guard > max_guard:
                return tris, neigh, n_tris, STATUS_UNCERTAIN
            v0 = tris[t, 0]
            v1 = tris[t, 1]
            v2 = tris[t, 2]
            if v0 == inf or v1 == inf or v2 == inf:
                # ghost: in its region iff left of the reversed hull edge
                if v0 == inf:
                    x, y = v1, v2
                elif v1 == inf:
                    x, y = v2, v0
                else:
                    x, y = v0, v1
                s = _orient(pts[x, 0], pts[x, 1], pts[y, 0], pts[y, 1], px, py)
                if s == -2 or s == 0:
                    return tris, neigh, n_tris, STATUS_UNCERTAIN
                if s > 0:
                    break  # p lies in this ghost's outer wedge
                # step back inside across the finite edge
                if v0 == inf:
                    t = neigh[t, 0]
                elif v1 == inf:
                    t = neigh[t, 1]
                else:
                    t = neigh[t, 2]
                continue
            moved = False
            for j in range(3):
                u = tris[t, (j + 1) % 3]
                w = tris[t, (j + 2) % 3]
                s = _orient(pts[u, 0], pts[u, 1], pts[w, 0], pts[w, 1], px, py)
                if s == -2 or s == 0:
                    return tris, neigh, n_tris, STATUS_UNCERTAIN
                if s < 0:
                    t = neigh[t, j]
                    moved = True
                    break
            if not moved:
                break  # t strictly contains p

        # -- cavity: all triangles whose circle contains p ----------------
        n_bad = 0
        n_stack = 0
        stack[n_stack] = t
        n_stack += 1
        in_cavity[t] = 1
        while n_stack > 0:
            n_stack -= 1
            q = stack[n_stack]
            bad[n_bad] = q
            n_bad += 1
            for j in range(3):
                nb = neigh[q, j]
                if nb < 0 or in_cavity[nb]:
                    continue
                w0 = tris[nb, 0]
                w1 = tris[nb, 1]
                w2 = tris[nb, 2]
                if w0 == inf or w1 == inf or w2 == inf:
                    if w0 == inf:
                        x, y = w1, w2
                    elif w1 == inf:
                        x, y = w2, w0
                    else:
                        x, y = w0, w1
                    s = _orient(pts[x, 0], pts[x, 1], pts[y, 0], pts[y, 1],
                                px, py)
                else:
                    s = _incircle(pts[w0, 0], pts[w0, 1], pts[w1, 0],
                                  pts[w1, 1], pts[w2, 0], pts[w2, 1], px, py)
                if s == -2:
                    for m in range(n_bad):
                        in_cavity[bad[m]] = 0
                    for m in range(n_stack):
                        in_cavity[stack[m]] = 0
                    return tris, neigh, n_tris, STATUS_UNCERTAIN
                if s > 0:
                    in_cavity[nb] = 1
                    stack[n_stack] = nb
                    n_stack += 1

        # -- boundary edges, CCW around the cavity ------------------------
        n_bnd = 0
        for m in range(n_bad):
            q = bad[m]
            for j in range(3):
                nb = neigh[q, j]
                if nb >= 0 and in_cavity[nb]:
                    continue
                bnd_u[n_bnd] = tris[q, (j + 1) % 3]
                bnd_v[n_bnd] = tris[q, (j + 2) % 3]
                bnd_out[n_bnd] = nb
                n_bnd += 1

        # -- retriangulate: fan of (u, v, p) over boundary edges ----------
        for m in range(n_bad):
            q = bad[m]
            tris[q, 0] = -1
            in_cavity[q] = 0
            free[n_free] = q
            n_free += 1
        for m in range(n_bnd):
            if n_free > 0:
                n_free -= 1
                slot = free[n_free]
            else:
                if n_tris >= cap:
                    return tris, neigh, n_tris, STATUS_OVERFLOW
                slot = n_tris
                n_tris += 1
            tris[slot, 0] = bnd_u[m]
            tris[slot, 1] = bnd_v[m]
            tris[slot, 2] = p
            new_tri[m] = slot
        for m in range(n_bnd):
            slot = new_tri[m]
            out = bnd_out[m]
            neigh[slot, 2] = out
            if out >= 0:
                # relink the outer triangle: it sees the edge reversed
                for j in range(3):
                    if (tris[out, (j + 1) % 3] == bnd_v[m]
                            and tris[out, (j + 2) % 3] == bnd_u[m]):
                        neigh[out, j] = slot
                        break
            # new neighbors around p: triangle whose boundary edge starts
            # at this edge's end shares edge (v, p); symmetric for (p, u)
            for m2 in range(n_bnd):
                if bnd_u[m2] == bnd_v[m]:
                    neigh[slot, 0] = new_tri[m2]  # across (v, p)
                if bnd_v[m2] == bnd_u[m]:
                    neigh[slot, 1] = new_tri[m2]  # across (p, u)
            last = slot

    return tris, neigh, n_tris, STATUS_OK


@njit(cache=True)
def _triangle_births(pts, tris, band):
    """Per-triangle birth scale: circumradius if acute, 0 otherwise.

    Triangles within the relative band of a right angle are marked NaN so
    the caller can re-decide them with exact arithmetic.
    """
    k = len(tris)
    births = np.empty(k, dtype=np.float64)
    for t in range(k):
        ax = pts[tris[t, 0], 0]
        ay = pts[tris[t, 0], 1]
        bx = pts[tris[t, 1], 0]
        by = pts[tris[t, 1], 1]
        cx = pts[tris[t, 2], 0]
        cy = pts[tris[t, 2], 1]
        ab = (bx - ax) ** 2 + (by - ay) ** 2
        bc = (cx - bx) ** 2 + (cy - by) ** 2
        ca = (ax - cx) ** 2 + (ay - cy) ** 2
        total = ab + bc + ca
        longest = max(ab, bc, ca)
        gap = total - 2.0 * longest
        if abs(gap) <= band * total:
            births[t] = np.nan
        elif gap <= 0.0:
            births[t] = 0.0
        else:
            cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            radius = np.sqrt(ab * bc * ca) / (2.0 * abs(cross))
            # an acute circumradius is at least half the longest edge; the
            # rounded quotient may dip just below, which would flip the
            # order of this death against its own edge's scale
            half_longest = 0.5 * np.sqrt(longest)
            births[t] = radius if radius > half_longest else half_longest
    return births


@njit(cache=True)
def _edge_table(pts, tris, neigh):
    """Flat edge table of a compact triangulation, no temporaries.

    One row per undirected edge, contributed by the incident triangle with
    the smaller id (hull edges by their only triangle, second face -1).
    Returns canonical endpoint pairs, face pairs, and squared lengths.
    """
    k = len(tris)
    count = 0
    for t in range(k):
        for j in range(3):
            nb = neigh[t, j]
            if nb < 0 or nb > t:
                count += 1
    edge_vertices = np.empty((count, 2), dtype=np.int32)
    edge_faces = np.empty((count, 2), dtype=np.int32)
    length_sq = np.empty(count, dtype=np.float64)
    e = 0
    for t in range(k):
        for j in range(3):
            nb = neigh[t, j]
            if nb >= 0 and nb <= t:
                continue
            u = tris[t, (j + 1) % 3]
            v = tris[t, (j + 2) % 3]
            if u > v:
                u, v = v, u
            edge_vertices[e, 0] = u
            edge_vertices[e, 1] = v
            edge_faces[e, 0] = t
            edge_faces[e, 1] = nb if nb >= 0 else -1
            dx = pts[v, 0] - pts[u, 0]
            dy = pts[v, 1] - pts[u, 1]
            length_sq[e] = dx * dx + dy * dy
            e += 1
    return edge_vertices, edge_faces, length_sq


@njit(cache=True)
def _sweep_arrays(order, edge_faces, edge_length_sq, parent, weight, birth,
                  k, track_depth):
    """Descending sweep over edges in the given order, array union-find.

    Mirrors the list-based sweep in forest.py: union by weight, no path
    compression, elder rule on white merges.  Returns the emitted pairs,
    the link count, and the deepest root walk seen (when tracked).
    Face id -1 (the unbounded region) maps to node k.
    """
    pairs = np.empty((k + 1, 2), dtype=np.float64)
    n_pairs = 0
    links = 0
    max_steps = 0
    for i in range(len(order)):
        if links >= k:
            break
        e = order[i]
        u = edge_faces[e, 0]
        v = edge_faces[e, 1]
        if u < 0:
            u = k
        if v < 0:
            v = k
        alpha = 0.5 * np.sqrt(edge_length_sq[e])
        steps = 0
        r = u
        while parent[r] != r:
            r = parent[r]
            steps += 1
        if track_depth and steps > max_steps:
            max_steps = steps
        steps = 0
        s = v
        while parent[s] != s:
            s = parent[s]
            steps += 1
        if track_depth and steps > max_steps:
            max_steps = steps
        if r == s:
            continue
        bu = birth[r]
        bv = birth[s]
        if bu == 0.0:
            if bv == 0.0:
                parent[s] = r
                birth[r] = alpha
                birth[s] = alpha
                weight[r] = 1
            else:
                parent[r] = s
                birth[r] = bv
                weight[s] += 1
        elif bv == 0.0:
            parent[s] = r
            birth[s] = bu
            weight[r] += 1
        else:
            pairs[n_pairs, 0] = alpha
            pairs[n_pairs, 1] = bu if bu < bv else bv
            n_pairs += 1
            if weight[r] > weight[s]:
                parent[s] = r
                weight[r] += weight[s] + 1
                birth[r] = bu if bu > bv else bv
            else:
                parent[r] = s
                weight[s] += weight[r] + 1
                birth[s] = bu if bu > bv else bv
        links += 1
    return pairs[:n_pairs], links, max_steps


def build_triangulation(points: np.ndarray):
    """Triangulate; returns (simplices, neighbors) like the Qhull wrapper,
    or None when a predicate could not be certified in floating point."""
    if not HAVE_NUMBA or len(points) < 3:
        return None
    order = morton_argsort(points).astype(np.int64)
    tris, neigh, n_tris, status = _build(points, order)
    if status != STATUS_OK:
        return None
    n = len(points)
    tris = tris[:n_tris]
    neigh = neigh[:n_tris]
    alive = tris[:, 0] >= 0
    real = alive & (tris != n).all(axis=1)
    remap = np.full(n_tris + 1, -1, dtype=np.int32)
    ids = np.flatnonzero(real).astype(np.int32)
    remap[ids] = np.arange(len(ids), dtype=np.int32)
    simplices = tris[real]
    neighbors = remap[neigh[real]]
    return simplices, neighbors

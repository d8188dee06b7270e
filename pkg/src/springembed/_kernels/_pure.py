"""Pure NumPy implementations of the hot kernels.

This module is the fallback twin of the compiled ``_core`` extension. Both
twins implement the same algorithms with the same arithmetic expressions in
the same order, so they produce bit-identical outputs; the test suite
compares them directly. Keep any change synchronized with ``_core.pyx``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

# Relative threshold for treating an orientation/in-circle determinant as zero.
EPS = 1e-12


def _circumcircle(ax, ay, bx, by, cx, cy):
    """Circumcenter and squared radius of triangle abc (relative to a)."""
    bxr = bx - ax
    byr = by - ay
    cxr = cx - ax
    cyr = cy - ay
    d = 2.0 * (bxr * cyr - byr * cxr)
    if d == 0.0:
        return None
    b2 = bxr * bxr + byr * byr
    c2 = cxr * cxr + cyr * cyr
    ux = (cyr * b2 - byr * c2) / d
    uy = (bxr * c2 - cxr * b2) / d
    return ax + ux, ay + uy, ux * ux + uy * uy


def triangulate(points):
    """Delaunay triangulation by incremental cavity insertion.

    Points are inserted in input order into a triangulation that keeps one
    implicit vertex at infinity (index -1): every hull edge (a, b), interior
    on its left, carries an infinite triangle (-1, a, b) whose "circumdisk"
    is the open half-plane right of a->b. Cocircular ties resolve as
    "outside" (strict in-circle test), which with in-order insertion keeps
    the lowest-index diagonal.

    Returns (triangles, hull): int32 arrays of CCW vertex triples and the
    CCW hull cycle starting at its smallest vertex.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    n = len(pts)
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    px, py = pts[:, 0], pts[:, 1]

    i0 = 0
    i1 = -1
    for i in range(1, n):
        if px[i] != px[i0] or py[i] != py[i0]:
            i1 = i
            break
    if i1 < 0:
        raise ValueError("all points coincide")
    i2 = -1
    for i in range(i1 + 1, n):
        d = (px[i1] - px[i0]) * (py[i] - py[i0]) - (py[i1] - py[i0]) * (px[i] - px[i0])
        if d != 0.0:
            i2 = i
            orient = d
            break
    if i2 < 0:
        raise ValueError("all points are collinear")
    if orient < 0.0:
        i1, i2 = i2, i1

    cap = 8 * n + 16
    tri = np.empty((cap, 3), dtype=np.int64)
    ccx = np.empty(cap)
    ccy = np.empty(cap)
    cr2 = np.empty(cap)
    alive = np.zeros(cap, dtype=bool)
    count = 0

    def add_finite(a, b, c):
        nonlocal count, cap, tri, ccx, ccy, cr2, alive
        if count == cap:
            cap *= 2
            tri = np.resize(tri, (cap, 3))
            ccx = np.resize(ccx, cap)
            ccy = np.resize(ccy, cap)
            cr2 = np.resize(cr2, cap)
            alive = np.resize(alive, cap)
        circ = _circumcircle(px[a], py[a], px[b], py[b], px[c], py[c])
        if circ is None:
            raise ValueError(f"degenerate (collinear) triangle ({a}, {b}, {c})")
        tri[count] = (a, b, c)
        ccx[count], ccy[count], cr2[count] = circ
        alive[count] = True
        count += 1

    # Infinite triangles as rows [a, b, alive] for hull edge a->b.
    inf_tri = []

    add_finite(i0, i1, i2)
    inf_tri.append([i1, i0, 1])
    inf_tri.append([i2, i1, 1])
    inf_tri.append([i0, i2, 1])

    skip = (i0, i1, i2)
    for p in range(n):
        if p in skip:
            continue
        x, y = px[p], py[p]

        dx = x - ccx[:count]
        dy = y - ccy[:count]
        bad_mask = alive[:count] & (dx * dx + dy * dy < cr2[:count] * (1.0 - EPS))
        bad_finite = np.flatnonzero(bad_mask)

        bad_inf = []
        for idx, rec in enumerate(inf_tri):
            if not rec[2]:
                continue
            a, b = rec[0], rec[1]
            d = (px[b] - px[a]) * (y - py[a]) - (py[b] - py[a]) * (x - px[a])
            if d < 0.0:
                bad_inf.append(idx)

        if len(bad_finite) == 0 and len(bad_inf) == 0:
            raise ValueError(f"cannot insert point {p}: duplicate or degenerate input")

        edges = []
        for t in bad_finite:
            a, b, c = tri[t]
            edges.append((int(a), int(b)))
            edges.append((int(b), int(c)))
            edges.append((int(c), int(a)))
            alive[t] = False
        for idx in bad_inf:
            a, b, _ = inf_tri[idx]
            edges.append((-1, a))
            edges.append((a, b))
            edges.append((b, -1))
            inf_tri[idx][2] = 0

        edge_set = set(edges)
        for u, v in edges:
            if (v, u) in edge_set:
                continue
            if u == -1:
                inf_tri.append([v, p, 1])
            elif v == -1:
                inf_tri.append([p, u, 1])
            else:
                add_finite(u, v, p)

    out = np.ascontiguousarray(tri[:count][alive[:count]], dtype=np.int32)

    succ = {}
    for a, b, ok in inf_tri:
        if ok:
            succ[a] = b
    if not succ:
        raise ValueError("empty hull")
    start = min(succ)
    hull = [start]
    v = succ[start]
    while v != start:
        hull.append(v)
        v = succ[v]
        if len(hull) > len(succ):
            raise ValueError("hull chain does not close")
    return out, np.array(hull, dtype=np.int32)


def _sign(d, scale):
    return (d > EPS * scale) * 1 + (d < -EPS * scale) * -1


def _pair_cross_arrays(ax, ay, bx, by, cx, cy, dx, dy):
    """Vectorized open-segment intersection (proper or collinear-overlap)."""
    t1 = (dx - cx) * (ay - cy)
    t2 = (dy - cy) * (ax - cx)
    s1 = _sign(t1 - t2, np.abs(t1) + np.abs(t2))
    t1 = (dx - cx) * (by - cy)
    t2 = (dy - cy) * (bx - cx)
    s2 = _sign(t1 - t2, np.abs(t1) + np.abs(t2))
    t1 = (bx - ax) * (cy - ay)
    t2 = (by - ay) * (cx - ax)
    s3 = _sign(t1 - t2, np.abs(t1) + np.abs(t2))
    t1 = (bx - ax) * (dy - ay)
    t2 = (by - ay) * (dx - ax)
    s4 = _sign(t1 - t2, np.abs(t1) + np.abs(t2))

    nondegenerate = ((ax != bx) | (ay != by)) & ((cx != dx) | (cy != dy))
    proper = (s1 * s2 == -1) & (s3 * s4 == -1)

    collinear = (s1 == 0) & (s2 == 0) & (s3 == 0) & (s4 == 0)
    use_x = np.abs(bx - ax) >= np.abs(by - ay)
    a1 = np.where(use_x, ax, ay)
    b1 = np.where(use_x, bx, by)
    c1 = np.where(use_x, cx, cy)
    d1 = np.where(use_x, dx, dy)
    lo1 = np.minimum(a1, b1)
    hi1 = np.maximum(a1, b1)
    lo2 = np.minimum(c1, d1)
    hi2 = np.maximum(c1, d1)
    overlap = np.minimum(hi1, hi2) - np.maximum(lo1, lo2) > 0.0

    return nondegenerate & (proper | (collinear & overlap))


def _count_pairs(coords, edges, ii, jj):
    e = np.asarray(edges, dtype=np.int64)
    u1, v1 = e[ii, 0], e[ii, 1]
    u2, v2 = e[jj, 0], e[jj, 1]
    distinct = (u1 != u2) & (u1 != v2) & (v1 != u2) & (v1 != v2)
    if not distinct.any():
        return 0
    c = np.asarray(coords, dtype=np.float64)
    a = c[u1[distinct]]
    b = c[v1[distinct]]
    cc = c[u2[distinct]]
    d = c[v2[distinct]]
    hits = _pair_cross_arrays(
        a[:, 0], a[:, 1], b[:, 0], b[:, 1], cc[:, 0], cc[:, 1], d[:, 0], d[:, 1]
    )
    return int(hits.sum())


def crossing_count_brute(coords, edges):
    """Number of non-adjacent edge pairs whose open segments intersect."""
    m = len(edges)
    if m < 2:
        return 0
    ii, jj = np.triu_indices(m, k=1)
    return _count_pairs(coords, edges, ii, jj)


def crossing_count_pairs(coords, edges, pairs):
    """Crossing count restricted to the given candidate edge-index pairs."""
    pairs = np.asarray(pairs, dtype=np.int64)
    if len(pairs) == 0:
        return 0
    return _count_pairs(coords, edges, pairs[:, 0], pairs[:, 1])

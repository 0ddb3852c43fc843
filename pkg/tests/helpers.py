"""Shared curve generators and independent reference computations for tests."""
import math

import numpy as np

from progsimp.geometry import Curve, collapse_duplicates

Z_POINTS = [(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)]
L_POINTS = [(0, 0), (1, 0), (2, 0), (3, 0)]


def random_curve(rng, n, kind="walk"):
    """A curve with at least two vertices; degenerate kinds exercise ties."""
    while True:
        if kind == "walk":
            xy = np.cumsum(rng.normal(size=(n, 2)), axis=0)
        elif kind == "uniform":
            xy = rng.uniform(-1, 1, size=(n, 2))
        elif kind == "grid":
            xy = rng.integers(0, 4, size=(n, 2)).astype(float)
        elif kind == "collinear":
            xy = np.c_[rng.integers(0, 6, n), np.zeros(n)].astype(float)
        else:
            raise ValueError(kind)
        xy, _ = collapse_duplicates(xy)
        if len(xy) >= 2:
            return Curve(xy)


def seg_dist_ref(p, a, b):
    """Distance to a closed segment via the clamped projection parameter."""
    p, a, b = (np.asarray(v, dtype=float) for v in (p, a, b))
    v = b - a
    vv = float(v @ v)
    t = 0.0 if vv == 0 else min(1.0, max(0.0, float((p - a) @ v) / vv))
    return float(np.hypot(*(p - (a + t * v))))


def hausdorff_ref(xy, i, j):
    return max((seg_dist_ref(xy[k], xy[i], xy[j]) for k in range(i + 1, j)), default=0.0)


def convex_hull_ref(points):
    """Andrew's monotone chain; returns (upper, lower) as lists of point tuples
    from left to right, strictly convex."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 1:
        return pts, pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in pts:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        upper.append(p)
    return upper, lower


def discrete_frechet(P, Q):
    """Discrete Frechet distance between two point sequences (Eiter-Mannila)."""
    n, m = len(P), len(Q)
    d = np.hypot(P[:, None, 0] - Q[None, :, 0], P[:, None, 1] - Q[None, :, 1])
    ca = np.full((n, m), math.inf)
    for a in range(n):
        for b in range(m):
            if a == 0 and b == 0:
                prev = 0.0
            else:
                prev = min(ca[a - 1, b] if a else math.inf,
                           ca[a, b - 1] if b else math.inf,
                           ca[a - 1, b - 1] if a and b else math.inf)
            ca[a, b] = max(prev, d[a, b])
    return float(ca[-1, -1])


def resample(poly, step):
    """Points along a polyline at spacing <= step, vertices included."""
    out = [poly[0]]
    for a, b in zip(poly, poly[1:]):
        k = max(1, int(math.ceil(np.hypot(*(b - a)) / step)))
        for t in range(1, k + 1):
            out.append(a + (b - a) * t / k)
    return np.array(out)


def random_interval_rows(rng, n, p):
    """Random successor lists containing every adjacent edge."""
    rows = []
    for i in range(n):
        succ = [i + 1] if i + 1 < n else []
        if i + 2 < n:
            extra = np.flatnonzero(rng.random(n - i - 2) < p) + i + 2
            succ += extra.tolist()
        rows.append(succ)
    return rows

"""Incremental convex hull with farthest-point annotations.

The hull of ``p_a, p_{a+1}, ..`` (anchor ``p_a``) is kept as an upper and a
lower chain.  Each chain lives in a balanced binary tree over the curve's
points ordered by ``(x, y, index)``; a leaf is switched on while its point is
a chain vertex.  Every tree node is annotated with

* ``lo`` / ``hi``: first and last chain vertex in its subtree,
* ``far``: the chain vertex in its subtree farthest from the anchor.

The key universe is fixed per curve, so the tree shape never changes and all
updates are a leaf toggle plus an O(log n) walk to the root.  Chain
neighbours are additionally threaded through ``prv`` / ``nxt``.

Array layout per chain: ``lo, hi, far`` have length ``2 * size`` (node 1 is
the root, leaf of rank ``r`` is ``size + r``); ``prv, nxt`` have length
``size``.  All ranks index the sorted coordinate arrays ``X, Y`` and ``IDX``
maps a rank back to its curve index.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .geometry import seg_dist

UPPER = 1.0
LOWER = -1.0


def sorted_universe(xy: np.ndarray):
    """Rank the points by ``(x, y, index)``; returns ``X, Y, IDX, rank_of, size``."""
    n = len(xy)
    order = np.lexsort((np.arange(n), xy[:, 1], xy[:, 0]))
    X = np.ascontiguousarray(xy[order, 0])
    Y = np.ascontiguousarray(xy[order, 1])
    IDX = order.astype(np.int64)
    rank_of = np.empty(n, dtype=np.int64)
    rank_of[order] = np.arange(n)
    size = 1
    while size < n:
        size *= 2
    return X, Y, IDX, rank_of, size


@njit(cache=True)
def new_chain(size):
    lo = np.full(2 * size, -1, dtype=np.int64)
    hi = np.full(2 * size, -1, dtype=np.int64)
    far = np.full(2 * size, -1, dtype=np.int64)
    prv = np.full(size, -1, dtype=np.int64)
    nxt = np.full(size, -1, dtype=np.int64)
    return lo, hi, far, prv, nxt


@njit(cache=True)
def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit(cache=True)
def _farther(X, Y, IDX, a, b, ax, ay):
    if a < 0:
        return b
    if b < 0:
        return a
    dxa = X[a] - ax
    dya = Y[a] - ay
    dxb = X[b] - ax
    dyb = Y[b] - ay
    da = dxa * dxa + dya * dya
    db = dxb * dxb + dyb * dyb
    if da > db:
        return a
    if db > da:
        return b
    return a if IDX[a] < IDX[b] else b


@njit(cache=True)
def _toggle(lo, hi, far, size, r, on, X, Y, IDX, ax, ay):
    v = size + r
    if on:
        lo[v] = r
        hi[v] = r
        far[v] = r
    else:
        lo[v] = -1
        hi[v] = -1
        far[v] = -1
    v >>= 1
    while v >= 1:
        a = 2 * v
        b = a + 1
        lo[v] = lo[a] if lo[a] >= 0 else lo[b]
        hi[v] = hi[b] if hi[b] >= 0 else hi[a]
        far[v] = _farther(X, Y, IDX, far[a], far[b], ax, ay)
        v >>= 1


@njit(cache=True)
def _pred(hi, size, r):
    v = size + r
    while v > 1:
        if v & 1 and hi[v - 1] >= 0:
            return hi[v - 1]
        v >>= 1
    return -1


@njit(cache=True)
def _succ(lo, size, r):
    v = size + r
    while v > 1:
        if not v & 1 and lo[v + 1] >= 0:
            return lo[v + 1]
        v >>= 1
    return -1


@njit(cache=True)
def chain_insert(lo, hi, far, prv, nxt, size, r, side, X, Y, IDX, ax, ay):
    """Insert rank ``r`` into the chain on ``side`` (UPPER or LOWER).

    Returns False when the point lies on or inside the chain.  Vertices that
    stop being strictly convex are evicted; each is evicted at most once per
    anchor, which makes insertion amortised O(log n).
    """
    px = X[r]
    py = Y[r]
    a = _pred(hi, size, r)
    b = _succ(lo, size, r)
    if a >= 0 and b >= 0:
        if side * _cross(X[a], Y[a], X[b], Y[b], px, py) <= 0.0:
            return False
    while a >= 0:
        a2 = prv[a]
        if a2 < 0 or side * _cross(X[a2], Y[a2], px, py, X[a], Y[a]) > 0.0:
            break
        _toggle(lo, hi, far, size, a, False, X, Y, IDX, ax, ay)
        prv[a] = -1
        nxt[a] = -1
        a = a2
    while b >= 0:
        b2 = nxt[b]
        if b2 < 0 or side * _cross(px, py, X[b2], Y[b2], X[b], Y[b]) > 0.0:
            break
        _toggle(lo, hi, far, size, b, False, X, Y, IDX, ax, ay)
        prv[b] = -1
        nxt[b] = -1
        b = b2
    _toggle(lo, hi, far, size, r, True, X, Y, IDX, ax, ay)
    prv[r] = a
    nxt[r] = b
    if a >= 0:
        nxt[a] = r
    if b >= 0:
        prv[b] = r
    return True


@njit(cache=True)
def chain_argmax(lo, hi, size, X, Y, dx, dy):
    """Chain vertex maximising ``q . (dx, dy)``; -1 for an empty chain.

    Along a convex chain the projection is unimodal, so the descent follows
    the rising side at each node; both chain ends are checked as well, which
    covers the valley-shaped and monotone cases.
    """
    if lo[1] < 0:
        return -1
    v = 1
    while v < size:
        a = 2 * v
        b = a + 1
        if lo[a] < 0:
            v = b
        elif lo[b] < 0:
            v = a
        else:
            l = hi[a]
            r = lo[b]
            if X[r] * dx + Y[r] * dy > X[l] * dx + Y[l] * dy:
                v = b
            else:
                v = a
    best = v - size
    fb = X[best] * dx + Y[best] * dy
    for c in (lo[1], hi[1]):
        fc = X[c] * dx + Y[c] * dy
        if fc > fb:
            best = c
            fb = fc
    return best


@njit(cache=True)
def chain_region_far(lo, hi, far, size, X, Y, IDX, ax, ay, dx, dy, peak, valley):
    """Farthest-from-anchor chain vertex ``q`` with ``(q - anchor) . d < 0``.

    ``peak`` / ``valley`` are the chain's arg-max / arg-min of the projection
    on ``d``.  A subtree spans a contiguous arc ``lo..hi``; the projection
    over that arc is bounded by its two ends plus whichever extreme falls
    inside it.  Whole arcs inside the half-plane contribute their annotation,
    arcs straddling its boundary are split, arcs outside are dropped.  The
    extreme-in-arc checks cover the configurations where both arc ends lie on
    one side while the middle of the arc crosses over.
    """
    best = -1
    if lo[1] < 0:
        return best
    gp = (X[peak] - ax) * dx + (Y[peak] - ay) * dy
    gv = (X[valley] - ax) * dx + (Y[valley] - ay) * dy
    stack = np.empty(128, dtype=np.int64)
    top = 0
    stack[top] = 1
    top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        a = lo[v]
        if a < 0:
            continue
        b = hi[v]
        ga = (X[a] - ax) * dx + (Y[a] - ay) * dy
        gb = (X[b] - ax) * dx + (Y[b] - ay) * dy
        gmax = max(ga, gb)
        gmin = min(ga, gb)
        if a <= peak <= b and gp > gmax:
            gmax = gp
        if a <= valley <= b and gv < gmin:
            gmin = gv
        if gmax < 0.0:
            best = _farther(X, Y, IDX, best, far[v], ax, ay)
        elif gmin < 0.0 and v < size:
            stack[top] = 2 * v
            stack[top + 1] = 2 * v + 1
            top += 2
    return best


@njit(cache=True)
def _extreme_dist(ulo, uhi, llo, lhi, size, X, Y, ax, ay, bx, by, nx, ny):
    best = 0.0
    for lo, hi in ((ulo, uhi), (llo, lhi)):
        for s in (1.0, -1.0):
            c = chain_argmax(lo, hi, size, X, Y, s * nx, s * ny)
            if c >= 0:
                d = seg_dist(X[c], Y[c], ax, ay, bx, by)
                if d > best:
                    best = d
    return best


@njit(cache=True)
def _region_dist(ulo, uhi, ufar, llo, lhi, lfar, size, X, Y, IDX, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    best = 0.0
    if dx == 0.0 and dy == 0.0:
        # closed shortcut: every vertex is measured against the anchor
        for c in (ufar[1], lfar[1]):
            if c >= 0:
                d = seg_dist(X[c], Y[c], ax, ay, bx, by)
                if d > best:
                    best = d
        return best
    for lo, hi, far in ((ulo, uhi, ufar), (llo, lhi, lfar)):
        peak = chain_argmax(lo, hi, size, X, Y, dx, dy)
        valley = chain_argmax(lo, hi, size, X, Y, -dx, -dy)
        c = chain_region_far(lo, hi, far, size, X, Y, IDX, ax, ay, dx, dy, peak, valley)
        if c >= 0:
            d = seg_dist(X[c], Y[c], ax, ay, bx, by)
            if d > best:
                best = d
    return best


@njit(cache=True)
def tri_index(n, i, j):
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@njit(cache=True)
def anchor_sweep(px, py, X, Y, IDX, rank_of, size, anchor, with_extremes, mirrored, out):
    """One anchor's pass: insert ``p_{anchor+1} ..`` and record candidates.

    With ``with_extremes`` the perpendicular extremes (regions T and B) are
    evaluated together with region L; otherwise only region L.  ``mirrored``
    means the arrays describe the reversed curve and results are written to
    the transposed cell of the original triangle.
    """
    n = px.shape[0]
    ax = px[anchor]
    ay = py[anchor]
    ulo, uhi, ufar, uprv, unxt = new_chain(size)
    llo, lhi, lfar, lprv, lnxt = new_chain(size)
    r0 = rank_of[anchor]
    chain_insert(ulo, uhi, ufar, uprv, unxt, size, r0, UPPER, X, Y, IDX, ax, ay)
    chain_insert(llo, lhi, lfar, lprv, lnxt, size, r0, LOWER, X, Y, IDX, ax, ay)
    for j in range(anchor + 1, n):
        r = rank_of[j]
        chain_insert(ulo, uhi, ufar, uprv, unxt, size, r, UPPER, X, Y, IDX, ax, ay)
        chain_insert(llo, lhi, lfar, lprv, lnxt, size, r, LOWER, X, Y, IDX, ax, ay)
        bx = px[j]
        by = py[j]
        best = _region_dist(ulo, uhi, ufar, llo, lhi, lfar, size, X, Y, IDX, ax, ay, bx, by)
        if with_extremes:
            d = _extreme_dist(ulo, uhi, llo, lhi, size, X, Y, ax, ay, bx, by,
                              -(by - ay), bx - ax)
            if d > best:
                best = d
        if mirrored:
            out[tri_index(n, n - 1 - j, n - 1 - anchor)] = best
        else:
            out[tri_index(n, anchor, j)] = best


@njit(cache=True)
def sweep_all(px, py, X, Y, IDX, rank_of, size, with_extremes, mirrored, out):
    for a in range(px.shape[0] - 1):
        anchor_sweep(px, py, X, Y, IDX, rank_of, size, a, with_extremes, mirrored, out)


class AnnotatedHull:
    """Python handle on the hull of one anchor, for inspection and tests.

    ``points`` fixes the key universe; vertices are inserted by index.  The
    anchor (``points[anchor]``) is inserted on construction.
    """

    def __init__(self, points, anchor: int = 0):
        self.xy = np.ascontiguousarray(np.asarray(points, dtype=np.float64).reshape(-1, 2))
        self.X, self.Y, self.IDX, self.rank_of, self.size = sorted_universe(self.xy)
        self.anchor = anchor
        self.ax, self.ay = float(self.xy[anchor, 0]), float(self.xy[anchor, 1])
        self.upper = new_chain(self.size)
        self.lower = new_chain(self.size)
        self.inserted: list[int] = []
        self.insert(anchor)

    def insert(self, k: int) -> "AnnotatedHull":
        r = self.rank_of[k]
        for chain, side in ((self.upper, UPPER), (self.lower, LOWER)):
            chain_insert(*chain, self.size, r, side, self.X, self.Y, self.IDX, self.ax, self.ay)
        self.inserted.append(k)
        return self

    def _walk(self, chain) -> list[int]:
        lo, _, _, _, nxt = chain
        out = []
        r = lo[1]
        while r >= 0:
            out.append(int(self.IDX[r]))
            r = nxt[r]
        return out

    def upper_chain(self) -> list[int]:
        """Curve indices of the upper chain, left to right."""
        return self._walk(self.upper)

    def lower_chain(self) -> list[int]:
        return self._walk(self.lower)

    def vertices(self) -> set[int]:
        return set(self.upper_chain()) | set(self.lower_chain())

    def root_annotation(self, which: str = "upper") -> int | None:
        far = (self.upper if which == "upper" else self.lower)[2]
        return None if far[1] < 0 else int(self.IDX[far[1]])

    def extreme(self, direction) -> int:
        """Hull vertex maximising the dot product with ``direction``.

        Ties go to the smallest curve index.
        """
        dx, dy = float(direction[0]), float(direction[1])
        cands = []
        for lo, hi, _, prv, nxt in (self.upper, self.lower):
            c = chain_argmax(lo, hi, self.size, self.X, self.Y, dx, dy)
            if c < 0:
                continue
            cands += [c, lo[1], hi[1]]
            cands += [r for r in (prv[c], nxt[c]) if r >= 0]
        val = {r: self.X[r] * dx + self.Y[r] * dy for r in cands}
        top = max(val.values())
        return min(int(self.IDX[r]) for r, f in val.items() if f == top)

    def farthest_in_region_left(self, target) -> int | None:
        """Farthest hull vertex from the anchor among those projecting before it.

        ``target`` is the far end of the query segment; the region is the open
        half-plane beyond the anchor, away from ``target``.
        """
        dx = float(target[0]) - self.ax
        dy = float(target[1]) - self.ay
        best = -1
        for lo, hi, far, _, _ in (self.upper, self.lower):
            peak = chain_argmax(lo, hi, self.size, self.X, self.Y, dx, dy)
            valley = chain_argmax(lo, hi, self.size, self.X, self.Y, -dx, -dy)
            c = chain_region_far(lo, hi, far, self.size, self.X, self.Y, self.IDX,
                                 self.ax, self.ay, dx, dy, peak, valley)
            best = _farther(self.X, self.Y, self.IDX, best, c, self.ax, self.ay)
        return None if best < 0 else int(self.IDX[best])

    def candidates(self, j: int) -> dict[str, int | None]:
        """Top, bottom and left candidates for the segment from the anchor to ``p_j``."""
        bx, by = self.xy[j]
        nx, ny = -(by - self.ay), bx - self.ax
        return {
            "top": self.extreme((nx, ny)),
            "bottom": self.extreme((-nx, -ny)),
            "left": self.farthest_in_region_left((bx, by)),
        }

    def check_annotations(self) -> None:
        """Assert every node annotation against a scan of its subtree."""
        for name, (lo, hi, far, _, _) in (("upper", self.upper), ("lower", self.lower)):
            for v in range(1, 2 * self.size):
                first = v
                last = v
                while first < self.size:
                    first, last = 2 * first, 2 * last + 1
                ranks = [r for r in range(first - self.size, last - self.size + 1)
                         if r < len(self.xy) and lo[self.size + r] >= 0]
                exp_lo = ranks[0] if ranks else -1
                exp_hi = ranks[-1] if ranks else -1
                exp_far = -1
                for r in ranks:
                    exp_far = _farther(self.X, self.Y, self.IDX, exp_far, r, self.ax, self.ay)
                if (lo[v], hi[v], far[v]) != (exp_lo, exp_hi, exp_far):
                    raise AssertionError(f"{name} node {v}: annotation mismatch")

"""Shortcut graphs G(C, eps) as per-vertex interval lists.

Row ``i`` of a :class:`ShortcutIntervalSet` lists the maximal runs
``[x, y]`` (inclusive, 0-based) of end vertices ``j`` for which ``(i, j)``
is a valid shortcut.  Storage is CSR-like: ``indptr`` of length ``n + 1``
and flat ``starts`` / ``ends`` arrays, so numba kernels can walk a row
without Python objects.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from .errors import ErrorMatrix
from .geometry import Curve, InputError, hausdorff_kernel


class ShortcutIntervalSet:
    """Compressed shortcut graph: sorted, disjoint, maximal intervals per row.

    ``mask`` (optional boolean array) marks the vertices whose rows were
    built; a masked-out vertex has an empty row.
    """

    def __init__(self, n: int, eps: float, indptr, starts, ends, mask=None, check: bool = True):
        self.n = int(n)
        self.eps = float(eps)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.starts = np.asarray(starts, dtype=np.int64)
        self.ends = np.asarray(ends, dtype=np.int64)
        self.mask = None if mask is None else np.asarray(mask, dtype=bool)
        if check:
            self.validate()

    @classmethod
    def from_lists(cls, n: int, eps: float, rows, mask=None) -> "ShortcutIntervalSet":
        rows = list(rows) + [[] for _ in range(n - len(rows))]
        if len(rows) != n:
            raise InputError(f"expected {n} rows, got {len(rows)}")
        indptr = np.zeros(n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(r) for r in rows])
        flat = [iv for r in rows for iv in r]
        starts = [int(x) for x, _ in flat]
        ends = [int(y) for _, y in flat]
        return cls(n, eps, indptr, starts, ends, mask)

    def validate(self) -> None:
        n = self.n
        if self.indptr.shape != (n + 1,) or self.indptr[0] != 0:
            raise InputError("malformed interval index")
        if np.any(np.diff(self.indptr) < 0) or self.indptr[-1] != len(self.starts):
            raise InputError("malformed interval index")
        if len(self.starts) != len(self.ends):
            raise InputError("starts and ends differ in length")
        if self.mask is not None and self.mask.shape != (n,):
            raise InputError("mask must have one entry per vertex")
        for i in range(n):
            prev_end = i
            for x, y in self.row(i):
                if not (prev_end < x <= y < n):
                    raise InputError(f"row {i}: interval [{x}, {y}] out of order or range")
                if x == prev_end + 1 and prev_end > i:
                    raise InputError(f"row {i}: intervals ending at {prev_end} and starting at {x} "
                                     "are not maximal")
                prev_end = y

    def check_adjacent(self) -> None:
        """Every built row must contain its adjacent shortcut ``(i, i+1)``."""
        for i in range(self.n - 1):
            if self.mask is not None and not self.mask[i]:
                continue
            if not self.contains(i, i + 1):
                raise InputError(f"vertex {i} lacks its adjacent shortcut")

    def row(self, i: int) -> list[tuple[int, int]]:
        a, b = self.indptr[i], self.indptr[i + 1]
        return [(int(x), int(y)) for x, y in zip(self.starts[a:b], self.ends[a:b])]

    @property
    def intervals(self) -> list[list[tuple[int, int]]]:
        return [self.row(i) for i in range(self.n)]

    def contains(self, i: int, j: int) -> bool:
        a, b = self.indptr[i], self.indptr[i + 1]
        k = a + np.searchsorted(self.starts[a:b], j, side="right") - 1
        return bool(k >= a and self.ends[k] >= j)

    def successors(self, i: int) -> list[int]:
        return [j for x, y in self.row(i) for j in range(x, y + 1)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, ShortcutIntervalSet) and self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.starts, other.starts)
                and np.array_equal(self.ends, other.ends))

    def __repr__(self) -> str:
        return f"ShortcutIntervalSet(n={self.n}, eps={self.eps!r}, intervals={len(self.starts)})"


class ExplicitShortcutGraph:
    """Adjacency-list shortcut graph; used by the BFS baseline and tests."""

    def __init__(self, n: int, eps: float, adjacency):
        self.n = n
        self.eps = eps
        self.adjacency = [sorted(int(j) for j in succ) for succ in adjacency]
        if len(self.adjacency) != n:
            raise InputError("adjacency needs one list per vertex")
        for i, succ in enumerate(self.adjacency):
            if any(j <= i or j >= n for j in succ):
                raise InputError(f"vertex {i}: edges must point forward")

    def edges(self):
        for i, succ in enumerate(self.adjacency):
            for j in succ:
                yield i, j


def to_explicit(s: ShortcutIntervalSet) -> ExplicitShortcutGraph:
    """Expand every interval into single successors.

    Raises InputError when a built row lacks its adjacent shortcut.
    """
    s.check_adjacent()
    return ExplicitShortcutGraph(s.n, s.eps, [s.successors(i) for i in range(s.n)])


def compress(g: ExplicitShortcutGraph, mask=None) -> ShortcutIntervalSet:
    rows = []
    for succ in g.adjacency:
        row = []
        for j in succ:
            if row and row[-1][1] == j - 1:
                row[-1][1] = j
            else:
                row.append([j, j])
        rows.append([tuple(r) for r in row])
    return ShortcutIntervalSet.from_lists(g.n, g.eps, rows, mask)


def stats(s: ShortcutIntervalSet) -> dict:
    shortcuts = int(np.sum(s.ends - s.starts + 1))
    pairs = s.n * (s.n - 1) // 2
    return {
        "shortcut_count": shortcuts,
        "interval_count": int(len(s.starts)),
        "density": shortcuts / pairs,
    }


# ---------------------------------------------------------------------------
# row kernels

@njit(cache=True)
def _push(buf, k, x, y):
    if k >= buf.shape[0]:
        grown = np.empty((2 * buf.shape[0], 2), dtype=np.int64)
        grown[:k] = buf[:k]
        buf = grown
    buf[k, 0] = x
    buf[k, 1] = y
    return buf, k + 1


@njit(cache=True)
def _runs(flags, offset, out):
    """Maximal runs of True in ``flags``, shifted by ``offset``; returns count."""
    k = 0
    start = -1
    for t in range(flags.shape[0]):
        if flags[t]:
            if start < 0:
                start = t
        elif start >= 0:
            out[k, 0] = start + offset
            out[k, 1] = t - 1 + offset
            k += 1
            start = -1
    if start >= 0:
        out[k, 0] = start + offset
        out[k, 1] = flags.shape[0] - 1 + offset
        k += 1
    return k


@njit(cache=True)
def intersect_rows(a, na, b, nb, out):
    """Overlap of two sorted interval lists in one merge pass; returns count.

    Touching outputs are merged so the result stays maximal.
    """
    p = 0
    q = 0
    k = 0
    while p < na and q < nb:
        lo = max(a[p, 0], b[q, 0])
        hi = min(a[p, 1], b[q, 1])
        if lo <= hi:
            if k > 0 and out[k - 1, 1] + 1 >= lo:
                out[k - 1, 1] = max(out[k - 1, 1], hi)
            else:
                out[k, 0] = lo
                out[k, 1] = hi
                k += 1
        if a[p, 1] < b[q, 1]:
            p += 1
        else:
            q += 1
    return k


def _row_array(s: ShortcutIntervalSet, i: int) -> np.ndarray:
    a, b = s.indptr[i], s.indptr[i + 1]
    return np.ascontiguousarray(np.stack([s.starts[a:b], s.ends[a:b]], axis=1).reshape(-1, 2))


def intersect_interval_sets(a: ShortcutIntervalSet, b: ShortcutIntervalSet) -> ShortcutIntervalSet:
    if a.n != b.n:
        raise InputError(f"cannot intersect interval sets over {a.n} and {b.n} vertices")
    rows = []
    for i in range(a.n):
        ra = _row_array(a, i)
        rb = _row_array(b, i)
        out = np.empty((len(ra) + len(rb), 2), dtype=np.int64)
        k = intersect_rows(ra, len(ra), rb, len(rb), out)
        rows.append([(int(x), int(y)) for x, y in out[:k]])
    mask = a.mask if b.mask is None else (b.mask if a.mask is None else a.mask & b.mask)
    return ShortcutIntervalSet.from_lists(a.n, min(a.eps, b.eps), rows, mask)


# ---------------------------------------------------------------------------
# construction by filtering a full error table

@njit(cache=True)
def _filter_rows(values, n, eps, mask):
    buf = np.empty((max(16, 2 * n), 2), dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    scratch = np.empty((n, 2), dtype=np.int64)
    k = 0
    off = 0
    for i in range(n - 1):
        length = n - 1 - i
        if mask[i]:
            c = _runs(values[off:off + length] <= eps, i + 1, scratch)
            for t in range(c):
                buf, k = _push(buf, k, scratch[t, 0], scratch[t, 1])
            counts[i] = c
        off += length
    return buf[:k], counts


def _assemble(n, eps, buf, counts, mask) -> ShortcutIntervalSet:
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(counts)
    return ShortcutIntervalSet(n, eps, indptr, buf[:, 0].copy(), buf[:, 1].copy(),
                               mask, check=False)


def _mask_array(n, mask):
    if mask is None:
        return np.ones(n, dtype=np.bool_)
    mask = np.asarray(mask, dtype=np.bool_)
    if mask.shape != (n,):
        raise InputError("mask must have one entry per vertex")
    return mask


def build_graph_from_errors(em: ErrorMatrix, eps: float, mask=None) -> ShortcutIntervalSet:
    """Keep every shortcut with ``em[i, j] <= eps`` by run-length scanning rows."""
    if not eps >= 0:
        raise InputError("eps must be non-negative")
    m = _mask_array(em.n, mask)
    buf, counts = _filter_rows(em.values, em.n, float(eps), m)
    return _assemble(em.n, float(eps), buf, counts, None if mask is None else m)


# ---------------------------------------------------------------------------
# Chan-Chin construction
#
# Hausdorff error of (i, j) is <= eps iff every p_k in between is within eps
# of both rays, the one from p_i through p_j and the one from p_j through
# p_i.  For a fixed apex the admissible ray directions form a wedge: the
# intersection of the cones of half-angle asin(eps / r_k) around each p_k
# farther than eps.  Forward wedges grow with j along a row; backward wedges
# (apex p_j) grow as i decreases, so sweeping i downward yields both sets row
# by row.  Directions within TOL of a wedge boundary, and wedges touched by a
# point at distance ~eps from the apex, are settled by an exact error check.

TOL = 1e-7
_FRAGILE = 1e-9


@njit(cache=True)
def _wrap(a):
    while a > math.pi:
        a -= 2.0 * math.pi
    while a <= -math.pi:
        a += 2.0 * math.pi
    return a


@njit(cache=True)
def _absorb(state, ax, ay, qx, qy, eps):
    """Add point q to the wedge ``state = [has, ref, lo, hi, fragile]``."""
    dx = qx - ax
    dy = qy - ay
    r = math.sqrt(dx * dx + dy * dy)
    if r <= eps * (1.0 - _FRAGILE):
        return
    if r < eps * (1.0 + _FRAGILE) or eps == 0.0 and r < 1e-300:
        state[4] = 1.0
        if r <= eps:
            return
    half = math.asin(eps / r) if r > 0.0 else 0.5 * math.pi
    c = math.atan2(dy, dx)
    if state[0] == 0.0:
        state[0] = 1.0
        state[1] = c
        state[2] = -half
        state[3] = half
    else:
        cw = _wrap(c - state[1])
        if cw - half > state[2]:
            state[2] = cw - half
        if cw + half < state[3]:
            state[3] = cw + half


@njit(cache=True)
def _verdict(state, ax, ay, tx, ty):
    """1 valid, 0 invalid, -1 needs an exact check."""
    if state[4] != 0.0:
        return -1
    if state[0] == 0.0:
        return 1
    dx = tx - ax
    dy = ty - ay
    if dx == 0.0 and dy == 0.0:
        return 0
    a = _wrap(math.atan2(dy, dx) - state[1])
    if state[2] + TOL < a < state[3] - TOL:
        return 1
    if a < state[2] - TOL or a > state[3] + TOL:
        return 0
    return -1


@njit(cache=True)
def _dead(state):
    return state[4] == 0.0 and state[0] != 0.0 and state[2] > state[3] + 2.0 * TOL


@njit(cache=True)
def _chan_chin_kernel(xs, ys, eps, mask):
    n = xs.shape[0]
    back = np.zeros((n, 5))
    fwd = np.zeros(5)
    flags_f = np.zeros(n, dtype=np.bool_)
    flags_b = np.zeros(n, dtype=np.bool_)
    unsure = np.zeros(n, dtype=np.bool_)
    ra = np.empty((n, 2), dtype=np.int64)
    rb = np.empty((n, 2), dtype=np.int64)
    rc = np.empty((n, 2), dtype=np.int64)
    rows = []
    counts = np.zeros(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        if mask[i]:
            length = n - 1 - i
            # backward set: apex p_j has absorbed p_{i+1} .. p_{j-1}
            for t in range(length):
                unsure[t] = False
            flags_b[0] = True
            for j in range(i + 2, n):
                v = _verdict(back[j], xs[j], ys[j], xs[i], ys[i])
                flags_b[j - i - 1] = v != 0
                if v < 0:
                    unsure[j - i - 1] = True
            # forward set
            for t in range(5):
                fwd[t] = 0.0
            flags_f[0] = True
            alive = True
            for j in range(i + 2, n):
                _absorb(fwd, xs[i], ys[i], xs[j - 1], ys[j - 1], eps)
                if alive and _dead(fwd):
                    alive = False
                if not alive:
                    flags_f[j - i - 1] = False
                    continue
                v = _verdict(fwd, xs[i], ys[i], xs[j], ys[j])
                flags_f[j - i - 1] = v != 0
                if v < 0:
                    unsure[j - i - 1] = True
            # settle the doubtful entries exactly; see module comment
            for j in range(i + 2, n):
                t = j - i - 1
                if unsure[t] and flags_f[t] and flags_b[t]:
                    ok = hausdorff_kernel(xs, ys, i, j) <= eps
                    flags_f[t] = ok
                    flags_b[t] = ok
            na = _runs(flags_f[:length], i + 1, ra)
            nb = _runs(flags_b[:length], i + 1, rb)
            nc = intersect_rows(ra, na, rb, nb, rc)
            rows.append(rc[:nc].copy())
            counts[i] = nc
        else:
            rows.append(np.empty((0, 2), dtype=np.int64))
        for j in range(i + 1, n):
            _absorb(back[j], xs[j], ys[j], xs[i], ys[i], eps)
    total = 0
    for r in rows:
        total += r.shape[0]
    buf = np.empty((total, 2), dtype=np.int64)
    k = 0
    for idx in range(len(rows) - 1, -1, -1):
        r = rows[idx]
        buf[k:k + r.shape[0]] = r
        k += r.shape[0]
    return buf, counts


def build_graph_chan_chin(curve: Curve, eps: float, mask=None) -> ShortcutIntervalSet:
    """Hausdorff shortcut graph in O(n^2) without the error table.

    The forward and backward ray-wedge sets are produced as interval rows
    and intersected per vertex.  With ``mask``, rows of masked-out vertices
    are skipped; their points still constrain other shortcuts.
    """
    if not eps >= 0:
        raise InputError("eps must be non-negative")
    n = curve.n
    m = _mask_array(n, mask)
    xs = np.ascontiguousarray(curve.xy[:, 0])
    ys = np.ascontiguousarray(curve.xy[:, 1])
    buf, counts = _chan_chin_kernel(xs, ys, float(eps), m)
    return _assemble(n, float(eps), buf, counts, None if mask is None else m)


# ---------------------------------------------------------------------------
# export

def write_csv(s: ShortcutIntervalSet, fh) -> None:
    """One line ``i,x,y`` per interval, 1-based."""
    for i in range(s.n):
        for x, y in s.row(i):
            fh.write(f"{i + 1},{x + 1},{y + 1}\n")


def density_raster(s: ShortcutIntervalSet, size: int | None = None) -> np.ndarray:
    """Fraction of valid shortcuts per pixel of a ``size x size`` grid over (i, j)."""
    n = s.n
    size = n if size is None else max(1, min(size, n))
    hits = np.zeros((size, size))
    cells = np.zeros((size, size))
    bins = (np.arange(n) * size) // n
    for i in range(n):
        row = np.zeros(n)
        for x, y in s.row(i):
            row[x:y + 1] = 1.0
        np.add.at(hits[bins[i]], bins[i + 1:], row[i + 1:])
        np.add.at(cells[bins[i]], bins[i + 1:], 1.0)
    with np.errstate(invalid="ignore"):
        return np.where(cells > 0, hits / np.maximum(cells, 1), 0.0)


def write_pgm(s: ShortcutIntervalSet, fh, size: int | None = None) -> None:
    """Binary PGM; valid shortcuts dark, invalid and lower triangle white."""
    img = density_raster(s, size)
    pix = (255 - np.round(img * 255)).astype(np.uint8)
    h, w = pix.shape
    fh.write(f"P5\n{w} {h}\n255\n".encode())
    fh.write(pix.tobytes())

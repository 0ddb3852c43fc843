"""Planar primitives and per-shortcut error measures.

A shortcut ``(i, j)`` (``i < j``, 0-based) replaces the subcurve
``p_i .. p_j`` by a single segment.  Every measure here is computed in time
linear in ``j - i``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from numba import njit


class InputError(ValueError):
    """Malformed user input (bad coordinates, bad indices, bad scales)."""


class Measure(str, enum.Enum):
    HAUSDORFF = "hausdorff"
    FRECHET = "frechet"
    AREA = "area"

    @classmethod
    def parse(cls, value: "Measure | str") -> "Measure":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(f"unknown error measure {value!r}") from None


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True, eq=False)
class Curve:
    """An ordered sequence of at least two planar vertices.

    Coordinates are stored as a read-only ``(n, 2)`` float64 array.
    Consecutive vertices must differ; use :func:`collapse_duplicates` on raw
    input first.
    """

    xy: np.ndarray

    def __init__(self, points):
        xy = np.array(points, dtype=np.float64).reshape(-1, 2)
        if len(xy) < 2:
            raise InputError("a curve needs at least two vertices")
        if not np.all(np.isfinite(xy)):
            raise InputError("curve coordinates must be finite")
        if np.any(np.all(xy[1:] == xy[:-1], axis=1)):
            raise InputError("consecutive vertices must be distinct")
        xy.setflags(write=False)
        object.__setattr__(self, "xy", xy)

    def __len__(self) -> int:
        return len(self.xy)

    def __getitem__(self, k: int) -> Point:
        return Point(float(self.xy[k, 0]), float(self.xy[k, 1]))

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and np.array_equal(self.xy, other.xy)

    def __hash__(self):
        return hash(self.xy.tobytes())

    @property
    def n(self) -> int:
        return len(self.xy)

    def subcurve(self, indices: Sequence[int]) -> "Curve":
        return Curve(self.xy[np.asarray(indices, dtype=np.int64)])


def collapse_duplicates(points) -> tuple[np.ndarray, int]:
    """Drop vertices equal to their predecessor; return (xy, dropped)."""
    xy = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(xy) == 0:
        return xy, 0
    keep = np.ones(len(xy), dtype=bool)
    keep[1:] = np.any(xy[1:] != xy[:-1], axis=1)
    return xy[keep], int(len(xy) - keep.sum())


def _check_shortcut(curve: Curve, i: int, j: int) -> None:
    if not (0 <= i < j < curve.n):
        raise InputError(f"invalid shortcut ({i}, {j}) for a curve of {curve.n} vertices")


# The scalar kernels below are plain functions compiled a second time with
# numba; the vectorised numpy oracle in ``errors`` mirrors the same operation
# order so all three agree bit for bit.

def _seg_dist(px, py, ax, ay, bx, by):
    vx = bx - ax
    vy = by - ay
    wx = px - ax
    wy = py - ay
    vv = vx * vx + vy * vy
    t = wx * vx + wy * vy
    if vv == 0.0 or t <= 0.0:
        return math.sqrt(wx * wx + wy * wy)
    if t >= vv:
        ux = px - bx
        uy = py - by
        return math.sqrt(ux * ux + uy * uy)
    return abs(vx * wy - vy * wx) / math.sqrt(vv)


seg_dist = njit(cache=True)(_seg_dist)


@njit(cache=True)
def hausdorff_kernel(xs, ys, i, j):
    ax, ay, bx, by = xs[i], ys[i], xs[j], ys[j]
    best = 0.0
    for k in range(i + 1, j):
        d = seg_dist(xs[k], ys[k], ax, ay, bx, by)
        if d > best:
            best = d
    return best


@njit(cache=True)
def frechet_kernel(xs, ys, i, j, eps):
    """Free-space reachability of segment (p_i, p_j) against p_i .. p_j.

    Vertex k of the subcurve may be matched to the segment parameters in
    ``[lo_k, hi_k]``; a monotone matching exists iff the running maximum of
    the lower ends never exceeds an upper end.
    """
    if eps < 0.0:
        return False
    ax, ay = xs[i], ys[i]
    vx = xs[j] - ax
    vy = ys[j] - ay
    vv = vx * vx + vy * vy
    if vv == 0.0:
        for k in range(i, j + 1):
            dx = xs[k] - ax
            dy = ys[k] - ay
            if math.sqrt(dx * dx + dy * dy) > eps:
                return False
        return True
    length = math.sqrt(vv)
    reach = 0.0
    for k in range(i, j + 1):
        wx = xs[k] - ax
        wy = ys[k] - ay
        h = abs(vx * wy - vy * wx) / length
        if h > eps:
            return False
        half = math.sqrt(eps * eps - h * h) / length
        centre = (wx * vx + wy * vy) / vv
        lo = max(0.0, centre - half)
        hi = min(1.0, centre + half)
        if lo > hi:
            return False
        if lo > reach:
            reach = lo
        if reach > hi:
            return False
    return True


@njit(cache=True)
def frechet_distance_kernel(xs, ys, i, j, tol):
    """Smallest eps (to within ``tol``) for which ``frechet_kernel`` holds."""
    lo = hausdorff_kernel(xs, ys, i, j)
    if frechet_kernel(xs, ys, i, j, lo):
        return lo
    hi = lo
    for k in range(i, j + 1):
        for e in (i, j):
            dx = xs[k] - xs[e]
            dy = ys[k] - ys[e]
            d = math.sqrt(dx * dx + dy * dy)
            if d > hi:
                hi = d
    # rounding in the perpendicular term can reject the analytic upper bound
    while not frechet_kernel(xs, ys, i, j, hi):
        hi = hi * (1.0 + 1e-12) + 1e-300
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if frechet_kernel(xs, ys, i, j, mid):
            hi = mid
        else:
            lo = mid
    return hi


@njit(cache=True)
def area_kernel(xs, ys, i, j):
    s = 0.0
    for k in range(i, j):
        s += xs[k] * ys[k + 1] - xs[k + 1] * ys[k]
    s += xs[j] * ys[i] - xs[i] * ys[j]
    return abs(s) / 2.0


def point_segment_distance(p, a, b) -> float:
    """Euclidean distance from ``p`` to the closed segment ``ab``.

    A degenerate segment (``a == b``) yields ``|p - a|``.
    """
    coords = (*p, *a, *b)
    if len(coords) != 6 or not all(math.isfinite(v) for v in coords):
        raise InputError("point_segment_distance needs three finite 2D points")
    return _seg_dist(*(float(v) for v in coords))


def hausdorff_error(curve: Curve, i: int, j: int) -> float:
    """Largest distance from a vertex of ``p_i .. p_j`` to segment ``(p_i, p_j)``.

    Distance to a segment is convex along each subcurve edge, so the maximum
    over the subcurve is attained at a vertex.
    """
    _check_shortcut(curve, i, j)
    xy = curve.xy
    ax, ay, bx, by = xy[i, 0], xy[i, 1], xy[j, 0], xy[j, 1]
    return max(
        (_seg_dist(xy[k, 0], xy[k, 1], ax, ay, bx, by) for k in range(i + 1, j)),
        default=0.0,
    )


def frechet_valid(curve: Curve, i: int, j: int, eps: float) -> bool:
    _check_shortcut(curve, i, j)
    if eps < 0:
        raise InputError("eps must be non-negative")
    return bool(frechet_kernel(curve.xy[:, 0].copy(), curve.xy[:, 1].copy(), i, j, float(eps)))


def frechet_error(curve: Curve, i: int, j: int, tol: float = 1e-9) -> float:
    """Frechet distance between segment and subcurve, by bisection on eps.

    The returned value always passes :func:`frechet_valid`.
    """
    _check_shortcut(curve, i, j)
    return float(frechet_distance_kernel(curve.xy[:, 0].copy(), curve.xy[:, 1].copy(), i, j, tol))


def area_error(curve: Curve, i: int, j: int) -> float:
    """Absolute shoelace area of the closed polygon ``p_i .. p_j, p_i``."""
    _check_shortcut(curve, i, j)
    xy = curve.xy
    s = 0.0
    for k in range(i, j):
        s += xy[k, 0] * xy[k + 1, 1] - xy[k + 1, 0] * xy[k, 1]
    s += xy[j, 0] * xy[i, 1] - xy[i, 0] * xy[j, 1]
    return abs(float(s)) / 2.0


def shortcut_error(curve: Curve, i: int, j: int, measure: Measure | str = Measure.HAUSDORFF,
                   tol: float = 1e-9) -> float:
    measure = Measure.parse(measure)
    if measure is Measure.HAUSDORFF:
        return hausdorff_error(curve, i, j)
    if measure is Measure.FRECHET:
        return frechet_error(curve, i, j, tol)
    return area_error(curve, i, j)

"""The full shortcut error table ``eps(p_i, p_j)`` for all ``i < j``.

Two routes: a vectorised per-row brute force (any measure), and the
incremental annotated-hull sweep for the Hausdorff measure.
"""
from __future__ import annotations

import warnings

import numba
import numpy as np
from numba import njit, prange

from .geometry import Curve, InputError, Measure, frechet_distance_kernel
from .hull import anchor_sweep, sorted_universe, tri_index

warnings.filterwarnings("ignore", message="The TBB threading layer", category=numba.NumbaWarning)


class ErrorMatrix:
    """Upper-triangular table of shortcut errors, stored flat and row-major.

    Row ``i`` holds ``eps(i, j)`` for ``j = i+1 .. n-1`` contiguously, so
    ``row(i)`` is a view.  Memory is ``8 * n * (n - 1) / 2`` bytes, about
    1.6 GB at twenty thousand vertices.
    """

    def __init__(self, n: int, values: np.ndarray | None = None):
        if n < 2:
            raise InputError("an error matrix needs n >= 2")
        self.n = n
        size = n * (n - 1) // 2
        if values is None:
            values = np.zeros(size, dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (size,):
            raise InputError(f"expected {size} entries, got {values.shape}")
        self.values = values

    def offset(self, i: int) -> int:
        return i * (2 * self.n - i - 1) // 2

    def row(self, i: int) -> np.ndarray:
        start = self.offset(i)
        return self.values[start:start + self.n - 1 - i]

    def __getitem__(self, key) -> float:
        i, j = key
        if not 0 <= i < j < self.n:
            raise IndexError(f"no shortcut ({i}, {j}) in a table of size {self.n}")
        return float(self.values[self.offset(i) + j - i - 1])

    def __setitem__(self, key, value) -> None:
        i, j = key
        self.values[self.offset(i) + j - i - 1] = value

    @property
    def eps_max(self) -> float:
        """Error of the single-segment simplification ``(p_0, p_{n-1})``."""
        return self[0, self.n - 1]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        iu = np.triu_indices(self.n, 1)
        out[iu] = self.values
        return out

    def items(self):
        for i in range(self.n - 1):
            for j, e in enumerate(self.row(i), start=i + 1):
                yield i, j, float(e)

    def distinct_values(self, upto: float | None = None) -> np.ndarray:
        vals = np.unique(self.values)
        if upto is not None:
            vals = vals[vals <= upto]
        return vals

    def allclose(self, other: "ErrorMatrix", atol: float = 1e-9) -> bool:
        return self.n == other.n and bool(np.all(np.abs(self.values - other.values) <= atol))

    def max_abs_diff(self, other: "ErrorMatrix") -> float:
        return float(np.max(np.abs(self.values - other.values)))

    # CSV lines ``i,j,epsilon`` with 1-based indices.
    def write_csv(self, fh) -> None:
        for i, j, e in self.items():
            fh.write(f"{i + 1},{j + 1},{e!r}\n")

    @classmethod
    def read_csv(cls, fh) -> "ErrorMatrix":
        rows = []
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                i, j, e = line.split(",")
                rows.append((int(i) - 1, int(j) - 1, float(e)))
            except ValueError:
                raise InputError(f"line {lineno}: expected 'i,j,epsilon'") from None
        n = max(j for _, j, _ in rows) + 1 if rows else 0
        em = cls(n)
        seen = 0
        for i, j, e in rows:
            if not 0 <= i < j < n:
                raise InputError(f"bad shortcut ({i + 1}, {j + 1})")
            em[i, j] = e
            seen += 1
        if seen != len(em.values):
            raise InputError(f"matrix for n={n} needs {len(em.values)} entries, got {seen}")
        return em


def _hausdorff_rows(xy: np.ndarray, i: int, block: int) -> np.ndarray:
    n = len(xy)
    ax, ay = xy[i]
    out = np.zeros(n - 1 - i)
    pts = xy[i + 1:]
    px = pts[:, 0][None, :]
    py = pts[:, 1][None, :]
    for start in range(i + 1, n, block):
        stop = min(n, start + block)
        bx = xy[start:stop, 0][:, None]
        by = xy[start:stop, 1][:, None]
        vx = bx - ax
        vy = by - ay
        wx = px - ax
        wy = py - ay
        vv = vx * vx + vy * vy
        t = wx * vx + wy * vy
        ux = px - bx
        uy = py - by
        with np.errstate(invalid="ignore", divide="ignore"):
            perp = np.abs(vx * wy - vy * wx) / np.sqrt(vv)
        d = np.where((vv == 0.0) | (t <= 0.0), np.sqrt(wx * wx + wy * wy),
                     np.where(t >= vv, np.sqrt(ux * ux + uy * uy), perp))
        # vertex k (column) only counts for segments ending at j > k
        ks = np.arange(i + 1, n)[None, :]
        js = np.arange(start, stop)[:, None]
        d = np.where(ks < js, d, 0.0)
        out[start - i - 1:stop - i - 1] = d.max(axis=1)
    return out


def _area_rows(xy: np.ndarray, i: int) -> np.ndarray:
    x = xy[:, 0]
    y = xy[:, 1]
    terms = x[i:-1] * y[i + 1:] - x[i + 1:] * y[i:-1]
    partial = np.cumsum(terms)
    closing = x[i + 1:] * y[i] - x[i] * y[i + 1:]
    return np.abs(partial + closing) / 2.0


@njit(cache=True)
def _frechet_all(xs, ys, tol, out):
    n = xs.shape[0]
    for i in range(n - 1):
        for j in range(i + 1, n):
            if j == i + 1:
                out[tri_index(n, i, j)] = 0.0
            else:
                out[tri_index(n, i, j)] = frechet_distance_kernel(xs, ys, i, j, tol)


def compute_all_errors_naive(curve: Curve, measure: Measure | str = Measure.HAUSDORFF,
                             tol: float = 1e-9, block: int = 256) -> ErrorMatrix:
    """Every entry by direct evaluation of the measure on its subcurve."""
    measure = Measure.parse(measure)
    xy = curve.xy
    em = ErrorMatrix(curve.n)
    if measure is Measure.FRECHET:
        _frechet_all(np.ascontiguousarray(xy[:, 0]), np.ascontiguousarray(xy[:, 1]),
                     tol, em.values)
        return em
    for i in range(curve.n - 1):
        if measure is Measure.HAUSDORFF:
            em.row(i)[:] = _hausdorff_rows(xy, i, block)
        else:
            em.row(i)[:] = _area_rows(xy, i)
    return em


@njit(cache=True, parallel=True)
def _sweep_parallel(px, py, X, Y, IDX, rank_of, size, with_extremes, mirrored, out):
    for a in prange(px.shape[0] - 1):
        anchor_sweep(px, py, X, Y, IDX, rank_of, size, a, with_extremes, mirrored, out)


def compute_all_errors_hull(curve: Curve, threads: int | None = None) -> ErrorMatrix:
    """Hausdorff error table via incremental annotated convex hulls.

    The forward pass (one hull per anchor ``p_i``) scores the perpendicular
    extremes and the region behind ``p_i``; a pass over the reversed curve
    scores the region behind ``p_j``.  O(n^2 log n) overall; each anchor
    writes a disjoint set of cells, so the result does not depend on the
    thread count.
    """
    xy = np.ascontiguousarray(curve.xy)
    n = len(xy)
    fwd = np.zeros(n * (n - 1) // 2)
    rev = np.zeros_like(fwd)
    previous = numba.get_num_threads()
    if threads is not None:
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
    try:
        for arr, out, mirrored in ((xy, fwd, False), (xy[::-1].copy(), rev, True)):
            px = np.ascontiguousarray(arr[:, 0])
            py = np.ascontiguousarray(arr[:, 1])
            X, Y, IDX, rank_of, size = sorted_universe(arr)
            _sweep_parallel(px, py, X, Y, IDX, rank_of, size, not mirrored, mirrored, out)
    finally:
        numba.set_num_threads(previous)
    return ErrorMatrix(n, np.maximum(fwd, rev))


def compute_all_errors(curve: Curve, measure: Measure | str = Measure.HAUSDORFF,
                       method: str = "auto", threads: int | None = None) -> ErrorMatrix:
    """Dispatch: the hull sweep for Hausdorff, brute force otherwise."""
    measure = Measure.parse(measure)
    if method not in ("auto", "hull", "naive"):
        raise InputError(f"unknown error method {method!r}")
    if method == "hull" and measure is not Measure.HAUSDORFF:
        raise InputError("the hull method only supports the Hausdorff measure")
    if measure is Measure.HAUSDORFF and method != "naive":
        return compute_all_errors_hull(curve, threads)
    return compute_all_errors_naive(curve, measure)

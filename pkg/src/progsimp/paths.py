"""Shortest paths over shortcut graphs.

All searches return the lexicographically smallest vertex sequence among
the optimal paths.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .geometry import InputError
from .graph import ExplicitShortcutGraph, ShortcutIntervalSet

INF_KEY = np.iinfo(np.int64).max


class NoPathError(ValueError):
    pass


@dataclass(frozen=True)
class PathResult:
    vertices: tuple[int, ...]
    cost: float

    @property
    def hops(self) -> int:
        return len(self.vertices) - 1


def _check_ends(n, s, t):
    if not (0 <= s <= t < n):
        raise InputError(f"need 0 <= source <= target < {n}, got {s}, {t}")


def bfs_min_links(g: ExplicitShortcutGraph, s: int, t: int) -> PathResult:
    """Minimum-hop path from ``s`` to ``t``.

    Distances to ``t`` come from a BFS over reversed edges; the walk from
    ``s`` then takes the smallest successor that is one hop closer.
    """
    _check_ends(g.n, s, t)
    rev = [[] for _ in range(g.n)]
    for i, j in g.edges():
        if s <= i and j <= t:
            rev[j].append(i)
    dist = [-1] * g.n
    dist[t] = 0
    frontier = [t]
    while frontier:
        nxt = []
        for v in frontier:
            for u in rev[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    if dist[s] < 0:
        raise NoPathError(f"vertex {t} is unreachable from {s}")
    path = [s]
    while path[-1] != t:
        v = path[-1]
        path.append(next(w for w in g.adjacency[v] if w <= t and dist[w] == dist[v] - 1))
    return PathResult(tuple(path), float(len(path) - 1))


def _weight_lookup(weights):
    if callable(weights):
        return weights
    return lambda i, j: weights[(i, j)]


def dijkstra_min_cost(s: ShortcutIntervalSet, weights, source: int):
    """Single-source minimum costs over the shortcut DAG.

    ``weights`` is a mapping ``(i, j) -> cost`` or a callable.  Returns
    ``(dist, pred)`` arrays; unreachable vertices have ``inf`` / ``-1``.
    Among equally cheap predecessors the smallest index wins.
    """
    if not 0 <= source < s.n:
        raise InputError(f"source {source} out of range")
    weight = _weight_lookup(weights)
    dist = np.full(s.n, math.inf)
    pred = np.full(s.n, -1, dtype=np.int64)
    dist[source] = 0.0
    heap = [(0.0, source)]
    done = np.zeros(s.n, dtype=bool)
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for w in s.successors(v):
            try:
                c = weight(v, w)
            except KeyError:
                raise RuntimeError(f"no weight for shortcut ({v}, {w})") from None
            if c < 0:
                raise InputError(f"negative weight on ({v}, {w})")
            nd = d + c
            if nd < dist[w]:
                dist[w] = nd
                pred[w] = v
                heapq.heappush(heap, (nd, w))
            elif nd == dist[w] and v < pred[w]:
                pred[w] = v
    return dist, pred


def path_from_pred(pred, source: int, target: int) -> list[int]:
    path = [target]
    while path[-1] != source:
        p = int(pred[path[-1]])
        if p < 0:
            raise NoPathError(f"vertex {target} is unreachable from {source}")
        path.append(p)
    return path[::-1]


# ---------------------------------------------------------------------------
# range-query shortest path
#
# Vertices of [s, t] are inserted from t down to s.  A leaf holds the packed
# key ``hops * stride + (w - s)`` of the vertex w, so a range minimum picks
# the fewest hops to t and then the smallest vertex.  Intervals shorter than
# ``cutoff * log2(n)`` are scanned directly.

@njit(cache=True)
def _tree_set(tree, size, pos, key):
    v = size + pos
    tree[v] = key
    v >>= 1
    while v >= 1:
        a = tree[2 * v]
        b = tree[2 * v + 1]
        tree[v] = a if a < b else b
        v >>= 1


@njit(cache=True)
def _tree_min(tree, size, lo, hi):
    best = INF_KEY
    lo += size
    hi += size + 1
    while lo < hi:
        if lo & 1:
            if tree[lo] < best:
                best = tree[lo]
            lo += 1
        if hi & 1:
            hi -= 1
            if tree[hi] < best:
                best = tree[hi]
        lo >>= 1
        hi >>= 1
    return best


@njit(cache=True)
def _scan_min(tree, size, lo, hi):
    best = INF_KEY
    for p in range(lo, hi + 1):
        if tree[size + p] < best:
            best = tree[size + p]
    return best


@njit(cache=True)
def _node_key(indptr, starts, ends, tree, size, s, t, v, stride, threshold):
    """Best packed key over the successors of ``v`` inside ``[v+1, t]``."""
    best = INF_KEY
    for q in range(indptr[v], indptr[v + 1]):
        x = starts[q]
        y = ends[q]
        if x > t:
            break
        if y > t:
            y = t
        if y - x < threshold:
            k = _scan_min(tree, size, x - s, y - s)
        else:
            k = _tree_min(tree, size, x - s, y - s)
        if k < best:
            best = k
    return best


@njit(cache=True)
def _range_query_kernel(indptr, starts, ends, s, t, threshold):
    m = t - s + 1
    size = 1
    while size < m:
        size *= 2
    stride = np.int64(size)
    tree = np.full(2 * size, INF_KEY, dtype=np.int64)
    nxt = np.full(m, -1, dtype=np.int64)
    hops = np.full(m, -1, dtype=np.int64)
    hops[m - 1] = 0
    _tree_set(tree, size, m - 1, 0 * stride + (m - 1))
    for v in range(t - 1, s - 1, -1):
        k = _node_key(indptr, starts, ends, tree, size, s, t, v, stride, threshold)
        if k == INF_KEY:
            continue
        h = k // stride + 1
        w = k % stride
        hops[v - s] = h
        nxt[v - s] = w + s
        _tree_set(tree, size, v - s, h * stride + (v - s))
    return hops, nxt


def _threshold(n: int, cutoff: float) -> float:
    if cutoff == math.inf:
        return math.inf
    return cutoff * math.log2(max(n, 2))


def range_query_shortest_path(s: ShortcutIntervalSet, source: int, target: int,
                              cutoff: float = 4.0) -> PathResult:
    """Minimum-hop path using range-minimum queries over whole intervals.

    ``cutoff`` is the constant ``c`` of the brute-force rule; ``0`` always
    queries the tree, ``inf`` always scans.
    """
    _check_ends(s.n, source, target)
    if cutoff < 0:
        raise InputError("cutoff must be non-negative")
    hops, nxt = _range_query_kernel(s.indptr, s.starts, s.ends, source, target,
                                    _threshold(s.n, cutoff))
    if hops[0] < 0:
        raise NoPathError(f"vertex {target} is unreachable from {source}")
    path = [source]
    while path[-1] != target:
        path.append(int(nxt[path[-1] - source]))
    return PathResult(tuple(path), float(len(path) - 1))


class AnnotatedPathTree:
    """Step-by-step version of the range-query search, for inspection.

    Leaves are vertices of ``[source, target]``; each internal node stores
    the minimum packed key of its subtree.
    """

    def __init__(self, s: ShortcutIntervalSet, source: int, target: int, cutoff: float = 4.0):
        _check_ends(s.n, source, target)
        self.s = s
        self.source = source
        self.target = target
        self.threshold = _threshold(s.n, cutoff)
        m = target - source + 1
        self.size = 1
        while self.size < m:
            self.size *= 2
        self.tree = np.full(2 * self.size, INF_KEY, dtype=np.int64)
        self.hops = {target: 0}
        self.next_hop = {}
        _tree_set(self.tree, self.size, m - 1, m - 1)
        self.cursor = target

    def insert_next(self) -> int | None:
        """Insert the next vertex (counting down); returns it, or None when done."""
        if self.cursor <= self.source:
            return None
        self.cursor -= 1
        v = self.cursor
        k = _node_key(self.s.indptr, self.s.starts, self.s.ends, self.tree, self.size,
                      self.source, self.target, v, self.size, self.threshold)
        if k != INF_KEY:
            h = int(k // self.size) + 1
            self.hops[v] = h
            self.next_hop[v] = int(k % self.size) + self.source
            _tree_set(self.tree, self.size, v - self.source, h * self.size + (v - self.source))
        return v

    def check_annotations(self) -> None:
        """Every node key must equal the minimum over its leaves, and every
        inserted vertex's hop count the best over its valid successors."""
        size = self.size
        for v in range(size - 1, 0, -1):
            want = min(self.tree[2 * v], self.tree[2 * v + 1])
            if self.tree[v] != want:
                raise AssertionError(f"tree node {v} holds {self.tree[v]}, expected {want}")
        for v, h in self.hops.items():
            if v == self.target:
                continue
            best = min(self.hops.get(w, math.inf) for w in self.s.successors(v) if w <= self.target)
            if h != best + 1:
                raise AssertionError(f"vertex {v}: {h} hops, expected {best + 1}")


# ---------------------------------------------------------------------------
# weighted DAG kernels on interval sets
#
# Per-shortcut values are stored flat, aligned with the expanded successor
# lists: row i starts at ``offsets[i]`` and lists j in increasing order.

def shortcut_offsets(s: ShortcutIntervalSet) -> np.ndarray:
    csum = np.zeros(len(s.starts) + 1, dtype=np.int64)
    csum[1:] = np.cumsum(s.ends - s.starts + 1)
    return csum[s.indptr]


@njit(cache=True)
def dag_costs_to(indptr, starts, ends, offsets, costs, s, t, out):
    """Backward relaxation: ``out[v - s]`` = min cost from v to t within [s, t]."""
    out[:] = np.inf
    out[t - s] = 0.0
    for v in range(t - 1, s - 1, -1):
        best = np.inf
        pos = offsets[v]
        for q in range(indptr[v], indptr[v + 1]):
            x = starts[q]
            y = ends[q]
            if x > t:
                break
            for w in range(x, min(y, t) + 1):
                c = costs[pos + w - x] + out[w - s]
                if c < best:
                    best = c
            pos += y - x + 1
        out[v - s] = best


@njit(cache=True)
def dag_min_cost_path(indptr, starts, ends, offsets, costs, s, t):
    """Lexicographically smallest min-cost path s -> t; empty if unreachable."""
    B = np.empty(t - s + 1)
    dag_costs_to(indptr, starts, ends, offsets, costs, s, t, B)
    path = [s]
    if B[0] == np.inf:
        return path[:0], np.inf
    v = s
    while v != t:
        pos = offsets[v]
        found = -1
        for q in range(indptr[v], indptr[v + 1]):
            x = starts[q]
            y = ends[q]
            if x > t:
                break
            for w in range(x, min(y, t) + 1):
                if costs[pos + w - x] + B[w - s] == B[v - s]:
                    found = w
                    break
            if found >= 0:
                break
            pos += y - x + 1
        v = found
        path.append(v)
    return path, B[0]


def min_cost_path(s: ShortcutIntervalSet, costs: np.ndarray, source: int, target: int,
                  offsets: np.ndarray | None = None) -> PathResult:
    """Min-cost path with per-shortcut ``costs`` laid out by :func:`shortcut_offsets`."""
    _check_ends(s.n, source, target)
    if offsets is None:
        offsets = shortcut_offsets(s)
    path, cost = dag_min_cost_path(s.indptr, s.starts, s.ends, offsets,
                                   np.asarray(costs, dtype=np.float64), source, target)
    if len(path) == 0:
        raise NoPathError(f"vertex {target} is unreachable from {source}")
    return PathResult(tuple(int(v) for v in path), float(cost))

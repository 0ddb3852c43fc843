"""Progressive simplification across error scales eps_1 < ... < eps_m.

Optimal algorithms (discrete, weighted, continuous), the greedy and
Douglas-Peucker heuristics, and an exhaustive oracle for tiny inputs.
Vertex indices are 0-based throughout.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import ErrorMatrix, compute_all_errors_naive
from .geometry import Curve, InputError, Measure, seg_dist, shortcut_error
from .graph import ShortcutIntervalSet, build_graph_chan_chin, build_graph_from_errors
from .paths import dag_min_cost_path, min_cost_path, range_query_shortest_path, shortcut_offsets


class ScaleWarning(UserWarning):
    """Raised when requested scales exceed the single-segment error."""


@dataclass(frozen=True)
class ScaleSequence:
    """Strictly increasing, non-negative tolerances with optional weights."""

    eps: tuple[float, ...]
    weights: tuple[float, ...] = ()

    def __init__(self, eps, weights=None):
        eps = tuple(float(e) for e in eps)
        if any(not math.isfinite(e) or e < 0 for e in eps):
            raise InputError("scales must be finite and non-negative")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise InputError("scales must be strictly increasing")
        if weights is None:
            weights = (1.0,) * len(eps)
        weights = tuple(float(w) for w in weights)
        if len(weights) != len(eps):
            raise InputError("need one weight per scale")
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise InputError("weights must be finite and non-negative")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "weights", weights)

    @property
    def m(self) -> int:
        return len(self.eps)

    def unweighted(self) -> "ScaleSequence":
        return ScaleSequence(self.eps)

    def __len__(self) -> int:
        return self.m


def _as_scales(scales) -> ScaleSequence:
    return scales if isinstance(scales, ScaleSequence) else ScaleSequence(scales)


@dataclass
class ProgressiveSimplification:
    """``levels[k]`` is the index sequence of S_{k+1}; finest scale first."""

    scales: ScaleSequence
    levels: list[tuple[int, ...]]
    algorithm: str = ""

    @property
    def sizes(self) -> list[int]:
        return [len(s) for s in self.levels]

    @property
    def cumulative_size(self) -> int:
        return sum(self.sizes)

    @property
    def weighted_size(self) -> float:
        return float(sum(w * len(s) for w, s in zip(self.scales.weights, self.levels)))


@dataclass
class CostTable:
    """Per-scale shortcut costs aligned with each scale's interval set.

    Only scales below the single-segment error are stored; coarser scales
    are fixed to the single segment.
    """

    graphs: list[ShortcutIntervalSet] = field(default_factory=list)
    offsets: list[np.ndarray] = field(default_factory=list)
    costs: list[np.ndarray] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.graphs)

    def cost(self, k: int, i: int, j: int) -> float:
        g = self.graphs[k]
        pos = self.offsets[k][i]
        for x, y in g.row(i):
            if x <= j <= y:
                return float(self.costs[k][pos + j - x])
            pos += y - x + 1
        raise KeyError((k, i, j))

    def items(self, k: int):
        g = self.graphs[k]
        c = self.costs[k]
        pos = 0
        for i in range(g.n):
            for x, y in g.row(i):
                for j in range(x, y + 1):
                    yield i, j, float(c[pos])
                    pos += 1


@dataclass
class ContinuousSimplification:
    """Breakpoints ``(eps, S)``; S holds on ``[eps_k, eps_{k+1})``."""

    breakpoints: list[tuple[float, tuple[int, ...]]]
    integral: float

    def size_at(self, eps: float) -> int:
        size = len(self.breakpoints[0][1])
        for e, s in self.breakpoints:
            if e <= eps:
                size = len(s)
        return size


# ---------------------------------------------------------------------------
# graph provider

class _Graphs:
    """Builds G(C, eps) for one curve: Chan-Chin for Hausdorff, filtering otherwise."""

    def __init__(self, curve: Curve, measure: Measure, errors: ErrorMatrix | None = None):
        self.curve = curve
        self.measure = measure
        self.errors = errors

    def matrix(self) -> ErrorMatrix:
        if self.errors is None:
            self.errors = compute_all_errors_naive(self.curve, self.measure)
        return self.errors

    def get(self, eps: float, mask=None) -> ShortcutIntervalSet:
        if self.errors is None and self.measure is Measure.HAUSDORFF:
            return build_graph_chan_chin(self.curve, eps, mask)
        return build_graph_from_errors(self.matrix(), eps, mask)

    def eps_max(self) -> float:
        if self.errors is not None:
            return self.errors.eps_max
        return shortcut_error(self.curve, 0, self.curve.n - 1, self.measure)


def _check_errors(curve: Curve, errors: ErrorMatrix | None):
    if errors is not None and errors.n != curve.n:
        raise InputError("error matrix does not match the curve")


def _active_scales(scales: ScaleSequence, eps_max: float) -> int:
    """Number of leading scales below ``eps_max``; the rest get ``(0, n-1)``."""
    active = sum(1 for e in scales.eps if e < eps_max)
    over = [e for e in scales.eps if e > eps_max]
    if over:
        warnings.warn(f"{len(over)} scale(s) exceed the single-segment error {float(eps_max)!r}; "
                      "they are simplified to the single segment", ScaleWarning, stacklevel=3)
    return active


def _single(n: int) -> tuple[int, ...]:
    return (0, n - 1)


# ---------------------------------------------------------------------------
# optimal progressive simplification

@njit(cache=True)
def _next_scale_costs(p_indptr, p_starts, p_ends, p_off, p_cost,
                      indptr, starts, ends, off, w, out):
    """Costs at scale k from the costs at scale k-1.

    Shortcuts already valid at k-1 get ``c + w``.  A shortcut new at scale k
    gets ``w`` plus the cheapest path in the previous graph; those paths come
    from one forward relaxation per source over the window it needs.
    """
    n = indptr.shape[0] - 1
    dist = np.empty(n)
    for i in range(n):
        # pass 1: farthest new shortcut of row i
        jmax = -1
        q = p_indptr[i]
        qe = p_indptr[i + 1]
        for r in range(indptr[i], indptr[i + 1]):
            for j in range(starts[r], ends[r] + 1):
                while q < qe and p_ends[q] < j:
                    q += 1
                if not (q < qe and p_starts[q] <= j):
                    jmax = j
        if jmax >= 0:
            for v in range(i, jmax + 1):
                dist[v] = np.inf
            dist[i] = 0.0
            for v in range(i, jmax):
                dv = dist[v]
                if dv == np.inf:
                    continue
                pos = p_off[v]
                for r in range(p_indptr[v], p_indptr[v + 1]):
                    x = p_starts[r]
                    y = p_ends[r]
                    if x > jmax:
                        break
                    top = y if y < jmax else jmax
                    for u in range(x, top + 1):
                        c = dv + p_cost[pos + u - x]
                        if c < dist[u]:
                            dist[u] = c
                    pos += y - x + 1
        # pass 2: fill
        q = p_indptr[i]
        ppos = p_off[i]
        pos = off[i]
        for r in range(indptr[i], indptr[i + 1]):
            for j in range(starts[r], ends[r] + 1):
                while q < qe and p_ends[q] < j:
                    ppos += p_ends[q] - p_starts[q] + 1
                    q += 1
                if q < qe and p_starts[q] <= j:
                    out[pos] = p_cost[ppos + j - p_starts[q]] + w
                else:
                    out[pos] = dist[j] + w
                pos += 1


def _cost_tables(provider: _Graphs, scales: ScaleSequence, active: int) -> CostTable:
    table = CostTable()
    for k in range(active):
        g = provider.get(scales.eps[k])
        off = shortcut_offsets(g)
        w = scales.weights[k]
        if k == 0:
            c = np.full(off[-1], w)
        else:
            pg, poff, pc = table.graphs[-1], table.offsets[-1], table.costs[-1]
            c = np.empty(off[-1])
            _next_scale_costs(pg.indptr, pg.starts, pg.ends, poff, pc,
                              g.indptr, g.starts, g.ends, off, w, c)
        table.graphs.append(g)
        table.offsets.append(off)
        table.costs.append(c)
    return table


def _extract(table: CostTable, n: int) -> list[tuple[int, ...]]:
    """Top-down: cheapest path at the coarsest scale, then expand every edge."""
    levels = []
    path = [0, n - 1]
    for k in range(len(table) - 1, -1, -1):
        g, off, c = table.graphs[k], table.offsets[k], table.costs[k]
        new = [path[0]]
        for a, b in zip(path, path[1:]):
            sub, _ = dag_min_cost_path(g.indptr, g.starts, g.ends, off, c, a, b)
            new.extend(int(v) for v in sub[1:])
        path = new
        levels.append(tuple(path))
    return levels[::-1]


def min_progressive_weighted(curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                             errors: ErrorMatrix | None = None, return_costs: bool = False):
    """Monotone simplifications minimising ``sum_k w_k |S_k|``.

    Costs are built from the finest scale up; the solution is read off from
    the coarsest scale down.  ``errors`` (optional) supplies the shortcut
    error table, in which case graphs are filtered from it.
    """
    scales = _as_scales(scales)
    measure = Measure.parse(measure)
    _check_errors(curve, errors)
    provider = _Graphs(curve, measure, errors)
    n = curve.n
    active = _active_scales(scales, provider.eps_max())
    table = _cost_tables(provider, scales, active)
    levels = _extract(table, n) + [_single(n)] * (scales.m - active)
    ps = ProgressiveSimplification(scales, levels, "optimal")
    return (ps, table) if return_costs else ps


def min_progressive(curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                    errors: ErrorMatrix | None = None, return_costs: bool = False):
    """Minimum cumulative size ``sum_k |S_k|`` (all weights one)."""
    scales = _as_scales(scales).unweighted()
    return min_progressive_weighted(curve, scales, measure, errors, return_costs)


def min_progressive_continuous(curve: Curve, measure: Measure | str = Measure.HAUSDORFF,
                               errors: ErrorMatrix | None = None) -> ContinuousSimplification:
    """Minimise the integral of ``|S_eps|`` over ``[0, eps_M]``.

    Breakpoints are the distinct shortcut errors up to ``eps_M``; each gets
    the weight of the gap to the next one.
    """
    measure = Measure.parse(measure)
    _check_errors(curve, errors)
    em = errors if errors is not None else _Graphs(curve, measure).matrix()
    n = curve.n
    eps_max = em.eps_max
    values = em.distinct_values(upto=eps_max)
    if len(values) < 2:
        return ContinuousSimplification([(float(eps_max), _single(n))], 0.0)
    scales = ScaleSequence(values[:-1], np.diff(values))
    ps = min_progressive_weighted(curve, scales, measure, em)
    points = [(float(e), s) for e, s in zip(scales.eps, ps.levels)]
    points.append((float(eps_max), _single(n)))
    return ContinuousSimplification(points, ps.weighted_size)


# ---------------------------------------------------------------------------
# greedy heuristics

def _min_link(g: ShortcutIntervalSet, a: int, b: int, cutoff: float) -> list[int]:
    return list(range_query_shortest_path(g, a, b, cutoff).vertices)


def greedy_top_down(curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                    errors: ErrorMatrix | None = None, cutoff: float = 4.0):
    """Min-link at the coarsest scale, each edge refined by min-link below."""
    scales = _as_scales(scales)
    measure = Measure.parse(measure)
    _check_errors(curve, errors)
    provider = _Graphs(curve, measure, errors)
    n = curve.n
    active = _active_scales(scales, provider.eps_max())
    levels = [_single(n)] * (scales.m - active)
    path = [0, n - 1]
    for k in range(active - 1, -1, -1):
        g = provider.get(scales.eps[k])
        new = [0]
        for a, b in zip(path, path[1:]):
            new.extend(_min_link(g, a, b, cutoff)[1:])
        path = new
        levels.insert(0, tuple(path))
    return ProgressiveSimplification(scales, levels, "greedy-td")


def greedy_bottom_up(curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                     errors: ErrorMatrix | None = None, cutoff: float = 4.0):
    """Min-link at the finest scale; coarser graphs keep only the rows of
    vertices chosen one scale below.

    Rows of dropped vertices are empty, so no path can pass through them;
    errors are still measured against the full curve.
    """
    scales = _as_scales(scales)
    measure = Measure.parse(measure)
    _check_errors(curve, errors)
    provider = _Graphs(curve, measure, errors)
    n = curve.n
    active = _active_scales(scales, provider.eps_max())
    levels = []
    mask = None
    for k in range(active):
        g = provider.get(scales.eps[k], mask)
        path = _min_link(g, 0, n - 1, cutoff)
        levels.append(tuple(path))
        mask = np.zeros(n, dtype=bool)
        mask[path] = True
    levels += [_single(n)] * (scales.m - active)
    return ProgressiveSimplification(scales, levels, "greedy-bu")


def greedy_bottom_up_cao(curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                         errors: ErrorMatrix | None = None, cutoff: float = 4.0):
    """Each scale simplifies the previous simplification, not the input.

    Only the cumulative bound ``sum_{l <= k} eps_l`` holds against the input
    curve.
    """
    scales = _as_scales(scales)
    measure = Measure.parse(measure)
    _check_errors(curve, errors)
    n = curve.n
    active = _active_scales(scales, _Graphs(curve, measure, errors).eps_max())
    levels = []
    current = list(range(n))
    for k in range(active):
        sub = curve.subcurve(current)
        sub_errors = None
        if errors is not None and measure is not Measure.HAUSDORFF and len(current) == n:
            sub_errors = errors
        g = _Graphs(sub, measure, sub_errors).get(scales.eps[k])
        path = _min_link(g, 0, sub.n - 1, cutoff)
        current = [current[v] for v in path]
        levels.append(tuple(current))
    levels += [_single(n)] * (scales.m - active)
    return ProgressiveSimplification(scales, levels, "greedy-bu-cao")


# ---------------------------------------------------------------------------
# Douglas-Peucker

@njit(cache=True)
def _dp_kernel(xs, ys, a, b, eps, keep):
    stack = [(a, b)]
    while len(stack) > 0:
        i, j = stack.pop()
        keep[i] = True
        keep[j] = True
        best = -1.0
        split = -1
        for k in range(i + 1, j):
            d = seg_dist(xs[k], ys[k], xs[i], ys[i], xs[j], ys[j])
            if d > best:
                best = d
                split = k
        if split >= 0 and best > eps:
            stack.append((split, j))
            stack.append((i, split))


def _dp_range(xs, ys, a: int, b: int, eps: float) -> list[int]:
    keep = np.zeros(len(xs), dtype=np.bool_)
    _dp_kernel(xs, ys, a, b, eps, keep)
    return [int(v) for v in np.flatnonzero(keep[a:b + 1]) + a]


def douglas_peucker(curve: Curve, eps: float) -> tuple[int, ...]:
    """Split at the farthest vertex (ties to the smaller index) until every
    edge is within ``eps`` of its subcurve."""
    if not eps >= 0:
        raise InputError("eps must be non-negative")
    xs = np.ascontiguousarray(curve.xy[:, 0])
    ys = np.ascontiguousarray(curve.xy[:, 1])
    return tuple(_dp_range(xs, ys, 0, curve.n - 1, float(eps)))


def dp_progressive(curve: Curve, scales, direction: str = "td"):
    """Douglas-Peucker per scale, refined downwards (``td``) or chained on
    the previous result (``bu``)."""
    scales = _as_scales(scales)
    direction = direction.lower()
    if direction not in ("td", "bu"):
        raise InputError("direction must be 'td' or 'bu'")
    n = curve.n
    active = _active_scales(scales, shortcut_error(curve, 0, n - 1, Measure.HAUSDORFF))
    xs = np.ascontiguousarray(curve.xy[:, 0])
    ys = np.ascontiguousarray(curve.xy[:, 1])
    levels = []
    if direction == "td":
        path = [0, n - 1]
        for k in range(active - 1, -1, -1):
            new = [0]
            for a, b in zip(path, path[1:]):
                new.extend(_dp_range(xs, ys, a, b, scales.eps[k])[1:])
            path = new
            levels.insert(0, tuple(path))
    else:
        current = list(range(n))
        for k in range(active):
            sub = douglas_peucker(curve.subcurve(current), scales.eps[k])
            current = [current[v] for v in sub]
            levels.append(tuple(current))
    levels += [_single(n)] * (scales.m - active)
    return ProgressiveSimplification(scales, levels, f"dp-{direction}")


# ---------------------------------------------------------------------------
# exhaustive oracle

BRUTE_MAX_N = 12
BRUTE_MAX_M = 64


def _superset_min(F: np.ndarray, bits: int):
    """For every mask, min of F over its supersets and one argmin."""
    G = F.copy()
    arg = np.arange(len(F))
    masks = np.arange(len(F))
    for b in range(bits):
        lo = masks[(masks >> b) & 1 == 0]
        hi = lo | (1 << b)
        better = G[hi] < G[lo]
        G[lo[better]] = G[hi[better]]
        arg[lo[better]] = arg[hi[better]]
    return G, arg


def brute_force_min_progressive(curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                                errors: ErrorMatrix | None = None) -> ProgressiveSimplification:
    """Exhaustive search over every vertex subset at every scale.

    Refuses curves above 12 vertices or more than 64 scales.
    """
    scales = _as_scales(scales)
    n = curve.n
    if n > BRUTE_MAX_N or scales.m > BRUTE_MAX_M:
        raise InputError(f"brute force is limited to n <= {BRUTE_MAX_N}, m <= {BRUTE_MAX_M}")
    _check_errors(curve, errors)
    em = errors if errors is not None else compute_all_errors_naive(curve, measure)
    if scales.m == 0:
        return ProgressiveSimplification(scales, [], "brute-force")
    bits = n - 2
    count = 1 << bits
    worst = np.empty(count)
    size = np.empty(count)
    for mask in range(count):
        verts = [0] + [t + 1 for t in range(bits) if mask >> t & 1] + [n - 1]
        worst[mask] = max(em[a, b] for a, b in zip(verts, verts[1:]))
        size[mask] = len(verts)
    F = np.where(worst <= scales.eps[0], scales.weights[0] * size, np.inf)
    choices = []
    for k in range(1, scales.m):
        G, arg = _superset_min(F, bits)
        F = np.where(worst <= scales.eps[k], scales.weights[k] * size + G, np.inf)
        choices.append(arg)
    mask = int(np.argmin(F))
    chain = [mask]
    for arg in reversed(choices):
        chain.append(int(arg[chain[-1]]))
    levels = []
    for mask in reversed(chain):
        levels.append(tuple([0] + [t + 1 for t in range(bits) if mask >> t & 1] + [n - 1]))
    return ProgressiveSimplification(scales, levels, "brute-force")


# ---------------------------------------------------------------------------
# checks

def is_subsequence(small, big) -> bool:
    it = iter(big)
    return all(v in it for v in small)


def check_monotone(ps: ProgressiveSimplification, n: int) -> None:
    for k, s in enumerate(ps.levels):
        if len(s) < 2 or s[0] != 0 or s[-1] != n - 1 or any(b <= a for a, b in zip(s, s[1:])):
            raise AssertionError(f"level {k} is not a simplification of the {n}-vertex curve")
    for k in range(len(ps.levels) - 1):
        if not is_subsequence(ps.levels[k + 1], ps.levels[k]):
            raise AssertionError(f"level {k + 1} is not contained in level {k}")


def edge_errors(curve: Curve, level, measure: Measure | str = Measure.HAUSDORFF,
                errors: ErrorMatrix | None = None) -> list[float]:
    if errors is not None:
        return [errors[a, b] for a, b in zip(level, level[1:])]
    return [shortcut_error(curve, a, b, measure) for a, b in zip(level, level[1:])]


def check_valid(curve: Curve, ps: ProgressiveSimplification,
                measure: Measure | str = Measure.HAUSDORFF, errors: ErrorMatrix | None = None,
                cumulative: bool = False, slack: float = 0.0) -> None:
    """Every edge of S_k within eps_k of the input (or within the running
    sum of tolerances when ``cumulative``)."""
    bound = 0.0
    for k, (eps, level) in enumerate(zip(ps.scales.eps, ps.levels)):
        bound = bound + eps if cumulative else eps
        worst = max(edge_errors(curve, level, measure, errors), default=0.0)
        if worst > bound + slack:
            raise AssertionError(f"level {k}: edge error {worst!r} exceeds {bound!r}")


def covering_cost(ps: ProgressiveSimplification, k: int, i: int, j: int) -> float:
    """``sum_{l <= k} w_l * |edges of S_l inside [i, j]|``."""
    total = 0.0
    for level, w in zip(ps.levels[:k + 1], ps.scales.weights):
        total += w * sum(1 for a, b in zip(level, level[1:]) if i <= a and b <= j)
    return total


def lemma1_violations(table: CostTable, scales: ScaleSequence, rtol: float = 1e-9) -> list:
    """Shortcuts valid one scale lower whose cost is not the previous cost
    plus the weight, or whose previous cost is beaten by a fresh path search."""
    scales = _as_scales(scales)
    bad = []
    for k in range(1, len(table)):
        prev = table.graphs[k - 1]
        for i, j, c in table.items(k - 1):
            ck = table.cost(k, i, j)
            fresh = min_cost_path(prev, table.costs[k - 1], i, j, table.offsets[k - 1]).cost
            want = c + scales.weights[k]
            if not (math.isclose(ck, want, rel_tol=rtol, abs_tol=rtol)
                    and math.isclose(fresh, c, rel_tol=rtol, abs_tol=rtol)):
                bad.append((k, i, j, ck, want, fresh))
    return bad


def lemma2_violations(table: CostTable, ps: ProgressiveSimplification, rtol: float = 1e-9) -> list:
    """Edges of the output whose cost differs from the edges they cover."""
    bad = []
    for k in range(len(table)):
        level = ps.levels[k]
        for a, b in zip(level, level[1:]):
            c = table.cost(k, a, b)
            want = covering_cost(ps, k, a, b)
            if not math.isclose(c, want, rel_tol=rtol, abs_tol=rtol):
                bad.append((k, a, b, c, want))
    return bad


# ---------------------------------------------------------------------------
# scale sampling

def sample_scales(em: ErrorMatrix, count: int, rule: str = "decile") -> ScaleSequence:
    """Linearly sample ``count`` tolerances from the sorted positive errors.

    ``rule="decile"`` samples from the smallest tenth of them, ``"all"`` from
    every one.  Repeated values are dropped, so fewer scales may result.
    """
    if count < 1:
        raise InputError("count must be at least 1")
    pool = np.sort(em.values[em.values > 0])
    if len(pool) == 0:
        raise InputError("all shortcut errors are zero; pass explicit scales instead")
    if rule in ("decile", "smallest-decile"):
        pool = pool[:max(1, math.ceil(0.1 * len(pool)))]
    elif rule != "all":
        raise InputError(f"unknown sampling rule {rule!r}")
    N = len(pool)
    if count == 1:
        idx = [math.floor((N - 1) / 2 + 0.5)]
    else:
        idx = [math.floor(k * (N - 1) / (count - 1) + 0.5) for k in range(count)]
    return ScaleSequence(sorted({float(pool[i]) for i in idx}))


ALGORITHMS = {
    "optimal": min_progressive,
    "greedy-td": greedy_top_down,
    "greedy-bu": greedy_bottom_up,
    "greedy-bu-cao": greedy_bottom_up_cao,
    "dp-td": lambda c, s, measure=Measure.HAUSDORFF, errors=None, **kw: dp_progressive(c, s, "td"),
    "dp-bu": lambda c, s, measure=Measure.HAUSDORFF, errors=None, **kw: dp_progressive(c, s, "bu"),
}


def run_algorithm(name: str, curve: Curve, scales, measure: Measure | str = Measure.HAUSDORFF,
                  errors: ErrorMatrix | None = None, cutoff: float = 4.0):
    if name not in ALGORITHMS:
        raise InputError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    measure = Measure.parse(measure)
    if name.startswith("dp-") and measure is not Measure.HAUSDORFF:
        raise InputError("Douglas-Peucker is defined for the Hausdorff measure only")
    if name == "optimal":
        return min_progressive(curve, scales, measure, errors)
    if name.startswith("dp-"):
        return ALGORITHMS[name](curve, scales)
    return ALGORITHMS[name](curve, scales, measure, errors, cutoff)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import discrete_frechet, random_curve, resample, seg_dist_ref
from progsimp.geometry import (Curve, InputError, Measure, area_error, collapse_duplicates,
                               frechet_error, frechet_valid, hausdorff_error,
                               point_segment_distance, shortcut_error)


@pytest.mark.parametrize("p, a, b, want", [
    ((1, 1), (0, 0), (2, 0), 1.0),
    ((0, 0), (0, 0), (3, 0), 0.0),
    ((5, 0), (0, 0), (3, 0), 2.0),
    ((3, 4), (0, 0), (0, 0), 5.0),
])
def test_point_segment_distance(p, a, b, want):
    assert point_segment_distance(p, a, b) == want


def test_point_segment_distance_rejects_nan():
    with pytest.raises(InputError):
        point_segment_distance((math.nan, 0), (0, 0), (1, 0))


@given(st.lists(st.floats(-100, 100), min_size=6, max_size=6))
def test_point_segment_distance_matches_projection(v):
    p, a, b = (v[0], v[1]), (v[2], v[3]), (v[4], v[5])
    assert point_segment_distance(p, a, b) == pytest.approx(seg_dist_ref(p, a, b), abs=1e-9)


def test_curve_validation():
    with pytest.raises(InputError):
        Curve([(0, 0)])
    with pytest.raises(InputError):
        Curve([(0, 0), (0, 0), (1, 1)])
    with pytest.raises(InputError):
        Curve([(0, 0), (math.inf, 1)])
    c = Curve([(0, 0), (1, 1), (0, 0)])
    assert c.n == 3 and c[1] == (1.0, 1.0)
    assert not c.xy.flags.writeable


def test_collapse_duplicates():
    xy, dropped = collapse_duplicates([(0, 0), (1, 1), (1, 1), (2, 0), (2, 0), (2, 0)])
    assert dropped == 3
    assert xy.tolist() == [[0, 0], [1, 1], [2, 0]]


def test_hausdorff_fixtures(Z, L):
    assert hausdorff_error(L, 0, 3) == 0.0
    assert hausdorff_error(Z, 0, 2) == 1.0
    # brute force over the interior vertices of (1,4) in 1-based terms
    want = max(seg_dist_ref(Z.xy[k], Z.xy[0], Z.xy[3]) for k in (1, 2))
    assert hausdorff_error(Z, 0, 3) == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(2 / math.sqrt(10), abs=1e-12)


def test_frechet_fixtures(Z, L):
    assert frechet_valid(L, 0, 3, 0.0)
    assert not frechet_valid(Z, 0, 4, 0.9)
    assert frechet_valid(Z, 0, 4, 1.0)
    assert frechet_error(Z, 0, 4) == pytest.approx(1.0, abs=1e-9)


def test_frechet_backtracking_curve():
    # the subcurve runs back past p_i, so Frechet exceeds Hausdorff
    c = Curve([(0, 0), (2, 0), (-1, 0), (3, 0)])
    assert hausdorff_error(c, 0, 3) == 1.0
    assert frechet_error(c, 0, 3) == pytest.approx(1.5, abs=1e-9)


def test_area_fixtures(Z, L):
    assert area_error(L, 0, 3) == 0.0
    assert area_error(Z, 0, 2) == 1.0
    xy = Z.xy
    # trapezoid formula, independent of the shoelace cross products
    closed = np.vstack([xy, xy[:1]])
    trap = 0.5 * abs(np.sum((closed[1:, 0] + closed[:-1, 0]) * (closed[1:, 1] - closed[:-1, 1])))
    assert area_error(Z, 0, 4) == pytest.approx(trap) == pytest.approx(2.0)


def test_shortcut_error_dispatch(Z, L):
    assert shortcut_error(Z, 0, 4, "hausdorff") == 1.0
    assert shortcut_error(Z, 1, 3, Measure.HAUSDORFF) == 1.0
    assert shortcut_error(L, 0, 2, "area") == 0.0
    with pytest.raises(InputError):
        shortcut_error(Z, 0, 4, "manhattan")
    with pytest.raises(InputError):
        shortcut_error(Z, 3, 3)


def test_adjacent_shortcuts_are_free():
    rng = np.random.default_rng(0)
    c = random_curve(rng, 30)
    for m in Measure:
        assert all(shortcut_error(c, i, i + 1, m) == 0.0 for i in range(c.n - 1))


def test_hausdorff_matches_dense_sampling():
    rng = np.random.default_rng(1)
    for _ in range(100):
        c = random_curve(rng, int(rng.integers(2, 51)), "uniform")
        i = int(rng.integers(0, c.n - 1))
        j = int(rng.integers(i + 1, c.n))
        samples = resample(c.xy[i:j + 1], 0.05)
        want = max(seg_dist_ref(p, c.xy[i], c.xy[j]) for p in samples)
        assert hausdorff_error(c, i, j) == pytest.approx(want, abs=1e-9)


def test_frechet_at_least_hausdorff():
    rng = np.random.default_rng(2)
    for _ in range(50):
        c = random_curve(rng, int(rng.integers(3, 15)))
        for i in range(c.n - 1):
            for j in range(i + 1, c.n):
                assert frechet_error(c, i, j) >= hausdorff_error(c, i, j)


def test_frechet_against_discrete_oracle():
    rng = np.random.default_rng(3)
    step = 0.01
    for _ in range(15):
        c = random_curve(rng, int(rng.integers(3, 7)), "uniform")
        sub = resample(c.xy, step)
        seg = resample(c.xy[[0, -1]], step)
        # discrete on dense samples is within one step of the continuous value
        assert abs(frechet_error(c, 0, c.n - 1) - discrete_frechet(sub, seg)) <= step


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 3), st.floats(0, 3))
def test_frechet_valid_monotone(seed, e1, e2):
    c = random_curve(np.random.default_rng(seed), 8)
    lo, hi = sorted((e1, e2))
    if frechet_valid(c, 0, c.n - 1, lo):
        assert frechet_valid(c, 0, c.n - 1, hi)


def test_frechet_error_always_valid():
    rng = np.random.default_rng(4)
    for _ in range(100):
        c = random_curve(rng, int(rng.integers(3, 12)), "grid")
        e = frechet_error(c, 0, c.n - 1)
        assert frechet_valid(c, 0, c.n - 1, e)

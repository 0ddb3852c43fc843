import numpy as np
import pytest

from helpers import L_POINTS, Z_POINTS, convex_hull_ref, random_curve, seg_dist_ref
from progsimp.hull import AnnotatedHull


def pts(h, idx):
    return [tuple(h.xy[k]) for k in idx]


def test_three_point_hull():
    h = AnnotatedHull([(0, 0), (1, 1), (2, 0)])
    h.insert(1).insert(2)
    assert pts(h, h.upper_chain()) == [(0, 0), (1, 1), (2, 0)]
    assert pts(h, h.lower_chain()) == [(0, 0), (2, 0)]


def test_inside_point_leaves_chains():
    h = AnnotatedHull([(0, 0), (4, 4), (8, 0), (4, 1)])
    h.insert(1).insert(2)
    before = (h.upper_chain(), h.lower_chain())
    h.insert(3)
    assert (h.upper_chain(), h.lower_chain()) == before


def test_root_annotation_on_Z():
    h = AnnotatedHull(Z_POINTS)
    for k in range(1, 5):
        h.insert(k)
    far = h.root_annotation("upper")
    assert tuple(h.xy[far]) == (4, 0)
    # hull vertices and their distances from the anchor, enumerated by hand
    d = {k: np.hypot(*h.xy[k]) for k in h.vertices()}
    assert max(d.values()) == 4.0


def test_extreme_queries():
    h = AnnotatedHull(Z_POINTS)
    for k in range(1, 5):
        h.insert(k)
    assert h.extreme((0, 1)) == 1
    assert h.extreme((0, -1)) == 0
    g = AnnotatedHull(L_POINTS)
    for k in range(1, 4):
        g.insert(k)
    assert tuple(g.xy[g.extreme((1, 0))]) == (3, 0)


def test_region_left_queries():
    # anchor p_2 (0-based 1), segment towards p_4; points p_1..p_5 all inserted
    h = AnnotatedHull(Z_POINTS, anchor=1)
    for k in (0, 2, 3, 4):
        h.insert(k)
    assert h.farthest_in_region_left(Z_POINTS[3]) == 0
    h = AnnotatedHull(Z_POINTS, anchor=0)
    for k in range(1, 5):
        h.insert(k)
    assert h.farthest_in_region_left(Z_POINTS[4]) is None
    g = AnnotatedHull(L_POINTS, anchor=1)
    for k in (0, 2, 3):
        g.insert(k)
    assert g.farthest_in_region_left(L_POINTS[2]) == 0


@pytest.mark.parametrize("kind", ["walk", "uniform", "grid", "collinear"])
def test_chains_match_from_scratch_hull(kind):
    rng = np.random.default_rng(sum(map(ord, kind)))
    for _ in range(8):
        c = random_curve(rng, int(rng.integers(2, 101)), kind)
        h = AnnotatedHull(c.xy, anchor=0)
        for k in range(1, c.n):
            h.insert(k)
            upper, lower = convex_hull_ref(c.xy[:k + 1])
            assert pts(h, h.upper_chain()) == upper
            assert pts(h, h.lower_chain()) == lower
            h.check_annotations()


def test_annotations_from_a_middle_anchor():
    rng = np.random.default_rng(11)
    c = random_curve(rng, 60)
    h = AnnotatedHull(c.xy, anchor=20)
    for k in range(21, 60):
        h.insert(k)
        h.check_annotations()
        far = h.root_annotation("upper")
        chain = h.upper_chain()
        d = [np.hypot(*(c.xy[v] - c.xy[20])) for v in chain]
        assert np.hypot(*(c.xy[far] - c.xy[20])) == max(d)


def candidate_error(c, i, j):
    """Max segment distance over the four region candidates for (i, j)."""
    fwd = AnnotatedHull(c.xy, anchor=i)
    for k in range(i + 1, j + 1):
        fwd.insert(k)
    cand = fwd.candidates(j)
    rev_xy = c.xy[::-1]
    n = c.n
    back = AnnotatedHull(rev_xy, anchor=n - 1 - j)
    for k in range(n - j, n - i):
        back.insert(k)
    right = back.farthest_in_region_left(c.xy[i])
    picks = [v for v in (cand["top"], cand["bottom"], cand["left"]) if v is not None]
    if right is not None:
        picks.append(n - 1 - right)
    return max(seg_dist_ref(c.xy[v], c.xy[i], c.xy[j]) for v in picks)


def test_candidate_completeness():
    rng = np.random.default_rng(5)
    for kind in ("walk", "grid"):
        for _ in range(6):
            c = random_curve(rng, int(rng.integers(3, 16)), kind)
            for i in range(c.n - 1):
                for j in range(i + 1, c.n):
                    if np.array_equal(c.xy[i], c.xy[j]):
                        continue  # closed shortcut, scored from the anchor annotation
                    want = max((seg_dist_ref(c.xy[k], c.xy[i], c.xy[j])
                                for k in range(i + 1, j)), default=0.0)
                    assert candidate_error(c, i, j) == pytest.approx(want, abs=1e-12)

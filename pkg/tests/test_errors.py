import io
import math

import numpy as np
import pytest

from helpers import hausdorff_ref, random_curve
from progsimp.errors import (ErrorMatrix, compute_all_errors, compute_all_errors_hull,
                             compute_all_errors_naive)
from progsimp.geometry import InputError, Measure, area_error, frechet_error
from progsimp.synth import synth_curve

R10 = 2 / math.sqrt(10)


def test_naive_on_L(L):
    assert np.all(compute_all_errors_naive(L).values == 0.0)


def test_naive_hausdorff_on_Z(Z):
    em = compute_all_errors_naive(Z)
    want = {(0, 2): 1, (1, 3): 1, (2, 4): 1, (0, 3): R10, (1, 4): R10, (0, 4): 1}
    for i in range(4):
        for j in range(i + 1, 5):
            assert em[i, j] == pytest.approx(want.get((i, j), 0.0), abs=1e-12)
    assert em.eps_max == 1.0


def test_naive_area_on_Z(Z):
    em = compute_all_errors_naive(Z, "area")
    assert em[0, 2] == 1.0 and em[0, 4] == 2.0
    assert all(em[i, i + 1] == 0 for i in range(4))
    assert all(em[i, j] == area_error(Z, i, j) for i in range(4) for j in range(i + 1, 5))


def test_naive_matches_reference_loop():
    rng = np.random.default_rng(0)
    for _ in range(10):
        c = random_curve(rng, int(rng.integers(2, 40)))
        em = compute_all_errors_naive(c, block=7)
        for i in range(c.n - 1):
            for j in range(i + 1, c.n):
                assert em[i, j] == pytest.approx(hausdorff_ref(c.xy, i, j), abs=1e-12)


def test_frechet_matrix():
    c = random_curve(np.random.default_rng(1), 12)
    ef = compute_all_errors_naive(c, "frechet")
    eh = compute_all_errors_naive(c)
    assert np.all(ef.values >= eh.values)
    assert ef[2, 9] == frechet_error(c, 2, 9)


def test_hull_on_fixtures(Z, L):
    assert np.all(compute_all_errors_hull(L).values == 0.0)
    assert compute_all_errors_hull(Z).max_abs_diff(compute_all_errors_naive(Z)) <= 1e-9


@pytest.mark.parametrize("kind", ["walk", "uniform", "grid", "collinear"])
def test_hull_matches_naive(kind):
    rng = np.random.default_rng(7)
    for _ in range(25):
        c = random_curve(rng, int(rng.integers(2, 80)), kind)
        assert compute_all_errors_hull(c).max_abs_diff(compute_all_errors_naive(c)) <= 1e-9


def test_hull_thread_count_independent():
    c = synth_curve("random-walk", 150, 3)
    a = compute_all_errors_hull(c, threads=1)
    b = compute_all_errors_hull(c)
    assert np.array_equal(a.values, b.values)


def test_dispatch(Z):
    assert compute_all_errors(Z, method="hull").allclose(compute_all_errors(Z, method="naive"))
    with pytest.raises(InputError):
        compute_all_errors(Z, "area", method="hull")
    with pytest.raises(InputError):
        compute_all_errors(Z, method="magic")


def test_matrix_layout():
    em = ErrorMatrix(5, np.arange(10, dtype=float))
    assert em.row(0).tolist() == [0, 1, 2, 3]
    assert em.row(3).tolist() == [9]
    assert em[1, 2] == 4.0
    dense = em.to_dense()
    assert dense[1, 4] == 6.0 and dense[4, 1] == 0.0
    with pytest.raises(IndexError):
        em[2, 2]


def test_csv_round_trip():
    c = random_curve(np.random.default_rng(4), 30)
    em = compute_all_errors_naive(c)
    buf = io.StringIO()
    em.write_csv(buf)
    first = buf.getvalue().splitlines()[0]
    assert first.startswith("1,2,")
    buf.seek(0)
    back = ErrorMatrix.read_csv(buf)
    assert np.array_equal(back.values, em.values)


def test_csv_rejects_incomplete():
    with pytest.raises(InputError):
        ErrorMatrix.read_csv(io.StringIO("1,3,0.5\n"))
    with pytest.raises(InputError):
        ErrorMatrix.read_csv(io.StringIO("1,2,x\n"))


def test_measure_enum():
    assert Measure.parse("Frechet") is Measure.FRECHET

import math

import numpy as np
import pytest

from sphericallab import exceptions
from sphericallab import lattice
from sphericallab import maximal
from sphericallab.test import tlab
from sphericallab.test import tutils


def test_dual_exponent():
    assert maximal.dual_exponent(tutils.tpoint("1/2", "1/2").inv_r) == 2.0
    assert maximal.dual_exponent(1) == math.inf
    assert maximal.dual_exponent(0) == 1.0


def test_orbit_size():
    assert maximal.orbit_size((0, 0, 0)) == 1
    assert maximal.orbit_size((1, 0, 0)) == 6
    assert maximal.orbit_size((1, 1, 0)) == 12
    assert maximal.orbit_size((2, 1, 0)) == 24
    assert maximal.orbit_size((1, 1, 1)) == 8


def test_canonical_points():
    reps = maximal.canonical_points(2, 5)
    assert sorted(map(tuple, reps.tolist())) == [(0, 0), (1, 0), (1, 1), (2, 0)]
    reps = maximal.canonical_points(3, 10)
    total = sum(maximal.orbit_size(r) for r in reps.tolist())
    assert total == int(lattice.sphere_counts(3, 9).sum())


def test_is_symmetric():
    assert maximal.is_symmetric(maximal.family_set("ball", 2, 3))
    assert maximal.is_symmetric(np.zeros((1, 4), dtype=np.int64))
    assert not maximal.is_symmetric(np.array([[1, 0]]))
    assert not maximal.is_symmetric(np.array([[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1]]))


class TestRatio:
    def test_delta_five(self):
        est = maximal.restricted_ratio([[0] * 5], tutils.tpoint("1/2", "1/2"), 1, family="point")
        assert est.symmetric
        assert est.ratio == pytest.approx(math.sqrt(0.1375))
        assert est.size == 1
        assert est.bound == "lower"

    def test_symmetric_path_agrees(self):
        E = maximal.family_set("ball", 2, 3)
        point = tutils.tpoint("2/5", "1/2")
        fast = maximal.restricted_ratio(E, point, 2, symmetric=True)
        slow = maximal.restricted_ratio(E, point, 2, symmetric=False)
        assert fast.ratio == pytest.approx(slow.ratio, rel=1e-12)

    def test_sup_norm(self):
        est = maximal.restricted_ratio([[0, 0]], tutils.tpoint("0", "1"), 1)
        assert est.ratio == pytest.approx(0.25)

    def test_witness(self):
        est = maximal.restricted_ratio([[0, 1], [2, -1]], tutils.tpoint(), 1)
        assert est.witness == {"lower": [0, -1], "upper": [2, 1], "size": 2}
        assert not est.symmetric

    def test_bad_input(self):
        with pytest.raises(exceptions.EmptyInput):
            maximal.restricted_ratio([], tutils.tpoint(), 1)
        with pytest.raises(exceptions.LatticeError):
            maximal.restricted_ratio([[0, 0]], tutils.tpoint(), 3)

    def test_budget(self):
        with tlab.context(budget=50):
            with pytest.raises(exceptions.BudgetExceeded):
                maximal.restricted_ratio(maximal.family_set("ball", 2, 3), tutils.tpoint(), 2)


class TestFamilies:
    def test_shapes(self):
        assert maximal.family_set("point", 4, 3).tolist() == [[0, 0, 0]]
        assert len(maximal.family_set("box", 2, 2)) == 25
        ball = maximal.family_set("ball", 2, 2)
        assert len(ball) == 13
        shell = maximal.family_set("sphere_shell", 2, 2)
        norms = (shell * shell).sum(axis=1)
        assert norms.min() >= 4 and norms.max() < 9

    def test_scale(self):
        assert maximal.family_radius(4, 0.5) == 2
        assert maximal.family_radius(1, 0.1) == 1
        assert len(maximal.family_set("box", 4, 1, scale=0.5)) == 5

    def test_random_density(self):
        a = maximal.family_set("random_density", 4, 2, seed=3)
        b = maximal.family_set("random_density", 4, 2, seed=3)
        assert a.tolist() == b.tolist()
        assert [0, 0] in a.tolist()
        assert len(a) < 81

    def test_unknown(self):
        with pytest.raises(exceptions.SphericalLabException):
            maximal.family_set("torus", 2, 2)
        with pytest.raises(exceptions.SphericalLabException):
            maximal.scaling_fit("torus", tutils.tpoint(), 2, [1, 2])

    def test_budget(self):
        with tlab.context(budget=10):
            with pytest.raises(exceptions.BudgetExceeded):
                maximal.family_set("box", 4, 3)


class TestScaling:
    def test_point_family(self):
        report, estimates = maximal.scaling_fit("point", tutils.tpoint(), 3, [4, 1, 2])
        assert report.levels == [1, 2, 4]
        assert len(estimates) == 3
        assert report.theoretical == 0
        assert report.excess == pytest.approx(report.slope)
        assert all(r > 0 for r in report.ratios)

    def test_random_trials(self):
        report, estimates = maximal.scaling_fit(
            "random_density", tutils.tpoint("1/2", "1/3"), 2, [1, 2], scales=(0.5, 1.0), trials=2, seed=5
        )
        assert len(estimates) == 2 * 2 * 2
        for lv, best in zip(report.levels, report.ratios):
            assert best == max(e.ratio for e in estimates if e.level == lv)

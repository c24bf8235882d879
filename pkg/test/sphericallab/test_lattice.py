import fractions
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphericallab import arithmetic
from sphericallab import exceptions
from sphericallab import lattice
from sphericallab.test import tlab
from sphericallab.test import tutils

F = fractions.Fraction


class TestCounts:
    def test_two_squares(self):
        assert lattice.sphere_counts(2, 10).tolist() == [1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8]

    def test_jacobi(self):
        for n in range(1, 200, 2):
            assert lattice.sphere_count(4, n) == 8 * arithmetic.divisor_sum(n)

    def test_radius_set(self):
        assert lattice.radius_set(2, 1, 9) == [1, 2, 4, 5, 8]
        assert lattice.radius_set(3, 4, 4) == []
        assert 7 not in lattice.radius_set(3, 1, 16)

    def test_dimension(self):
        with pytest.raises(exceptions.LatticeError):
            lattice.sphere_counts(0, 5)
        with pytest.raises(exceptions.LatticeError):
            lattice.sphere_counts(lattice.MAX_DIMENSION + 1, 5)
        with pytest.raises(exceptions.LatticeError):
            lattice.sphere_points(3, -1)

    @settings(deadline=None)
    @given(st.integers(1, 5), st.integers(0, 60))
    def test_points_match_counts(self, d, n):
        pts = lattice.sphere_points(d, n)
        assert len(pts) == lattice.sphere_count(d, n)
        assert (pts * pts).sum(axis=1).tolist() == [n] * len(pts)
        assert len({tuple(p) for p in pts.tolist()}) == len(pts)


class TestLatticeFunction:
    def test_indicator(self):
        f = tutils.tindicator([[1, 2], [0, 0], [1, 2]])
        assert len(f) == 2
        assert f[(1, 2)] == 1.0
        assert f[(5, 5)] == 0.0
        assert not f.exact

    def test_exact(self):
        f = lattice.LatticeFunction.from_dict(2, {(0, 0): F(1, 3), (1, 0): 2})
        assert f.exact
        assert f.total() == F(7, 3)
        assert f.as_float().total() == pytest.approx(7 / 3)

    def test_from_arrays_sums_duplicates(self):
        f = lattice.LatticeFunction.from_arrays(
            np.array([[0, 0], [1, 1], [0, 0]]), np.array([1.0, 2.0, 3.0])
        )
        assert f.to_dict() == {(0, 0): 4.0, (1, 1): 2.0}

    def test_norms(self):
        f = lattice.LatticeFunction.from_dict(1, {(0,): 3.0, (2,): -4.0})
        assert f.norm(1) == 7.0
        assert f.norm(2) == pytest.approx(5.0)
        assert f.norm(math.inf) == 4.0
        assert lattice.LatticeFunction.zero(3).norm(2) == 0.0

    def test_dot_and_translate(self):
        f = tutils.tindicator([[0, 0], [1, 0]])
        g = f.translate([1, 0])
        assert f.dot(g) == 1.0
        assert g.support_box()[0].tolist() == [1, 0]

    def test_support_box_empty(self):
        with pytest.raises(exceptions.EmptyInput):
            lattice.LatticeFunction.zero(2).support_box()

    def test_state(self):
        f = lattice.LatticeFunction.from_dict(2, {(0, 1): F(1, 2), (3, -1): F(2)})
        g = lattice.LatticeFunction.from_state(f.get_state())
        assert g.to_dict() == f.to_dict()

    def test_mismatched(self):
        with pytest.raises(exceptions.LatticeError):
            lattice.LatticeFunction(2, np.zeros((2, 2)), np.zeros(3))


class TestAverage:
    def test_delta(self):
        avg = lattice.spherical_average(lattice.LatticeFunction.delta(2), 1)
        assert avg.exact
        assert avg.to_dict() == {(-1, 0): F(1, 4), (0, -1): F(1, 4), (0, 1): F(1, 4), (1, 0): F(1, 4)}

    def test_empty_sphere(self):
        with pytest.raises(exceptions.EmptySphere):
            lattice.spherical_average(lattice.LatticeFunction.delta(2), 3)

    def test_zero_function(self):
        assert len(lattice.spherical_average(lattice.LatticeFunction.zero(3), 1)) == 0

    def test_budget(self):
        with tlab.context(budget=3):
            with pytest.raises(exceptions.BudgetExceeded):
                lattice.spherical_average(lattice.LatticeFunction.delta(2), 5)

    @settings(deadline=None, max_examples=30)
    @given(
        st.integers(1, 4),
        st.integers(1, 30),
        st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6),
    )
    def test_mass_preserved(self, d, n, pts):
        if lattice.sphere_count(d, n) == 0:
            return
        f = lattice.LatticeFunction.indicator([p[:d] for p in pts], exact=True)
        avg = lattice.spherical_average(f, n)
        assert avg.total() == f.total()

    def test_float_matches_exact(self):
        f = tutils.tindicator([[0, 0, 0], [1, 2, 0], [3, 0, -1]])
        exact = lattice.spherical_average(lattice.LatticeFunction.indicator(f.coords, exact=True), 9)
        approx = lattice.spherical_average(f, 9)
        assert approx.to_dict() == pytest.approx({k: float(v) for k, v in exact.to_dict().items()})


class TestMaximal:
    def test_dyadic_delta(self):
        out = lattice.dyadic_maximal(lattice.LatticeFunction.delta(5), 1)
        assert out[(1, 0, 0, 0, 0)] == F(1, 10)
        assert out[(1, 1, 0, 0, 0)] == F(1, 40)
        assert out[(1, 1, 1, 0, 0)] == F(1, 80)
        assert out[(2, 0, 0, 0, 0)] == 0
        assert len(out) == 10 + 40 + 80

    def test_dyadic_at_matches_scatter(self):
        f = tutils.tindicator([[0, 0, 0], [1, 0, 0], [2, 1, 0]])
        full = lattice.dyadic_maximal(f, 2)
        at = lattice.dyadic_maximal_at(f, 2, full.coords)
        assert at.tolist() == pytest.approx(full.values.tolist())

    def test_level(self):
        with pytest.raises(exceptions.LatticeError):
            lattice.dyadic_maximal(lattice.LatticeFunction.delta(2), 0)

    def test_full_gather_exact(self):
        f = lattice.LatticeFunction.delta(2)
        report = lattice.full_maximal(f, None, at=np.array([[1, 0], [3, 4]]))
        assert report.certified
        assert report.values[(1, 0)] == pytest.approx(0.25)
        # |x|² = 25 has r_2 = 12 representations
        assert report.values[(3, 4)] == pytest.approx(1 / 12)

    def test_full_uncertified_warns(self):
        with tlab.context() as tctx:
            report = lattice.full_maximal(lattice.LatticeFunction.delta(2), 4)
            assert report.maximum == 0.25
            assert report.tail_bound == 0.25
            assert not report.certified
            assert tctx.master.has_log("not certified", "warn")

    def test_full_needs_n_max(self):
        with pytest.raises(exceptions.LatticeError):
            lattice.full_maximal(lattice.LatticeFunction.delta(2), None)
        with pytest.raises(exceptions.LatticeError):
            lattice.full_maximal(lattice.LatticeFunction.delta(2), 0)

    def test_full_scatter_matches_gather(self):
        f = tutils.tindicator([[0, 0], [1, 1], [2, 0]])
        scatter = lattice.full_maximal(f, 10)
        gather = lattice.full_maximal(f, 10, at=scatter.values.coords)
        assert gather.values.values.tolist() == pytest.approx(scatter.values.values.tolist())

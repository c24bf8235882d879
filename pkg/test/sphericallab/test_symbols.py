import math

import numpy as np
import pytest

from sphericallab import arithmetic
from sphericallab import exceptions
from sphericallab import lattice
from sphericallab import symbols
from sphericallab.symbols import bump
from sphericallab.symbols import kernel
from sphericallab.symbols import sphere
from sphericallab.test import tlab


@pytest.fixture(scope="module")
def small_bump():
    return bump.BumpProfile(extent=16.0, step=1 / 16)


def tcontext(small_bump, d=2, n=5, level=2):
    return symbols.SymbolContext(d=d, n=n, level=level, bump=small_bump)


class TestBump:
    def test_profile(self):
        assert bump.phi(0.0) == pytest.approx(1.0)
        assert bump.phi(0.125) == pytest.approx(1.0)
        assert bump.phi(-0.125) == pytest.approx(1.0)
        assert bump.phi(0.25) == 0.0
        assert bump.phi(0.3) == 0.0
        assert 0 < bump.phi(0.2) < 1

    def test_smooth_step(self):
        s = bump.smooth_step(np.array([-1.0, 0.0, 0.5, 1.0, 2.0]))
        assert s.tolist() == pytest.approx([0.0, 0.0, 0.5, 1.0, 1.0])

    def test_table_matches_quadrature(self, small_bump):
        for z in (0.0, 0.5, 1.3, 5.0, 11.7):
            assert float(small_bump.check(z)) == pytest.approx(small_bump.check_exact(z), abs=1e-6)

    def test_check(self, small_bump):
        assert 0.25 < float(small_bump.check(0.0)) < 0.5
        assert float(small_bump.check(-2.5)) == pytest.approx(float(small_bump.check(2.5)))
        assert float(small_bump.check(17.0)) == 0.0

    def test_check_q(self, small_bump):
        z = np.array([1.0, -3.0])
        expected = float(small_bump.check(0.5)) * float(small_bump.check(1.5)) / 4
        assert float(small_bump.check_q(z, 2)) == pytest.approx(expected)

    def test_bad_table(self):
        with pytest.raises(ValueError):
            bump.BumpProfile(extent=0)

    def test_default_is_shared(self):
        with tlab.context(bump_table_extent=8.0, bump_table_step=0.25):
            a = bump.default_bump()
            assert a is bump.default_bump()
            assert a.extent == 8.0


class TestSphere:
    def test_one_dimension(self):
        assert sphere.sphere_ft(1, 2.0, 0.3) == pytest.approx(math.cos(2 * math.pi * 0.6))

    def test_three_dimensions(self):
        a = 2 * math.pi * 1.5 * 0.3
        assert sphere.sphere_ft(3, 1.5, 0.3) == pytest.approx(math.sin(a) / a, abs=1e-10)

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_closed_form(self, d):
        r = np.array([0.0, 0.05, 0.3, 1.1, 2.7])
        closed = sphere.sphere_ft_closed(d, 2.0, r)
        quad = [sphere.sphere_ft(d, 2.0, v) for v in r]
        assert closed.tolist() == pytest.approx(quad, abs=1e-9)
        assert closed[0] == 1.0

    def test_bad_input(self):
        with pytest.raises(ValueError):
            sphere.sphere_ft(3, 0.0, 1.0)
        with pytest.raises(ValueError):
            sphere.sphere_ft_closed(0, 1.0, 1.0)

    def test_decay(self):
        assert sphere.decay_envelope(5, 2.0, 0.0) == 1.0
        assert sphere.decay_envelope(5, 2.0, 1.5) == pytest.approx(4.0 ** -2)


class TestSymbol:
    def test_context(self, small_bump):
        c = tcontext(small_bump)
        assert c.count == 8
        assert c.lam == pytest.approx(math.sqrt(5))
        with pytest.raises(exceptions.EmptySphere):
            symbols.SymbolContext(d=3, n=7, level=2, bump=small_bump)
        with pytest.raises(exceptions.ArithmeticInputError):
            symbols.SymbolContext(d=3, n=20, level=2, bump=small_bump)
        with pytest.raises(exceptions.ArithmeticInputError):
            symbols.SymbolContext(d=3, n=1, level=0, bump=small_bump)

    def test_exact_symbol(self, small_bump):
        c = tcontext(small_bump, d=3, n=1, level=1)
        assert symbols.exact_symbol(c, [0, 0, 0]) == pytest.approx(1.0)
        assert symbols.exact_symbol(c, [0.5, 0, 0]) == pytest.approx(1 / 3)
        values = symbols.exact_symbol(c, symbols.frequency_grid(3, 4))
        assert np.abs(values.imag).max() < 1e-12

    def test_exact_symbol_matches_fft(self, small_bump):
        # the DFT of the average of a delta on a periodic grid samples the symbol
        c = tcontext(small_bump)
        N = 16
        grid = np.zeros((N, N))
        for y in lattice.sphere_points(2, 5).tolist():
            grid[y[0] % N, y[1] % N] += 1 / 8
        fft = np.fft.fft2(grid)
        k = np.array([[3, 5]]) / N
        assert complex(symbols.exact_symbol(c, k)[0]) == pytest.approx(complex(fft[3, 5]))

    def test_main_symbol_at_origin(self, small_bump):
        c = tcontext(small_bump, d=3, n=3, level=1)
        assert symbols.main_symbol(c, [0, 0, 0]) == pytest.approx(1.0)

    def test_blocks_sum_to_main(self, small_bump):
        c = tcontext(small_bump, d=2, n=25, level=4)
        xi = symbols.frequency_grid(2, 12)
        total = sum(symbols.main_symbol(c, xi, block=Q) for Q in (1, 2, 4))
        assert np.abs(total - symbols.main_symbol(c, xi)).max() < 1e-12

    def test_bad_block(self, small_bump):
        with pytest.raises(exceptions.ArithmeticInputError):
            symbols.main_symbol(tcontext(small_bump), [0, 0], block=0)

    def test_frequency_grid(self):
        g = symbols.frequency_grid(2, 4)
        assert g.shape == (16, 2)
        assert g.min() == -0.5
        assert g.max() == 0.25

    def test_residual(self, small_bump):
        report = symbols.residual_symbol_sup(tcontext(small_bump), 8)
        assert report.resolution == 8
        assert len(report.argmax) == 2
        assert 0 <= report.sup < 10
        with pytest.raises(ValueError):
            symbols.residual_symbol_sup(tcontext(small_bump), 0)

    def test_block_l2(self, small_bump):
        out = symbols.block_l2_bound(2, tcontext(small_bump, d=4, n=25, level=4), 4)
        assert out["scale"] == 1.0
        assert out["ratio"] == out["sup"]


class TestKernel:
    def test_directions(self):
        dirs = kernel.sphere_directions(3, 64, seed=1)
        assert dirs.shape == (64, 3)
        assert np.linalg.norm(dirs, axis=1) == pytest.approx(np.ones(64))
        assert np.abs(dirs.sum(axis=0)).max() < 1e-9
        with pytest.raises(ValueError):
            kernel.sphere_directions(3, 48, seed=1)

    @pytest.mark.parametrize("q", [1, 2, 3, 5, 6])
    def test_arithmetic_factor(self, q):
        for x in ([0, 0], [1, 2], [3, -1, 4]):
            n = 5
            m = sum(v * v for v in x) - n
            assert kernel.arithmetic_factor(q, n, x) == pytest.approx(arithmetic.ramanujan_sum(q, m), abs=1e-8)

    def test_spectral(self, small_bump):
        k = symbols.block_kernel_spectral(1, tcontext(small_bump), 16)
        assert k.size == 16
        assert k.at([17, -1]) == k.grid[1, 15]
        assert k.alias_estimate >= 0
        with pytest.raises(ValueError):
            symbols.block_kernel_spectral(1, tcontext(small_bump), 12)
        with pytest.raises(exceptions.GridTooLarge):
            symbols.block_kernel_spectral(1, tcontext(small_bump, d=3, n=5, level=2), 512)
        with pytest.raises(exceptions.ArithmeticInputError):
            symbols.block_kernel_spectral(3, tcontext(small_bump), 16)

    def test_direct(self, small_bump):
        c = tcontext(small_bump)
        v = symbols.block_kernel_direct(1, c, [2, 1], samples=256, replicates=4, rtol=1.0, atol=1.0, seed=7)
        assert math.isfinite(v.value)
        assert v.samples == 256 and v.replicates == 4
        with pytest.raises(exceptions.QuadratureNotConverged):
            symbols.block_kernel_direct(1, c, [2, 1], samples=64, replicates=2, rtol=0.0, atol=0.0, seed=7)
        with pytest.raises(ValueError):
            symbols.block_kernel_direct(1, c, [2, 1], samples=64, replicates=1)

    def test_direct_budget(self, small_bump):
        c = tcontext(small_bump)
        with tlab.context(budget=100):
            with pytest.raises(exceptions.BudgetExceeded):
                symbols.block_kernel_direct(1, c, [2, 1], samples=64, replicates=2)

    def test_shell_profile(self, small_bump):
        out = symbols.shell_profile(
            1, tcontext(small_bump), [[2, 1], [0, 0]], samples=64, replicates=2, rtol=1.0, atol=1.0,
        )
        assert list(out) == [-1, 1]
        assert all(v >= 0 for v in out.values())

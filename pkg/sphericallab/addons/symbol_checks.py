"""
Checks of the main-term approximation: symbols against each other and
against the FFT of the spherical average, and block kernels evaluated
directly against their spectral form.
"""
import math

import numpy as np

from sphericallab import arithmetic
from sphericallab import ctx
from sphericallab import experiment
from sphericallab import lattice
from sphericallab import moments
from sphericallab import symbols
from sphericallab.utils import parallel

FULL_GRID_DIMENSION = 3
SPOT_SAMPLES = 64


def dft_of_average(d: int, n: int, width: int, freqs: np.ndarray) -> np.ndarray:
    """Σ_x 𝒜_λδ_0(x) e^{-2πi x·k/W} at the integer frequencies k."""
    avg = lattice.spherical_average(lattice.LatticeFunction.delta(d), n).as_float()
    if d <= FULL_GRID_DIMENSION:
        grid = np.zeros((width,) * d)
        np.add.at(grid, tuple((avg.coords % width).T), avg.values)
        spectrum = np.fft.fftn(grid)
        return spectrum[tuple(freqs.T)]
    phase = -2j * math.pi * (freqs @ avg.coords.T) / width
    return np.exp(phase) @ avg.values


class SymbolCompare(experiment.Experiment):
    name = "symbol-compare"

    def run(self, config, failures):
        p = config.params
        d, n, width = p["d"], p["n"], p["width"]
        if 2 * math.isqrt(n) + 1 > width:
            ctx.log.warn(f"box width {width} does not hold the sphere of radius {math.sqrt(n):.3g}")
        context = symbols.SymbolContext(d, n, p["level"])

        if d <= FULL_GRID_DIMENSION:
            axis = np.arange(width)
            freqs = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
        else:
            freqs = np.random.default_rng(config.seed).integers(0, width, size=(SPOT_SAMPLES, d))
        fft_err = float(np.abs(dft_of_average(d, n, width, freqs) - symbols.exact_symbol(context, freqs / width)).max())
        self.check(failures, fft_err <= p["tol"], f"FFT of the average differs from the exact symbol by {fft_err:.3g}")

        records = [dict(kind="fft", d=d, n=n, width=width, points=len(freqs), max_error=fft_err)]
        residual = symbols.residual_symbol_sup(context, p["resolution"])
        records.append(dict(kind="residual", d=d, n=n, level=p["level"], **residual.__dict__))

        if p["level"] == 1:
            grid = symbols.frequency_grid(d, p["resolution"])
            lone = symbols.main_symbol(context, grid)
            r = np.linalg.norm(grid - np.rint(grid), axis=1)
            expected = context.bump.Phi(grid - np.rint(grid)) * symbols.sphere_ft_closed(d, context.lam, r)
            err = float(np.abs(lone - expected).max())
            self.check(failures, err <= 1e-8, f"main symbol at Λ=1 differs from Φ·σ̂ by {err:.3g}")
            records.append(dict(kind="level_one", max_error=err))
        for Q in _blocks(p["level"]):
            records.append(dict(kind="block_l2", **symbols.block_l2_bound(Q, context, p["resolution"])))
        return records


def _blocks(level: int):
    Q = 1
    while Q <= level:
        yield Q
        Q *= 2


class KernelCheck(experiment.Experiment):
    name = "kernel-check"

    def run(self, config, failures):
        p = config.params
        d, n, Q, N = p["d"], p["n"], p["block"], p["grid"]
        context = symbols.SymbolContext(d, n, p["level"])
        spectral = symbols.block_kernel_spectral(Q, context, N)
        rng = np.random.default_rng(config.seed)
        reach = int(math.sqrt(n)) + Q
        points = rng.integers(-reach, reach + 1, size=(p["points"], d))

        def one(x):
            return symbols.block_kernel_direct(Q, context, x, seed=config.seed)

        direct = parallel.pool_map(one, list(points), threads=1)
        records = []
        for x, kv in zip(points, direct):
            s = spectral.at(x)
            allowed = 4 * kv.stderr + spectral.alias_estimate + p["tol"]
            diff = abs(kv.value - s)
            self.check(failures, diff <= allowed, f"kernel at {x.tolist()}: |direct - spectral| = {diff:.3g} > {allowed:.3g}")
            records.append(dict(
                kind="kernel", x=x.tolist(), direct=kv.value, stderr=kv.stderr,
                spectral=s, alias=spectral.alias_estimate,
            ))

        for q in range(Q, min(2 * Q, p["level"] + 1)):
            for x in points[:4]:
                m = int(x @ x) - n
                got = symbols.arithmetic_factor(q, n, x)
                want = arithmetic.ramanujan_sum(q, m)
                self.check(failures, abs(got - want) <= 1e-8 * q,
                           f"arithmetic factor at q={q}, x={x.tolist()} is {got} not c_q = {want}")

        sup = moments.ramanujan_block_sup(Q, p["m_list"])
        records.append(dict(kind="ramanujan_block_sup", **sup))
        return records

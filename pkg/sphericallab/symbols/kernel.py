"""
Spatial kernels of the main-term blocks.

For a dyadic Q the block Σ_{Q<=q<2Q, q<=Λ} of the main symbol has kernel

    K_Q(x) = Σ_q c_q(|x|² - n) · (dσ_λ * Φ̌_q)(x),

evaluated here directly (quasi-Monte Carlo over the sphere) and spectrally
(inverse FFT of the sampled symbol on a periodic grid).
"""
import dataclasses
import math
import typing

import numpy as np
from scipy import stats
from scipy.stats import qmc

from sphericallab import arithmetic
from sphericallab import ctx
from sphericallab import exceptions
from sphericallab.symbols import symbol
from sphericallab.utils import parallel

MAX_GRID_POINTS = 2 ** 24
UNIFORM_CLIP = 1e-12


@dataclasses.dataclass
class KernelValue:
    value: float
    stderr: float
    samples: int
    replicates: int


def _block_moduli(block: int, level: int) -> typing.List[int]:
    if not 1 <= block <= level:
        raise exceptions.ArithmeticInputError(f"block {block} outside [1, {level}]")
    return list(range(block, min(2 * block, level + 1)))


def sphere_directions(d: int, samples: int, seed: int) -> np.ndarray:
    """
    Unit vectors from a scrambled Sobol sequence pushed through the normal
    quantile and normalized, in antithetic pairs: samples/2 points and their
    negatives.
    """
    if samples < 2 or samples & (samples - 1):
        raise ValueError(f"sample count must be a power of two, got {samples}")
    sampler = qmc.Sobol(d, scramble=True, seed=seed)
    u = sampler.random_base2(int(math.log2(samples // 2)))
    z = stats.norm.ppf(np.clip(u, UNIFORM_CLIP, 1 - UNIFORM_CLIP))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return np.vstack([z, -z])


def sphere_average(context: symbol.SymbolContext, x, q: int, directions: np.ndarray) -> float:
    """∫ Φ̌_q(x - y) dσ_λ(y) over the given sample of the unit-mass sphere."""
    x = np.asarray(x, dtype=np.float64)
    y = context.lam * directions
    return float(np.mean(context.bump.check_q(x[None, :] - y, q)))


def block_kernel_direct(
    block: int,
    context: symbol.SymbolContext,
    x: typing.Sequence[int],
    samples: typing.Optional[int] = None,
    replicates: typing.Optional[int] = None,
    rtol: typing.Optional[float] = None,
    atol: typing.Optional[float] = None,
    seed: typing.Optional[int] = None,
) -> KernelValue:
    """
    K_Q(x) by quasi-Monte Carlo. Independent scrambles give the replicate
    spread; QuadratureNotConverged is raised when the standard error exceeds
    rtol·|value| + atol.
    """
    samples = samples or ctx.options.qmc_samples
    replicates = replicates or ctx.options.qmc_replicates
    rtol = ctx.options.qmc_rtol if rtol is None else rtol
    atol = ctx.options.qmc_atol if atol is None else atol
    seed = ctx.options.seed if seed is None else seed
    if replicates < 2:
        raise ValueError("at least two replicates are needed for a standard error")

    moduli = _block_moduli(block, context.level)
    work = samples * replicates * len(moduli)
    if work > ctx.options.budget:
        raise exceptions.BudgetExceeded(work, ctx.options.budget, "sphere quadrature")

    x = np.asarray(x, dtype=np.int64)
    m = int(x @ x) - context.n
    weights = [arithmetic.ramanujan_sum(q, m) for q in moduli]
    seeds = np.random.default_rng(seed).integers(0, 2 ** 63, size=replicates)

    def replicate(s):
        dirs = sphere_directions(context.d, samples, int(s))
        return math.fsum(
            c * sphere_average(context, x, q, dirs) for c, q in zip(weights, moduli) if c
        )

    values = np.array(parallel.pool_map(replicate, seeds))
    value = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(replicates))
    if stderr > rtol * abs(value) + atol:
        raise exceptions.QuadratureNotConverged(
            f"kernel at {x.tolist()}: standard error {stderr:.3g} above target", value, stderr
        )
    return KernelValue(value=value, stderr=stderr, samples=samples, replicates=replicates)


def arithmetic_factor(q: int, n: int, x: typing.Sequence[int]) -> complex:
    """
    Σ_a e^{-2πi n a/q} Σ_ℓ G(a/q, ℓ) e^{2πi ℓ·x/q}: the arithmetic part of
    the block kernel by Gauss sums. Equals c_q(|x|² - n).
    """
    total = 0j
    for a in arithmetic.units(q):
        lhs, _ = arithmetic.gauss_inversion_check(int(a), q, x, len(x))
        total += complex(math.cos(2 * math.pi * n * a / q), -math.sin(2 * math.pi * n * a / q)) * lhs
    return total


@dataclasses.dataclass
class SpectralKernel:
    grid: np.ndarray
    alias_estimate: float

    @property
    def size(self) -> int:
        return self.grid.shape[0]

    def at(self, x: typing.Sequence[int]) -> float:
        """The periodized kernel at x, read modulo the grid size."""
        return float(self.grid[tuple(int(c) % self.size for c in x)])


def _outer_shell(N: int, d: int) -> typing.Tuple[np.ndarray, ...]:
    """Index mask of grid points with |x|_∞ >= N/2 - 1 (signed representatives)."""
    signed = np.abs(np.fft.fftfreq(N) * N)
    mesh = np.meshgrid(*([signed] * d), indexing="ij")
    return np.max(np.stack(mesh), axis=0) >= N // 2 - 1


def block_kernel_spectral(block: int, context: symbol.SymbolContext, N: int) -> SpectralKernel:
    """
    Sample the Q-block of the main symbol on the frequencies k/N and invert
    the DFT, giving the kernel periodized over (Z/N)^d. alias_estimate is the
    largest value on the outermost shell of the grid, the size of the images
    that fold back onto interior points.
    """
    if N < 2 or N & (N - 1):
        raise ValueError(f"grid size must be a power of two, got {N}")
    if N ** context.d > MAX_GRID_POINTS:
        raise exceptions.GridTooLarge(f"{N}^{context.d} grid exceeds {MAX_GRID_POINTS} points")
    _block_moduli(block, context.level)

    freqs = np.fft.fftfreq(N)
    rest = context.d - 1
    if rest:
        tail = np.stack(np.meshgrid(*([freqs] * rest), indexing="ij"), axis=-1).reshape(-1, rest)
    else:
        tail = np.zeros((1, 0))

    def hyperplane(i):
        xi = np.hstack([np.full((len(tail), 1), freqs[i]), tail])
        return symbol.main_symbol(context, xi, block=block).reshape((N,) * rest)

    samples = np.stack(parallel.pool_map(hyperplane, range(N)))
    grid = np.fft.ifftn(samples).real
    alias = float(np.abs(grid[_outer_shell(N, context.d)]).max())
    return SpectralKernel(grid=grid, alias_estimate=alias)


def shell_profile(
    block: int,
    context: symbol.SymbolContext,
    points: typing.Sequence[typing.Sequence[int]],
    **quadrature,
) -> typing.Dict[int, float]:
    """
    max |K_Q(x)| over the dyadic shells ||x| - λ|/Q ∈ [2^l, 2^{l+1}); l = -1
    collects the points closer than Q to the sphere.
    """
    out: typing.Dict[int, float] = {}
    for x in points:
        x = np.asarray(x, dtype=np.int64)
        t = abs(math.sqrt(int(x @ x)) - context.lam) / block
        level = int(math.floor(math.log2(t))) if t >= 1 else -1
        v = abs(block_kernel_direct(block, context, x, **quadrature).value)
        out[level] = max(out.get(level, 0.0), v)
    return dict(sorted(out.items()))

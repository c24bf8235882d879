"""
Symbols of the discrete spherical average and of its main term.

The exact symbol is the Fourier series of the normalized counting measure on
{|y|² = n}. The main symbol sums, over q <= Λ and units a mod q, Gauss sums
times the continuous sphere transform localized by Φ_q around each ℓ/q.
"""
import dataclasses
import math
import typing

import numpy as np

from sphericallab import arithmetic
from sphericallab import exceptions
from sphericallab import lattice
from sphericallab.symbols import bump as bump_
from sphericallab.symbols import sphere


@dataclasses.dataclass(frozen=True)
class SymbolContext:
    d: int
    n: int
    level: int
    bump: bump_.BumpProfile = dataclasses.field(default_factory=bump_.default_bump, compare=False)

    def __post_init__(self):
        if self.level < 1:
            raise exceptions.ArithmeticInputError(f"level must be positive, got {self.level}")
        if not self.level ** 2 <= self.n < 4 * self.level ** 2:
            raise exceptions.ArithmeticInputError(
                f"n = {self.n} outside [Λ², 4Λ²) for Λ = {self.level}"
            )
        if lattice.sphere_count(self.d, self.n) == 0:
            raise exceptions.EmptySphere(self.d, self.n)

    @property
    def lam(self) -> float:
        return math.sqrt(self.n)

    @property
    def count(self) -> int:
        return lattice.sphere_count(self.d, self.n)


def _frequencies(context: SymbolContext, xi) -> typing.Tuple[np.ndarray, bool]:
    xi = np.asarray(xi, dtype=np.float64)
    single = xi.ndim == 1
    xi = xi.reshape(-1, context.d)
    return xi, single


def exact_symbol(context: SymbolContext, xi) -> typing.Union[complex, np.ndarray]:
    """(1/r_d(n)) Σ_{|y|² = n} e^{-2πi y·ξ} at one frequency or a stack of them."""
    xi, single = _frequencies(context, xi)
    ys = lattice.sphere_points(context.d, context.n).astype(np.float64)
    out = np.empty(len(xi), dtype=np.complex128)
    for lo in range(0, len(xi), 4096):
        ph = 2 * math.pi * (xi[lo:lo + 4096] @ ys.T)
        out[lo:lo + 4096] = np.cos(ph).mean(axis=1) - 1j * np.sin(ph).mean(axis=1)
    return complex(out[0]) if single else out


def _block_range(level: int, block: typing.Optional[int]) -> range:
    if block is None:
        return range(1, level + 1)
    if block < 1:
        raise exceptions.ArithmeticInputError(f"block must be positive, got {block}")
    return range(block, min(2 * block, level + 1))


def main_symbol(
    context: SymbolContext, xi, block: typing.Optional[int] = None
) -> typing.Union[complex, np.ndarray]:
    """
    Σ_{q<=Λ} Σ_a e^{-2πi n a/q} G(a/q, ℓ) Φ_q(ξ - ℓ/q) σ̂_λ(ξ - ℓ/q), with ℓ
    the nearest integer vector to qξ; the other ℓ miss supp Φ_q. With block
    set only Q <= q < 2Q contributes.
    """
    xi, single = _frequencies(context, xi)
    out = np.zeros(len(xi), dtype=np.complex128)
    for q in _block_range(context.level, block):
        ell = np.rint(q * xi).astype(np.int64)
        diff = xi - ell / q
        weight = context.bump.Phi(q * diff)
        live = weight > 0
        if not live.any():
            continue
        u = arithmetic.units(q)
        phase = np.exp(-2j * math.pi * ((context.n * u) % q) / q)
        table = arithmetic.gauss_table(q)
        # (units, points, coordinates) -> product over coordinates
        g = np.prod(table[:, ell[live] % q], axis=2)
        s = phase @ g
        radial = sphere.sphere_ft_closed(context.d, context.lam, np.linalg.norm(diff[live], axis=1))
        out[live] += s * weight[live] * radial
    return complex(out[0]) if single else out


def frequency_grid(d: int, resolution: int) -> np.ndarray:
    """All ξ with coordinates -1/2 + k/M, k = 0..M-1, as an (M^d, d) array."""
    axis = -0.5 + np.arange(resolution) / resolution
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, d)


@dataclasses.dataclass
class ResidualReport:
    sup: float
    argmax: typing.List[float]
    resolution: int


def residual_symbol_sup(context: SymbolContext, resolution: int) -> ResidualReport:
    """
    max over the grid -1/2 + k/M of |exact_symbol - main_symbol|. An estimate
    of the residual ℓ² norm at this resolution, not a bound.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be positive, got {resolution}")
    grid = frequency_grid(context.d, resolution)
    diff = np.abs(exact_symbol(context, grid) - main_symbol(context, grid))
    i = int(np.argmax(diff))
    return ResidualReport(sup=float(diff[i]), argmax=[float(v) for v in grid[i]], resolution=resolution)


def block_l2_bound(block: int, context: SymbolContext, resolution: int) -> typing.Dict[str, float]:
    """
    The ℓ² operator norm of the Q-block is the sup of its symbol; reports the
    sampled sup against Q^{2-d/2}.
    """
    grid = frequency_grid(context.d, resolution)
    sup = float(np.abs(main_symbol(context, grid, block=block)).max())
    scale = float(block) ** (2 - context.d / 2)
    return {"block": block, "sup": sup, "scale": scale, "ratio": sup / scale}

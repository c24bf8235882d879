"""
The bump φ: smooth, 1 on [-1/8, 1/8], 0 outside (-1/4, 1/4), built from the
e^{-1/s} mollifier. Its inverse transform φ̌ is tabulated once on
[0, extent] and interpolated with a cubic spline; φ̌ is even and treated as 0
beyond the table.
"""
import functools
import math
import typing

import numpy as np
from scipy import integrate
from scipy import interpolate

from sphericallab import ctx

PLATEAU = 0.125
SUPPORT = 0.25
# trapezoid nodes per period of the fastest tabulated cosine
SAMPLES_PER_PERIOD = 256


def _mollifier(s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(s, dtype=np.float64)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def smooth_step(s: np.ndarray) -> np.ndarray:
    """0 for s <= 0, 1 for s >= 1, C^∞ in between."""
    s = np.asarray(s, dtype=np.float64)
    a = _mollifier(s)
    b = _mollifier(1.0 - s)
    return a / (a + b)


def phi(t) -> np.ndarray:
    t = np.abs(np.asarray(t, dtype=np.float64))
    return smooth_step((SUPPORT - t) / (SUPPORT - PLATEAU))


class BumpProfile:
    def __init__(self, extent: float = 128.0, step: float = 1 / 32) -> None:
        if extent <= 0 or step <= 0:
            raise ValueError("bump table extent and step must be positive")
        self.extent = float(extent)
        self.step = float(step)
        self._spline: typing.Optional[interpolate.CubicSpline] = None

    def __repr__(self):
        return f"BumpProfile(extent={self.extent}, step={self.step})"

    def _build(self) -> interpolate.CubicSpline:
        z = np.arange(0.0, self.extent + self.step / 2, self.step)
        nodes = max(2049, int(SAMPLES_PER_PERIOD * SUPPORT * self.extent) + 1)
        t = np.linspace(0.0, SUPPORT, nodes)
        w = phi(t)
        table = np.empty_like(z)
        for lo in range(0, len(z), 256):
            zz = z[lo:lo + 256]
            integrand = w[None, :] * np.cos(2 * math.pi * zz[:, None] * t[None, :])
            table[lo:lo + 256] = 2 * integrate.trapezoid(integrand, t, axis=1)
        return interpolate.CubicSpline(z, table)

    @property
    def spline(self) -> interpolate.CubicSpline:
        if self._spline is None:
            self._spline = self._build()
        return self._spline

    def phi(self, t) -> np.ndarray:
        return phi(t)

    def Phi(self, xi) -> np.ndarray:
        """Π_j φ(ξ_j) over the last axis."""
        return np.prod(phi(xi), axis=-1)

    def check(self, z) -> np.ndarray:
        """φ̌(z) = ∫ φ(t) e^{2πitz} dt."""
        z = np.abs(np.asarray(z, dtype=np.float64))
        out = self.spline(np.minimum(z, self.extent))
        return np.where(z <= self.extent, out, 0.0)

    def check_exact(self, z: float) -> float:
        """φ̌(z) by adaptive quadrature, for validating the table."""
        val, _ = integrate.quad(
            lambda t: float(phi(t)), 0.0, SUPPORT,
            weight="cos", wvar=2 * math.pi * abs(z), limit=200,
        )
        return 2 * val

    def check_q(self, z, q: int) -> np.ndarray:
        """Φ̌_q(z) = q^{-d} Π_j φ̌(z_j / q) over the last axis, for Φ_q(ξ) = Φ(qξ)."""
        z = np.asarray(z, dtype=np.float64)
        d = z.shape[-1]
        return np.prod(self.check(z / q), axis=-1) / float(q) ** d


@functools.lru_cache(maxsize=8)
def _bump(extent: float, step: float) -> BumpProfile:
    return BumpProfile(extent, step)


def default_bump() -> BumpProfile:
    """The shared profile for the configured table, built once."""
    return _bump(ctx.options.bump_table_extent, ctx.options.bump_table_step)

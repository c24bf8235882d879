"""
Fourier transform of the unit-mass surface measure on the sphere of radius λ
in R^d, normalized to 1 at the origin. It depends on ξ through |ξ| only.
"""
import math

import numpy as np
from scipy import integrate
from scipy import special


def _check(d: int, lam: float) -> None:
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if lam <= 0:
        raise ValueError(f"radius must be positive, got {lam}")


def sphere_ft(d: int, lam: float, r: float) -> float:
    """
    ∫_0^π cos(2πλr cos θ) sin^{d-2}θ dθ / ∫_0^π sin^{d-2}θ dθ by adaptive
    quadrature. For d = 1 the sphere is {±λ} and the value is cos(2πλr).
    """
    _check(d, lam)
    r = abs(float(r))
    a = 2 * math.pi * lam * r
    if d == 1:
        return math.cos(a)
    if a == 0:
        return 1.0
    k = d - 2
    norm = math.sqrt(math.pi) * math.gamma((d - 1) / 2) / math.gamma(d / 2)
    limit = max(200, int(a) * 4)
    val, _ = integrate.quad(
        lambda t: math.cos(a * math.cos(t)) * math.sin(t) ** k,
        0.0, math.pi, limit=limit, epsabs=1e-13, epsrel=1e-12,
    )
    return val / norm


def sphere_ft_closed(d: int, lam: float, r) -> np.ndarray:
    """
    Γ(d/2) (πλr)^{-ν} J_ν(2πλr), ν = (d-2)/2, vectorized over r. Used on
    grids; agrees with sphere_ft.
    """
    _check(d, lam)
    r = np.abs(np.asarray(r, dtype=np.float64))
    nu = (d - 2) / 2
    u = math.pi * lam * r
    out = np.ones_like(u)
    nz = u > 0
    out[nz] = math.gamma(d / 2) * special.jv(nu, 2 * u[nz]) / u[nz] ** nu
    return out


def decay_envelope(d: int, lam: float, r) -> np.ndarray:
    """(1 + λ|ξ|)^{-(d-1)/2}, the stationary-phase decay rate."""
    return (1.0 + lam * np.abs(np.asarray(r, dtype=np.float64))) ** (-(d - 1) / 2)

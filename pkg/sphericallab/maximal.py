"""
Restricted-input ℓ^p-improving experiments for the dyadic maximal averages.

Every ratio reported here comes from a concrete test set and is a LOWER bound
for the operator norm. Slope fits compare those lower bounds against the
improving exponent; they never certify an upper bound.
"""
import dataclasses
import fractions
import itertools
import math
import typing

import numpy as np

from sphericallab import ctx
from sphericallab import exceptions
from sphericallab import lattice
from sphericallab import moments
from sphericallab import regions
from sphericallab.coretypes import serializable
from sphericallab.utils import parallel

Fraction = fractions.Fraction

FAMILIES = ("point", "ball", "box", "sphere_shell", "random_density")
RANDOM_DENSITY = 0.5


@dataclasses.dataclass
class NormEstimate(serializable.StateDataclass):
    level: int
    d: int
    inv_p: Fraction
    inv_r: Fraction
    family: str
    ratio: float
    numerator: float
    size: int
    witness: typing.Dict[str, typing.Any]
    symmetric: bool = False
    bound: str = "lower"


def _points(E) -> np.ndarray:
    pts = np.unique(np.asarray(E, dtype=np.int64), axis=0) if len(E) else np.zeros((0, 0), dtype=np.int64)
    if len(pts) == 0:
        raise exceptions.EmptyInput("the test set E is empty")
    return pts


def dual_exponent(inv_r: Fraction) -> float:
    """r' with 1/r' = 1 - 1/r; infinity when 1/r = 1."""
    inv = 1 - Fraction(inv_r)
    return math.inf if inv == 0 else float(1 / inv)


def _powered_norm(values: np.ndarray, weights: np.ndarray, t: float) -> float:
    if len(values) == 0:
        return 0.0
    if math.isinf(t):
        return float(np.max(values))
    return math.fsum(weights * values ** t) ** (1.0 / t)


def is_symmetric(pts: np.ndarray) -> bool:
    """Invariance under coordinate permutations and sign changes."""
    d = pts.shape[1]
    if d == 1:
        images = [-pts]
    else:
        swap = list(range(d))
        swap[0], swap[1] = 1, 0
        cycle = list(range(1, d)) + [0]
        flip = pts.copy()
        flip[:, 0] *= -1
        images = [pts[:, swap], pts[:, cycle], flip]
    base = {tuple(r) for r in pts.tolist()}
    return all({tuple(r) for r in im.tolist()} == base for im in images)


def orbit_size(x: typing.Sequence[int]) -> int:
    """Size of the orbit of x under permutations and sign changes."""
    d = len(x)
    counts: typing.Dict[int, int] = {}
    for c in x:
        counts[abs(c)] = counts.get(abs(c), 0) + 1
    perms = math.factorial(d)
    for m in counts.values():
        perms //= math.factorial(m)
    return perms * 2 ** sum(1 for c in x if c)


def canonical_points(d: int, radius_sq: int) -> np.ndarray:
    """x with x_1 >= ... >= x_d >= 0 and |x|² < radius_sq."""
    top = math.isqrt(max(radius_sq - 1, 0))
    reps = [
        c for c in itertools.combinations_with_replacement(range(top, -1, -1), d)
        if sum(v * v for v in c) < radius_sq
    ]
    return np.array(reps, dtype=np.int64).reshape(-1, d)


def symmetric_maximal_norm(pts: np.ndarray, level: int, t: float) -> float:
    """
    ‖sup_{Λ<=λ<2Λ} 𝒜_λ 1_E‖_t for a symmetric E, evaluated on one point per
    orbit and weighted by orbit size.
    """
    d = pts.shape[1]
    reach = math.isqrt(int((pts * pts).sum(axis=1).max())) + 1 + 2 * level
    reps = canonical_points(d, reach * reach)
    work = len(reps) * len(pts)
    if work > ctx.options.budget:
        raise exceptions.BudgetExceeded(work, ctx.options.budget, "symmetric maximal norm")
    f = lattice.LatticeFunction.indicator(pts)
    values = lattice.dyadic_maximal_at(f, level, reps)
    weights = np.array([orbit_size(r) for r in reps.tolist()], dtype=np.float64)
    live = values > 0
    return _powered_norm(values[live], weights[live], t)


def maximal_norm(pts: np.ndarray, level: int, t: float, symmetric: bool = False) -> float:
    if symmetric:
        return symmetric_maximal_norm(pts, level, t)
    out = lattice.dyadic_maximal(lattice.LatticeFunction.indicator(pts), level)
    return out.norm(t)


def restricted_ratio(
    E,
    point: regions.ExponentPoint,
    level: int,
    family: str = "custom",
    symmetric: typing.Optional[bool] = None,
) -> NormEstimate:
    """
    ‖sup_{Λ<=λ<2Λ} 𝒜_λ 1_E‖_{r'} / |E|^{1/p} over all of Z^d. The output
    support is finite, so the norm carries no truncation error. Symmetric
    sets take the orbit-reduced path unless symmetric=False.
    """
    pts = _points(E)
    if level < 1 or level & (level - 1):
        raise exceptions.LatticeError(f"level must be a power of two, got {level}")
    if symmetric is None:
        symmetric = is_symmetric(pts)
    t = dual_exponent(point.inv_r)
    numerator = maximal_norm(pts, level, t, symmetric)
    ratio = numerator / len(pts) ** float(point.inv_p)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    return NormEstimate(
        level=level,
        d=pts.shape[1],
        inv_p=point.inv_p,
        inv_r=point.inv_r,
        family=family,
        ratio=ratio,
        numerator=numerator,
        size=len(pts),
        witness={"lower": lo.tolist(), "upper": hi.tolist(), "size": len(pts)},
        symmetric=symmetric,
    )


def family_radius(level: int, scale: float) -> int:
    return max(1, int(round(scale * level)))


def family_set(family: str, level: int, d: int, scale: float = 1.0, seed: int = 0) -> np.ndarray:
    """
    The test set of a family at scale Λ. ball, box and sphere_shell are
    centered at the origin and symmetric; random_density keeps each point of
    the centered box with probability 1/2, drawn from seed.
    """
    R = family_radius(level, scale)
    if family == "point":
        return np.zeros((1, d), dtype=np.int64)
    axis = np.arange(-R, R + 1, dtype=np.int64)
    if len(axis) ** d > ctx.options.budget:
        raise exceptions.BudgetExceeded(len(axis) ** d, ctx.options.budget, f"{family} test set")
    box = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    norms = (box * box).sum(axis=1)
    if family == "box":
        return box
    if family == "ball":
        return box[norms <= R * R]
    if family == "sphere_shell":
        return box[(norms >= R * R) & (norms < (R + 1) ** 2)]
    if family == "random_density":
        keep = np.random.default_rng(seed).random(len(box)) < RANDOM_DENSITY
        keep[len(box) // 2] = True
        return box[keep]
    raise exceptions.SphericalLabException(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


@dataclasses.dataclass
class ScalingReport(serializable.StateDataclass):
    family: str
    d: int
    inv_p: Fraction
    inv_r: Fraction
    levels: typing.List[int]
    ratios: typing.List[float]
    slope: float
    constant: float
    theoretical: Fraction
    excess: float
    bound: str = "lower"


def scaling_fit(
    family: str,
    point: regions.ExponentPoint,
    d: int,
    levels: typing.Sequence[int],
    scales: typing.Sequence[float] = (1.0,),
    trials: int = 1,
    seed: typing.Optional[int] = None,
) -> typing.Tuple[ScalingReport, typing.List[NormEstimate]]:
    """
    Regress log(max ratio over the family) against log Λ. The family at Λ is
    every scale in scales and, for random_density, trials seeded draws.
    excess is the measured slope minus the improving exponent.
    """
    levels = sorted(levels)
    if family not in FAMILIES:
        raise exceptions.SphericalLabException(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    seed = ctx.options.seed if seed is None else seed
    draws = trials if family == "random_density" else 1
    seeds = np.random.default_rng(seed).integers(0, 2 ** 63, size=draws)

    jobs = [(lv, s, int(sd)) for lv in levels for s in scales for sd in seeds]

    def one(job):
        lv, s, sd = job
        return restricted_ratio(family_set(family, lv, d, s, sd), point, lv, family=family)

    estimates = parallel.pool_map(one, jobs)
    best = [max(e.ratio for e in estimates if e.level == lv) for lv in levels]
    theoretical = regions.improving_exponent(point, d)
    report = moments.fit(levels, best, delta=0.0, exponent=float(theoretical))
    return ScalingReport(
        family=family,
        d=d,
        inv_p=point.inv_p,
        inv_r=point.inv_r,
        levels=list(levels),
        ratios=best,
        slope=report.slope,
        constant=report.constant,
        theoretical=theoretical,
        excess=report.slope - float(theoretical),
    ), estimates

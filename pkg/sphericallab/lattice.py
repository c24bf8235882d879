"""
Lattice points on spheres and discrete spherical averages.

A LatticeFunction is a finitely supported map Z^d -> R stored as a sorted
coordinate array with one value per row. Values are float64, or Python
Fractions in an object array when the function is exact. Averages of exact
functions stay exact.
"""
import dataclasses
import fractions
import functools
import math
import typing

import numpy as np

from sphericallab import ctx
from sphericallab import exceptions
from sphericallab.coretypes import serializable
from sphericallab.utils import parallel

Fraction = fractions.Fraction

MAX_DIMENSION = 8
EXACT_SUPPORT_LIMIT = 10 ** 5
# rows of the (support x sphere) product handled by one worker
CHUNK_ROWS = 1 << 20

RadiusSet = typing.List[int]


def _check_dimension(d: int) -> None:
    if not 1 <= d <= MAX_DIMENSION:
        raise exceptions.LatticeError(f"dimension must lie in [1, {MAX_DIMENSION}], got {d}")


@functools.lru_cache(maxsize=128)
def _count_table(d: int, size: int) -> np.ndarray:
    """r_d(n) for 0 <= n < size, as r_{d-1} convolved with r_1."""
    if d == 1:
        table = np.zeros(size, dtype=np.int64)
        j = 0
        while j * j < size:
            table[j * j] += 1 if j == 0 else 2
            j += 1
    else:
        prev = _count_table(d - 1, size)
        table = prev.copy()
        j = 1
        while j * j < size:
            table[j * j:] += 2 * prev[:size - j * j]
            j += 1
    table.setflags(write=False)
    return table


def sphere_counts(d: int, n_max: int) -> np.ndarray:
    """r_d(n) for 0 <= n <= n_max."""
    _check_dimension(d)
    if n_max < 0:
        raise exceptions.LatticeError(f"n must be nonnegative, got {n_max}")
    size = max(64, 1 << (n_max + 1).bit_length())
    return _count_table(d, size)[:n_max + 1]


def sphere_count(d: int, n: int) -> int:
    return int(sphere_counts(d, n)[n])


def radius_set(d: int, lo: int, hi: int) -> RadiusSet:
    """The n = λ² in [lo, hi) with r_d(n) > 0, ascending."""
    if hi <= lo:
        return []
    table = sphere_counts(d, hi - 1)
    lo = max(lo, 0)
    return [int(n) for n in np.flatnonzero(table[lo:hi]) + lo]


@functools.lru_cache(maxsize=8192)
def _points(d: int, n: int) -> np.ndarray:
    if sphere_count(d, n) == 0:
        out = np.zeros((0, d), dtype=np.int64)
    elif d == 1:
        j = math.isqrt(n)
        out = np.array([[j], [-j]] if j else [[0]], dtype=np.int64)
    else:
        blocks = []
        for j in range(math.isqrt(n) + 1):
            rest = n - j * j
            if sphere_count(d - 1, rest) == 0:
                continue
            sub = _points(d - 1, rest)
            for s in ((j, -j) if j else (0,)):
                head = np.full((len(sub), 1), s, dtype=np.int64)
                blocks.append(np.hstack([head, sub]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def sphere_points(d: int, n: int) -> np.ndarray:
    """
    All y in Z^d with |y|² = n as a (r_d(n), d) int64 array. The first
    coordinate is fixed first and the remaining budget shrinks as it grows;
    branches with no representations left are pruned by the count table.
    """
    _check_dimension(d)
    if n < 0:
        raise exceptions.LatticeError(f"n must be nonnegative, got {n}")
    return _points(d, n)


def _is_exact(values: np.ndarray) -> bool:
    return values.dtype == object


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _object_array(items: typing.Sequence) -> np.ndarray:
    out = np.empty(len(items), dtype=object)
    out[:] = list(items)
    return out


@dataclasses.dataclass(eq=False)
class LatticeFunction(serializable.Serializable):
    d: int
    coords: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        _check_dimension(self.d)
        self.coords = np.asarray(self.coords, dtype=np.int64).reshape(-1, self.d)
        if self.values.dtype != object:
            self.values = np.asarray(self.values, dtype=np.float64)
        if len(self.coords) != len(self.values):
            raise exceptions.LatticeError("coordinate and value counts differ")
        self._index: typing.Optional[typing.Dict[tuple, int]] = None

    @classmethod
    def from_dict(cls, d: int, mapping: typing.Mapping[typing.Sequence[int], typing.Any], exact=None):
        if exact is None:
            exact = all(isinstance(v, (int, Fraction)) for v in mapping.values())
        keys = sorted(tuple(int(c) for c in k) for k in mapping)
        lookup = {tuple(int(c) for c in k): v for k, v in mapping.items()}
        coords = np.array(keys, dtype=np.int64).reshape(-1, d)
        if exact:
            values = _object_array([_as_fraction(lookup[k]) for k in keys])
        else:
            values = np.array([float(lookup[k]) for k in keys], dtype=np.float64)
        return cls(d, coords, values)

    @classmethod
    def from_arrays(cls, coords: np.ndarray, values: np.ndarray) -> "LatticeFunction":
        """Combine possibly repeated coordinates by summing their values."""
        coords = np.asarray(coords, dtype=np.int64)
        d = coords.shape[1]
        if len(coords) == 0:
            return cls.zero(d, exact=_is_exact(values))
        uniq, inv = np.unique(coords, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        if _is_exact(values):
            acc = [Fraction(0)] * len(uniq)
            for i, v in zip(inv, values):
                acc[i] += v
            vals = _object_array(acc)
        else:
            vals = np.bincount(inv, weights=values, minlength=len(uniq))
        return cls(d, uniq, vals)

    @classmethod
    def indicator(cls, points, exact: bool = False) -> "LatticeFunction":
        pts = np.unique(np.asarray(points, dtype=np.int64), axis=0)
        if exact:
            vals = _object_array([Fraction(1)] * len(pts))
        else:
            vals = np.ones(len(pts))
        return cls(pts.shape[1], pts, vals)

    @classmethod
    def delta(cls, d: int, at: typing.Optional[typing.Sequence[int]] = None, exact: bool = True):
        at = np.zeros(d, dtype=np.int64) if at is None else np.asarray(at, dtype=np.int64)
        return cls.indicator(at.reshape(1, d), exact=exact)

    @classmethod
    def zero(cls, d: int, exact: bool = False) -> "LatticeFunction":
        vals = np.zeros(0, dtype=object if exact else np.float64)
        return cls(d, np.zeros((0, d), dtype=np.int64), vals)

    @property
    def exact(self) -> bool:
        return _is_exact(self.values)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, x) -> typing.Any:
        if self._index is None:
            self._index = {tuple(int(c) for c in row): i for i, row in enumerate(self.coords)}
        i = self._index.get(tuple(int(c) for c in x))
        if i is None:
            return Fraction(0) if self.exact else 0.0
        return self.values[i]

    def to_dict(self) -> typing.Dict[tuple, typing.Any]:
        return {tuple(int(c) for c in row): v for row, v in zip(self.coords, self.values)}

    def as_float(self) -> "LatticeFunction":
        if not self.exact:
            return self
        return LatticeFunction(self.d, self.coords, np.array([float(v) for v in self.values]))

    def nonzero(self) -> "LatticeFunction":
        mask = np.array([v != 0 for v in self.values], dtype=bool)
        return LatticeFunction(self.d, self.coords[mask], self.values[mask])

    def translate(self, shift: typing.Sequence[int]) -> "LatticeFunction":
        return LatticeFunction(self.d, self.coords + np.asarray(shift, dtype=np.int64), self.values.copy())

    def support_box(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Inclusive lower and upper corners of the support."""
        if len(self) == 0:
            raise exceptions.EmptyInput("empty support has no bounding box")
        return self.coords.min(axis=0), self.coords.max(axis=0)

    def total(self):
        if self.exact:
            return sum(self.values, Fraction(0))
        return math.fsum(self.values)

    def norm(self, t: float = 1.0) -> float:
        """ℓ^t norm over Z^d; t = inf gives the sup norm."""
        a = np.abs(self.values.astype(np.float64))
        if len(a) == 0:
            return 0.0
        if math.isinf(t):
            return float(a.max())
        return math.fsum(a ** t) ** (1.0 / t)

    def dot(self, other: "LatticeFunction"):
        """Σ_x f(x) g(x), exact when both sides are exact."""
        if len(self) > len(other):
            return other.dot(self)
        acc = Fraction(0) if self.exact and other.exact else 0.0
        for row, v in zip(self.coords, self.values):
            w = other[row]
            if w:
                acc += v * w
        return acc

    def get_state(self):
        return {
            "d": self.d,
            "points": [[int(c) for c in row] for row in self.coords],
            "values": list(self.values),
        }

    @classmethod
    def from_state(cls, state):
        return cls.from_dict(state["d"], {tuple(p): v for p, v in zip(state["points"], state["values"])})


def _check_budget(work: int, what: str) -> None:
    budget = ctx.options.budget
    if work > budget:
        raise exceptions.BudgetExceeded(work, budget, what)


def _common_denominator(values: np.ndarray) -> typing.Optional[typing.Tuple[int, np.ndarray]]:
    """(L, L·values as int64) when that fits comfortably, else None."""
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    nums = [int(v * den) for v in values]
    if max((abs(n) for n in nums), default=0) * len(nums) >= 2 ** 53:
        return None
    return den, np.array(nums, dtype=np.int64)


def _row_chunks(k: int, r: int) -> typing.List[typing.Tuple[int, int]]:
    return parallel.chunks(0, k, max(1, CHUNK_ROWS // max(r, 1)))


def _scatter_sum(coords: np.ndarray, weights: np.ndarray, ys: np.ndarray, integer: bool):
    """(targets, sums) for Σ_i weights[i] δ_{coords[i] + y} over y in ys."""
    r, d = ys.shape

    def work(span):
        lo, hi = span
        t = (coords[lo:hi, None, :] + ys[None, :, :]).reshape(-1, d)
        w = np.repeat(weights[lo:hi], r)
        uniq, inv = np.unique(t, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        if integer:
            acc = np.zeros(len(uniq), dtype=np.int64)
            np.add.at(acc, inv, w)
        else:
            acc = np.bincount(inv, weights=w, minlength=len(uniq))
        return uniq, acc

    parts = parallel.pool_map(work, _row_chunks(len(coords), r))
    if len(parts) == 1:
        return parts[0]
    t = np.vstack([p[0] for p in parts])
    w = np.concatenate([p[1] for p in parts])
    uniq, inv = np.unique(t, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    if integer:
        acc = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(acc, inv, w)
    else:
        acc = np.bincount(inv, weights=w, minlength=len(uniq))
    return uniq, acc


def spherical_average(f: LatticeFunction, n: int) -> LatticeFunction:
    """
    (1/r_d(n)) Σ_{|y|² = n} f(x - y), supported on supp f + sphere. The values
    are summed first and divided by r_d(n) once.
    """
    r = sphere_count(f.d, n)
    if r == 0:
        raise exceptions.EmptySphere(f.d, n)
    if len(f) == 0:
        return LatticeFunction.zero(f.d, exact=f.exact)
    _check_budget(len(f) * r, f"spherical average at n={n}")
    ys = sphere_points(f.d, n)

    if f.exact and len(f) <= EXACT_SUPPORT_LIMIT:
        common = _common_denominator(f.values)
        if common is not None:
            den, nums = common
            uniq, acc = _scatter_sum(f.coords, nums, ys, integer=True)
            vals = _object_array([Fraction(int(s), den * r) for s in acc])
            return LatticeFunction(f.d, uniq, vals)
        out: typing.Dict[tuple, Fraction] = {}
        for row, v in zip(f.coords, f.values):
            for y in ys:
                key = tuple(int(c) for c in row + y)
                out[key] = out.get(key, Fraction(0)) + v
        return LatticeFunction.from_dict(f.d, {k: v / r for k, v in out.items()}, exact=True)

    g = f.as_float()
    uniq, acc = _scatter_sum(g.coords, g.values, ys, integer=False)
    return LatticeFunction(f.d, uniq, acc / r)


def _pointwise_max(d: int, parts: typing.Sequence[LatticeFunction], exact: bool) -> LatticeFunction:
    parts = [p for p in parts if len(p)]
    if not parts:
        return LatticeFunction.zero(d, exact=exact)
    if exact:
        best: typing.Dict[tuple, Fraction] = {}
        for p in parts:
            for row, v in zip(p.coords, p.values):
                key = tuple(int(c) for c in row)
                v = abs(v)
                if v > best.get(key, -1):
                    best[key] = v
        return LatticeFunction.from_dict(d, best, exact=True)
    coords = np.vstack([p.coords for p in parts])
    vals = np.concatenate([np.abs(p.values) for p in parts])
    uniq, inv = np.unique(coords, axis=0, return_inverse=True)
    out = np.zeros(len(uniq))
    np.maximum.at(out, inv.reshape(-1), vals)
    return LatticeFunction(d, uniq, out)


def dyadic_maximal(f: LatticeFunction, level: int) -> LatticeFunction:
    """
    sup over λ² ∈ [Λ², 4Λ²) with r_d(λ²) > 0 of |𝒜_λ f|, pointwise.
    """
    if level < 1:
        raise exceptions.LatticeError(f"level must be positive, got {level}")
    radii = radius_set(f.d, level * level, 4 * level * level)
    parts = [spherical_average(f, n) for n in radii]
    return _pointwise_max(f.d, parts, f.exact)


@dataclasses.dataclass
class MaximalReport:
    values: LatticeFunction
    n_max: typing.Optional[int]
    maximum: float
    tail_bound: float
    certified: bool


def tail_bound(f: LatticeFunction, n_max: int) -> float:
    """
    ‖f‖_1 / min r_d(n) over n ∈ (n_max, 2 n_max] with r_d(n) > 0; bounds the
    averages the truncation leaves out when r_d grows past n_max.
    """
    table = sphere_counts(f.d, 2 * n_max)[n_max + 1:]
    positive = table[table > 0]
    if len(positive) == 0:
        return math.inf
    return f.norm(1) / float(positive.min())


def _gather(
    f: LatticeFunction, points: np.ndarray, n_lo: int, n_hi: typing.Optional[int]
) -> np.ndarray:
    """
    max over n in [n_lo, n_hi] of |Σ_{|x - e|² = n} f(e)| / r_d(n) at each
    point x; n_hi = None leaves the range open above. Sums are grouped per
    (point, distance) pair, and spheres missing the support contribute 0.
    """
    g = f.as_float()
    m, k = len(points), len(g)
    out = np.zeros(m)
    if m == 0 or k == 0:
        return out
    _check_budget(m * k, "gathered maximal function")

    def work(span):
        lo, hi = span
        diff = points[lo:hi, None, :] - g.coords[None, :, :]
        dist = np.einsum("ijk,ijk->ij", diff, diff).reshape(-1)
        rows = np.repeat(np.arange(hi - lo, dtype=np.int64), k)
        w = np.tile(g.values, hi - lo)
        keep = dist >= max(n_lo, 1)
        if n_hi is not None:
            keep &= dist <= n_hi
        res = np.zeros(hi - lo)
        if not keep.any():
            return res
        rows, dist, w = rows[keep], dist[keep], w[keep]
        top = int(dist.max())
        key = rows * (top + 1) + dist
        uniq, inv = np.unique(key, return_inverse=True)
        sums = np.bincount(inv.reshape(-1), weights=w, minlength=len(uniq))
        avg = np.abs(sums) / sphere_counts(f.d, top)[uniq % (top + 1)]
        np.maximum.at(res, uniq // (top + 1), avg)
        return res

    spans = parallel.chunks(0, m, max(1, CHUNK_ROWS // k))
    for (lo, hi), res in zip(spans, parallel.pool_map(work, spans)):
        out[lo:hi] = res
    return out


def dyadic_maximal_at(f: LatticeFunction, level: int, points: np.ndarray) -> np.ndarray:
    """dyadic_maximal evaluated only at the given points."""
    if level < 1:
        raise exceptions.LatticeError(f"level must be positive, got {level}")
    pts = np.asarray(points, dtype=np.int64).reshape(-1, f.d)
    return _gather(f, pts, level * level, 4 * level * level - 1)


def full_maximal(
    f: LatticeFunction,
    n_max: typing.Optional[int],
    at: typing.Optional[np.ndarray] = None,
) -> MaximalReport:
    """
    sup over 1 <= λ² <= n_max of |𝒜_λ f| with the tail bound of the
    truncation. The result is certified when the tail bound lies below the
    computed maximum.

    With at given, the supremum is evaluated only at those points by
    gathering over the support. n_max = None is allowed there and includes
    every sphere, making the supremum exact.
    """
    if n_max is not None and n_max < 1:
        raise exceptions.LatticeError(f"n_max must be positive, got {n_max}")
    if at is None:
        if n_max is None:
            raise exceptions.LatticeError("scatter evaluation needs a finite n_max")
        parts = [spherical_average(f, n) for n in radius_set(f.d, 1, n_max + 1)]
        values = _pointwise_max(f.d, parts, f.exact)
    else:
        pts = np.asarray(at, dtype=np.int64).reshape(-1, f.d)
        values = LatticeFunction(f.d, pts, _gather(f, pts, 1, n_max))

    maximum = values.norm(math.inf)
    if n_max is None:
        tail, certified = 0.0, True
    else:
        tail = tail_bound(f, n_max)
        certified = tail < maximum
        if not certified:
            ctx.log.warn(
                f"maximal function truncated at n={n_max} is not certified: "
                f"tail bound {tail:.4g} >= computed maximum {maximum:.4g}"
            )
    return MaximalReport(values=values, n_max=n_max, maximum=maximum, tail_bound=tail, certified=certified)

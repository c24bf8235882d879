"""
Empirical checks of the arithmetic averages behind the main-term estimates:
Ramanujan-sum moments, lcm reciprocal sums, gcd-product period sums and the
Kloosterman and Gauss constants. Every check reports a measured constant
for the configured exponent slack δ instead of a pass/fail verdict against an
unknown constant.
"""
import dataclasses
import fractions
import math
import typing

import numpy as np
from scipy import stats

from sphericallab import arithmetic
from sphericallab import ctx
from sphericallab import exceptions
from sphericallab.coretypes import serializable
from sphericallab.utils import parallel

Fraction = fractions.Fraction

CHUNK = 1 << 16
EXACT_LCM_TUPLES = 1 << 14


@dataclasses.dataclass
class MomentReport(serializable.StateDataclass):
    Q: int
    k: int
    N: int
    M: int
    mean: Fraction
    value: float

    @property
    def bound_ratio(self) -> float:
        return self.value / self.Q

    def get_state(self):
        state = super().get_state()
        state["bound_ratio"] = self.bound_ratio
        return state


@dataclasses.dataclass
class FitReport(serializable.StateDataclass):
    slope: float
    intercept: float
    r2: float
    constant: float
    delta: float
    xs: typing.List[float]
    ys: typing.List[float]


def _budget(work: int, what: str) -> None:
    if work > ctx.options.budget:
        raise exceptions.BudgetExceeded(work, ctx.options.budget, what)


def fit(xs: typing.Sequence[float], ys: typing.Sequence[float], delta: typing.Optional[float] = None,
        exponent: float = 0.0) -> FitReport:
    """
    Least squares of log y against log x. constant is max y / x^{exponent + δ},
    the A that makes y <= A x^{exponent + δ} hold on the data.
    """
    delta = ctx.options.delta_fit if delta is None else delta
    lx = np.log(np.asarray(xs, dtype=np.float64))
    ly = np.log(np.asarray(ys, dtype=np.float64))
    if len(xs) >= 2 and np.ptp(lx) > 0:
        res = stats.linregress(lx, ly)
        slope, intercept, r2 = float(res.slope), float(res.intercept), float(res.rvalue ** 2)
    else:
        slope, intercept, r2 = math.nan, math.nan, math.nan
    constant = max(
        (float(y) / float(x) ** (exponent + delta) for x, y in zip(xs, ys)), default=math.nan
    )
    return FitReport(
        slope=slope, intercept=intercept, r2=r2, constant=constant, delta=delta,
        xs=[float(x) for x in xs], ys=[float(y) for y in ys],
    )


def abs_ramanujan_table(q: int) -> np.ndarray:
    """|c_q(r)| for r = 0..q-1."""
    g = np.gcd(np.arange(q, dtype=np.int64), q)
    values = {int(e): abs(arithmetic.ramanujan_sum(q, int(e))) for e in np.unique(g)}
    return np.array([values[int(e)] for e in g], dtype=np.int64)


def ramanujan_table(q: int) -> np.ndarray:
    """c_q(r) for r = 0..q-1."""
    g = np.gcd(np.arange(q, dtype=np.int64), q)
    values = {int(e): arithmetic.ramanujan_sum(q, int(e)) for e in np.unique(g)}
    return np.array([values[int(e)] for e in g], dtype=np.int64)


def _block_sums(tables: typing.Sequence[typing.Tuple[int, np.ndarray]], lo: int, hi: int) -> np.ndarray:
    n = np.arange(lo, hi, dtype=np.int64)
    s = np.zeros(len(n), dtype=np.int64)
    for q, table in tables:
        s += table[n % q]
    return s


def _power_sum(s: np.ndarray, k: int) -> int:
    top = int(s.max(initial=0))
    if top ** k * len(s) < 2 ** 62:
        return int(np.sum(s ** k))
    return sum(int(v) ** k for v in s)


def ramanujan_moment(Q: int, k: int, N: int, M: int) -> MomentReport:
    """
    [M^{-1} Σ_{N<=n<N+M} (Σ_{Q<=q<2Q} |c_q(n)|)^k]^{1/k}; the inner mean is an
    exact rational.
    """
    if Q < 1 or k < 1:
        raise exceptions.ArithmeticInputError(f"need Q >= 1 and k >= 1, got Q={Q}, k={k}")
    if M < Q ** k:
        raise exceptions.HypothesisViolated(f"window M={M} is shorter than Q^k={Q ** k}")
    _budget(M, "Ramanujan moment window")
    tables = [(q, abs_ramanujan_table(q)) for q in range(Q, 2 * Q)]

    def work(span):
        return _power_sum(_block_sums(tables, *span), k)

    total = sum(parallel.pool_map(work, parallel.chunks(N, N + M, CHUNK)))
    mean = Fraction(total, M)
    return MomentReport(Q=Q, k=k, N=N, M=M, mean=mean, value=float(mean) ** (1.0 / k))


def moment_slope(
    k: int, Q_list: typing.Sequence[int], N: int = 0, delta: typing.Optional[float] = None
) -> typing.Tuple[FitReport, typing.List[MomentReport]]:
    """Regress log moment against log Q with M = Q^k."""
    reports = [ramanujan_moment(Q, k, N, Q ** k) for Q in Q_list]
    return fit(Q_list, [r.value for r in reports], delta, exponent=1.0), reports


def _lcm_values(Q: int, k: int) -> np.ndarray:
    qs = np.arange(Q, 2 * Q, dtype=np.int64)
    out = qs
    for _ in range(k - 1):
        out = np.lcm.outer(out, qs).reshape(-1)
    return out


def lcm_reciprocal_sum(Q: int, k: int) -> typing.Union[Fraction, float]:
    """Σ over q⃗ ∈ [Q, 2Q)^k of 1/lcm(q⃗); exact for small enumerations."""
    if Q < 1 or k < 1:
        raise exceptions.ArithmeticInputError(f"need Q >= 1 and k >= 1, got Q={Q}, k={k}")
    _budget(Q ** k, "lcm enumeration")
    if (2 * Q) ** k >= 2 ** 62:
        raise exceptions.BudgetExceeded((2 * Q) ** k, 2 ** 62, "lcm magnitude")
    lcms = _lcm_values(Q, k)
    values, counts = np.unique(lcms, return_counts=True)
    if Q ** k <= EXACT_LCM_TUPLES:
        return sum((Fraction(int(c), int(v)) for v, c in zip(values, counts)), Fraction(0))
    return math.fsum(counts / values.astype(np.float64))


def lcm_set_sum(Q: int, k: int, delta: typing.Optional[float] = None) -> typing.Dict[str, typing.Any]:
    """
    Σ over the distinct lcms L of [Q, 2Q)^k of L^{-(1-δ)}, with the number of
    distinct values against the trivial count Q^k.
    """
    delta = ctx.options.delta_fit if delta is None else delta
    _budget(Q ** k, "lcm enumeration")
    values = np.unique(_lcm_values(Q, k)).astype(np.float64)
    return {
        "Q": Q,
        "k": k,
        "delta": delta,
        "distinct": int(len(values)),
        "tuples": Q ** k,
        "sum": math.fsum(values ** -(1.0 - delta)),
    }


@dataclasses.dataclass
class GcdReport(serializable.StateDataclass):
    Q: int
    k: int
    trials: int
    delta: float
    max_ratio: float
    worst: typing.List[int]
    worst_sum: int


def gcd_product_bound_check(
    Q: int, k: int, trials: int, seed: typing.Optional[int] = None, delta: typing.Optional[float] = None
) -> GcdReport:
    """
    max over sampled q⃗ ∈ [Q, 2Q)^k of Σ_{n<=lcm} Π (q_j, n) / Q^{k(1+δ)}. The
    sum runs over exactly one period, so it is evaluated by multiplicativity.
    """
    delta = ctx.options.delta_fit if delta is None else delta
    seed = ctx.options.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    scale = float(Q) ** (k * (1 + delta))
    best, worst, worst_sum = -1.0, [], 0
    for _ in range(trials):
        qs = [int(v) for v in rng.integers(Q, 2 * Q, size=k)]
        s = arithmetic.gcd_product_sum(qs, arithmetic.lcm_vec(qs))
        if s / scale > best:
            best, worst, worst_sum = s / scale, qs, s
    return GcdReport(Q=Q, k=k, trials=trials, delta=delta, max_ratio=best, worst=worst, worst_sum=worst_sum)


def lcm_period_average(qs: typing.Sequence[int], N: int, M: int) -> typing.Dict[str, typing.Any]:
    """
    The windowed mean of Π_j |c_{q_j}(n)| over [N, N+M) beside the period mean
    of Π_j (q_j, n); the first is at most the second over whole periods.
    """
    qs = [int(q) for q in qs]
    period = arithmetic.lcm_vec(qs)
    _budget(M, "product window")
    tables = [(q, abs_ramanujan_table(q)) for q in qs]
    total = 0
    for lo, hi in parallel.chunks(N, N + M, CHUNK):
        n = np.arange(lo, hi, dtype=np.int64)
        prod = np.ones(len(n), dtype=object)
        for q, t in tables:
            prod = prod * t[n % q].astype(object)
        total += int(sum(prod))
    window = Fraction(total, M)
    period_mean = Fraction(arithmetic.gcd_product_sum(qs, period), period)
    return {
        "qs": qs,
        "lcm": period,
        "window": window,
        "period": period_mean,
        "ratio": float(window / period_mean),
    }


def ramanujan_block_sup(Q: int, M_list: typing.Sequence[int]) -> typing.Dict[str, typing.Any]:
    """
    max_{1<=m<=M} |Σ_{Q<=q<2Q} c_q(m)| / Q at each M in M_list, with the
    log-slope of those maxima in M.
    """
    M_list = sorted(int(m) for m in M_list)
    top = M_list[-1]
    _budget(top, "Ramanujan block scan")
    tables = [(q, ramanujan_table(q)) for q in range(Q, 2 * Q)]
    spans = parallel.chunks(1, top + 1, CHUNK)
    peaks = parallel.pool_map(lambda s: np.abs(_block_sums(tables, *s)), spans)
    running = np.maximum.accumulate(np.concatenate(peaks))
    sups = [float(running[m - 1]) / Q for m in M_list]
    report = fit(M_list, sups, delta=0.0)
    return {"Q": Q, "M": M_list, "sup": sups, "slope": report.slope, "r2": report.r2}


def kloosterman_scan(primes: typing.Sequence[int]) -> typing.Dict[str, typing.Any]:
    """
    max over b and inverse intervals [x, y] of the restricted Kloosterman sum,
    normalized by (b, q)^{1/2} q^{1/2}, per modulus; with the log-slope in q.
    """
    maxima = []
    for q in primes:

        def one(b, q=q):
            value, _ = arithmetic.kloosterman_interval_max(b, q)
            return value / math.sqrt(math.gcd(b, q) * q)

        maxima.append(max(parallel.pool_map(one, range(q))))
    report = fit(primes, maxima, delta=0.0)
    return {"q": list(primes), "max": maxima, "slope": report.slope, "r2": report.r2}


def gauss_scan(q_max: int, d_max: int) -> typing.Dict[str, typing.Any]:
    """
    max of q^{d/2}|G(a/q, ℓ)| over q <= q_max, units a and every ℓ, per d,
    against 2^{d/2}. G factors over coordinates, so the max over ℓ is the
    d-th power of the one-dimensional max.
    """
    odd_dev = 0.0
    arg = (1, 0, 0)
    best1 = 0.0
    for q in range(1, q_max + 1):
        mags = np.sqrt(q) * np.abs(arithmetic.gauss_table(q))
        i, b = np.unravel_index(int(np.argmax(mags)), mags.shape)
        if mags[i, b] > best1:
            best1, arg = float(mags[i, b]), (q, int(arithmetic.units(q)[i]), int(b))
        if q % 2:
            odd_dev = max(odd_dev, float(np.abs(mags - 1.0).max()))
    rows = []
    for d in range(1, d_max + 1):
        worst = best1 ** d
        rows.append({"d": d, "worst": worst, "bound": 2 ** (d / 2), "ok": worst <= 2 ** (d / 2) + 1e-9})
    return {
        "q_max": q_max,
        "rows": rows,
        "argmax": {"q": arg[0], "a": arg[1], "b": arg[2]},
        "odd_max_deviation": odd_dev,
    }

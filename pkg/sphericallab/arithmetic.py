"""
Exact number-theoretic primitives and the exponential sums built on them.

Integer-valued quantities (Möbius, totient, Ramanujan sums by the closed
form, lcm and gcd-product sums) are exact. Oscillatory sums are evaluated in
double precision: numerators are reduced modulo q in integer arithmetic
before any trigonometry, and the real and imaginary parts are accumulated
with math.fsum.

The unit group modulo 1 is the trivial group {0}, so c_1(n) = 1 and every
q = 1 Gauss sum equals 1.
"""
import dataclasses
import functools
import math
import typing

import numpy as np

from sphericallab import exceptions

ComplexValue = complex

TWO_PI = 2 * math.pi


@dataclasses.dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise exceptions.ArithmeticInputError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise exceptions.ArithmeticInputError(
                f"residue {self.value} out of range for modulus {self.modulus}"
            )

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


def _require_positive(n: int, what: str = "n") -> None:
    if n < 1:
        raise exceptions.ArithmeticInputError(f"{what} must be a positive integer, got {n}")


@functools.lru_cache(maxsize=1 << 16)
def factorize(n: int) -> typing.Tuple[typing.Tuple[int, int], ...]:
    """Prime factorization of n as ((p, e), ...) with p ascending."""
    _require_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    r = 1
    for p, e in factorize(n):
        r *= p ** (e - 1) * (p - 1)
    return r


def divisors(n: int) -> typing.List[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_sum(n: int) -> int:
    r = 1
    for p, e in factorize(n):
        r *= (p ** (e + 1) - 1) // (p - 1)
    return r


@functools.lru_cache(maxsize=4096)
def _units(q: int) -> np.ndarray:
    if q == 1:
        u = np.zeros(1, dtype=np.int64)
    else:
        a = np.arange(1, q, dtype=np.int64)
        u = a[np.gcd(a, q) == 1]
    u.setflags(write=False)
    return u


def units(q: int) -> np.ndarray:
    """The reduced residues modulo q, ascending; [0] for q = 1."""
    _require_positive(q, "q")
    return _units(q)


@functools.lru_cache(maxsize=4096)
def _unit_inverses(q: int) -> np.ndarray:
    u = _units(q)
    if q == 1:
        inv = np.zeros(1, dtype=np.int64)
    else:
        inv = np.array([pow(int(a), -1, q) for a in u], dtype=np.int64)
    inv.setflags(write=False)
    return inv


def mod_inverse(a: int, q: int) -> Residue:
    _require_positive(q, "q")
    if q == 1:
        return Residue(0, 1)
    if math.gcd(a, q) != 1:
        raise exceptions.NotCoprime(a, q)
    return Residue(pow(a % q, -1, q), q)


def _phase_sum(numerators: np.ndarray, q: int) -> complex:
    """Compensated sum of e^{2πi k/q} over integer numerators k."""
    k = np.mod(numerators, q)
    angles = (TWO_PI / q) * k
    return complex(math.fsum(np.cos(angles)), math.fsum(np.sin(angles)))


def ramanujan_sum(q: int, n: int) -> int:
    """
    c_q(n) by Hölder's closed form μ(q/g)·φ(q)/φ(q/g), g = gcd(q, n).
    """
    _require_positive(q, "q")
    g = math.gcd(q, n % q)
    m = q // g
    return mobius(m) * (euler_phi(q) // euler_phi(m))


def ramanujan_sum_direct(q: int, n: int) -> complex:
    """c_q(n) as the literal exponential sum over units, for cross-checks."""
    _require_positive(q, "q")
    u = _units(q)
    return _phase_sum(u * (n % q), q)


def gauss_sum_1d(a: int, b: int, q: int) -> complex:
    _require_positive(q, "q")
    a, b = a % q, b % q
    n = np.arange(q, dtype=np.int64)
    k = (a * ((n * n) % q) - b * n) % q
    return _phase_sum(k, q) / q


def gauss_sum(a: int, q: int, ell: typing.Sequence[int]) -> complex:
    """
    G(a/q, ℓ) as the product of one-dimensional sums over the coordinates.
    """
    _require_positive(q, "q")
    if q > 1 and math.gcd(a, q) != 1:
        raise exceptions.NotCoprime(a, q)
    r = complex(1.0)
    for l in ell:
        r *= gauss_sum_1d(a, int(l), q)
    return r


@functools.lru_cache(maxsize=512)
def gauss_table(q: int) -> np.ndarray:
    """
    table[i, b] = gauss_sum_1d(units(q)[i], b, q), shape (φ(q), q).

    For fixed a the row is the discrete Fourier transform of e^{2πi a n²/q}.
    """
    u = _units(q)
    n = np.arange(q, dtype=np.int64)
    chirp = np.exp((TWO_PI / q) * 1j * ((u[:, None] * ((n * n) % q)[None, :]) % q))
    table = np.fft.fft(chirp, axis=1) / q
    table.setflags(write=False)
    return table


def gauss_inversion_check(
    a: int, q: int, x: typing.Sequence[int], d: int
) -> typing.Tuple[complex, complex]:
    """
    Returns (Σ_ℓ G(a/q,ℓ) e^{2πi ℓ·x/q}, e^{2πi a|x|²/q}).

    The left side runs over ℓ ∈ (Z/q)^d; it factors over the coordinates
    like G itself, so it is evaluated as a product of q-term sums.
    """
    _require_positive(q, "q")
    if len(x) != d:
        raise exceptions.ArithmeticInputError(f"x has {len(x)} coordinates, expected {d}")
    if q > 1 and math.gcd(a, q) != 1:
        raise exceptions.NotCoprime(a, q)
    ell = np.arange(q, dtype=np.int64)
    g1 = np.array([gauss_sum_1d(a, int(l), q) for l in ell])
    lhs = complex(1.0)
    for xj in x:
        ph = np.exp((TWO_PI / q) * 1j * ((ell * (int(xj) % q)) % q))
        terms = g1 * ph
        lhs *= complex(math.fsum(terms.real), math.fsum(terms.imag))
    k = (a * sum(int(v) * int(v) for v in x)) % q
    rhs = complex(math.cos(TWO_PI * k / q), math.sin(TWO_PI * k / q))
    return lhs, rhs


def kloosterman_restricted(b: int, q: int, x: int, y: int) -> complex:
    """
    Σ e^{2πi ab/q} over units a whose inverse modulo q lies in [x, y].
    """
    if q < 2:
        raise exceptions.BadRange(f"modulus must be at least 2, got {q}")
    if not 1 <= x <= y < q:
        raise exceptions.BadRange(f"need 1 <= x <= y < q, got x={x}, y={y}, q={q}")
    u = _units(q)
    inv = _unit_inverses(q)
    mask = (inv >= x) & (inv <= y)
    return _phase_sum(u[mask] * (b % q), q)


def kloosterman_interval_max(b: int, q: int) -> typing.Tuple[float, typing.Tuple[int, int]]:
    """
    max over 1 <= x <= y < q of |kloosterman_restricted(b, q, x, y)| and an
    interval attaining it.

    With the units ordered by their inverse every admissible interval is a
    contiguous run, so the maximum is the largest distance between two
    prefix sums.
    """
    if q < 2:
        raise exceptions.BadRange(f"modulus must be at least 2, got {q}")
    u = _units(q)
    inv = _unit_inverses(q)
    order = np.argsort(inv, kind="stable")
    phases = np.exp((TWO_PI / q) * 1j * ((u[order] * (b % q)) % q))
    prefix = np.concatenate([[0j], np.cumsum(phases)])
    dist = np.triu(np.abs(prefix[None, :] - prefix[:, None]), 1)
    i, j = np.unravel_index(int(np.argmax(dist)), dist.shape)
    inv_sorted = inv[order]
    return float(dist[i, j]), (int(inv_sorted[i]), int(inv_sorted[j - 1]))


def lcm_vec(qs: typing.Sequence[int]) -> int:
    r = 1
    for q in qs:
        q = int(q)
        _require_positive(q, "q")
        r = r * q // math.gcd(r, q)
    return r


def _gcd_product_period(qs: typing.Sequence[int]) -> int:
    """
    Σ over one full period n mod lcm(qs) of Π gcd(q_j, n), by multiplicativity
    over the primes dividing the lcm.
    """
    total = 1
    for p, e in factorize(lcm_vec(qs)):
        exps = []
        for q in qs:
            v = 0
            while q % p == 0:
                q //= p
                v += 1
            exps.append(v)
        local = 0
        for v in range(e + 1):
            count = p ** (e - v) - p ** (e - v - 1) if v < e else 1
            local += count * p ** sum(min(ej, v) for ej in exps)
        total *= local
    return total


def _gcd_product_direct(qs: typing.Sequence[int], m: int, chunk: int = 1 << 16) -> int:
    """Σ_{n=1}^{m} Π gcd(q_j, n) term by term."""
    total = 0
    if math.prod(qs) < 2 ** 40:
        for lo in range(1, m + 1, chunk):
            n = np.arange(lo, min(lo + chunk, m + 1), dtype=np.int64)
            acc = np.ones_like(n)
            for q in qs:
                acc *= np.gcd(n, q)
            total += int(acc.sum())
    else:
        for n in range(1, m + 1):
            total += math.prod(math.gcd(q, n) for q in qs)
    return total


def gcd_product_sum(qs: typing.Sequence[int], L: int) -> int:
    """
    Σ_{n=1}^{L} Π_j gcd(q_j, n), exact. Whole periods of lcm(qs) are summed
    by multiplicativity; only the remainder is summed term by term.
    """
    _require_positive(L, "L")
    qs = [int(q) for q in qs]
    for q in qs:
        _require_positive(q, "q")
    period = lcm_vec(qs)
    full, rest = divmod(L, period)
    total = full * _gcd_product_period(qs) if full else 0
    if rest:
        total += _gcd_product_direct(qs, rest)
    return total

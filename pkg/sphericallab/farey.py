"""
Farey dissection of the circle at level Λ.

Every reduced a/q with q ≤ Λ owns the half-open interval between the
mediants with its two Farey neighbours. Endpoints are exact Fractions;
0/1 owns the interval straddling 0 ≡ 1, whose left end is stored lifted
to a negative value.
"""
import dataclasses
import fractions
import functools
import math
import typing

import numpy as np
from sortedcontainers import SortedKeyList

from sphericallab import arithmetic
from sphericallab import exceptions

Fraction = fractions.Fraction


@functools.total_ordering
@dataclasses.dataclass(frozen=True, eq=True)
class FareyFraction:
    a: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise exceptions.ArithmeticInputError(f"denominator must be positive, got {self.q}")
        if not 0 <= self.a < self.q:
            raise exceptions.ArithmeticInputError(f"numerator {self.a} outside [0, {self.q})")
        if math.gcd(self.a, self.q) != 1:
            raise exceptions.NotCoprime(self.a, self.q)

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.q)

    def __lt__(self, other):
        if not isinstance(other, FareyFraction):
            return NotImplemented
        return self.value < other.value

    def __str__(self):
        return f"{self.a}/{self.q}"


@dataclasses.dataclass(frozen=True)
class FareyInterval:
    center: FareyFraction
    left_end: Fraction
    right_end: Fraction

    @property
    def length(self) -> Fraction:
        return self.right_end - self.left_end

    @property
    def left_width(self) -> Fraction:
        return self.center.value - self.left_end

    @property
    def right_width(self) -> Fraction:
        return self.right_end - self.center.value

    def contains(self, tau: Fraction) -> bool:
        """Half-open membership on the circle."""
        return (tau - self.left_end) % 1 < self.length

    def offset_contains(self, tau: Fraction) -> bool:
        """Membership of an offset τ in [-left_width, right_width)."""
        return -self.left_width <= tau < self.right_width


@dataclasses.dataclass(frozen=True)
class InverseRange:
    """
    The units a modulo q with N1 <= a^{-1} <= N2. When wraps is set the
    range is cyclic: a^{-1} >= N1 or a^{-1} <= N2.
    """
    q: int
    N1: int
    N2: int
    wraps: bool = False

    def __contains__(self, inverse: int) -> bool:
        if self.wraps:
            return inverse >= self.N1 or inverse <= self.N2
        return self.N1 <= inverse <= self.N2

    def members(self) -> typing.FrozenSet[int]:
        u = arithmetic.units(self.q)
        inv = arithmetic._unit_inverses(self.q)
        return frozenset(int(a) for a, i in zip(u, inv) if int(i) in self)


def _check_level(q: int, level: int) -> None:
    if level < 1:
        raise exceptions.ArithmeticInputError(f"level must be positive, got {level}")
    if not 1 <= q <= level:
        raise exceptions.ArithmeticInputError(f"denominator {q} outside [1, {level}]")


def farey_sequence(level: int) -> typing.List[FareyFraction]:
    """
    Reduced fractions in [0, 1) with denominator at most level, ascending,
    by the next-term recurrence.
    """
    if level < 1:
        raise exceptions.ArithmeticInputError(f"level must be positive, got {level}")
    a, b, c, d = 0, 1, 1, level
    out = [FareyFraction(0, 1)]
    while c < d:
        out.append(FareyFraction(c, d))
        k = (level + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return out


def _largest_congruent(r: int, q: int, level: int) -> int:
    """max{ m in [1, level] : m ≡ r mod q }"""
    r %= q
    if r == 0:
        return q * (level // q)
    return r + q * ((level - r) // q)


def neighbor_denominators(a: int, q: int, level: int) -> typing.Tuple[int, int]:
    """
    (q̃_left, q̃_right): the largest denominators up to level congruent to
    +a^{-1} and -a^{-1} modulo q.
    """
    _check_level(q, level)
    FareyFraction(a, q)
    inv = arithmetic.mod_inverse(a, q).value
    return _largest_congruent(inv, q, level), _largest_congruent(-inv, q, level)


def _neighbors(a: int, q: int, level: int) -> typing.Tuple[typing.Tuple[int, int], typing.Tuple[int, int]]:
    ql, qr = neighbor_denominators(a, q, level)
    # left: a·q̃ − ã·q = 1, right: ã·q − a·q̃ = 1
    return ((a * ql - 1) // q, ql), ((a * qr + 1) // q, qr)


def farey_interval(a: int, q: int, level: int) -> FareyInterval:
    (al, ql), (ar, qr) = _neighbors(a, q, level)
    return FareyInterval(
        center=FareyFraction(a, q),
        left_end=Fraction(a + al, q + ql),
        right_end=Fraction(a + ar, q + qr),
    )


def _as_tau(tau) -> Fraction:
    tau = Fraction(tau)
    if not 0 <= tau < 1:
        raise exceptions.ArithmeticInputError(f"τ must lie in [0, 1), got {tau}")
    return tau


def covering_fractions(tau, q: int, level: int) -> typing.FrozenSet[int]:
    """{ a ∈ Z_q^× : I(a, q) ∋ τ } at the given level."""
    _check_level(q, level)
    tau = _as_tau(tau)
    return frozenset(
        int(a) for a in arithmetic.units(q)
        if farey_interval(int(a), q, level).contains(tau)
    )


def offset_covering(tau, q: int, level: int) -> typing.FrozenSet[int]:
    """
    { a ∈ Z_q^× : -(a/q - left_end) <= τ < right_end - a/q }: the windows
    of all fractions with denominator q, moved to the origin.
    """
    _check_level(q, level)
    tau = Fraction(tau)
    return frozenset(
        int(a) for a in arithmetic.units(q)
        if farey_interval(int(a), q, level).offset_contains(tau)
    )


def fit_inverse_range(
    members: typing.AbstractSet[int], q: int, cyclic: bool = False
) -> typing.Optional[InverseRange]:
    """
    Express members as the units whose inverse lies in a range, or raise
    PropositionViolation. Returns None for an empty set.
    """
    if not members:
        return None
    if q == 1:
        return InverseRange(1, 0, 0)
    u = arithmetic.units(q)
    inv = arithmetic._unit_inverses(q)
    order = np.argsort(inv, kind="stable")
    inv_sorted = inv[order]
    flags = np.array([int(a) in members for a in u[order]])

    hit = inv_sorted[flags]
    n1, n2 = int(hit[0]), int(hit[-1])
    linear = InverseRange(q, n1, n2)
    if flags[(inv_sorted >= n1) & (inv_sorted <= n2)].all():
        return linear
    if cyclic:
        # contiguous on the cycle iff at most two membership changes
        changes = np.flatnonzero(flags != np.roll(flags, 1))
        if len(changes) == 2:
            start = changes[0] if flags[changes[0]] else changes[1]
            stop = (changes[1] if flags[changes[0]] else changes[0]) - 1
            return InverseRange(q, int(inv_sorted[start]), int(inv_sorted[stop]), wraps=True)
    raise exceptions.PropositionViolation(
        f"covering set {sorted(members)} mod {q} is not an inverse range", q=q
    )


def inverse_range(tau, q: int, level: int, offset: bool = False) -> typing.Optional[InverseRange]:
    """
    The (N1, N2) with covering_fractions(τ, q, level) = { a : N1 <= a^{-1} <= N2 },
    or None when nothing covers τ. With offset set, the offset windows are
    used and cyclic ranges are accepted.
    """
    if offset:
        members = offset_covering(tau, q, level)
    else:
        members = covering_fractions(tau, q, level)
    return fit_inverse_range(members, q, cyclic=offset)


class FareyDissection:
    """
    All intervals at one level in circle order, with O(log n) lookup of the
    interval owning a point.
    """
    def __init__(self, level: int) -> None:
        self.level = level
        self.fractions = farey_sequence(level)
        self.intervals: typing.List[FareyInterval] = []
        n = len(self.fractions)
        for i, f in enumerate(self.fractions):
            if i > 0:
                prev = self.fractions[i - 1]
                pa, pq = prev.a, prev.q
            else:
                last = self.fractions[-1]
                pa, pq = last.a - last.q, last.q
            if i + 1 < n:
                nxt = self.fractions[i + 1]
                na, nq = nxt.a, nxt.q
            else:
                na, nq = 1, 1
            self.intervals.append(FareyInterval(
                center=f,
                left_end=Fraction(f.a + pa, f.q + pq),
                right_end=Fraction(f.a + na, f.q + nq),
            ))
        self._index = SortedKeyList(self.intervals, key=lambda iv: iv.left_end)
        self._table: typing.Optional[typing.Tuple[np.ndarray, ...]] = None

    def _covering_table(self) -> typing.Tuple[np.ndarray, ...]:
        # (q, a, left num, left den, right num, right den) from the congruence formula
        if self._table is None:
            rows = []
            for q in range(1, self.level + 1):
                for a in arithmetic.units(q):
                    iv = farey_interval(int(a), q, self.level)
                    rows.append((
                        q, int(a),
                        iv.left_end.numerator, iv.left_end.denominator,
                        iv.right_end.numerator, iv.right_end.denominator,
                    ))
            self._table = tuple(np.array(col, dtype=np.int64) for col in zip(*rows))
        return self._table

    def covering(self, tau) -> typing.Dict[int, typing.FrozenSet[int]]:
        """
        Every non-empty covering set at τ, keyed by denominator, in exact
        integer arithmetic over all intervals of the level at once.
        """
        tau = _as_tau(tau)
        q, a, ln, ld, rn, rd = self._covering_table()
        n, D = tau.numerator, tau.denominator
        mask = np.zeros(len(q), dtype=bool)
        for m in (n, n - D):
            mask |= (ln * D <= m * ld) & (m * rd < rn * D)
        out: typing.Dict[int, typing.Set[int]] = {}
        for i in np.flatnonzero(mask):
            out.setdefault(int(q[i]), set()).add(int(a[i]))
        return {k: frozenset(v) for k, v in out.items()}

    def __len__(self):
        return len(self.intervals)

    def positional_neighbors(self, i: int) -> typing.Tuple[int, int]:
        """Denominators of the sequence neighbours of the i-th fraction."""
        n = len(self.fractions)
        left = self.fractions[i - 1].q if i > 0 else self.fractions[-1].q
        right = self.fractions[i + 1].q if i + 1 < n else 1
        return left, right

    def locate(self, tau) -> FareyInterval:
        tau = Fraction(tau) % 1
        for t in (tau, tau - 1):
            i = self._index.bisect_key_right(t) - 1
            if i >= 0:
                iv = self._index[i]
                if iv.left_end <= t < iv.right_end:
                    return iv
        raise AssertionError(f"no interval owns {tau}")  # pragma: no cover

    def endpoints(self) -> typing.List[Fraction]:
        return sorted({iv.left_end % 1 for iv in self.intervals})

    def check_partition(self) -> bool:
        """Exact tiling: consecutive intervals share endpoints and the lengths sum to 1."""
        ivs = self.intervals
        if sum(iv.length for iv in ivs) != 1:
            return False
        for a, b in zip(ivs, ivs[1:]):
            if a.right_end != b.left_end:
                return False
        return ivs[-1].right_end == ivs[0].left_end + 1

    def check_neighbors(self) -> bool:
        """
        Positional neighbours match the congruence formula and adjacent
        fractions differ by exactly 1/(q q̃).
        """
        for i, f in enumerate(self.fractions):
            if self.positional_neighbors(i) != neighbor_denominators(f.a, f.q, self.level):
                return False
        for f, g in zip(self.fractions, self.fractions[1:] + [None]):
            gv = g.value if g is not None else Fraction(1)
            gq = g.q if g is not None else 1
            if gv - f.value != Fraction(1, f.q * gq):
                return False
        return True

    def check_widths(self) -> bool:
        """qΛ times each half width lies in [1/2, 1]."""
        lo, hi = Fraction(1, 2), Fraction(1)
        for iv in self.intervals:
            s = iv.center.q * self.level
            if not (lo <= s * iv.left_width <= hi and lo <= s * iv.right_width <= hi):
                return False
        return True


def _range_violation(members: typing.FrozenSet[int], q: int) -> int:
    try:
        r = fit_inverse_range(members, q)
    except exceptions.PropositionViolation:
        return 1
    got = r.members() if r is not None else frozenset()
    return int(got != members)


@dataclasses.dataclass
class LevelReport:
    level: int
    intervals: int
    taus: int
    violations: int
    partition_ok: bool
    neighbors_ok: bool
    widths_ok: bool
    offset_wraps: int


def check_level(
    level: int,
    random_taus: int = 1000,
    rng: typing.Optional[np.random.Generator] = None,
    offset_level_max: int = 32,
) -> LevelReport:
    """
    Run every dissection check at one level. τ ranges over all interval
    endpoints, the same points moved by a small offset in both directions,
    and random rationals. Offset wrap-arounds are counted for small levels.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    dis = FareyDissection(level)
    eps = Fraction(1, 16 * level * level)
    ends = dis.endpoints()
    taus = set(ends)
    for e in ends:
        taus.add((e + eps) % 1)
        taus.add((e - eps) % 1)
    den = 4 * level * level + 1
    for num in rng.integers(0, den, size=random_taus):
        taus.add(Fraction(int(num), den))

    violations = 0
    for tau in sorted(taus):
        owner = dis.locate(tau)
        covers = dis.covering(tau)
        if covers != {owner.center.q: frozenset([owner.center.a])}:
            violations += 1
        for q in range(1, level + 1):
            violations += _range_violation(covers.get(q, frozenset()), q)

    # brute-force cross-check of the covering table on the random points
    for num in rng.integers(0, den, size=min(random_taus, 64)):
        tau = Fraction(int(num), den)
        covers = dis.covering(tau)
        for q in range(1, level + 1):
            members = covering_fractions(tau, q, level)
            if members != covers.get(q, frozenset()):
                violations += 1
            try:
                r = inverse_range(tau, q, level)
            except exceptions.PropositionViolation:
                violations += 1
                continue
            if (r.members() if r is not None else frozenset()) != members:
                violations += 1

    wraps = 0
    if level <= offset_level_max:
        for q in range(2, level + 1):
            widths = set()
            for a in arithmetic.units(q):
                iv = farey_interval(int(a), q, level)
                widths.update((iv.right_width - eps, -iv.left_width + eps))
            for tau in widths:
                r = inverse_range(tau, q, level, offset=True)
                if r is not None and r.wraps:
                    wraps += 1

    return LevelReport(
        level=level,
        intervals=len(dis),
        taus=len(taus),
        violations=violations,
        partition_ok=dis.check_partition(),
        neighbors_ok=dis.check_neighbors(),
        widths_ok=dis.check_widths(),
        offset_wraps=wraps,
    )

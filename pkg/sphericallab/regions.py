"""
Exponent regions in the (1/p, 1/r) square, with exact rational geometry.

Every region is the open interior of the convex hull of its vertices.
Vertex lists are reduced to strict convex position (counter-clockwise,
collinear points dropped) before any test.
"""
import dataclasses
import fractions
import typing

from sphericallab import ctx
from sphericallab import exceptions
from sphericallab.utils import rational

Fraction = fractions.Fraction

REGION_NAMES = ("T", "Tstar", "Qstar", "Rstar", "Sstar", "R", "S")
STARRED = ("Qstar", "Rstar", "Sstar")
HALF = Fraction(1, 2)


@dataclasses.dataclass(frozen=True, order=True)
class ExponentPoint:
    inv_p: Fraction
    inv_r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "inv_p", Fraction(self.inv_p))
        object.__setattr__(self, "inv_r", Fraction(self.inv_r))
        if not (0 <= self.inv_p <= 1 and 0 <= self.inv_r <= 1):
            raise exceptions.RegionError(f"{self} lies outside the unit square")

    @classmethod
    def parse(cls, inv_p: str, inv_r: str) -> "ExponentPoint":
        return cls(rational.parse_rational(inv_p), rational.parse_rational(inv_r))

    def __str__(self):
        return f"({rational.format_rational(self.inv_p)}, {rational.format_rational(self.inv_r)})"

    def midpoint(self, other: "ExponentPoint") -> "ExponentPoint":
        return ExponentPoint((self.inv_p + other.inv_p) * HALF, (self.inv_r + other.inv_r) * HALF)


Point = ExponentPoint


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a.inv_p - o.inv_p) * (b.inv_r - o.inv_r) - (a.inv_r - o.inv_r) * (b.inv_p - o.inv_p)


def convex_hull(points: typing.Iterable[Point]) -> typing.List[Point]:
    """Counter-clockwise hull with collinear points removed (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: typing.List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: typing.List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclasses.dataclass(frozen=True)
class ConvexRegion:
    name: str
    d: int
    vertices: typing.Tuple[Point, ...]
    open: bool = True

    @classmethod
    def from_points(cls, name: str, d: int, points: typing.Iterable[Point]) -> "ConvexRegion":
        return cls(name, d, tuple(convex_hull(points)))

    def edges(self) -> typing.Iterator[typing.Tuple[Point, Point]]:
        v = self.vertices
        for i in range(len(v)):
            yield v[i], v[(i + 1) % len(v)]

    def area(self) -> Fraction:
        """Shoelace formula; 0 for degenerate hulls."""
        if len(self.vertices) < 3:
            return Fraction(0)
        s = Fraction(0)
        for a, b in self.edges():
            s += a.inv_p * b.inv_r - b.inv_p * a.inv_r
        return s * HALF

    def contains(self, point: Point) -> bool:
        """Strict interior membership."""
        if len(self.vertices) < 3:
            return False
        return all(_cross(a, b, point) > 0 for a, b in self.edges())

    def closure_contains(self, point: Point) -> bool:
        if len(self.vertices) < 3:
            return point in self.vertices
        return all(_cross(a, b, point) >= 0 for a, b in self.edges())

    def table(self) -> typing.List[typing.Tuple[str, str]]:
        return [
            (rational.format_rational(v.inv_p), rational.format_rational(v.inv_r))
            for v in self.vertices
        ]


def _f(n, m=1) -> Fraction:
    return Fraction(n, m)


def _t_vertices(d: int) -> typing.List[Point]:
    dd = d * d
    return [
        Point(0, 1),
        Point(_f(d - 1, d), _f(1, d)),
        Point(_f(d - 1, d), _f(d - 1, d)),
        Point(_f(dd - d, dd + 1), _f(dd - d + 2, dd + 1)),
    ]


def _shared_vertex(d: int) -> Point:
    """The common fourth vertex of ℛ*(d) and 𝒮*(d)."""
    dd = d * d
    s = _f(d - 4, d - 1)
    t = _f(3, 2 * (d - 1))
    return Point(
        HALF * (_f(dd - d, dd + 1) + 1) * s + t,
        HALF * (_f(dd - d + 2, dd + 1) + 1) * s + t,
    )


def _corner_pair(d: int) -> typing.List[Point]:
    return [Point(_f(d - 2, d), _f(2, d)), Point(_f(d - 2, d), _f(d - 2, d))]


def _vertices(name: str, d: int) -> typing.List[Point]:
    dd = d * d
    if name == "T":
        return _t_vertices(d)
    if name == "Tstar":
        boundary = [Point(0, 1), Point(1, 1), Point(1, 0)]
        return [t.midpoint(b) for t in _t_vertices(d) for b in boundary]
    if name == "Qstar":
        s = _f(d - 4, d - 2)
        t = _f(1, d - 2)
        return [
            Point(_f(1, d), _f(d - 1, d)),
            *_corner_pair(d),
            Point(_f(dd - d, dd + 1) * s + t, _f(dd - d + 2, dd + 1) * s + t),
        ]
    if name == "Rstar":
        return [Point(0, 1), *_corner_pair(d), _shared_vertex(d)]
    if name == "Sstar":
        return [Point(_f(3, 2 * (d - 1)), _f(2 * d - 5, 2 * (d - 1))), *_corner_pair(d), _shared_vertex(d)]
    if name == "R":
        return [Point(0, 1), *_corner_pair(d)]
    if name == "S":
        return [Point(_f(2, d), _f(d - 2, d)), *_corner_pair(d)]
    raise exceptions.UnknownRegion(f"unknown region {name!r}; expected one of {', '.join(REGION_NAMES)}")


def region_vertices(name: str, d: int) -> ConvexRegion:
    if name not in REGION_NAMES:
        raise exceptions.UnknownRegion(f"unknown region {name!r}; expected one of {', '.join(REGION_NAMES)}")
    if d < 2:
        raise exceptions.RegionError(f"regions need d >= 2, got {d}")
    if name in STARRED and d < 5:
        ctx.log.warn(f"{name}({d}) is outside the range d >= 5 where its estimates are proved")
    if name in STARRED and d < 3:
        raise exceptions.RegionError(f"{name} is undefined for d = {d}")
    return ConvexRegion.from_points(name, d, _vertices(name, d))


def strict_superset(a: ConvexRegion, b: ConvexRegion) -> bool:
    """closure(b) ⊆ closure(a) and the hulls differ, decided by area."""
    if not all(a.closure_contains(v) for v in b.vertices):
        return False
    return a.area() > b.area()


def necessary_condition(point: Point, d: int) -> bool:
    """max{1/p + 2/d, 1/r + 2/(pd)} <= 1."""
    x, y = point.inv_p, point.inv_r
    return max(x + _f(2, d), y + 2 * x / d) <= 1


def improving_exponent(point: Point, d: int) -> Fraction:
    """d((1 - 1/r) - 1/p), the exponent of Λ in the improving bound."""
    return d * ((1 - point.inv_r) - point.inv_p)


def necessary_region(d: int) -> ConvexRegion:
    """
    The part of the necessary-condition polygon on or above the duality line
    1/p + 1/r = 1, where the improving regions live.
    """
    if d < 3:
        raise exceptions.RegionError(f"the necessary region needs d >= 3, got {d}")
    return ConvexRegion.from_points("N", d, [
        Point(0, 1),
        Point(_f(d - 2, d), _f(2, d)),
        Point(_f(d - 2, d), _f(d * d - 2 * d + 4, d * d)),
    ])


def gap_area(d: int) -> Fraction:
    """Area of the necessary region not covered by ℛ*(d)."""
    return necessary_region(d).area() - region_vertices("Rstar", d).area()

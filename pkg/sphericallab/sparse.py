"""
Sparse collections, sparse (p, r)-forms and the stopping-time decomposition
of the maximal average against a pair of indicator functions.

The stopping-time tree lives in a frame anchored at the lower corner of the
bounding box of E1 ∪ E2, so translating both sets translates the tree and
leaves every measured quantity unchanged bit for bit. DyadicCube alignment is
relative to that frame.

Only the three density conditions of the decomposition are implemented; the
square-function conditions are left out and termination comes from doubling
C0 whenever the packing condition fails.
"""
import dataclasses
import fractions
import functools
import itertools
import math
import typing

import numpy as np

from sphericallab import ctx
from sphericallab import exceptions
from sphericallab import lattice
from sphericallab import regions
from sphericallab.coretypes import serializable
from sphericallab.utils import parallel

Fraction = fractions.Fraction

MAX_DOUBLINGS = 128


@dataclasses.dataclass(frozen=True)
class Cube(serializable.StateDataclass):
    """corner + [0, side)^d in Z^d."""
    corner: typing.Tuple[int, ...]
    side: int

    def __post_init__(self):
        object.__setattr__(self, "corner", tuple(int(c) for c in self.corner))
        if self.side < 1:
            raise exceptions.SphericalLabException(f"cube side must be positive, got {self.side}")

    @property
    def d(self) -> int:
        return len(self.corner)

    @property
    def volume(self) -> int:
        return self.side ** self.d

    @property
    def upper(self) -> np.ndarray:
        return np.asarray(self.corner, dtype=np.int64) + self.side

    def contains(self, points: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.corner, dtype=np.int64)
        return np.all((points >= lo) & (points < lo + self.side), axis=1)

    def dilate(self, k: int) -> "Cube":
        """The concentric cube of side k·side, for odd k."""
        shift = (k - 1) // 2 * self.side
        return Cube(tuple(c - shift for c in self.corner), k * self.side)

    def shifted(self, offset: typing.Sequence[int]) -> "Cube":
        return Cube(tuple(c + int(o) for c, o in zip(self.corner, offset)), self.side)

    def points(self) -> np.ndarray:
        axes = [np.arange(c, c + self.side, dtype=np.int64) for c in self.corner]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.d)

    def get_state(self):
        return {"corner": list(self.corner), "side": self.side}

    @classmethod
    def from_state(cls, state):
        return cls(tuple(state["corner"]), state["side"])


@dataclasses.dataclass(frozen=True)
class DyadicCube(Cube):

    def __post_init__(self):
        super().__post_init__()
        if self.side & (self.side - 1):
            raise exceptions.SphericalLabException(f"dyadic side must be a power of two, got {self.side}")
        if any(c % self.side for c in self.corner):
            raise exceptions.SphericalLabException(f"corner {self.corner} is not aligned to side {self.side}")

    def ancestor(self, side: int) -> "DyadicCube":
        if side < self.side:
            raise exceptions.SphericalLabException(f"ancestor side {side} below {self.side}")
        return DyadicCube(tuple(c // side * side for c in self.corner), side)


@dataclasses.dataclass
class SparseCollection(serializable.Serializable):
    cubes: typing.List[Cube]
    witnesses: typing.List[np.ndarray]
    rho: Fraction

    def __len__(self):
        return len(self.cubes)

    def get_state(self):
        return {
            "rho": self.rho,
            "cubes": [c.get_state() for c in self.cubes],
            "witnesses": [np.asarray(w, dtype=np.int64).tolist() for w in self.witnesses],
        }

    @classmethod
    def from_state(cls, state):
        cubes = [Cube.from_state(c) for c in state["cubes"]]
        witnesses = [
            np.asarray(w, dtype=np.int64).reshape(-1, Q.d) for Q, w in zip(cubes, state["witnesses"])
        ]
        return cls(cubes=cubes, witnesses=witnesses, rho=Fraction(state["rho"]))


def local_average(h: lattice.LatticeFunction, cube: Cube, t: float) -> float:
    """⟨h⟩_{Q,t} = (|Q|^{-1} Σ_{x∈Q} |h(x)|^t)^{1/t}; t = inf gives the max."""
    if len(h) == 0:
        return 0.0
    a = np.abs(h.values[cube.contains(h.coords)].astype(np.float64))
    if math.isinf(t):
        return float(a.max(initial=0.0))
    return (math.fsum(a ** t) / cube.volume) ** (1.0 / t)


def sparse_form(
    S: typing.Union[SparseCollection, typing.Sequence[Cube]],
    f: lattice.LatticeFunction,
    g: lattice.LatticeFunction,
    p: float,
    r: float,
) -> float:
    """Σ_Q ⟨f⟩_{Q,p} ⟨g⟩_{Q,r} |Q|."""
    if p < 1 or r < 1:
        raise exceptions.SphericalLabException(f"sparse forms need p, r >= 1, got p={p}, r={r}")
    cubes = S.cubes if isinstance(S, SparseCollection) else S
    return math.fsum(
        local_average(f, Q, p) * local_average(g, Q, r) * Q.volume for Q in cubes
    )


@dataclasses.dataclass
class SparsityReport(serializable.StateDataclass):
    ok: bool
    rho: Fraction
    cubes: int
    thin: typing.List[int]
    outside: typing.List[int]
    max_overlap: int
    overlap_ok: bool


def sparsity_check(S: SparseCollection, rho: typing.Optional[Fraction] = None) -> SparsityReport:
    """
    |E_Q| > ρ|Q| for every Q and ‖Σ 1_{E_Q}‖_∞ <= 1/ρ, in exact arithmetic.
    Witnesses that leave their cube are reported separately.
    """
    rho = S.rho if rho is None else Fraction(rho)
    thin = [i for i, (Q, w) in enumerate(zip(S.cubes, S.witnesses)) if len(w) <= rho * Q.volume]
    outside = [
        i for i, (Q, w) in enumerate(zip(S.cubes, S.witnesses))
        if len(w) and not Q.contains(np.asarray(w, dtype=np.int64)).all()
    ]
    nonempty = [np.unique(np.asarray(w, dtype=np.int64), axis=0) for w in S.witnesses if len(w)]
    if nonempty:
        _, counts = np.unique(np.vstack(nonempty), axis=0, return_counts=True)
        overlap = int(counts.max())
    else:
        overlap = 0
    overlap_ok = overlap * rho <= 1
    return SparsityReport(
        ok=not thin and not outside and overlap_ok,
        rho=rho,
        cubes=len(S.cubes),
        thin=thin,
        outside=outside,
        max_overlap=overlap,
        overlap_ok=overlap_ok,
    )


def _dyadic_levels(level_max: int) -> typing.List[int]:
    if level_max < 1 or level_max & (level_max - 1):
        raise exceptions.LatticeError(f"level must be a power of two, got {level_max}")
    return [1 << j for j in range(level_max.bit_length())]


@dataclasses.dataclass
class ArgmaxPartition:
    classes: typing.Dict[int, np.ndarray]
    lower: np.ndarray
    upper: np.ndarray
    sentinel_count: int

    def label(self, x: typing.Sequence[int]) -> int:
        """The Λ whose class holds x; 0 for the sentinel class."""
        x = np.asarray(x, dtype=np.int64)
        for level, pts in self.classes.items():
            if len(pts) and np.any(np.all(pts == x, axis=1)):
                return level
        return 0


def argmax_partition(f: lattice.LatticeFunction, level_max: int) -> ArgmaxPartition:
    """
    Sort the points of the evaluation box supp f ⊕ [-2Λ_max, 2Λ_max]^d by the
    dyadic scale whose maximal average is largest there, ties going to the
    smallest scale. Points where every scale vanishes form the sentinel
    class 0, kept as a count.
    """
    levels = _dyadic_levels(level_max)
    if len(f) == 0:
        raise exceptions.EmptyInput("argmax partition of an empty function")
    parts = parallel.pool_map(lambda lv: lattice.dyadic_maximal(f, lv).as_float(), levels)
    coords, inv = np.unique(np.vstack([p.coords for p in parts]), axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    table = np.zeros((len(coords), len(levels)))
    start = 0
    for j, part in enumerate(parts):
        table[inv[start:start + len(part)], j] = np.abs(part.values)
        start += len(part)
    best = np.argmax(table, axis=1)
    positive = table.max(axis=1) > 0
    classes = {
        lv: coords[positive & (best == j)] for j, lv in enumerate(levels)
    }
    lo, hi = f.support_box()
    lower, upper = lo - 2 * level_max, hi + 2 * level_max
    volume = int(np.prod((upper - lower + 1).astype(object)))
    return ArgmaxPartition(
        classes=classes, lower=lower, upper=upper, sentinel_count=volume - int(positive.sum())
    )


@dataclasses.dataclass
class StoppingTree(serializable.StateDataclass):
    cube: DyadicCube
    depth: int
    c0: float
    packing: Fraction
    conditions: typing.List[bool]
    children: typing.List["StoppingTree"]
    origin: typing.List[int]
    delta: float

    def get_state(self):
        return {
            "cube": self.cube.get_state(),
            "depth": self.depth,
            "c0": self.c0,
            "packing": self.packing,
            "conditions": list(self.conditions),
            "children": [c.get_state() for c in self.children],
            "origin": list(self.origin),
            "delta": self.delta,
        }

    @classmethod
    def from_state(cls, state):
        return cls(
            cube=DyadicCube.from_state(state["cube"]),
            depth=state["depth"],
            c0=state["c0"],
            packing=Fraction(state["packing"]),
            conditions=list(state["conditions"]),
            children=[cls.from_state(c) for c in state["children"]],
            origin=list(state["origin"]),
            delta=state["delta"],
        )

    def walk(self) -> typing.Iterator["StoppingTree"]:
        yield self
        for child in self.children:
            yield from child.walk()

    @property
    def max_depth(self) -> int:
        return max(node.depth for node in self.walk())

    @property
    def final_c0(self) -> float:
        return max(node.c0 for node in self.walk())

    def packing_ok(self, ratio: typing.Optional[int] = None) -> bool:
        ratio = ctx.options.packing_ratio if ratio is None else ratio
        return all(node.packing * ratio <= 1 for node in self.walk())

    def pre_sparse(self, absolute: bool = True) -> typing.List[Cube]:
        """The collection {3Q} over every node, root included."""
        out = [node.cube.dilate(3) for node in self.walk()]
        if absolute:
            out = [c.shifted(self.origin) for c in out]
        return out

    def stats(self) -> typing.List[typing.Dict[str, typing.Any]]:
        """Node count, stopping-cube count and worst packing per depth."""
        rows: typing.Dict[int, typing.Dict[str, typing.Any]] = {}
        for node in self.walk():
            row = rows.setdefault(node.depth, {"depth": node.depth, "nodes": 0, "cubes": 0, "packing": Fraction(0)})
            row["nodes"] += 1
            row["cubes"] += len(node.children)
            row["packing"] = max(row["packing"], node.packing)
        return [rows[k] for k in sorted(rows)]


def _nonempty(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64)
    if pts.size == 0:
        raise exceptions.EmptyInput("stopping decomposition needs nonempty sets")
    return np.unique(pts.reshape(len(pts), -1), axis=0)


def root_cube(hi: np.ndarray) -> DyadicCube:
    """
    The smallest dyadic E with 3E ⊇ [0, hi]. Each axis uses corner 0 when
    [-s, 2s) suffices and corner s otherwise.
    """
    top = int(hi.max())
    s = 1
    while 3 * s - 1 < top:
        s *= 2
    return DyadicCube(tuple(0 if h <= 2 * s - 1 else s for h in hi.tolist()), s)


def _check_work(work: int, what: str) -> None:
    budget = ctx.options.budget
    if work > budget:
        raise exceptions.BudgetExceeded(work, budget, what)


@functools.lru_cache(maxsize=None)
def _five_offsets(d: int) -> np.ndarray:
    return np.array(list(itertools.product(range(-2, 3), repeat=d)), dtype=np.int64).reshape(-1, d)


def _block_keys(coords: np.ndarray, t: int, blocks: int) -> np.ndarray:
    d = coords.shape[1]
    return np.ravel_multi_index(tuple((coords // t).T), (blocks,) * d)


def _five_counts(rel: np.ndarray, t: int, blocks: int) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Block keys at scale t with the number of points of rel in 5Q, for every
    block whose 5Q meets rel. rel is relative to the grid corner.
    """
    d = rel.shape[1]
    if len(rel) == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    occupied, counts = np.unique(rel // t, axis=0, return_counts=True)
    offsets = _five_offsets(d)
    _check_work(len(occupied) * len(offsets), f"5Q counts of {len(rel)} points at scale {t}")
    near = (occupied[:, None, :] + offsets[None, :, :]).reshape(-1, d)
    weights = np.repeat(counts, len(offsets))
    inside = np.all((near >= 0) & (near < blocks), axis=1)
    keys = np.ravel_multi_index(tuple(near[inside].T), (blocks,) * d)
    uniq, inv = np.unique(keys, return_inverse=True)
    return uniq, np.bincount(inv.reshape(-1), weights=weights[inside], minlength=len(uniq)).astype(np.int64)


class _MaximalField:
    """
    1_{3E} sup_λ 𝒜_λ 1_{E1} for condition 1 of one node. Spheres with
    λ² <= n_max are scattered from E1 exactly; every larger sphere inside 3E
    contributes at most tail. Block averages are decided from these two
    bounds, and the blocks the bounds leave open are gathered exactly.
    """
    def __init__(self, e1: np.ndarray, big: Cube, inv_p: Fraction) -> None:
        self.big = big
        self.rel = e1 - np.asarray(big.corner, dtype=np.int64)
        self.p = math.inf if inv_p == 0 else float(1 / Fraction(inv_p))
        self.n_max = -1
        self.coords = np.zeros((0, big.d), dtype=np.int64)
        self.values = np.zeros(0)

    @functools.cached_property
    def counts(self) -> np.ndarray:
        return lattice.sphere_counts(self.big.d, self.big.d * (self.big.side - 1) ** 2)

    @functools.cached_property
    def tails(self) -> np.ndarray:
        """tails[N] = |E1| / min{ r_d(n) > 0 : N < n }, over the distances inside 3E."""
        r = self.counts.astype(np.float64)
        r[r == 0] = np.inf
        r[0] = np.inf
        suffix = np.minimum.accumulate(r[::-1])[::-1]
        tails = np.zeros(len(r))
        tails[:-1] = len(self.rel) / suffix[1:]
        return tails

    def threshold(self, c0: float) -> float:
        """C0 ⟨1_{E1}⟩_{3E,p}"""
        if math.isinf(self.p):
            return c0
        return c0 * (len(self.rel) / self.big.volume) ** (1 / self.p)

    def _extend(self, n_max: int) -> None:
        if n_max <= self.n_max:
            return
        d, side = self.big.d, self.big.side
        counts = self.counts
        shells = [n for n in range(1, n_max + 1) if counts[n] > 0]
        self.n_max = n_max
        if not shells:
            return
        sizes = [int(counts[n]) for n in shells]
        _check_work(len(self.rel) * sum(sizes), f"near field of {len(self.rel)} points up to n={n_max}")
        offsets = np.vstack([lattice.sphere_points(d, n) for n in shells])
        radii = np.repeat(np.array(shells, dtype=np.int64), sizes)

        keys = []
        step = max(1, lattice.CHUNK_ROWS // len(offsets))
        for lo, hi in parallel.chunks(0, len(self.rel), step):
            x = (self.rel[lo:hi, None, :] + offsets[None, :, :]).reshape(-1, d)
            n = np.tile(radii, hi - lo)
            inside = np.all((x >= 0) & (x < side), axis=1)
            flat = np.ravel_multi_index(tuple(x[inside].T), (side,) * d)
            keys.append(flat * (n_max + 1) + n[inside])
        uniq, hits = np.unique(np.concatenate(keys), return_counts=True)
        # S_n(x) / r_d(n), then the max over n at each x
        ratio = hits / counts[uniq % (n_max + 1)]
        points, inv = np.unique(uniq // (n_max + 1), return_inverse=True)
        best = np.zeros(len(points))
        np.maximum.at(best, inv.reshape(-1), ratio)
        self.coords = np.stack(np.unravel_index(points, (side,) * d), axis=1).astype(np.int64)
        self.values = best

    def _local(self, inv: np.ndarray, size: int, t: int, values: np.ndarray) -> np.ndarray:
        if math.isinf(self.p):
            out = np.zeros(size)
            np.maximum.at(out, inv, values)
            return out
        sums = np.bincount(inv, weights=values ** self.p, minlength=size)
        return (sums / t ** self.big.d) ** (1 / self.p)

    def _exact(self, key: int, t: int) -> float:
        blocks = self.big.side // t
        corner = np.array(np.unravel_index(key, (blocks,) * self.big.d), dtype=np.int64) * t
        Q = Cube(tuple(corner.tolist()), t)
        _check_work(Q.volume * len(self.rel), f"exact maximal average on {Q}")
        values = lattice.full_maximal(lattice.LatticeFunction.indicator(self.rel), None, at=Q.points())
        return float(self._local(np.zeros(Q.volume, dtype=np.int64), 1, t, values.values.values)[0])

    def hits(self, t: int, c0: float) -> np.ndarray:
        """Keys of the blocks at scale t where condition 1 holds."""
        if len(self.rel) == 0:
            return np.zeros(0, dtype=np.int64)
        target = self.threshold(c0)
        n_max = int(np.argmax(self.tails <= target / 2))
        self._extend(n_max)
        tail = float(self.tails[self.n_max])
        if len(self.coords) == 0:
            return np.zeros(0, dtype=np.int64)
        uniq, inv = np.unique(_block_keys(self.coords, t, self.big.side // t), return_inverse=True)
        local = self._local(inv.reshape(-1), len(uniq), t, self.values)
        hold = local >= target
        for i in np.flatnonzero(~hold & (local + tail >= target)):
            hold[i] = self._exact(int(uniq[i]), t) >= target
        return uniq[hold]


def _select(
    E: DyadicCube,
    e1: np.ndarray,
    e2: np.ndarray,
    c0: float,
    field: typing.Optional[_MaximalField],
) -> typing.List[typing.Tuple[DyadicCube, typing.List[bool]]]:
    """
    Maximal dyadic cubes of 3E with side below ℓ(E) meeting one of

        1. ⟨1_{3E} sup 𝒜 1_{E1}⟩_{Q,p} >= C0 ⟨1_{E1}⟩_{3E,p}
        2. ⟨1_{E1}⟩_{5Q,1} >= C0 ⟨1_{E1}⟩_{3E,1}
        3. ⟨1_{E2}⟩_{5Q,1} >= C0 ⟨1_{E2}⟩_{3E,1}

    A condition whose right side vanishes never holds. Without a field only
    conditions 2 and 3 are tested.
    """
    big = E.dilate(3)
    d, vol = E.d, big.volume
    corner = np.asarray(big.corner, dtype=np.int64)
    rel1, rel2 = e1[big.contains(e1)] - corner, e2[big.contains(e2)] - corner
    k1, k2 = len(rel1), len(rel2)
    none = np.zeros(0, dtype=np.int64)

    selected = []
    chosen: typing.Dict[int, np.ndarray] = {}
    t = E.side // 2
    while t >= 1:
        blocks = big.side // t
        vol5 = (5 * t) ** d
        keys1, five1 = _five_counts(rel1, t, blocks)
        keys2, five2 = _five_counts(rel2, t, blocks)
        c2 = keys1[five1 * vol >= c0 * k1 * vol5] if k1 else none
        c3 = keys2[five2 * vol >= c0 * k2 * vol5] if k2 else none
        c1 = field.hits(t, c0) if field is not None else none
        hit = np.union1d(np.union1d(c1, c2), c3)

        if len(hit):
            cells = np.stack(np.unravel_index(hit, (blocks,) * d), axis=1).astype(np.int64)
            free = np.ones(len(hit), dtype=bool)
            for side, keys in chosen.items():
                free &= ~np.isin(_block_keys(cells * t, side, big.side // side), keys)
            hit, cells = hit[free], cells[free]
            flags = np.stack([np.isin(hit, c) for c in (c1, c2, c3)], axis=1)
            for cell, row in zip(cells, flags.tolist()):
                selected.append((DyadicCube(tuple((corner + cell * t).tolist()), t), row))
            chosen[t] = hit
        t //= 2
    return selected


def _packing(cubes, E: DyadicCube) -> Fraction:
    return Fraction(sum(Q.volume for Q, _ in cubes), E.volume)


def _grow(
    E: DyadicCube,
    e1: np.ndarray,
    e2: np.ndarray,
    inv_p: Fraction,
    c0: float,
    ratio: int,
) -> typing.Tuple[typing.List[typing.Tuple[DyadicCube, typing.List[bool]]], float, Fraction]:
    """
    Stopping cubes of one node, doubling C0 until they pack. Adding
    condition 1 only enlarges the union of the stopping cubes, so it is
    evaluated once conditions 2 and 3 alone pack.
    """
    big = E.dilate(3)
    field = _MaximalField(e1[big.contains(e1)], big, inv_p)
    for _ in range(MAX_DOUBLINGS):
        cubes = _select(E, e1, e2, c0, None)
        packing = _packing(cubes, E)
        if packing * ratio <= 1:
            cubes = _select(E, e1, e2, c0, field)
            packing = _packing(cubes, E)
            if packing * ratio <= 1:
                return cubes, c0, packing
        ctx.log.warn(
            f"stopping cubes of {E.corner}+[0,{E.side})^{E.d} cover {float(packing):.4g} "
            f"of it at C0={c0:g}; doubling C0"
        )
        c0 *= 2
    raise exceptions.RecursionBudget(f"C0 doubling did not reach packing after {MAX_DOUBLINGS} steps")


def stopping_decomposition(
    E1,
    E2,
    point: regions.ExponentPoint,
    c0: float = 1.0,
    delta: typing.Optional[float] = None,
) -> StoppingTree:
    """
    Recursive stopping-time tree: each node E gets the maximal stopping cubes
    of 3E, and each stopping cube Q becomes a node with E1 ∩ 3Q and E2 ∩ 3Q.
    Nodes of one depth run in parallel. C0 only grows on the way down; the
    final value is the largest C0 of any node.
    """
    e1, e2 = _nonempty(E1), _nonempty(E2)
    if e1.shape[1] != e2.shape[1]:
        raise exceptions.SphericalLabException("E1 and E2 live in different dimensions")
    delta = ctx.options.stopping_delta if delta is None else delta
    ratio = ctx.options.packing_ratio
    cap = ctx.options.recursion_cap
    origin = np.minimum(e1.min(axis=0), e2.min(axis=0))
    e1, e2 = e1 - origin, e2 - origin
    root = StoppingTree(
        cube=root_cube(np.maximum(e1.max(axis=0), e2.max(axis=0))),
        depth=0, c0=c0, packing=Fraction(0), conditions=[False, False, False],
        children=[], origin=origin.tolist(), delta=delta,
    )

    frontier = [(root, e1, e2)]
    while frontier:
        depth = frontier[0][0].depth
        if depth > cap:
            raise exceptions.RecursionBudget(f"stopping tree deeper than recursion_cap={cap}")

        def work(item):
            node, s1, s2 = item
            return _grow(node.cube, s1, s2, point.inv_p, node.c0, ratio)

        results = parallel.pool_map(work, frontier)
        nxt = []
        for (node, s1, s2), (cubes, final, packing) in zip(frontier, results):
            node.c0, node.packing = final, packing
            for Q, flags in cubes:
                child = StoppingTree(
                    cube=Q, depth=depth + 1, c0=final, packing=Fraction(0), conditions=flags,
                    children=[], origin=node.origin, delta=delta,
                )
                node.children.append(child)
                three = Q.dilate(3)
                nxt.append((child, s1[three.contains(s1)], s2[three.contains(s2)]))
        frontier = nxt
    return root


def to_sparse_collection(tree: StoppingTree, dilated: bool = False) -> typing.Tuple[SparseCollection, typing.List[Cube]]:
    """
    Disjoint witnesses for the node cubes: smallest cubes first, each takes
    the part of its core not yet claimed and keeps the cube when that part
    exceeds half the core. Cores then form a 1/2-sparse collection; with
    dilated the same witnesses serve {3Q}, which is 3^{-d}/2-sparse. Cubes
    that fail are returned separately.
    """
    cores = sorted({node.cube for node in tree.walk()}, key=lambda c: (c.side, c.corner))
    d = tree.cube.d
    lo = np.min([c.corner for c in cores], axis=0)
    hi = np.max([c.upper for c in cores], axis=0)
    shape = tuple((hi - lo).tolist())
    if int(np.prod(np.array(shape, dtype=object))) > ctx.options.budget:
        raise exceptions.BudgetExceeded(int(np.prod(np.array(shape, dtype=object))), ctx.options.budget, "witness grid")
    claimed = np.zeros(shape, dtype=bool)
    origin = np.asarray(tree.origin, dtype=np.int64)

    cubes, witnesses, dropped = [], [], []
    for Q in cores:
        start = np.asarray(Q.corner, dtype=np.int64) - lo
        window = tuple(slice(int(s), int(s) + Q.side) for s in start)
        free = ~claimed[window]
        if 2 * int(free.sum()) > Q.volume:
            witnesses.append(np.argwhere(free).astype(np.int64) + np.asarray(Q.corner) + origin)
            cubes.append((Q.dilate(3) if dilated else Q).shifted(origin))
            claimed[window] = True
        else:
            dropped.append(Q.shifted(origin))
    rho = Fraction(1, 2 * 3 ** d) if dilated else Fraction(1, 2)
    return SparseCollection(cubes=cubes, witnesses=witnesses, rho=rho), dropped


def scale_cover(cubes: typing.Iterable[DyadicCube], level: int) -> typing.List[DyadicCube]:
    """Dyadic R with Λ <= ℓ(R) <= 2Λ containing at least one of cubes."""
    _dyadic_levels(level)
    out = {Q.ancestor(side) for Q in cubes for side in (level, 2 * level) if Q.side <= side}
    return sorted(out, key=lambda c: (c.side, c.corner))


@dataclasses.dataclass
class DominationReport(serializable.StateDataclass):
    d: int
    inv_p: Fraction
    inv_r: Fraction
    inner: float
    form: float
    ratio: float
    c0: float
    depth: int
    nodes: int
    in_region: bool


def _exponent(inv: Fraction) -> float:
    return math.inf if inv == 0 else float(1 / Fraction(inv))


def domination_constant(
    E1,
    E2,
    point: regions.ExponentPoint,
    level_max: typing.Optional[int] = None,
    c0: float = 1.0,
) -> DominationReport:
    """
    ⟨sup_λ 𝒜_λ 1_{E1}, 1_{E2}⟩ divided by the sparse form of the constructed
    pre-sparse collection {3Q}. level_max bounds the scales to λ < 2Λ_max;
    None takes every radius. The ratio bounds the constant of this one
    collection, not the sparse norm.
    """
    e1, e2 = _nonempty(E1), _nonempty(E2)
    d = e1.shape[1]
    in_region = d >= 3 and regions.region_vertices("Rstar", d).contains(point)
    if not in_region:
        ctx.log.warn(f"{point} lies outside Rstar({d}); the measured constant has no bound to meet")

    origin = np.minimum(e1.min(axis=0), e2.min(axis=0))
    e1, e2 = e1 - origin, e2 - origin
    n_max = None if level_max is None else 4 * level_max * level_max - 1
    if level_max is not None:
        _dyadic_levels(level_max)
    f1 = lattice.LatticeFunction.indicator(e1)
    inner = math.fsum(lattice.full_maximal(f1, n_max, at=e2).values.values)

    tree = stopping_decomposition(e1, e2, point, c0=c0)
    f2 = lattice.LatticeFunction.indicator(e2)
    form = sparse_form(tree.pre_sparse(absolute=False), f1, f2, _exponent(point.inv_p), _exponent(point.inv_r))
    return DominationReport(
        d=d,
        inv_p=point.inv_p,
        inv_r=point.inv_r,
        inner=inner,
        form=form,
        ratio=inner / form,
        c0=tree.final_c0,
        depth=tree.max_depth,
        nodes=sum(1 for _ in tree.walk()),
        in_region=in_region,
    )

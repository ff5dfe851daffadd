"""Immersed polygon enumeration and assembly of the superpotential and Floer data."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .cover import (
    CENTRAL,
    E_ARC,
    LOWER,
    NODE_NAMES,
    UPPER,
    MedialGraph,
    RegionWeights,
    ResourceLimit,
    Step,
    Tessellation,
    agrees,
    signature_kind,
    third,
)
from .polyring import MPoly, PolyRing, SeriesRing
from .qseries import QSeries
from .reference import w333

XYZ = ("x", "y", "z")


@dataclass(frozen=True)
class Polygon:
    """A counted polygon, stored as one representative of its deck orbit.

    ``symbols`` lists one ``(color, cut, src, dst, turn)`` record per minimal arc
    of the counterclockwise boundary, starting right after a corner.  The list
    determines the polygon up to deck transformations.
    """

    symbols: tuple
    word: tuple[int, ...]
    sides: tuple[tuple[int, int, int, bool, int, int], ...]
    area: Fraction
    regions: tuple
    s: int
    pcount: int
    r: int
    boundary: tuple = field(compare=False, default=())

    @property
    def key(self) -> tuple:
        return self.symbols

    @property
    def monomial(self) -> tuple[int, int, int]:
        exp = [0, 0, 0]
        for k in self.word:
            exp[k] += 1
        return tuple(exp)

    @property
    def word_str(self) -> str:
        return "".join(NODE_NAMES[k] for k in self.word)

    @property
    def corners(self) -> int:
        return len(self.word)

    @property
    def positive(self) -> bool:
        """Boundary agrees with the curve orientation on the arc entering the first corner."""
        return self.sides[-1][3]

    def reflection_key(self) -> tuple:
        return reflect_symbols(self.symbols)

    def to_dict(self) -> dict:
        return {
            "word": self.word_str,
            "area": [self.area.numerator, self.area.denominator],
            "s": self.s,
            "pcount": self.pcount,
            "r": self.r,
            "sign": raw_sign(self),
            "boundary": [list(s) for s in self.symbols],
        }


def _min_rotation(seq: tuple) -> tuple[tuple, int]:
    n = len(seq)
    best, shift = None, 0
    for i in range(n):
        rot = seq[i:] + seq[:i]
        if best is None or rot < best:
            best, shift = rot, i
    return best, shift


def _period_count(seq: tuple) -> int:
    n = len(seq)
    return sum(1 for i in range(n) if seq[i:] + seq[:i] == seq)


def _corner_rotations(seq: tuple) -> list[int]:
    # rotations that start right after a corner
    n = len(seq)
    return [i for i in range(n) if seq[(i - 1) % n][4]]


def canonical_symbols(seq: tuple) -> tuple:
    n = len(seq)
    starts = _corner_rotations(seq)
    return min(seq[i:] + seq[:i] for i in starts) if starts else _min_rotation(seq)[0]


def reflect_symbols(seq: tuple) -> tuple:
    """Symbols of the mirror image, read counterclockwise."""
    n = len(seq)
    out = []
    for i in range(n - 1, -1, -1):
        color, cut, src, dst, _ = seq[i]
        turn_before = seq[(i - 1) % n][4]
        out.append((1 - color, cut, dst, src, turn_before))
    return canonical_symbols(tuple(out))


class _LineIndex:
    """Assigns line identities to arcs on demand, extending each line a fixed reach."""

    def __init__(self, graph: MedialGraph, reach: int):
        self.graph = graph
        self.reach = reach
        self.line_of: dict[tuple[int, int], int] = {}
        self.count = 0

    def lookup(self, step: Step) -> int | None:
        return self.line_of.get((step.tri, step.cut))

    def register(self, first: Step, last: Step, arcs: Iterable[Step]) -> int:
        """Line id of a side, extended ``reach`` arcs beyond both of its ends."""
        lid = self.line_of.get((first.tri, first.cut))
        if lid is None:
            lid = self.count
            self.count += 1
        for st in arcs:
            self.line_of[(st.tri, st.cut)] = lid
        g = self.graph
        for cur in (last, Step(first.tri, first.cut, first.dst, first.src)):
            for _ in range(self.reach):
                cur = g.advance(cur, False)
                a = (cur.tri, cur.cut)
                if a in self.line_of:
                    break
                self.line_of[a] = lid
        return lid


def _flood(graph: MedialGraph, steps: list[Step], weights: RegionWeights, bound: Fraction):
    """Regions on the left of a closed boundary, or ``None`` if the area exceeds ``bound``."""
    walls = {(s.tri, s.cut) for s in steps}
    seen = set()
    stack = []
    for s in steps:
        reg = graph.left_region(s)
        if reg not in seen:
            seen.add(reg)
            stack.append(reg)
    area = sum((weights.of(r[1]) for r in seen), Fraction(0))
    if area > bound:
        return None
    while stack:
        reg = stack.pop()
        for nb, wall in graph.region_neighbors(reg):
            if wall is not None and wall in walls:
                continue
            if nb in seen:
                continue
            seen.add(nb)
            area += weights.of(nb[1])
            if area > bound:
                return None
            stack.append(nb)
    return seen, area


def euler_characteristic(graph: MedialGraph, regions: Iterable[tuple[int, int]]) -> int:
    """Euler characteristic of the closed union of unit regions."""
    tess = graph.tess
    verts, edges, faces = set(), set(), 0
    for t, part in regions:
        faces += 1
        tri = tess.triangles[t]
        if part == CENTRAL:
            for k in range(3):
                verts.add(("n", tri.edges[k]))
            for v in range(3):
                edges.add(("arc", t, v))
        else:
            v = part
            verts.add(("v", tri.vertices[v]))
            i, j = [k for k in range(3) if k != v]
            verts.add(("n", tri.edges[i]))
            verts.add(("n", tri.edges[j]))
            edges.add(("arc", t, v))
            edges.add(("half", tri.edges[i], tri.vertices[v]))
            edges.add(("half", tri.edges[j], tri.vertices[v]))
    return len(verts) - len(edges) + faces


def _make_polygon(graph: MedialGraph, steps: list[Step], regions, area) -> Polygon:
    tess = graph.tess
    n = len(steps)
    symbols = []
    for i, st in enumerate(steps):
        nxt = steps[(i + 1) % n]
        turn = nxt.tri == st.tri
        symbols.append((tess.color(st.tri), st.cut, st.src, st.dst, turn))
    symbols = tuple(symbols)
    canon = canonical_symbols(symbols)
    shift = next(
        i for i in _corner_rotations(symbols) if symbols[i:] + symbols[:i] == canon
    )
    steps = steps[shift:] + steps[:shift]
    return _polygon_from_symbols(canon, area, regions, tuple(steps))


def _polygon_from_symbols(canon: tuple, area, regions, boundary=()) -> Polygon:
    word = []
    sides = []
    start = 0
    for i, (color, cut, src, dst, turn) in enumerate(canon):
        if turn:
            word.append(dst)
            seg = canon[start : i + 1]
            s_e = sum(1 for c in seg if c[1] == E_ARC and c[0] == UPPER)
            s_p = sum(1 for c in seg if c[1] == E_ARC and c[0] == LOWER)
            # (start corner type, end corner type, arcs, agrees, e count, p count)
            sides.append((seg[0][2], dst, len(seg), agrees(src, dst), s_e, s_p))
            start = i + 1
    s = sum(1 for c in canon if c[1] == E_ARC and c[0] == UPPER)
    pc = sum(1 for c in canon if c[1] == E_ARC and c[0] == LOWER)
    r = _period_count(canon)
    return Polygon(
        symbols=canon,
        word=tuple(word),
        sides=tuple(sides),
        area=area,
        regions=regions,
        s=s,
        pcount=pc,
        r=r,
        boundary=boundary,
    )


def corner_excess(n: int) -> Fraction:
    """Contribution of one corner region at a cone point of order ``n`` to the corner count."""
    return Fraction(n - 3, 2 * n)


def expected_corners(signature, regions) -> Fraction:
    """Corner count forced by the combinatorial Gauss-Bonnet identity for a disc.

    Give each of the six sectors at a medial node angle pi/3 and the tessellation
    angle pi/n at a cone point of order n.  Sides are then geodesic, central
    regions are flat, a corner region at an order-n point has curvature
    pi/n - pi/3, and every convex corner turns by 2pi/3.
    """
    total = Fraction(3)
    for _, part in regions:
        if part != CENTRAL:
            total += corner_excess(signature[part])
    return total


def max_corners(signature, weights: RegionWeights, cutoff) -> int:
    per_area = max(
        corner_excess(n) / weights.of(t) for t, n in enumerate(signature)
    )
    return 3 + int(max(per_area, Fraction(0)) * Fraction(cutoff))


def _fundamental_corners(graph: MedialGraph) -> list[tuple[int, int]]:
    lower = graph.tess.neighbor(0, 0)
    return [(t, k) for t in (0, lower) for k in range(3)]


def enumerate_polygons(
    graph: MedialGraph,
    weights: RegionWeights | None = None,
    cutoff=10,
    convexity_prune: bool = True,
    threads: int = 1,
) -> list[Polygon]:
    """All convex-cornered polygons with weighted area at most ``cutoff``, one per deck orbit.

    Polygons are embedded in the cover, so the walk never revisits a node and the
    regions on its left are all interior; their total weight bounds the search.
    With ``convexity_prune`` a walk is also cut as soon as it meets the line of an
    earlier side anywhere but at the closing corner.  With ``threads > 1`` the
    six starting corners are searched in separate processes and merged in
    corner order.
    """
    weights = weights or RegionWeights()
    cutoff = Fraction(cutoff)
    corners = _fundamental_corners(graph)
    found: dict[tuple, Polygon] = {}
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [(graph.signature, weights, cutoff, convexity_prune, i) for i in range(len(corners))]
        with ProcessPoolExecutor(max_workers=min(threads, len(corners))) as pool:
            for part in pool.map(_search_corner, args):
                for p in part:
                    found.setdefault(p.key, p)
    else:
        reach = int(cutoff / weights.minimum) // 2 + 4
        lines = _LineIndex(graph, reach=reach)
        k_max = max_corners(graph.signature, weights, cutoff)
        for t0, k0 in corners:
            _Search(graph, weights, cutoff, t0, k0, lines, found, convexity_prune, k_max).run()
    return sorted(found.values(), key=lambda p: (p.area, p.word, p.symbols))


def _search_corner(args) -> list[Polygon]:
    signature, weights, cutoff, prune, index = args
    graph = MedialGraph(Tessellation(*signature))
    t0, k0 = _fundamental_corners(graph)[index]
    reach = int(cutoff / weights.minimum) // 2 + 4
    lines = _LineIndex(graph, reach=reach)
    found: dict[tuple, Polygon] = {}
    _Search(graph, weights, cutoff, t0, k0, lines, found, prune, max_corners(signature, weights, cutoff)).run()
    return [replace(p, boundary=()) for p in found.values()]


class _Search:
    def __init__(self, graph, weights, cutoff, t0, k0, lines, found, prune, k_max):
        self.k_max = k_max
        self.g = graph
        self.w = weights
        self.cutoff = cutoff
        self.start = graph.corner_start(t0, k0)
        self.start_node = graph.node(t0, k0)
        self.lines = lines if prune else None
        self.found = found
        self.path = [self.start]
        self.visited = {self.start_node}
        reg = graph.left_region(self.start)
        self.lefts = {reg: 1}
        self.area = weights.of(reg[1])
        self.side_lines: list[int] = []
        self.side_starts: list[int] = [0]

    def run(self):
        # LIFO of ("apply", ...), ("visit", step), ("undo", ...) frames
        stack = [("visit", self.start)]
        g = self.g
        while stack:
            op, arg = stack.pop()
            if op == "apply":
                self._apply(*arg)
                continue
            if op == "undo":
                self._undo(arg)
                continue
            step = arg
            node = g.node(step.tri, step.dst)
            turn_step = g.advance(step, True)
            if node == self.start_node and turn_step == self.start:
                self._close()
                continue
            if node in self.visited:
                continue
            if self.lines is not None and self.side_lines:
                if self.lines.lookup(turn_step) in self.side_lines:
                    continue
            options = [(False, g.advance(step, False))]
            if g.is_ccw(step) and len(self.side_lines) + 2 <= self.k_max:
                options.append((True, turn_step))
            for turn, nxt in options:
                reg = g.left_region(nxt)
                if reg not in self.lefts and self.area + self.w.of(reg[1]) > self.cutoff:
                    continue
                stack.append(("undo", (node, turn, reg)))
                stack.append(("visit", nxt))
                stack.append(("apply", (node, turn, reg, nxt, step)))

    def _apply(self, node, turn, reg, nxt, step):
        self.visited.add(node)
        if turn:
            if self.lines is not None:
                first = self.path[self.side_starts[-1]]
                arcs = self.path[self.side_starts[-1]:]
                lid = self.lines.register(first, step, arcs)
            else:
                lid = len(self.side_lines)
            self.side_lines.append(lid)
            self.side_starts.append(len(self.path))
        if reg in self.lefts:
            self.lefts[reg] += 1
        else:
            self.lefts[reg] = 1
            self.area += self.w.of(reg[1])
        self.path.append(nxt)

    def _undo(self, arg):
        node, turn, reg = arg
        self.path.pop()
        c = self.lefts[reg] - 1
        if c:
            self.lefts[reg] = c
        else:
            del self.lefts[reg]
            self.area -= self.w.of(reg[1])
        if turn:
            self.side_lines.pop()
            self.side_starts.pop()
        self.visited.discard(node)

    def _close(self):
        steps = list(self.path)
        res = _flood(self.g, steps, self.w, self.cutoff)
        if res is None:
            return
        regions, total = res
        if euler_characteristic(self.g, regions) != 1:
            return
        poly = _make_polygon(self.g, steps, tuple(sorted(regions)), total)
        self.found.setdefault(poly.key, poly)


# -- signs --------------------------------------------------------------------


def raw_sign(p: Polygon) -> int:
    """Sign read off the boundary: one factor per side running against the curve, one per spin marker.

    Odd corners have degree one, so a side traversed against the curve's
    orientation flips the sign once; every pass over the spin marker (which
    sits with ``e``) flips it again.
    """
    against = sum(1 for side in p.sides if not side[3])
    return -1 if (against + p.s) % 2 else 1


def pair_partners(polys: Iterable[Polygon]) -> dict[tuple, Polygon]:
    """Map each polygon key to its reflection partner; raises if a partner is missing."""
    by_key = {p.key: p for p in polys}
    out = {}
    for key, p in by_key.items():
        partner = by_key.get(p.reflection_key())
        if partner is None:
            raise ValueError(f"polygon {p.word_str} at area {p.area} has no reflection partner")
        out[key] = partner
    return out


def _precision_for(cutoff: Fraction, weights: RegionWeights) -> Fraction:
    # areas are integer combinations of the weights, so they live on a grid
    den = 1
    for w in (weights.central, weights.corner_a, weights.corner_b, weights.corner_c):
        den = den * Fraction(w).denominator // _gcd(den, Fraction(w).denominator)
    step = Fraction(1, den)
    return Fraction((cutoff // step) + 1) * step


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- potential -----------------------------------------------------------------


@dataclass
class Potential:
    signature: tuple[int, int, int]
    cutoff: Fraction
    monomials: dict[tuple[int, int, int], QSeries]
    lam: QSeries
    partial: bool = False

    _ring = PolyRing(XYZ)

    @staticmethod
    def key(exp) -> str:
        return Potential._ring.key(tuple(exp))

    def series(self, mono) -> QSeries:
        if isinstance(mono, str):
            mono = Potential._ring.from_key(mono)
        mono = tuple(mono)
        if mono == (0, 0, 0):
            return self.lam
        return self.monomials.get(mono, QSeries.zero(self.lam.precision))

    def as_poly(self, include_lambda: bool = False) -> MPoly:
        ring = PolyRing(XYZ, SeriesRing())
        terms = dict(self.monomials)
        if include_lambda and not self.lam.is_zero():
            terms[(0, 0, 0)] = self.lam
        return MPoly(ring, terms)

    def to_dict(self) -> dict:
        monos = sorted(self.monomials.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))
        out = {
            "abc": list(self.signature),
            "cutoff": [self.cutoff.numerator, self.cutoff.denominator],
            "lambda": self.lam.to_dict(),
            "monomials": {self.key(e): s.to_dict() for e, s in monos},
        }
        if self.partial:
            out["partial"] = True
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "Potential":
        return cls(
            signature=tuple(data["abc"]),
            cutoff=Fraction(*data["cutoff"]),
            monomials={
                Potential._ring.from_key(k): QSeries.from_dict(v) for k, v in data["monomials"].items()
            },
            lam=QSeries.from_dict(data["lambda"]),
            partial=bool(data.get("partial", False)),
        )


def assemble_potential(
    polys: list[Polygon],
    cutoff,
    signature=(3, 3, 3),
    weights: RegionWeights | None = None,
) -> Potential:
    """Sum the pair contributions ``(-1)^{s(P+)} (s(P) + s(P^op)) / r`` over reflection pairs.

    ``P+`` is the member whose boundary runs with the curve; its sign is the
    sign of the pair.
    """
    weights = weights or RegionWeights()
    cutoff = Fraction(cutoff)
    prec = _precision_for(cutoff, weights)
    partners = pair_partners(polys)
    acc: dict[tuple, dict[Fraction, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    done = set()
    for p in polys:
        if p.key in done:
            continue
        q = partners[p.key]
        done.update((p.key, q.key))
        plus = p if p.positive else q
        sign = -1 if plus.s % 2 else 1
        if q.key == p.key:
            total = Fraction(sign * p.s, p.r)
        else:
            total = Fraction(sign * (p.s + q.s), p.r)
        if total:
            acc[p.monomial][p.area] += total
    monomials = {}
    for mono, terms in acc.items():
        series = QSeries(dict(terms), prec)
        if not series.is_zero():
            monomials[mono] = series
    partial = signature_kind(*signature) == "spherical"
    return Potential(tuple(signature), cutoff, monomials, QSeries.zero(prec), partial)


def potential_from_raw_signs(polys: list[Polygon], cutoff, signature=(3, 3, 3), weights=None) -> Potential:
    """Same potential, summed polygon by polygon with ``raw_sign * s / r``."""
    weights = weights or RegionWeights()
    cutoff = Fraction(cutoff)
    prec = _precision_for(cutoff, weights)
    acc: dict[tuple, dict[Fraction, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for p in polys:
        if p.s:
            acc[p.monomial][p.area] += Fraction(raw_sign(p) * p.s, p.r)
    monomials = {}
    for mono, terms in acc.items():
        series = QSeries(dict(terms), prec)
        if not series.is_zero():
            monomials[mono] = series
    partial = signature_kind(*signature) == "spherical"
    return Potential(tuple(signature), cutoff, monomials, QSeries.zero(prec), partial)


def compute_potential(
    signature=(3, 3, 3),
    cutoff=10,
    weights: RegionWeights | None = None,
    threads: int = 1,
    backend: str = "combinatorial",
    max_triangles: int = 2_000_000,
) -> tuple[Potential, list[Polygon]]:
    """Enumerate and assemble; ``backend="lattice"`` uses the flat (3,3,3) picture."""
    weights = weights or RegionWeights()
    if backend == "lattice":
        from .lattice import enumerate_lattice

        if tuple(signature) != (3, 3, 3):
            raise ValueError("the lattice backend covers only (3,3,3)")
        polys = enumerate_lattice(cutoff, weights)
    elif backend == "combinatorial":
        graph = MedialGraph(Tessellation(*signature, max_triangles=max_triangles))
        polys = enumerate_polygons(graph, weights, cutoff, threads=threads)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return assemble_potential(polys, cutoff, signature, weights), polys


# -- theta and gamma ------------------------------------------------------------


def adjacency(word: tuple[int, ...], i: int, j: int) -> int:
    """Occurrences of ``ij`` minus occurrences of ``ji`` in a cyclic word."""
    n = len(word)
    count = 0
    for k in range(n):
        a, b = word[k], word[(k + 1) % n]
        if (a, b) == (i, j):
            count += 1
        elif (a, b) == (j, i):
            count -= 1
    return count


def alpha_tables(polys: Iterable[Polygon]) -> dict[tuple[int, int], dict[tuple, Fraction]]:
    """Signed adjacency sums over positively oriented polygons, per (area, monomial) class."""
    out: dict[tuple[int, int], dict[tuple, Fraction]] = {}
    for i in range(3):
        for j in range(3):
            if i != j:
                out[(i, j)] = defaultdict(Fraction)
    for p in polys:
        if not p.positive:
            continue
        sign = -1 if p.s % 2 else 1
        for (i, j), table in out.items():
            a = adjacency(p.word, i, j)
            if a:
                table[(p.area, p.monomial)] += Fraction(sign * a, p.r)
    return out


def compute_theta_gamma(polys: list[Polygon], cutoff, weights: RegionWeights | None = None):
    """``theta(a, m)`` and ``gamma = sum q^a theta(a, m) m / xyz``.

    Raises ``ValueError`` when the three cyclic adjacency counts disagree.
    """
    weights = weights or RegionWeights()
    prec = _precision_for(Fraction(cutoff), weights)
    alphas = alpha_tables(polys)
    classes = set()
    for t in alphas.values():
        classes.update(k for k, v in t.items() if v)
    theta: dict[tuple, int] = {}
    for cls in sorted(classes):
        xy, yz, zx = (alphas[pair].get(cls, Fraction(0)) for pair in ((0, 1), (1, 2), (2, 0)))
        if not (xy == yz == zx):
            raise ValueError(f"theta inconsistency at area {cls[0]}, monomial {cls[1]}: {xy}, {yz}, {zx}")
        if xy:
            theta[cls] = xy
    ring = PolyRing(XYZ, SeriesRing())
    acc: dict[tuple, dict[Fraction, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for (area, mono), val in theta.items():
        reduced = tuple(e - 1 for e in mono)
        if min(reduced) < 0:
            raise ValueError(f"theta supported on {mono}, which is not divisible by xyz")
        acc[reduced][area] += val
    gamma = MPoly(ring, {m: QSeries(dict(t), prec) for m, t in acc.items()})
    return theta, gamma


# -- Floer differential data ---------------------------------------------------


GENERATORS = ("p", "X", "Y", "Z", "e", "Xb", "Yb", "Zb")
# the side leaving a corner; selected by the (3,3,3) check
DEFAULT_W_RULE = "following"


@dataclass
class FloerData:
    theta: dict
    gamma: MPoly
    w: tuple[MPoly, MPoly, MPoly]
    delta_table: dict[str, dict[str, MPoly]]
    rule: str
    cutoff: Fraction

    @property
    def w_x(self) -> MPoly:
        return self.w[0]

    @property
    def w_y(self) -> MPoly:
        return self.w[1]

    @property
    def w_z(self) -> MPoly:
        return self.w[2]


def w_entries(polys: Iterable[Polygon], cutoff, rule: str = "preceding", weights=None):
    """``w_x, w_y, w_z`` from p-marker counts on the side next to each corner.

    With ``rule="preceding"`` the side entering a corner is used, with
    ``"following"`` the side leaving it.
    """
    weights = weights or RegionWeights()
    prec = _precision_for(Fraction(cutoff), weights)
    acc = [defaultdict(lambda: defaultdict(Fraction)) for _ in range(3)]
    for p in polys:
        sign = raw_sign(p)
        k = len(p.word)
        for i, v in enumerate(p.word):
            side = p.sides[i] if rule == "preceding" else p.sides[(i + 1) % k]
            count = side[5]
            if count:
                mono = list(p.monomial)
                mono[v] -= 1
                acc[v][tuple(mono)][p.area] += Fraction(sign * count, p.r)
    ring = PolyRing(XYZ, SeriesRing())
    out = []
    for table in acc:
        terms = {}
        for mono, t in table.items():
            s = QSeries(dict(t), prec)
            if not s.is_zero():
                terms[mono] = s
        out.append(MPoly(ring, terms))
    return tuple(out)


def _euler_sum(ws) -> MPoly:
    x, y, z = ws[0].ring.gens()
    return x * ws[0] + y * ws[1] + z * ws[2]


def _same_to(a: MPoly, b: MPoly) -> bool:
    diff = a - b
    return all(c.is_zero() for _, c in diff.items())


def degree_two_parts(polys: Iterable[Polygon], cutoff, weights=None) -> dict[str, dict[str, MPoly]]:
    """Coefficients of the old barred generators in ``delta(X)``, ``delta(Y)``, ``delta(Z)``."""
    weights = weights or RegionWeights()
    prec = _precision_for(Fraction(cutoff), weights)
    alphas = alpha_tables(polys)
    ring = PolyRing(XYZ, SeriesRing())
    bars = ("Xb", "Yb", "Zb")
    out: dict[str, dict[str, MPoly]] = {}
    for i in range(3):
        row = {}
        for j in range(3):
            if i == j:
                continue
            acc: dict[tuple, dict[Fraction, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
            for (area, mono), val in alphas[(i, j)].items():
                if not val:
                    continue
                red = list(mono)
                red[i] -= 1
                red[j] -= 1
                if min(red) < 0:
                    raise ValueError("negative exponent in degree two part")
                acc[tuple(red)][area] += val
            row[bars[j]] = MPoly(ring, {m: QSeries(dict(t), prec) for m, t in acc.items()})
        out[NODE_NAMES[i]] = row
    return out


def compute_delta(
    polys: list[Polygon],
    theta,
    gamma: MPoly,
    cutoff,
    potential: Potential | None = None,
    rule: str = "auto",
    weights=None,
    reference=None,
) -> FloerData:
    """Assemble the Floer differential on ``p, X, Y, Z, e, Xb, Yb, Zb`` (barred ones rescaled by gamma).

    ``rule="auto"`` tries the preceding-side convention for the w-entries first
    and falls back to the following side.  A convention is accepted when
    ``x w_x + y w_y + z w_z = W - lambda`` and, if ``reference`` entries are
    given, when it reproduces them.  For the default (3,3,3) data the closed
    forms are used as reference; elsewhere the auto rule uses the convention
    that the (3,3,3) check selects.
    """
    weights = weights or RegionWeights()
    cutoff = Fraction(cutoff)
    if potential is None:
        potential = assemble_potential(polys, cutoff, weights=weights)
    if reference is None and potential.signature == (3, 3, 3) and weights == RegionWeights():
        reference = w333(_precision_for(cutoff, weights))
    target = potential.as_poly()
    if rule != "auto":
        rules = (rule,)
    elif reference is not None:
        rules = ("preceding", "following")
    else:
        rules = (DEFAULT_W_RULE,)
    chosen = None
    for r in rules:
        ws = w_entries(polys, cutoff, r, weights)
        if not _same_to(_euler_sum(ws), target):
            continue
        if reference is not None and not all(_same_to(a, b) for a, b in zip(ws, reference)):
            continue
        chosen = (r, ws)
        break
    if chosen is None:
        raise ValueError("no w-entry convention reproduces W - lambda and the reference entries")
    rule_used, ws = chosen
    # degree two parts in the rescaled basis: coefficient of Yb in delta(X) is z * gamma, etc.
    ring = gamma.ring
    x, y, z = ring.gens()
    expect = {
        "X": {"Yb": z, "Zb": -y},
        "Y": {"Zb": x, "Xb": -z},
        "Z": {"Xb": y, "Yb": -x},
    }
    raw = degree_two_parts(polys, cutoff, weights)
    for src, row in expect.items():
        for dst, coeff in row.items():
            if not _same_to(raw[src][dst], coeff * gamma):
                raise ValueError(f"degree two part of delta({src}) on {dst} is not {coeff} * gamma")
    wx, wy, wz = ws
    table: dict[str, dict[str, MPoly]] = {g: {} for g in GENERATORS}
    table["e"] = {"X": x, "Y": y, "Z": z}
    table["X"] = {"e": wx, "Yb": z, "Zb": -y}
    table["Y"] = {"e": wy, "Zb": x, "Xb": -z}
    table["Z"] = {"e": wz, "Xb": y, "Yb": -x}
    table["Xb"] = {"p": x, "Y": -wz, "Z": wy}
    table["Yb"] = {"p": y, "X": wz, "Z": -wx}
    table["Zb"] = {"p": z, "X": -wy, "Y": wx}
    table["p"] = {"Xb": wx, "Yb": wy, "Zb": wz}
    return FloerData(theta, gamma, ws, table, rule_used, cutoff)

"""Combinatorial universal cover of the orbifold sphere with cone orders (a, b, c).

Triangles of the tessellation are elements of the reflection triangle group.
Each one is identified exactly by the image of a chamber-interior weight under
the contragredient Tits representation, with entries in a cyclotomic integer
ring, so the patch can be grown lazily and without any coordinates.

Conventions used throughout the package:

* vertex types are indexed ``0, 1, 2`` for ``a, b, c``;
* the medial node on the edge opposite vertex type ``k`` has node type ``k``,
  printed as ``X, Y, Z``;
* the arc of a triangle cutting off vertex ``v`` joins the two nodes on the
  edges through ``v``;
* upper triangles (even group elements) have counterclockwise vertex order
  ``a, b, c``, so their medial triangle reads ``X, Y, Z`` counterclockwise;
* the immersed curve is oriented ``X -> Y -> Z -> X`` on every arc;
* ``e`` sits on every upper ``Z-X`` arc, ``p`` on every lower one.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

NODE_NAMES = ("X", "Y", "Z")
VERTEX_NAMES = ("a", "b", "c")
UPPER, LOWER = 0, 1
_INT64_SAFE = 2**40
CENTRAL = 3  # region part index for the central region of a triangle
E_ARC = 1  # the Z-X arc cuts off vertex b

# cyclic order in which a counterclockwise walk around the central region cuts
# off the vertex types
_CCW = {UPPER: (0, 2, 1), LOWER: (0, 1, 2)}


def third(i: int, j: int) -> int:
    return 3 - i - j


def ccw_next(color: int, t: int) -> int:
    order = _CCW[color]
    return order[(order.index(t) + 1) % 3]


def ccw_prev(color: int, t: int) -> int:
    order = _CCW[color]
    return order[(order.index(t) - 1) % 3]


def agrees(src: int, dst: int) -> bool:
    """Whether traversing an arc from node type ``src`` to ``dst`` follows the curve."""
    return (dst - src) % 3 == 1


def signature_kind(a: int, b: int, c: int) -> str:
    s = Fraction(1, a) + Fraction(1, b) + Fraction(1, c)
    if s > 1:
        return "spherical"
    if s == 1:
        return "euclidean"
    return "hyperbolic"


class CyclotomicIntegers:
    """``Z[zeta_M]`` with elements as coefficient tuples modulo the cyclotomic polynomial."""

    def __init__(self, m: int):
        self.m = m
        t = symbols("t")
        coeffs = [int(c) for c in Poly(cyclotomic_poly(m, t), t).all_coeffs()]
        self.degree = len(coeffs) - 1
        # x^d = -sum(low coefficients)
        self._low = list(reversed(coeffs))[: self.degree]
        self.zero = (0,) * self.degree

    def element(self, power: int) -> tuple[int, ...]:
        vec = [0] * (2 * self.degree + self.m)
        vec[power % self.m] = 1
        return self._reduce(vec)

    def _reduce(self, vec: list[int]) -> tuple[int, ...]:
        d = self.degree
        vec = list(vec)
        for i in range(len(vec) - 1, d - 1, -1):
            c = vec[i]
            if c:
                vec[i] = 0
                for j, lc in enumerate(self._low):
                    if lc:
                        vec[i - d + j] -= c * lc
        out = vec[:d] + [0] * (d - len(vec[:d]))
        return tuple(out)

    def add(self, x, y):
        return tuple(i + j for i, j in zip(x, y))

    def sub(self, x, y):
        return tuple(i - j for i, j in zip(x, y))

    def neg(self, x):
        return tuple(-i for i in x)

    def mul(self, x, y):
        prod = [0] * (2 * self.degree)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] += xi * yj
        return self._reduce(prod)

    def two_cos_pi_over(self, n: int):
        """``2 cos(pi / n) = zeta_{2n} + zeta_{2n}^{-1}``."""
        k = self.m // (2 * n)
        return self.add(self.element(k), self.element(-k))


@lru_cache(maxsize=None)
def _ring_for(a: int, b: int, c: int) -> CyclotomicIntegers:
    return CyclotomicIntegers(2 * math.lcm(a, b, c))


@dataclass
class Triangle:
    index: int
    color: int
    frame: tuple
    vertices: list[int]
    edges: list[int]
    neighbors: list[int | None] = field(default_factory=lambda: [None, None, None])
    depth: int = 0


class Tessellation:
    """Lazily generated triangle tessellation of the universal cover.

    ``neighbor(t, k)`` crosses the edge opposite vertex type ``k`` and creates
    the adjacent triangle on first use.  ``build`` performs the breadth-first
    expansion to a given radius.
    """

    def __init__(self, a: int, b: int, c: int, radius: int = 0, max_triangles: int = 2_000_000):
        for n in (a, b, c):
            if not isinstance(n, int) or n < 2:
                raise ValueError("cone orders must be integers >= 2")
        self.signature = (a, b, c)
        self.kind = signature_kind(a, b, c)
        self.partial_support = self.kind == "spherical"
        self.max_triangles = max_triangles
        ring = self.ring = _ring_for(a, b, c)
        d = ring.degree
        # m(s_i, s_j): the rotation order at the vertex fixed by s_i and s_j
        order = {(1, 2): a, (2, 0): b, (0, 1): c}
        # matrices of multiplication by the off-diagonal Cartan entries -2cos(pi/m)
        self._cartan_mats = {}
        for i in range(3):
            for j in range(3):
                if i != j:
                    n = order.get((i, j)) or order[(j, i)]
                    const = ring.neg(ring.two_cos_pi_over(n))
                    cols = [ring.mul(const, ring.element(e)) for e in range(d)]
                    self._cartan_mats[(i, j)] = np.array(cols, dtype=np.int64)
        self.triangles: list[Triangle] = []
        self._tri_key: dict = {}
        self._vertex_key: dict = {}
        self._edge_key: dict = {}
        self.vertex_type: list[int] = []
        self.edge_type: list[int] = []
        self.edge_triangles: list[list[int]] = []
        self.vertex_triangles: list[list[int]] = []
        frame = np.zeros((3, 3, d), dtype=np.int64)
        for t in range(3):
            frame[t, t, 0] = 1
        self._add_triangle(frame, UPPER, 0)
        if radius:
            self.build(radius)

    # -- exact group arithmetic -------------------------------------------

    def _reflect_frame(self, frame, k: int):
        """Frame of ``g s_k`` from the frame of ``g`` (rows are images of fundamental weights)."""
        new_k = -frame[k]
        for s in range(3):
            if s != k:
                new_k = new_k - frame[s] @ self._cartan_mats[(k, s)]
        if new_k.dtype != object and np.abs(new_k).max() > _INT64_SAFE:
            frame = frame.astype(object)
            new_k = -frame[k]
            for s in range(3):
                if s != k:
                    new_k = new_k - frame[s] @ self._cartan_mats[(k, s)].astype(object)
        out = frame.copy()
        out[k] = new_k
        return out

    @staticmethod
    def _key(arr) -> tuple:
        return tuple(arr.ravel().tolist())

    def _add_triangle(self, frame, color: int, depth: int) -> int:
        key = self._key(frame.sum(axis=0))
        idx = len(self.triangles)
        if idx >= self.max_triangles:
            raise ResourceLimit(f"tessellation exceeded {self.max_triangles} triangles")
        verts = []
        for t in range(3):
            vk = self._key(frame[t])
            vid = self._vertex_key.get(vk)
            if vid is None:
                vid = len(self.vertex_type)
                self._vertex_key[vk] = vid
                self.vertex_type.append(t)
                self.vertex_triangles.append([])
            self.vertex_triangles[vid].append(idx)
            verts.append(vid)
        edges = []
        for k in range(3):
            i, j = [t for t in range(3) if t != k]
            ek = (k, self._key(frame[i] + frame[j]))
            eid = self._edge_key.get(ek)
            if eid is None:
                eid = len(self.edge_type)
                self._edge_key[ek] = eid
                self.edge_type.append(k)
                self.edge_triangles.append([])
            self.edge_triangles[eid].append(idx)
            edges.append(eid)
        tri = Triangle(idx, color, frame, verts, edges, [None, None, None], depth)
        self.triangles.append(tri)
        self._tri_key[key] = idx
        return idx

    def neighbor(self, t: int, k: int) -> int:
        tri = self.triangles[t]
        n = tri.neighbors[k]
        if n is not None:
            return n
        frame = self._reflect_frame(tri.frame, k)
        n = self._tri_key.get(self._key(frame.sum(axis=0)))
        if n is None:
            n = self._add_triangle(frame, 1 - tri.color, tri.depth + 1)
        tri.neighbors[k] = n
        self.triangles[n].neighbors[k] = t
        return n

    def build(self, radius: int) -> "Tessellation":
        queue = deque(t.index for t in self.triangles if t.depth < radius)
        while queue:
            t = queue.popleft()
            if self.triangles[t].depth >= radius:
                continue
            for k in range(3):
                known = self.triangles[t].neighbors[k] is not None
                n = self.neighbor(t, k)
                if not known and self.triangles[n].depth <= radius:
                    queue.append(n)
        return self

    # -- queries ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.triangles)

    def color(self, t: int) -> int:
        return self.triangles[t].color

    def fan(self, v: int) -> list[int]:
        return list(self.vertex_triangles[v])

    def valence(self, v: int) -> int:
        return 2 * self.signature[self.vertex_type[v]]

    def is_interior(self, v: int) -> bool:
        return len(self.vertex_triangles[v]) == self.valence(v)

    def canonical_key(self, t: int) -> tuple:
        return self._key(self.triangles[t].frame.sum(axis=0))

    def to_adjacency(self) -> dict:
        return {
            "abc": list(self.signature),
            "triangles": [
                {
                    "index": tri.index,
                    "color": "upper" if tri.color == UPPER else "lower",
                    "vertices": tri.vertices,
                    "edges": tri.edges,
                    "neighbors": tri.neighbors,
                }
                for tri in self.triangles
            ],
        }


class ResourceLimit(RuntimeError):
    """A configured size limit was exceeded."""


def build_tessellation(a: int, b: int, c: int, radius: int) -> Tessellation:
    if radius < 1:
        raise ValueError("radius must be >= 1")
    return Tessellation(a, b, c, radius)


@dataclass(frozen=True)
class RegionWeights:
    """Area of each unit region: one central region and three corner regions per triangle."""

    central: Fraction = Fraction(1)
    corner_a: Fraction = Fraction(1)
    corner_b: Fraction = Fraction(1)
    corner_c: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("central", "corner_a", "corner_b", "corner_c"):
            v = Fraction(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} weight must be positive")
            object.__setattr__(self, name, v)

    def of(self, part: int) -> Fraction:
        return (self.corner_a, self.corner_b, self.corner_c, self.central)[part]

    @property
    def minimum(self) -> Fraction:
        return min(self.central, self.corner_a, self.corner_b, self.corner_c)

    @classmethod
    def parse(cls, text: str) -> "RegionWeights":
        vals = [Fraction(v) for v in text.split(",")]
        if len(vals) != 4:
            raise ValueError("weights need four values: central,corner_a,corner_b,corner_c")
        return cls(*vals)


@dataclass(frozen=True)
class Step:
    """One minimal arc traversed from node type ``src`` to node type ``dst``.

    ``cut`` is the vertex type the arc cuts off inside triangle ``tri``.
    """

    tri: int
    cut: int
    src: int
    dst: int


class MedialGraph:
    """Lift of the immersed curve: nodes on tessellation edges, three arcs per triangle."""

    def __init__(self, tess: Tessellation):
        self.tess = tess

    @property
    def signature(self):
        return self.tess.signature

    def node(self, t: int, k: int) -> int:
        return self.tess.triangles[t].edges[k]

    def node_type(self, node: int) -> int:
        return self.tess.edge_type[node]

    def arc_nodes(self, t: int, v: int) -> tuple[int, int]:
        i, j = [k for k in range(3) if k != v]
        return self.node(t, i), self.node(t, j)

    def arcs_at(self, node: int) -> list[tuple[int, int]]:
        """The four arcs ``(triangle, cut)`` incident to ``node``."""
        k = self.node_type(node)
        out = []
        for t in self.tess.edge_triangles[node]:
            for v in range(3):
                if v != k:
                    out.append((t, v))
        return out

    def straight_partner(self, t: int, v: int, k: int) -> tuple[int, int]:
        """Arc continuing straight through the node of type ``k`` from arc ``(t, v)``."""
        return self.tess.neighbor(t, k), third(v, k)

    def is_ccw(self, step: Step) -> bool:
        color = self.tess.color(step.tri)
        return step.src == ccw_prev(color, step.cut) and step.dst == ccw_next(color, step.cut)

    def agrees(self, step: Step) -> bool:
        return agrees(step.src, step.dst)

    def marker(self, t: int, v: int) -> str | None:
        if v != E_ARC:
            return None
        return "e" if self.tess.color(t) == UPPER else "p"

    def left_region(self, step: Step) -> tuple[int, int]:
        return (step.tri, CENTRAL) if self.is_ccw(step) else (step.tri, step.cut)

    def right_region(self, step: Step) -> tuple[int, int]:
        return (step.tri, step.cut) if self.is_ccw(step) else (step.tri, CENTRAL)

    def advance(self, step: Step, turn: bool) -> Step:
        """Next arc after ``step``: a sharp turn inside the same triangle, or straight on."""
        u = third(step.cut, step.dst)
        if turn:
            return Step(step.tri, u, step.dst, step.cut)
        return Step(self.tess.neighbor(step.tri, step.dst), u, step.dst, step.cut)

    def corner_start(self, t: int, k: int) -> Step:
        """Outgoing arc of the convex corner at node type ``k`` inside triangle ``t``."""
        color = self.tess.color(t)
        v = ccw_next(color, k)
        return Step(t, v, k, third(v, k))

    def region_neighbors(self, region: tuple[int, int]):
        """Adjacent unit regions with the separating arc (``None`` for tessellation edges)."""
        t, part = region
        if part == CENTRAL:
            for v in range(3):
                yield (t, v), (t, v)
        else:
            yield (t, CENTRAL), (t, part)
            for k in range(3):
                if k != part:
                    yield (self.tess.neighbor(t, k), part), None

    def straight_lines(self, t: int, length: int) -> list[list[tuple[int, int]]]:
        """Arc sequences of the three lines through triangle ``t`` (forward from each arc)."""
        lines = []
        for v in range(3):
            i, j = [k for k in range(3) if k != v]
            step = Step(t, v, i, j)
            seq = [(step.tri, step.cut)]
            for _ in range(length - 1):
                step = self.advance(step, False)
                seq.append((step.tri, step.cut))
            lines.append(seq)
        return lines


def build_medial(t: Tessellation) -> MedialGraph:
    return MedialGraph(t)

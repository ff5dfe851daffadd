"""Exact Euclidean backend for the (3,3,3) cover.

The cover is the triangular lattice spanned by ``u`` and ``v`` (unit vectors at
sixty degrees).  A lattice point ``i u + j v`` has vertex type ``(i - j) mod 3``.
Up-pointing triangles have counterclockwise vertex types ``t, t+1, t+2`` and
are the upper ones.  Medial nodes are edge midpoints.  Points are stored in
doubled integer coordinates, so lattice points have both coordinates even and
midpoints have at least one odd coordinate.

In the flat picture every medial line is straight and every counted polygon
is a triangle cut out by three medial lines of different directions, so the
inventory can be listed directly instead of searched for.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cover import LOWER, UPPER, RegionWeights
from .enumerate import Polygon, _polygon_from_symbols, canonical_symbols

U, V, W = (1, 0), (0, 1), (-1, 1)
# representatives of corner positions modulo type-preserving translations
_CORNER_REPS = ((1, 1), (3, 1), (5, 1))


def vertex_type(i: int, j: int) -> int:
    return (i - j) % 3


def edge_of(point: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lattice endpoints of the edge whose midpoint has doubled coordinates ``point``."""
    a, b = point
    if a % 2 and not b % 2:
        return ((a - 1) // 2, b // 2), ((a + 1) // 2, b // 2)
    if b % 2 and not a % 2:
        return (a // 2, (b - 1) // 2), (a // 2, (b + 1) // 2)
    if a % 2 and b % 2:
        return ((a - 1) // 2, (b + 1) // 2), ((a + 1) // 2, (b - 1) // 2)
    raise ValueError(f"{point} is a lattice point, not a midpoint")


def node_type(point: tuple[int, int]) -> int:
    p, q = edge_of(point)
    return 3 - vertex_type(*p) - vertex_type(*q)


def triangle_at(x: Fraction, y: Fraction) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Color and vertices of the lattice triangle containing an interior point."""
    i, j = math.floor(x), math.floor(y)
    if (x - i) + (y - j) < 1:
        return UPPER, ((i, j), (i + 1, j), (i, j + 1))
    return LOWER, ((i + 1, j), (i, j + 1), (i + 1, j + 1))


def arc_symbol(p: tuple[int, int], q: tuple[int, int], turn: bool) -> tuple:
    """``(color, cut, src, dst, turn)`` for the medial arc from midpoint ``p`` to ``q``."""
    mx = Fraction(p[0] + q[0], 4)
    my = Fraction(p[1] + q[1], 4)
    color, verts = triangle_at(mx, my)
    ends = {p, q}
    cut = None
    for k, vtx in enumerate(verts):
        others = [w for w in verts if w != vtx]
        mids = {(vtx[0] + w[0], vtx[1] + w[1]) for w in others}
        if mids == ends:
            cut = vertex_type(*vtx)
            break
    if cut is None:
        raise ValueError("arc endpoints do not share a vertex")
    return (color, cut, node_type(p), node_type(q), turn)


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def line_triangle(corner: tuple[int, int], n: int, up: bool) -> Polygon:
    """The triangle of medial lines with a corner at ``corner`` and sides of ``n`` arcs."""
    if up:
        dirs = (U, W, (0, -1))
    else:
        dirs = ((-1, 0), (1, -1), V)
    symbols = []
    cur = corner
    corners = [corner]
    for d in dirs:
        for step in range(n):
            nxt = (cur[0] + d[0], cur[1] + d[1])
            symbols.append(arc_symbol(cur, nxt, step == n - 1))
            cur = nxt
        corners.append(cur)
    if cur != corner:
        raise AssertionError("line triangle did not close")
    a, b, c = corners[:3]
    area = abs(_cross((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1])))
    canon = canonical_symbols(tuple(symbols))
    return _polygon_from_symbols(canon, Fraction(area), ())


def enumerate_lattice(cutoff, weights: RegionWeights | None = None) -> list[Polygon]:
    """All (3,3,3) polygons of area at most ``cutoff``, one per deck orbit."""
    weights = weights or RegionWeights()
    if any(getattr(weights, k) != 1 for k in ("central", "corner_a", "corner_b", "corner_c")):
        raise ValueError("the lattice backend uses unit region weights")
    cutoff = Fraction(cutoff)
    found: dict[tuple, Polygon] = {}
    n = 1
    while n * n <= cutoff:
        for corner in _CORNER_REPS:
            for up in (True, False):
                poly = line_triangle(corner, n, up)
                found.setdefault(poly.key, poly)
        n += 2
    return sorted(found.values(), key=lambda p: (p.area, p.word, p.symbols))

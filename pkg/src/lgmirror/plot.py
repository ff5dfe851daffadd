"""Deterministic SVG of a patch of the flat (3,3,3) cover.

Draws tessellation triangles, the three families of medial lines, e and p
markers (with the spin marker next to each e) and optional highlighted line
triangles.
"""

from __future__ import annotations

import math

from .cover import E_ARC, UPPER
from .lattice import U, V, W, vertex_type

SCALE = 60
VERTEX_COLORS = ("#1b6ca8", "#c0392b", "#27ae60")
FAMILY_COLORS = {U: "#8e44ad", V: "#d35400", W: "#16a085"}


def _xy(a, b) -> tuple[float, float]:
    """Cartesian position of doubled coordinates ``(a, b)``, y pointing down."""
    x = (a + b / 2) / 2
    y = b * math.sqrt(3) / 4
    return x * SCALE, -y * SCALE


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _hexdist(i: int, j: int) -> int:
    return max(abs(i), abs(j), abs(i + j))


def patch_triangles(radius: int) -> list[tuple[int, tuple]]:
    """Lattice triangles with all vertices within hex distance ``radius`` of the origin."""
    out = []
    for i in range(-radius - 1, radius + 1):
        for j in range(-radius - 1, radius + 1):
            up = ((i, j), (i + 1, j), (i, j + 1))
            down = ((i + 1, j), (i, j + 1), (i + 1, j + 1))
            for color, verts in ((UPPER, up), (1 - UPPER, down)):
                if all(_hexdist(*v) <= radius for v in verts):
                    out.append((color, verts))
    return out


def _family(p, q) -> tuple[int, int]:
    d = (q[0] - p[0], q[1] - p[1])
    for f in (U, V, W):
        if d in (f, (-f[0], -f[1])):
            return f
    raise ValueError(f"segment {p}-{q} is not along a lattice direction")


def triangle_corners(corner: tuple[int, int], n: int, up: bool) -> list[tuple[int, int]]:
    """Corners (doubled coordinates) of the line triangle built in ``lattice.line_triangle``."""
    dirs = (U, W, (0, -1)) if up else ((-1, 0), (1, -1), V)
    pts = [corner]
    for d in dirs[:2]:
        c = pts[-1]
        pts.append((c[0] + n * d[0], c[1] + n * d[1]))
    return pts


def render_svg(radius: int = 2, highlights=()) -> str:
    """SVG text; ``highlights`` is a sequence of ``(corner, n, up)`` line triangles."""
    tris = patch_triangles(radius)
    pts = [_xy(2 * i, 2 * j) for _, vs in tris for i, j in vs]
    pad = SCALE / 2
    xmin = min(p[0] for p in pts) - pad
    ymin = min(p[1] for p in pts) - pad
    width = max(p[0] for p in pts) + pad - xmin
    height = max(p[1] for p in pts) + pad - ymin
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(xmin)} {_fmt(ymin)} {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
        f'<rect x="{_fmt(xmin)}" y="{_fmt(ymin)}" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]
    for corner, n, up in highlights:
        poly = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_xy(*c) for c in triangle_corners(corner, n, up)))
        out.append(f'<polygon class="highlight" points="{poly}" fill="#f1c40f" fill-opacity="0.45" stroke="none"/>')
    edges = set()
    for _, vs in tris:
        for k in range(3):
            edges.add(tuple(sorted((vs[k], vs[(k + 1) % 3]))))
    for p, q in sorted(edges):
        (x1, y1), (x2, y2) = _xy(2 * p[0], 2 * p[1]), _xy(2 * q[0], 2 * q[1])
        out.append(
            f'<line class="edge" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            'stroke="#999" stroke-width="1"/>'
        )
    glyphs = []
    for color, vs in sorted(tris):
        for k, vtx in enumerate(vs):
            others = [w for w in vs if w != vtx]
            mids = [(vtx[0] + w[0], vtx[1] + w[1]) for w in others]
            fam = _family(*mids)
            (x1, y1), (x2, y2) = _xy(*mids[0]), _xy(*mids[1])
            out.append(
                f'<line class="medial" data-family="{fam[0]},{fam[1]}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{FAMILY_COLORS[fam]}" stroke-width="2"/>'
            )
            if vertex_type(*vtx) == E_ARC:
                mx, my = (x1 + x2) / 2, (y1 + y2) / 2
                if color == UPPER:
                    glyphs.append(f'<circle class="e" cx="{_fmt(mx)}" cy="{_fmt(my)}" r="4" fill="black"/>')
                    glyphs.append(
                        f'<text class="spin" x="{_fmt(mx + 5)}" y="{_fmt(my - 5)}" font-size="10">*</text>'
                    )
                else:
                    glyphs.append(
                        f'<rect class="p" x="{_fmt(mx - 4)}" y="{_fmt(my - 4)}" width="8" height="8" fill="black"/>'
                    )
    out.extend(glyphs)
    for i, j in sorted({v for _, vs in tris for v in vs}):
        x, y = _xy(2 * i, 2 * j)
        out.append(
            f'<circle class="vertex" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{VERTEX_COLORS[vertex_type(i, j)]}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


MINIMAL_XYZ = ((1, 1), 1, True)

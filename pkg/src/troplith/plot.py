"""Static SVG rendering of cycles in Q^2."""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import format_fraction
from .cycle import TropicalCycle
from .polyhedron import EMPTY, Polyhedron

SVG_VERSION = "troplith-svg 1"
SIZE = 480
MARGIN = 20


def default_bbox(X: TropicalCycle):
    """Hull of all vertices, padded by 2 on every side."""
    pts = [v for P, _ in X.facets for v in P.vertices] or [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs) - 2, min(ys) - 2, max(xs) + 2, max(ys) + 2)


def parse_bbox(text: str):
    parts = [Fraction(t.strip()) for t in text.split(",")]
    if len(parts) != 4 or parts[0] >= parts[2] or parts[1] >= parts[3]:
        raise ValueError("bbox must be 'xmin,ymin,xmax,ymax' with xmin < xmax, ymin < ymax")
    return tuple(parts)


def _box(bbox) -> Polyhedron:
    x0, y0, x1, y1 = bbox
    return Polyhedron.from_inequalities(
        [((1, 0), x0), ((-1, 0), -x1), ((0, 1), y0), ((0, -1), -y1)], n=2)


def _ordered(pts):
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def render_svg(X: TropicalCycle, bbox=None) -> str:
    if X.ambient_dim != 2:
        raise ValueError("plotting needs a cycle in Q^2")
    bbox = tuple(Fraction(b) for b in (bbox or default_bbox(X)))
    x0, y0, x1, y1 = bbox
    s = Fraction(SIZE - 2 * MARGIN) / max(x1 - x0, y1 - y0)

    def tx(p):
        return (float(MARGIN + (p[0] - x0) * s), float(SIZE - MARGIN - (p[1] - y0) * s))

    def fmt(p):
        a, b = tx(p)
        return f"{a:.2f},{b:.2f}"

    box = _box(bbox)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f"<!-- {SVG_VERSION} -->",
           f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>']
    for P, w in X.facets:
        C = P.intersect(box)
        if C is EMPTY:
            continue
        dash = ' stroke-dasharray="6,4"' if w < 0 else ""
        pts = list(C.vertices)
        if X.dim == 0 or len(pts) == 1:
            a, b = tx(pts[0])
            out.append(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="4" fill="black"/>')
            out.append(f'<text x="{a + 6:.2f}" y="{b - 6:.2f}" font-size="12">{w}</text>')
        elif X.dim == 1:
            if len(pts) < 2:
                continue
            p, q = pts[0], pts[1]
            (a1, b1), (a2, b2) = tx(p), tx(q)
            out.append(f'<line x1="{a1:.2f}" y1="{b1:.2f}" x2="{a2:.2f}" y2="{b2:.2f}" '
                       f'stroke="black" stroke-width="2"{dash}/>')
            mid = tuple((a + b) / 2 for a, b in zip(p, q))
            a, b = tx(mid)
            out.append(f'<text x="{a + 4:.2f}" y="{b - 4:.2f}" font-size="12">{w}</text>')
        else:
            poly = " ".join(fmt(p) for p in _ordered(pts))
            out.append(f'<polygon points="{poly}" fill="#9ecae1" fill-opacity="0.5" '
                       f'stroke="black"{dash}/>')
            c = tuple(sum(p[i] for p in pts) / len(pts) for i in range(2))
            a, b = tx(c)
            out.append(f'<text x="{a:.2f}" y="{b:.2f}" font-size="12">{w}</text>')
    out.append(f"<!-- bbox {','.join(format_fraction(b) for b in bbox)} -->")
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["render_svg", "default_bbox", "parse_bbox"]

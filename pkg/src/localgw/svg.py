"""Deterministic SVG 1.1 drawings of walls, rays and tropical discs.

Every coordinate is written with 9 significant digits, so equal inputs give
byte-identical files.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

SIZE = 400
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def num(x) -> str:
    v = float(x)
    if v == 0:
        v = 0.0  # no "-0"
    return f"{v:.9g}"


class Canvas:
    """World box ``[-r, r]^2`` mapped onto a square image, y up."""

    def __init__(self, radius: float, size: int = SIZE, title: str = ""):
        self.r = float(radius)
        self.size = size
        self.title = title
        self.items: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        s = self.size / (2 * self.r)
        return num((float(p[0]) + self.r) * s), num((self.r - float(p[1])) * s)

    def line(self, a, b, color="#000000", width=1.0, dash: str | None = None) -> None:
        (x1, y1), (x2, y2) = self.xy(a), self.xy(b)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                          f'stroke="{color}" stroke-width="{num(width)}"{extra}/>')

    def polyline(self, pts: Sequence, color="#000000", width=1.0) -> None:
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        self.items.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                          f'stroke-width="{num(width)}"/>')

    def dot(self, p, radius=3.0, color="#000000") -> None:
        x, y = self.xy(p)
        self.items.append(f'<circle cx="{x}" cy="{y}" r="{num(radius)}" fill="{color}"/>')

    def cross(self, p, size=4.0, color="#000000") -> None:
        x, y = (float(c) for c in self.xy(p))
        for dx, dy in ((size, size), (size, -size)):
            self.items.append(f'<line x1="{num(x - dx)}" y1="{num(y - dy)}" x2="{num(x + dx)}" '
                              f'y2="{num(y + dy)}" stroke="{color}" stroke-width="1.5"/>')

    def text(self, p, label: str, color="#000000", size=10) -> None:
        x, y = self.xy(p)
        self.items.append(f'<text x="{x}" y="{y}" font-family="sans-serif" font-size="{size}" '
                          f'fill="{color}">{escape(label)}</text>')

    def render(self) -> str:
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.size}" '
                f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">\n')
        title = f"<title>{escape(self.title)}</title>\n" if self.title else ""
        bg = f'<rect x="0" y="0" width="{self.size}" height="{self.size}" fill="#ffffff"/>\n'
        return head + title + bg + "\n".join(self.items) + "\n</svg>\n"


def _label(g) -> str:
    return "(" + ",".join(str(x) for x in g) + ")"


def _extent(points: Iterable, minimum: float = 1.0) -> float:
    m = max((max(abs(float(p[0])), abs(float(p[1]))) for p in points), default=0.0)
    return max(minimum, 1.5 * m + 1.0)


def diagram_svg(diagram, title: str = "") -> str:
    """Walls of a scattering diagram with their base points and class labels."""
    from .scatter import plane_vector
    bases = [w.base for w in diagram.walls]
    c = Canvas(_extent(bases, 3.0), title=title or f"{diagram.kind} diagram, cutoff {diagram.cutoff}")
    reach = 2 * c.r
    seen = []
    for i, w in enumerate(diagram.walls):
        v = plane_vector(diagram.lattice, w.direction)
        n = math.hypot(float(v[0]), float(v[1]))
        u = (float(v[0]) / n, float(v[1]) / n)
        b = (float(w.base[0]), float(w.base[1]))
        far = (b[0] + reach * u[0], b[1] + reach * u[1])
        start = (b[0] - reach * u[0], b[1] - reach * u[1]) if w.line else b
        color = PALETTE[i % len(PALETTE)]
        c.line(start, far, color, 1.5 if w.line else 1.0)
        tip = (b[0] + 0.6 * c.r * u[0], b[1] + 0.6 * c.r * u[1])
        c.text(tip, _label(w.direction), color)
        if w.base not in seen:
            seen.append(w.base)
    for b in seen:
        c.cross(b)
    return c.render()


def rays_svg(model, theta: float, classes: Sequence, title: str = "") -> str:
    """Base disc with the BPS rays of ``classes`` at phase ``theta`` and the branch cut."""
    from .geometry import ray_angles
    c = Canvas(1.3, title=title or f"rays at theta = {num(theta)}")
    steps = 96
    circle = [(math.cos(2 * math.pi * k / steps), math.sin(2 * math.pi * k / steps)) for k in range(steps + 1)]
    c.polyline(circle, "#999999")
    cut = model.branch_cut_angle
    c.line((0, 0), (math.cos(cut), math.sin(cut)), "#000000", 1.0, "4,3")
    for i, (ang, gs) in enumerate(ray_angles(model, classes, theta)):
        end = cmath.rect(1.0, ang)
        color = PALETTE[i % len(PALETTE)]
        c.line((0, 0), (end.real, end.imag), color, 1.5)
        lab = cmath.rect(1.1, ang)
        c.text((lab.real, lab.imag), " ".join(_label(g) for g in gs), color)
    c.cross((0, 0))
    return c.render()


def flow_svg(points: Sequence[complex], title: str = "") -> str:
    pts = [(z.real, z.imag) for z in points]
    c = Canvas(_extent(pts), title=title or "flow line")
    c.polyline(pts, PALETTE[0], 1.5)
    c.cross((0, 0))
    return c.render()


def discs_svg(model, discs: Sequence, title: str = "") -> str:
    """Tropical discs drawn over the seed lines of their model."""
    from .tropical import Leaf, _vertices, leaf_line, node_class
    pts = [p.position for p in model.points]
    for d in discs:
        pts.extend(v.position for v in _vertices(d.root))
    c = Canvas(_extent(pts, 2.0), title=title or f"tropical discs on {model.name}")
    reach = 2 * c.r
    for i, p in enumerate(model.points):
        v = model.direction(p.thimble)
        n = math.hypot(float(v[0]), float(v[1]))
        u = (float(v[0]) / n * reach, float(v[1]) / n * reach)
        b = (float(p.position[0]), float(p.position[1]))
        c.line((b[0] - u[0], b[1] - u[1]), (b[0] + u[0], b[1] + u[1]), "#bbbbbb", 1.0, "3,3")
        c.cross(b)
    for k, d in enumerate(discs):
        color = PALETTE[k % len(PALETTE)]

        def draw(node, parent_pos=None):
            if isinstance(node, Leaf):
                start, _ = leaf_line(model, node)
                if parent_pos is not None:
                    c.line(start, parent_pos, color, 1.5)
                return
            for ch_ in node.children:
                draw(ch_, node.position)
            if parent_pos is not None:
                c.line(node.position, parent_pos, color, 1.5)

        draw(d.root)
        root = d.root
        if not isinstance(root, Leaf):
            v = model.direction(node_class(model, root))
            n = math.hypot(float(v[0]), float(v[1]))
            end = (float(root.position[0]) + reach * float(v[0]) / n,
                   float(root.position[1]) + reach * float(v[1]) / n)
            c.line(root.position, end, color, 2.0)
            c.dot(root.position, 2.5, color)
    return c.render()

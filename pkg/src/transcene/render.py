"""Schematic SVG rendering of scenes.

Top-down orthographic drawing: the visible square is outlined and only the
objects inside it are drawn. Glyphs encode attributes: cube -> square,
sphere -> circle, cylinder -> hexagon; fill is the object color; the stroke
style encodes material (rubber solid, metal dashed, glass double). The left
and right views rotate the scene by -30 and +30 degrees about the origin
before projection; the output is deterministic for identical inputs.
"""

from __future__ import annotations

import math

from .scene import Material, SceneGraph, Shape, is_visible

VIEW_ANGLES = {"left": -30.0, "center": 0.0, "right": 30.0}

_FILL = {
    "gray": "#87878f",
    "red": "#c3362b",
    "blue": "#2a60aa",
    "green": "#287038",
    "brown": "#8a5336",
    "purple": "#7a41a5",
    "cyan": "#36b2ae",
    "yellow": "#d8c53d",
}

_SCALE = 6.0  # svg px per plane unit
_PAD = 14.0


def _rotate(x: float, y: float, angle_deg: float) -> tuple[float, float]:
    a = math.radians(angle_deg)
    return x * math.cos(a) - y * math.sin(a), x * math.sin(a) + y * math.cos(a)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _glyph(shape: Shape, cx: float, cy: float, r: float, fill: str, stroke: str) -> str:
    if shape is Shape.SPHERE:
        return f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="{fill}" {stroke}/>'
    if shape is Shape.CUBE:
        return (
            f'<rect x="{_fmt(cx - r)}" y="{_fmt(cy - r)}" width="{_fmt(2 * r)}" '
            f'height="{_fmt(2 * r)}" fill="{fill}" {stroke}/>'
        )
    points = " ".join(
        f"{_fmt(cx + r * math.cos(math.pi / 3 * k))},{_fmt(cy + r * math.sin(math.pi / 3 * k))}"
        for k in range(6)
    )
    return f'<polygon points="{points}" fill="{fill}" {stroke}/>'


def _stroke(material: Material) -> str:
    if material is Material.METAL:
        return 'stroke="#222" stroke-width="1.6" stroke-dasharray="4 2"'
    if material is Material.GLASS:
        return 'stroke="#222" stroke-width="3.2" stroke-dasharray="none" paint-order="stroke"'
    return 'stroke="#222" stroke-width="1.6"'


def render_schematic(s: SceneGraph, view: str = "center", *, full_plane: bool = False) -> str:
    """Render a scene to an SVG document string.

    With full_plane=True the whole plane is drawn with the margin shaded and
    every object labeled, which is the helper diagram used by the test UI;
    the default draws the visible area and visible objects only.
    """
    if view not in VIEW_ANGLES:
        raise ValueError(f"unknown view {view!r}")
    angle = VIEW_ANGLES[view]
    cfg = s.config
    bound = cfg.plane_bound if full_plane else cfg.visible_bound
    # Canvas covers the bound square under any rotation.
    half = bound * _SCALE * math.sqrt(2.0) + _PAD
    size = 2 * half

    def to_canvas(x: float, y: float) -> tuple[float, float]:
        rx, ry = _rotate(x, y, angle)
        return half + rx * _SCALE, half - ry * _SCALE  # svg y grows downward

    def square_path(b: float) -> str:
        corners = [(-b, -b), (b, -b), (b, b), (-b, b)]
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (to_canvas(x, y) for x, y in corners))
        return pts

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}" height="{_fmt(size)}" '
        f'viewBox="0 0 {_fmt(size)} {_fmt(size)}">',
        f'<rect width="{_fmt(size)}" height="{_fmt(size)}" fill="#f5f2ea"/>',
    ]
    if full_plane:
        parts.append(f'<polygon points="{square_path(cfg.plane_bound)}" fill="#ded9cc" stroke="#555"/>')
    parts.append(f'<polygon points="{square_path(cfg.visible_bound)}" fill="#fbfaf6" stroke="#333"/>')

    for o in s.objects:
        if not full_plane and not is_visible(o.position, cfg):
            continue
        cx, cy = to_canvas(o.position.x, o.position.y)
        r = cfg.radius(o.size) * _SCALE
        parts.append(_glyph(o.shape, cx, cy, r, _FILL[o.color.value], _stroke(o.material)))
        parts.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy + 3)}" font-size="9" text-anchor="middle" '
            f'fill="#fff" stroke="#000" stroke-width="0.4">{o.id}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)

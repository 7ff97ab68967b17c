"""Minimal standalone SVG output for point sets, polylines and polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

COLORS = ("#000000", "#1f4fbf", "#c0392b", "#27ae60", "#8e44ad", "#d35400")


@dataclass
class Series:
    points: list  # [(x, y), ...]
    kind: str = "scatter"  # scatter | line | polygon
    color: str = COLORS[0]
    label: str = ""


@dataclass
class Panel:
    title: str
    series: list = field(default_factory=list)
    xlabel: str = "x"
    ylabel: str = "y"
    bounds: tuple | None = None  # (xmin, xmax, ymin, ymax)


def _finite(points):
    return [(float(x), float(y)) for x, y in points if math.isfinite(float(x)) and math.isfinite(float(y))]


def _bounds(panel: Panel) -> tuple:
    if panel.bounds is not None:
        return panel.bounds
    pts = [p for s in panel.series for p in _finite(s.points)]
    if not pts:
        return (-1.0, 1.0, -1.0, 1.0)
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    dx = (x1 - x0) or 1.0
    dy = (y1 - y0) or 1.0
    return (x0 - 0.05 * dx, x1 + 0.05 * dx, y0 - 0.05 * dy, y1 + 0.05 * dy)


def _panel_svg(panel: Panel, ox: float, oy: float, w: float, h: float) -> list:
    xmin, xmax, ymin, ymax = _bounds(panel)
    pad = 40.0

    def tx(x):
        return ox + pad + (x - xmin) / (xmax - xmin) * (w - 2 * pad)

    def ty(y):
        return oy + h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad)

    out = [f'<rect x="{ox + pad:.2f}" y="{oy + pad:.2f}" width="{w - 2 * pad:.2f}" '
           f'height="{h - 2 * pad:.2f}" fill="none" stroke="#999" stroke-width="0.5"/>']
    if xmin < 0 < xmax:
        out.append(f'<line x1="{tx(0):.2f}" y1="{oy + pad:.2f}" x2="{tx(0):.2f}" y2="{oy + h - pad:.2f}" '
                   'stroke="#ccc" stroke-width="0.5"/>')
    if ymin < 0 < ymax:
        out.append(f'<line x1="{ox + pad:.2f}" y1="{ty(0):.2f}" x2="{ox + w - pad:.2f}" y2="{ty(0):.2f}" '
                   'stroke="#ccc" stroke-width="0.5"/>')
    out.append(f'<text x="{ox + w / 2:.2f}" y="{oy + 20:.2f}" text-anchor="middle" font-size="13">'
               f'{escape(panel.title)}</text>')
    out.append(f'<text x="{ox + w / 2:.2f}" y="{oy + h - 8:.2f}" text-anchor="middle" font-size="11">'
               f'{escape(panel.xlabel)}</text>')
    out.append(f'<text x="{ox + 12:.2f}" y="{oy + h / 2:.2f}" font-size="11">{escape(panel.ylabel)}</text>')
    for tick, anchor in ((xmin, "start"), (xmax, "end")):
        out.append(f'<text x="{tx(tick):.2f}" y="{oy + h - pad + 12:.2f}" text-anchor="{anchor}" '
                   f'font-size="9">{tick:.3g}</text>')
    for tick in (ymin, ymax):
        out.append(f'<text x="{ox + pad - 3:.2f}" y="{ty(tick):.2f}" text-anchor="end" font-size="9">{tick:.3g}</text>')

    for s in panel.series:
        pts = [(x, y) for x, y in _finite(s.points) if xmin <= x <= xmax and ymin <= y <= ymax]
        if s.kind == "scatter":
            out.extend(f'<circle cx="{tx(x):.2f}" cy="{ty(y):.2f}" r="1.2" fill="{s.color}"/>' for x, y in pts)
        elif pts:
            coords = " ".join(f"{tx(x):.2f},{ty(y):.2f}" for x, y in pts)
            tag = "polygon" if s.kind == "polygon" else "polyline"
            out.append(f'<{tag} points="{coords}" fill="none" stroke="{s.color}" stroke-width="1"/>')
    return out


def render(panels: list, panel_size: tuple = (360, 360)) -> str:
    if not panels or not any(s.points for p in panels for s in p.series):
        raise ValueError("nothing to draw")
    w, h = panel_size
    cols = min(len(panels), 2) if len(panels) != 3 else 3
    rows = math.ceil(len(panels) / cols)
    body = []
    for k, panel in enumerate(panels):
        body.extend(_panel_svg(panel, (k % cols) * w, (k // cols) * h, w, h))
    header = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{cols * w}" height="{rows * h}" '
              f'viewBox="0 0 {cols * w} {rows * h}">')
    return "\n".join([header, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def emit_svg(panels: list, path, panel_size: tuple = (360, 360)) -> None:
    text = render(panels, panel_size)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)

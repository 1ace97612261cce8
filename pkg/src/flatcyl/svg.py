"""SVG drawings of surfaces with cylinder and saddle-connection overlays.

Coordinates are converted to floats here and only here; the drawing is
for display.  Polygons are laid out left to right in their own charts.
"""
from __future__ import annotations

from dataclasses import dataclass, field

PALETTE = ("#e4572e", "#17bebb", "#ffc914", "#76b041", "#7d5ba6", "#f2a1c2", "#2e86ab", "#a23b72")


@dataclass
class Overlays:
    cylinders: list = field(default_factory=list)
    saddles: list = field(default_factory=list)


def _xy(z):
    c = complex(z)
    return c.real, c.imag


def _fmt(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def emit_svg(surface, overlays: Overlays | None = None, scale: float = 120.0, margin: float = 0.3) -> str:
    overlays = overlays or Overlays()
    offsets, x0 = [], 0.0
    boxes = []
    for p in surface.polygons:
        pts = [_xy(v) for v in p.vertices]
        xs, ys = [x for x, _ in pts], [y for _, y in pts]
        offsets.append((x0 - min(xs), 0.0))
        boxes.append((min(ys), max(ys)))
        x0 += max(xs) - min(xs) + margin
    ymin = min(b[0] for b in boxes) - margin
    ymax = max(b[1] for b in boxes) + margin
    width = (x0 + margin) * scale
    height = (ymax - ymin) * scale

    def pt(poly, z):
        x, y = _xy(z)
        ox, _ = offsets[poly]
        return _fmt((x + ox + margin) * scale), _fmt((ymax - y) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" height="{_fmt(height)}">',
    ]
    for ci, cyl in enumerate(overlays.cylinders):
        color = PALETTE[ci % len(PALETTE)]
        out.append(f'<g class="cylinder" id="cyl{ci}" fill="{color}" fill-opacity="0.45" stroke="none">')
        for poly, clip in cyl.pieces:
            coords = " ".join(",".join(pt(poly, z)) for z in clip)
            out.append(f'<polygon points="{coords}"/>')
        out.append("</g>")
    out.append('<g class="polygons" fill="none" stroke="black" stroke-width="1.5">')
    for pi, p in enumerate(surface.polygons):
        coords = " ".join(",".join(pt(pi, v)) for v in p.vertices)
        out.append(f'<polygon points="{coords}"/>')
    out.append("</g>")
    out.append('<g class="labels" font-family="sans-serif" font-size="11" fill="#333">')
    for pi, p in enumerate(surface.polygons):
        n = len(p)
        for e in range(n):
            mid = (p.vertices[e] + p.vertices[(e + 1) % n]) / 2
            x, y = pt(pi, mid)
            out.append(f'<text x="{x}" y="{y}">{p.name}.{e}</text>')
    out.append("</g>")
    if overlays.saddles:
        out.append('<g class="saddles" stroke="#1b263b" stroke-width="1.2" fill="#1b263b" font-size="10">')
        for si, sc in enumerate(overlays.saddles):
            for seg in sc.segments:
                poly, a, b = seg[:3]
                (x1, y1), (x2, y2) = pt(poly, a), pt(poly, b)
                out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
            poly, a, b = sc.segments[0][:3]
            x, y = pt(poly, (a + b) / 2)
            out.append(f'<text x="{x}" y="{y}">s{si}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

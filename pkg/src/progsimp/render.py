"""SVG pyramid of a progressive simplification: one panel per scale."""
from __future__ import annotations

from .geometry import Curve
from .progressive import ProgressiveSimplification

PANEL = 240
PAD = 12


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def render_svg(curve: Curve, ps: ProgressiveSimplification | None, path=None) -> str:
    """Return the SVG text; also write it to ``path`` when given.

    Panels run from the finest scale (left) to the coarsest.  Vertices that
    are absent from the next coarser scale are drawn red.
    """
    levels = list(ps.levels) if ps is not None else []
    scales = list(ps.scales.eps) if ps is not None else []
    panels = max(1, len(levels))
    xy = curve.xy
    x0, y0 = xy.min(axis=0)
    x1, y1 = xy.max(axis=0)
    span = max(x1 - x0, y1 - y0) or 1.0
    scale = (PANEL - 2 * PAD) / span

    def pt(k):
        x = PAD + (xy[k, 0] - x0) * scale
        y = PANEL - PAD - (xy[k, 1] - y0) * scale
        return x, y

    def polyline(idx, style):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(pt, idx))
        return f'<polyline points="{coords}" fill="none" {style}/>'

    width = PANEL * panels
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL + 20}" '
           f'viewBox="0 0 {width} {PANEL + 20}">']
    for p in range(panels):
        out.append(f'<g class="panel" transform="translate({p * PANEL},0)">')
        out.append(f'<rect x="0" y="0" width="{PANEL}" height="{PANEL}" fill="white" stroke="#ccc"/>')
        out.append(polyline(range(curve.n), 'stroke="#bbb" stroke-width="1"'))
        if levels:
            level = levels[p]
            coarser = set(levels[p + 1]) if p + 1 < len(levels) else set(level)
            out.append(polyline(level, 'stroke="black" stroke-width="1.5"'))
            for v in level:
                x, y = pt(v)
                colour = "black" if v in coarser else "red"
                out.append(f'<circle class="vertex" cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" '
                           f'fill="{colour}"/>')
            label = f"k={p + 1} eps={scales[p]:.4g} |S|={len(level)}"
        else:
            label = f"input n={curve.n}"
        out.append(f'<text x="{PAD}" y="{PANEL + 14}" font-size="11">{label}</text>')
        out.append("</g>")
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text

"""Static SVG renderings of a pair multiset: scatter diagram with the
diagonal, barcode, and the hole-count staircase.

Hand-rolled SVG strings, no drawing dependency; output is deterministic so
the files can serve as golden fixtures.
"""

from __future__ import annotations

from .diagrams import Diagram, barcode, staircase

_WIDTH = 420
_HEIGHT = 420
_MARGIN = 48
_PAD_FRACTION = 0.05  # padding of the data range on every axis


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _header(width: int = _WIDTH, height: int = _HEIGHT) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
    )


def _axes(x_lo, x_hi, y_lo, y_hi, x_label, y_label) -> str:
    left, right = _MARGIN, _WIDTH - _MARGIN
    top, bottom = _MARGIN, _HEIGHT - _MARGIN
    parts = [
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" '
        'stroke="black" stroke-width="1"/>',
        f'<text x="{left}" y="{bottom + 16}" font-size="11" '
        f'text-anchor="middle">{_fmt(x_lo)}</text>',
        f'<text x="{right}" y="{bottom + 16}" font-size="11" '
        f'text-anchor="middle">{_fmt(x_hi)}</text>',
        f'<text x="{left - 6}" y="{bottom + 4}" font-size="11" '
        f'text-anchor="end">{_fmt(y_lo)}</text>',
        f'<text x="{left - 6}" y="{top + 4}" font-size="11" '
        f'text-anchor="end">{_fmt(y_hi)}</text>',
        f'<text x="{(left + right) // 2}" y="{_HEIGHT - 8}" font-size="12" '
        f'text-anchor="middle">{x_label}</text>',
        f'<text x="14" y="{(top + bottom) // 2}" font-size="12" '
        f'text-anchor="middle" transform="rotate(-90 14 '
        f'{(top + bottom) // 2})">{y_label}</text>',
    ]
    return "\n".join(parts) + "\n"


def _scale(lo: float, hi: float):
    """Map data values to pixel coordinates with 5% padding each side."""
    span = hi - lo
    pad = _PAD_FRACTION * span if span > 0 else max(abs(hi), 1.0) * _PAD_FRACTION
    lo, hi = lo - pad, hi + pad
    inner = _WIDTH - 2 * _MARGIN

    def to_x(v):
        return _MARGIN + (v - lo) / (hi - lo) * inner

    def to_y(v):
        return _HEIGHT - _MARGIN - (v - lo) / (hi - lo) * (_HEIGHT - 2 * _MARGIN)

    return lo, hi, to_x, to_y


def _empty_svg(title: str) -> str:
    return (
        _header()
        + f'<text x="{_WIDTH // 2}" y="24" font-size="14" '
        f'text-anchor="middle">{title}</text>\n'
        f'<text x="{_WIDTH // 2}" y="{_HEIGHT // 2}" font-size="14" '
        'text-anchor="middle" fill="gray">no holes</text>\n</svg>\n'
    )


def diagram_svg(diagram: Diagram) -> str:
    """Scatter of (birth, death) pairs above the diagonal line."""
    pairs = diagram.off_diagonal()
    if not len(pairs):
        return _empty_svg("persistence diagram")
    lo = float(min(pairs.min(), 0.0))
    hi = float(pairs.max())
    lo, hi, to_x, to_y = _scale(lo, hi)
    body = [_header(), _axes(lo, hi, lo, hi, "birth", "death")]
    body.append(
        f'<line x1="{to_x(lo):.2f}" y1="{to_y(lo):.2f}" '
        f'x2="{to_x(hi):.2f}" y2="{to_y(hi):.2f}" '
        'stroke="gray" stroke-dasharray="4 3"/>\n'
    )
    for birth, death in pairs:
        body.append(
            f'<circle cx="{to_x(birth):.2f}" cy="{to_y(death):.2f}" r="4" '
            'fill="steelblue" fill-opacity="0.8"/>\n'
        )
    body.append("</svg>\n")
    return "".join(body)


def barcode_svg(diagram: Diagram) -> str:
    """Horizontal bars from 0 to death - birth, longest on top."""
    lengths = barcode(diagram).lengths
    lengths = lengths[lengths > 0]
    if not len(lengths):
        return _empty_svg("barcode")
    lo, hi, to_x, _ = _scale(0.0, float(lengths.max()))
    body = [_header(), _axes(lo, hi, 0, len(lengths), "death - birth", "bar")]
    inner_h = _HEIGHT - 2 * _MARGIN
    slot = inner_h / len(lengths)
    thickness = min(14.0, 0.6 * slot)
    for i, length in enumerate(lengths):
        y = _MARGIN + (i + 0.5) * slot - thickness / 2
        body.append(
            f'<rect x="{to_x(0):.2f}" y="{y:.2f}" '
            f'width="{to_x(length) - to_x(0):.2f}" height="{thickness:.2f}" '
            'fill="steelblue"/>\n'
        )
    body.append("</svg>\n")
    return "".join(body)


def staircase_svg(diagram: Diagram) -> str:
    """Step function of the hole count over the scale."""
    stair = staircase(diagram)
    if stair.empty:
        return _empty_svg("hole-count staircase")
    x_lo, x_hi, to_x, _ = _scale(
        float(stair.breakpoints[0]), float(stair.breakpoints[-1])
    )
    top = int(stair.counts.max())
    y_lo, y_hi, _, to_y = _scale(0.0, float(top))
    body = [_header(), _axes(x_lo, x_hi, 0, top, "scale", "holes")]
    points = [(stair.breakpoints[0], 0)]
    for i, count in enumerate(stair.counts):
        points.append((stair.breakpoints[i], count))
        points.append((stair.breakpoints[i + 1], count))
    points.append((stair.breakpoints[-1], 0))
    path = " ".join(f"{to_x(x):.2f},{to_y(y):.2f}" for x, y in points)
    body.append(
        f'<polyline points="{path}" fill="none" stroke="steelblue" '
        'stroke-width="2"/>\n</svg>\n'
    )
    return "".join(body)


_RENDERERS = {
    "diagram": diagram_svg,
    "barcode": barcode_svg,
    "staircase": staircase_svg,
}


def render_plots(diagram: Diagram, kinds=("diagram", "barcode", "staircase")) -> dict:
    """Render the requested plot kinds; returns {kind: svg document}."""
    unknown = set(kinds) - set(_RENDERERS)
    if unknown:
        raise ValueError(f"unknown plot kinds: {sorted(unknown)}")
    return {kind: _RENDERERS[kind](diagram) for kind in kinds}

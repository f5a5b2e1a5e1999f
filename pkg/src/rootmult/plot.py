"""Deterministic SVG scatter of a spectrum: one disk per root, area ~ multiplicity."""

from __future__ import annotations

import cmath
import math
from typing import Sequence

SIZE = 480
MARGIN = 24
MAX_MARKER = 18.0


def expand_substitution(points: Sequence[tuple], s: int) -> list:
    """Replace each ``(y, m)`` by the ``s`` roots of ``x^s = y``, all with multiplicity ``m``."""
    if s == 1:
        return [(complex(z), m) for z, m in points]
    out = []
    for y, m in points:
        y = complex(y)
        rho, phi = abs(y) ** (1.0 / s), cmath.phase(y)
        for k in range(s):
            out.append((cmath.rect(rho, (phi + 2 * math.pi * k) / s), m))
    return out


def _fmt(x: float) -> str:
    text = f"{x:.3f}"
    return "0.000" if text == "-0.000" else text


def render_svg(markers: Sequence[tuple], m0: int = 0) -> str:
    """SVG text for nonzero ``(root, multiplicity)`` markers plus an origin marker of weight ``m0``."""
    points = [(complex(z), int(m)) for z, m in markers]
    if m0:
        points.append((0j, int(m0)))
    points.sort(key=lambda t: (round(t[0].real, 9), round(t[0].imag, 9), t[1]))
    extent = max([1.0] + [max(abs(z.real), abs(z.imag)) for z, _ in points]) * 1.1
    heaviest = max([1] + [m for _, m in points])
    half = SIZE / 2
    scale = (half - MARGIN) / extent

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{half:.0f}" x2="{SIZE - MARGIN}" y2="{half:.0f}" stroke="#999" stroke-width="1"/>',
        f'<line x1="{half:.0f}" y1="{MARGIN}" x2="{half:.0f}" y2="{SIZE - MARGIN}" stroke="#999" stroke-width="1"/>',
    ]
    for z, m in points:
        # area proportional to multiplicity
        r = MAX_MARKER * math.sqrt(m / heaviest)
        cx, cy = half + z.real * scale, half - z.imag * scale
        lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
                     f'fill="steelblue" fill-opacity="0.6" data-multiplicity="{m}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

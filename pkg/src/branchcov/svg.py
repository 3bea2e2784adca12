"""SVG rendering of a PL covering: total space, marked B points, base and fiber counts."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from branchcov.plcov import BranchReport, PLCovering

WIDTH = 640
HEIGHT = 480
MARGIN = 40
STEP_BAND = 90


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".")


def render_svg(cov: PLCovering, report: BranchReport) -> str:
    a, b = cov.a, cov.b
    ys = [y for s in cov.segments for _, y in s.endpoints]
    y_lo, y_hi = min(ys), max(ys)
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 1, y_hi + 1
    top_h = HEIGHT - 2 * MARGIN - STEP_BAND

    def sx(x: Fraction) -> float:
        return MARGIN + float((x - a) / (b - a)) * (WIDTH - 2 * MARGIN)

    def sy(y: Fraction) -> float:
        return MARGIN + float((y_hi - y) / (y_hi - y_lo)) * top_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<g id="segments" stroke="black" stroke-width="2" fill="none">',
    ]
    for s in cov.segments:
        (x0, y0), (x1, y1) = s.endpoints
        out.append(f'<line x1="{_fmt(sx(x0))}" y1="{_fmt(sy(y0))}" x2="{_fmt(sx(x1))}" y2="{_fmt(sy(y1))}"/>')
    out.append("</g>")

    out.append('<g id="branch-points" fill="red">')
    for x, y in report.B:
        out.append(f'<circle class="branch" cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="5"/>')
    out.append("</g>")

    base_y = HEIGHT - MARGIN - STEP_BAND / 2
    out.append(
        f'<line id="base" x1="{_fmt(sx(a))}" y1="{_fmt(base_y)}" x2="{_fmt(sx(b))}" '
        f'y2="{_fmt(base_y)}" stroke="black" stroke-width="3"/>'
    )
    for x in report.R:
        out.append(f'<circle class="ramification" cx="{_fmt(sx(x))}" cy="{_fmt(base_y)}" r="4" fill="blue"/>')

    top_count = max((s.count for s in report.d_profile), default=1) or 1
    band_top = HEIGHT - MARGIN - STEP_BAND + 10

    def cy(k: int) -> float:
        return HEIGHT - MARGIN - (k / top_count) * (STEP_BAND - 20)

    out.append('<g id="fiber-counts" stroke="green" stroke-width="2">')
    for step in report.d_profile:
        if step.kind == "between":
            lo, hi = step.where
            out.append(
                f'<line x1="{_fmt(sx(lo))}" y1="{_fmt(cy(step.count))}" x2="{_fmt(sx(hi))}" '
                f'y2="{_fmt(cy(step.count))}"/>'
            )
        else:
            out.append(f'<circle cx="{_fmt(sx(step.where))}" cy="{_fmt(cy(step.count))}" r="3" fill="green"/>')
    out.append("</g>")
    label = "branched" if report.is_branched else ("quasi-covering" if report.is_quasi else "not a quasi-covering")
    out.append(f'<text x="{MARGIN}" y="{_fmt(band_top - 14)}" font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(cov: PLCovering, report: BranchReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(cov, report))

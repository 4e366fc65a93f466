"""CSV and SVG emission for the CLI.

Both writers are deterministic: identical inputs produce byte-identical
files.  Floats are formatted with repr(), the shortest decimal string that
round-trips binary64 exactly, so the CSV reader reconstructs values bit for
bit.  SVG is hand-emitted with a fixed viewBox and one path element per
line; no plotting dependency.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .fields import FieldLine


def fmt(value: float) -> str:
    """Shortest round-trip decimal form."""
    return repr(float(value))


def write_field_lines_csv(lines: Sequence[FieldLine], path: str):
    with open(path, "w") as fh:
        fh.write("line_id,s,t,x,invariant\n")
        for idx, line in enumerate(lines):
            for k in range(len(line)):
                fh.write(
                    f"{idx},{fmt(line.s[k])},{fmt(line.points[k, 0])},"
                    f"{fmt(line.points[k, 1])},{fmt(line.invariant[k])}\n"
                )


class CsvFieldLine(NamedTuple):
    line_id: int
    s: np.ndarray
    points: np.ndarray
    invariant: np.ndarray


def read_field_lines_csv(path: str) -> list[CsvFieldLine]:
    """Exact reconstruction of the numeric content written by the writer."""
    rows: dict[int, list[tuple[float, float, float, float]]] = {}
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "line_id,s,t,x,invariant":
            raise ValueError(f"unexpected CSV header: {header}")
        for raw in fh:
            parts = raw.strip().split(",")
            if len(parts) != 5:
                raise ValueError(f"malformed row: {raw!r}")
            key = int(parts[0])
            rows.setdefault(key, []).append(tuple(float(p) for p in parts[1:]))
    out = []
    for key in sorted(rows):
        data = np.asarray(rows[key])
        out.append(
            CsvFieldLine(key, data[:, 0], data[:, 1:3], data[:, 3])
        )
    return out


# --- SVG ---------------------------------------------------------------------

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)

_SVG_SIZE = 640.0


class SvgCanvas:
    """Minimal deterministic SVG builder in plane coordinates (t right, x up)."""

    def __init__(self, bbox: tuple[float, float, float, float]):
        t_lo, t_hi, x_lo, x_hi = bbox
        if not (t_hi > t_lo and x_hi > x_lo):
            raise ValueError(f"degenerate bounding box {bbox}")
        self.bbox = bbox
        self._scale = _SVG_SIZE / max(t_hi - t_lo, x_hi - x_lo)
        self._elements: list[str] = []

    def _map(self, t: float, x: float) -> tuple[float, float]:
        t_lo, _, _, x_hi = self.bbox
        return ((t - t_lo) * self._scale, (x_hi - x) * self._scale)

    def _fmt_pair(self, t: float, x: float) -> str:
        u, v = self._map(t, x)
        return f"{u:.3f},{v:.3f}"

    def polyline(self, pts, line_id: int = 0, color: str | None = None, dashed: bool = False):
        coords = [self._fmt_pair(t, x) for t, x in pts]
        if len(coords) < 2:
            return
        d = "M " + coords[0] + " L " + " L ".join(coords[1:])
        stroke = color or _PALETTE[line_id % len(_PALETTE)]
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self._elements.append(
            f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="1.2"'
            f'{dash} data-line-id="{line_id}"/>'
        )

    def cone_asymptotes(self):
        """Dashed diagonals t = +-x clipped to the bounding box."""
        t_lo, t_hi, x_lo, x_hi = self.bbox
        lo = max(t_lo, x_lo)
        hi = min(t_hi, x_hi)
        if hi > lo:
            self.polyline([(lo, lo), (hi, hi)], line_id=-1, color="#555555", dashed=True)
        lo = max(t_lo, -x_hi)
        hi = min(t_hi, -x_lo)
        if hi > lo:
            self.polyline([(lo, -lo), (hi, -hi)], line_id=-1, color="#555555", dashed=True)

    def render(self) -> str:
        t_lo, t_hi, x_lo, x_hi = self.bbox
        w = (t_hi - t_lo) * self._scale
        h = (x_hi - x_lo) * self._scale
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.3f} {h:.3f}">\n'
            f'<rect x="0" y="0" width="{w:.3f}" height="{h:.3f}" fill="white"/>\n'
        )
        return head + "\n".join(self._elements) + "\n</svg>\n"


def field_lines_svg(
    lines: Sequence[FieldLine], bbox: tuple[float, float, float, float]
) -> str:
    canvas = SvgCanvas(bbox)
    canvas.cone_asymptotes()
    for idx, line in enumerate(lines):
        canvas.polyline(line.points, line_id=idx)
    return canvas.render()


def curves_svg(
    curves: Sequence[Sequence[tuple[float, float]]],
    bbox: tuple[float, float, float, float],
    cone: bool = True,
) -> str:
    canvas = SvgCanvas(bbox)
    if cone:
        canvas.cone_asymptotes()
    for idx, pts in enumerate(curves):
        canvas.polyline(pts, line_id=idx)
    return canvas.render()

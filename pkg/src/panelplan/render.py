"""Drawing: SVG layout views and matplotlib figures.

The two layout views are written as hand-built SVG with fixed 3-decimal
coordinate formatting, so the same report always produces byte-identical
files. Convergence and benchmark figures go through matplotlib's Agg
backend as PNG.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import ConfigurationError
from .geometry import Ring
from .pipeline import RunReport

__all__ = [
    "render_layout",
    "render_convergence",
    "render_bench_chart",
]

_PIECE_FILLS = [
    "#7fb3d5",
    "#f5b041",
    "#82e0aa",
    "#d7a3e8",
    "#f1948a",
    "#76d7c4",
    "#f7dc6f",
    "#aeb6bf",
]
_REGION_FILL = "#f4f6f7"
_REGION_STROKE = "#2c3e50"
_CELL_FILL = "#d6eaf8"
_CELL_STROKE = "#2980b9"
_OFFCUT_STROKE = "#b03a2e"
_PANEL_STROKE = "#1b2631"


def _fmt(value: float) -> str:
    out = f"{value:.3f}"
    return "0.000" if out == "-0.000" else out


class _SvgCanvas:
    """Accumulates SVG elements in a y-up world coordinate frame."""

    def __init__(self, minx: float, miny: float, maxx: float, maxy: float) -> None:
        margin = 0.04 * max(maxx - minx, maxy - miny, 1.0)
        self.minx = minx - margin
        self.maxy = maxy + margin
        self.width = (maxx - minx) + 2 * margin
        self.height = (maxy - miny) + 2 * margin
        self.elements: list[str] = []

    def _pt(self, x: float, y: float) -> tuple[float, float]:
        return x - self.minx, self.maxy - y

    def polygon(
        self,
        rings: Sequence[Ring],
        fill: str,
        stroke: str,
        stroke_width: float,
        opacity: float = 1.0,
    ) -> None:
        subpaths = []
        for ring in rings:
            coords = [self._pt(x, y) for x, y in ring]
            head = "M" + " L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords)
            subpaths.append(head + " Z")
        attrs = (
            f'd="{" ".join(subpaths)}" fill="{fill}" fill-rule="evenodd" '
            f'stroke="{stroke}" stroke-width="{_fmt(stroke_width)}" '
            f'stroke-linejoin="round"'
        )
        if opacity != 1.0:
            attrs += f' fill-opacity="{_fmt(opacity)}"'
        self.elements.append(f"<path {attrs}/>")

    def rect(
        self, x: float, y: float, w: float, h: float, fill: str, stroke: str, stroke_width: float
    ) -> None:
        px, py = self._pt(x, y + h)
        self.elements.append(
            f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(stroke_width)}"/>'
        )

    def text(self, x: float, y: float, content: str, size: float) -> None:
        px, py = self._pt(x, y)
        self.elements.append(
            f'<text x="{_fmt(px)}" y="{_fmt(py)}" font-size="{_fmt(size)}" '
            f'font-family="sans-serif" text-anchor="middle" '
            f'dominant-baseline="middle" fill="#1b2631">{content}</text>'
        )

    def to_svg(self) -> str:
        body = "\n".join(f"  {el}" for el in self.elements)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">\n'
            f"{body}\n</svg>\n"
        )


def _overlay_svg(report: RunReport) -> str:
    xs: list[float] = []
    ys: list[float] = []
    for region in report.regions:
        xs.extend(p[0] for p in region.outer)
        ys.extend(p[1] for p in region.outer)
        for w in region.whole:
            xs.extend((w.cell.x, w.cell.x + w.cell.width))
            ys.extend((w.cell.y, w.cell.y + w.cell.height))
    canvas = _SvgCanvas(min(xs), min(ys), max(xs), max(ys))
    extent = max(canvas.width, canvas.height)
    thin = extent / 600.0
    thick = extent / 250.0
    for region in report.regions:
        canvas.polygon(
            [region.outer, *region.holes], _REGION_FILL, _REGION_STROKE, thick
        )
    for region in report.regions:
        for w in region.whole:
            canvas.rect(
                w.cell.x, w.cell.y, w.cell.width, w.cell.height,
                _CELL_FILL, _CELL_STROKE, thin,
            )
    for piece in report.pieces:
        fill = _PIECE_FILLS[piece.id % len(_PIECE_FILLS)]
        canvas.polygon([piece.outline], fill, _OFFCUT_STROKE, thin, opacity=0.85)
    for region in report.regions:
        canvas.polygon([region.outer, *region.holes], "none", _REGION_STROKE, thick)
    return canvas.to_svg()


def _nesting_svg(report: RunReport) -> str:
    cell = report.cell_dims
    count = max(len(report.nesting), 1)
    gap = 0.08 * cell.width
    total_width = count * cell.width + (count - 1) * gap
    canvas = _SvgCanvas(0.0, 0.0, total_width, cell.height)
    extent = max(canvas.width, canvas.height)
    thin = extent / 600.0
    thick = extent / 250.0
    label = min(cell.width, cell.height) / 6.0
    for i in range(count):
        x0 = i * (cell.width + gap)
        canvas.rect(x0, 0.0, cell.width, cell.height, "#fdfefe", _PANEL_STROKE, thick)
    for i, placements in enumerate(report.nesting):
        x0 = i * (cell.width + gap)
        for placement in placements:
            ring = tuple((x + x0, y) for x, y in placement.polygon)
            fill = _PIECE_FILLS[placement.piece_id % len(_PIECE_FILLS)]
            canvas.polygon([ring], fill, _PANEL_STROKE, thin, opacity=0.9)
            cx = sum(p[0] for p in ring) / len(ring)
            cy = sum(p[1] for p in ring) / len(ring)
            canvas.text(cx, cy, str(placement.piece_id), label)
    return canvas.to_svg()


def render_layout(report: RunReport, view: str, path: str | Path) -> None:
    """Write one SVG drawing of the report: 'overlay' or 'nesting'."""
    if view == "overlay":
        svg = _overlay_svg(report)
    elif view == "nesting":
        svg = _nesting_svg(report)
    else:
        raise ConfigurationError(f"unknown view {view!r}, expected overlay or nesting")
    Path(path).write_text(svg, encoding="utf-8")


def render_convergence(report: RunReport, path: str | Path) -> bool:
    """Plot best fitness against evaluations; False when there is no trace."""
    if not report.trace:
        return False
    xs = [i for i, _ in report.trace]
    ys = [f for _, f in report.trace]
    xs.append(report.evaluations)
    ys.append(ys[-1])
    fig, ax = plt.subplots(figsize=(7.0, 4.0), dpi=120)
    ax.step(xs, ys, where="post", color="#2471a3")
    ax.scatter(xs[:-1], ys[:-1], s=18.0, color="#b03a2e", zorder=3)
    ax.set_xlabel("evaluations")
    ax.set_ylabel("best fitness (vacant area)")
    ax.set_title(
        f"{report.scenario_name}: {report.algorithm.value}"
        + (f", seed {report.seed}" if report.seed is not None else "")
    )
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return True


def render_bench_chart(reports: Sequence[RunReport], path: str | Path) -> None:
    """Grouped bar chart of material usage per scenario and algorithm."""
    usage: dict[str, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for report in reports:
        usage[report.scenario_name][report.algorithm.value].append(
            report.material_usage * 100.0
        )
    scenarios = list(usage)
    algorithms = ["greedy", "mc", "ga"]
    colors = {"greedy": "#2471a3", "mc": "#f5b041", "ga": "#82e0aa"}
    fig, ax = plt.subplots(figsize=(1.8 + 2.2 * len(scenarios), 4.5), dpi=120)
    width = 0.25
    for ai, algo in enumerate(algorithms):
        offsets = []
        heights = []
        for si, scenario in enumerate(scenarios):
            values = usage[scenario].get(algo)
            if not values:
                continue
            offsets.append(si + (ai - 1) * width)
            heights.append(max(values))
        if offsets:
            ax.bar(offsets, heights, width=width, color=colors[algo], label=algo)
    ax.set_xticks(range(len(scenarios)))
    ax.set_xticklabels(scenarios, rotation=15.0, ha="right")
    ax.set_ylabel("best material usage (%)")
    ax.set_ylim(0.0, 105.0)
    ax.legend()
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

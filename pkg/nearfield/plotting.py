# Copyright (c) 2026, nearfield-noise contributors
"""Line plots written as SVG through cairo. Convenience output only."""

import logging
import math
from dataclasses import dataclass, field

import cairo
import numpy as np

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 440
MARGIN_LEFT = 80
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 60

PALETTE = (
    (0.12, 0.47, 0.71),
    (0.84, 0.15, 0.16),
    (0.17, 0.63, 0.17),
    (0.58, 0.40, 0.74),
    (1.00, 0.50, 0.05),
    (0.55, 0.34, 0.29),
)


@dataclass
class Series:
    label: str
    x: np.ndarray
    y: np.ndarray
    style: str = "line"



@dataclass
class LinePlot:
    title: str
    x_label: str
    y_label: str
    x_log: bool = True
    y_log: bool = True
    series: list = field(default_factory=list)

    def add(self, label: str, x, y, style: str = "line") -> None:
        self.series.append(Series(label, np.asarray(x, dtype=float), np.asarray(y, dtype=float), style))



class _Axis():
    def __init__(self, low: float, high: float, log: bool, start: float, stop: float):
        self.log = log
        if log:
            low, high = math.log10(low), math.log10(high)
        if high == low:
            low, high = low - 0.5, high + 0.5
        self._low, self._high = low, high
        self._start, self._stop = start, stop


    def __call__(self, value: float) -> float:
        value = math.log10(value) if self.log else value
        return self._start + (value - self._low) / (self._high - self._low) * (self._stop - self._start)


    def ticks(self) -> list[tuple[float, str]]:
        if self.log:
            first, last = math.ceil(self._low - 1e-9), math.floor(self._high + 1e-9)
            step = max(1, (last - first) // 8 + 1)
            return [(10.0 ** e, f"1e{e}") for e in range(first, last + 1, step)]

        values = np.linspace(self._low, self._high, 6)
        return [(v, f"{v:.3g}") for v in values]



def _visible(plot: LinePlot, series: Series) -> tuple[np.ndarray, np.ndarray]:
    keep = np.isfinite(series.x) & np.isfinite(series.y)
    if plot.x_log:
        keep &= series.x > 0
    if plot.y_log:
        keep &= series.y > 0
    return series.x[keep], series.y[keep]


def write_svg(plot: LinePlot, file_path: str) -> str:
    points = [_visible(plot, s) for s in plot.series]
    xs = np.concatenate([p[0] for p in points]) if points else np.array([])
    ys = np.concatenate([p[1] for p in points]) if points else np.array([])
    if xs.size == 0:
        xs = ys = np.array([1.0, 10.0])

    x_axis = _Axis(xs.min(), xs.max(), plot.x_log, MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    y_axis = _Axis(ys.min(), ys.max(), plot.y_log, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)

    surface = cairo.SVGSurface(file_path, WIDTH, HEIGHT)
    context = cairo.Context(surface)
    context.set_source_rgb(1, 1, 1)
    context.paint()

    context.select_font_face("sans-serif")
    context.set_font_size(11)
    context.set_source_rgb(0, 0, 0)
    context.set_line_width(1)
    context.rectangle(MARGIN_LEFT, MARGIN_TOP, WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
                      HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    context.stroke()

    for value, label in x_axis.ticks():
        x = x_axis(value)
        context.move_to(x, HEIGHT - MARGIN_BOTTOM)
        context.line_to(x, HEIGHT - MARGIN_BOTTOM + 5)
        context.stroke()
        context.move_to(x - 12, HEIGHT - MARGIN_BOTTOM + 18)
        context.show_text(label)

    for value, label in y_axis.ticks():
        y = y_axis(value)
        context.move_to(MARGIN_LEFT - 5, y)
        context.line_to(MARGIN_LEFT, y)
        context.stroke()
        context.move_to(8, y + 4)
        context.show_text(label)

    context.move_to(WIDTH / 2 - 40, HEIGHT - 15)
    context.show_text(plot.x_label)
    context.move_to(8, MARGIN_TOP - 12)
    context.show_text(plot.y_label)
    context.set_font_size(13)
    context.move_to(MARGIN_LEFT, 20)
    context.show_text(plot.title)
    context.set_font_size(11)

    for index, (series, (x, y)) in enumerate(zip(plot.series, points)):
        context.set_source_rgb(*PALETTE[index % len(PALETTE)])
        context.set_line_width(1.5)
        if series.style == "dots":
            for xi, yi in zip(x, y):
                context.arc(x_axis(xi), y_axis(yi), 2.5, 0, 2 * math.pi)
                context.fill()
        elif x.size:
            context.move_to(x_axis(x[0]), y_axis(y[0]))
            for xi, yi in zip(x[1:], y[1:]):
                context.line_to(x_axis(xi), y_axis(yi))
            context.stroke()

        legend_y = MARGIN_TOP + 16 + 16 * index
        context.move_to(WIDTH - MARGIN_RIGHT - 150, legend_y - 4)
        context.line_to(WIDTH - MARGIN_RIGHT - 130, legend_y - 4)
        context.stroke()
        context.move_to(WIDTH - MARGIN_RIGHT - 125, legend_y)
        context.show_text(series.label)

    surface.finish()
    logger.debug(f"[Plot] {len(plot.series)} series -> {file_path}")
    return file_path

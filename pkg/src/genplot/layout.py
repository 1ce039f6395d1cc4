"""Visual style sampling and chart geometry.

Pixel coordinates follow SVG: origin top-left, y grows downward. Text boxes
are estimated from bundled per-font advance tables (1/1000 em units).
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import GeometryError
from .vocab import data_path

log = logging.getLogger(__name__)

N_STYLES = 8
N_FONTS = 9
COLOR_MIN, COLOR_MAX = 40, 200
MARGIN_RANGE = (0.05, 0.22)
BAR_GAP_RANGE = (0.05, 0.5)
FIGURE_RANGE = (480, 1024)
FONT_PT_RANGE = (8.0, 16.0)
PX_PER_PT = 4.0 / 3.0
MIN_FONT_PT = 5.0
LABEL_GAP_PX = 1.0  # layout keeps boxes this far apart on every side
DEFAULT_FLAG_PROBS = {"ticks": 0.8, "grid": 0.5, "spines": 0.7}
NICE_MANTISSAS = (1.0, 2.0, 2.5, 5.0)
# dot k sits at y = k; a full stack of 10 (top edge 10.5) keeps 10% headroom
DOT_WINDOW_TOP = 10.5 / 0.9


@lru_cache(maxsize=None)
def themes() -> tuple:
    with open(data_path("themes.json"), encoding="utf-8") as fh:
        return tuple(json.load(fh)["themes"])


@lru_cache(maxsize=None)
def fonts() -> tuple:
    with open(data_path("fonts.json"), encoding="utf-8") as fh:
        tables = json.load(fh)["fonts"]
    for t in tables:
        adv = t["advances"]
        t["average"] = sum(adv.values()) / len(adv)
    return tuple(tables)


def font_id_for(family: str, weight: str = "normal", style: str = "normal") -> int:
    for i, t in enumerate(fonts()):
        if (t["family"], t["weight"], t["style"]) == (family, weight, style):
            return i
    raise KeyError(f"no bundled font {family!r} {weight} {style}")


@dataclass(frozen=True)
class StyleParams:
    style_id: int
    font_id: int
    color: tuple
    show_ticks_x: bool
    show_ticks_y: bool
    show_grid: bool
    show_spines: bool
    margin_fracs: tuple  # left, right, top, bottom
    bar_gap_frac: float
    figure_px: tuple
    font_size_pt: float

    def __post_init__(self):
        if not 0 <= self.style_id < N_STYLES or not 0 <= self.font_id < N_FONTS:
            raise ValueError("style_id or font_id out of range")
        if len(self.color) != 3 or any(not COLOR_MIN <= c <= COLOR_MAX for c in self.color):
            raise ValueError(f"color {self.color} outside [{COLOR_MIN}, {COLOR_MAX}]")
        if len(self.margin_fracs) != 4 or any(not MARGIN_RANGE[0] <= m <= MARGIN_RANGE[1] for m in self.margin_fracs):
            raise ValueError("margin fractions out of range")
        if not BAR_GAP_RANGE[0] <= self.bar_gap_frac <= BAR_GAP_RANGE[1]:
            raise ValueError("bar gap out of range")
        if any(not FIGURE_RANGE[0] <= s <= FIGURE_RANGE[1] for s in self.figure_px):
            raise ValueError("figure size out of range")
        if not FONT_PT_RANGE[0] <= self.font_size_pt <= FONT_PT_RANGE[1]:
            raise ValueError("font size out of range")

    @property
    def theme(self) -> dict:
        return themes()[self.style_id]

    @property
    def color_hex(self) -> str:
        return "#{:02x}{:02x}{:02x}".format(*self.color)

    def to_dict(self) -> dict:
        return {
            "style_id": self.style_id, "font_id": self.font_id, "color": list(self.color),
            "show_ticks_x": self.show_ticks_x, "show_ticks_y": self.show_ticks_y,
            "show_grid": self.show_grid, "show_spines": self.show_spines,
            "margin_fracs": list(self.margin_fracs), "bar_gap_frac": self.bar_gap_frac,
            "figure_px": list(self.figure_px), "font_size_pt": self.font_size_pt,
        }


def sample_style(rng: np.random.Generator, flag_probs: dict | None = None) -> StyleParams:
    p = dict(DEFAULT_FLAG_PROBS, **(flag_probs or {}))
    style_id = int(rng.integers(N_STYLES))
    font_id = int(rng.integers(N_FONTS))
    color = tuple(int(c) for c in rng.integers(COLOR_MIN, COLOR_MAX + 1, size=3))
    ticks_x = bool(rng.random() < p["ticks"])
    ticks_y = bool(rng.random() < p["ticks"])
    grid = bool(rng.random() < p["grid"])
    spines = bool(rng.random() < p["spines"])
    margins = tuple(round(float(m), 4) for m in rng.uniform(*MARGIN_RANGE, size=4))
    gap = round(float(rng.uniform(*BAR_GAP_RANGE)), 4)
    size = tuple(int(s) for s in rng.integers(FIGURE_RANGE[0], FIGURE_RANGE[1] + 1, size=2))
    font_pt = round(float(rng.uniform(*FONT_PT_RANGE)), 2)
    return StyleParams(style_id, font_id, color, ticks_x, ticks_y, grid, spines,
                       margins, gap, size, font_pt)


class Transform:
    """Affine map from a data window onto a pixel rectangle (y flipped)."""

    def __init__(self, window, rect):
        xmin, xmax, ymin, ymax = (float(v) for v in window)
        x0, y0, x1, y1 = (float(v) for v in rect)
        if xmax <= xmin or ymax <= ymin:
            raise GeometryError(f"degenerate data window {window}")
        if x1 <= x0 or y1 <= y0:
            raise GeometryError(f"zero-area axes rectangle {rect}")
        self.window = (xmin, xmax, ymin, ymax)
        self.rect = (x0, y0, x1, y1)
        self.sx = (x1 - x0) / (xmax - xmin)
        self.sy = (y1 - y0) / (ymax - ymin)

    def x(self, v):
        return self.rect[0] + (v - self.window[0]) * self.sx

    def y(self, v):
        return self.rect[3] - (v - self.window[2]) * self.sy

    def __call__(self, x, y):
        return self.x(x), self.y(y)

    def inverse(self, px, py):
        return (self.window[0] + (px - self.rect[0]) / self.sx,
                self.window[2] + (self.rect[3] - py) / self.sy)


def _tick_count(vmin, vmax, step):
    return int(math.ceil(vmax / step - 1e-9) - math.floor(vmin / step + 1e-9)) + 1


def _candidate_steps(vmin, vmax, target):
    span = vmax - vmin
    e = math.floor(math.log10(span / max(target - 1, 1)))
    for exp in range(e - 2, e + 3):
        for m in NICE_MANTISSAS:
            yield m, m * 10.0 ** exp


def nice_ticks(vmin: float, vmax: float, target: int = 5) -> list:
    """Evenly spaced round ticks (1, 2, 2.5 or 5 x 10^k) bracketing [vmin, vmax].

    Steps wider than the window lose, then steps whose tick count falls
    outside [target - 2, target + 3]; 2.5 only beats the 1-2-5 family when
    nothing else is left. Among the rest the count closest to ``target`` is
    kept, ties to the larger step.
    """
    if vmin > vmax:
        raise ValueError("vmin must not exceed vmax")
    if target < 1:
        raise ValueError("target must be positive")
    if vmin == vmax:
        pad = max(1.0, abs(vmin) * 0.1)
        vmin, vmax = vmin - pad, vmax + pad
    lo, hi = target - 2, target + 3
    best = None
    for m, step in _candidate_steps(vmin, vmax, target):
        n = _tick_count(vmin, vmax, step)
        rank = (step > (vmax - vmin) * (1 + 1e-9), not lo <= n <= hi, m == 2.5, abs(n - target), -step)
        if best is None or rank < best[0]:
            best = (rank, step)
    step = best[1]
    start = math.floor(vmin / step + 1e-9)
    stop = math.ceil(vmax / step - 1e-9)
    digits = max(0, 2 - math.floor(math.log10(step)))
    return [round(k * step, digits) + 0.0 for k in range(start, stop + 1)]


def tick_step(ticks) -> float:
    return ticks[1] - ticks[0] if len(ticks) > 1 else 1.0


def format_tick(value: float, step: float) -> str:
    mant = step / 10 ** math.floor(math.log10(step))
    decimals = max(0, -math.floor(math.log10(step) + 1e-9)) + (1 if abs(mant - 2.5) < 1e-9 else 0)
    text = f"{value:.{decimals}f}"
    if float(text) == 0:
        text = text.lstrip("-")
    return text


_missing_reported = set()


def estimate_text_extent(text: str, font_id: int, size_pt: float) -> tuple:
    """(width_px, height_px) from the bundled advance table for ``font_id``."""
    table = fonts()[font_id]
    size_px = size_pt * PX_PER_PT
    height = table["line_height"] / 1000.0 * size_px
    adv = table["advances"]
    total = 0
    for ch in text:
        a = adv.get(ch)
        if a is None:
            if (font_id, ch) not in _missing_reported:
                _missing_reported.add((font_id, ch))
                log.warning("glyph %r missing from font %d; using average advance", ch, font_id)
            a = table["average"]
        total += a
    return total / 1000.0 * size_px, height


def text_box(x, y, w, h, anchor="middle", angle=0.0) -> tuple:
    """Axis-aligned box of a ``w`` x ``h`` text anchored at (x, y), vertically
    centred, rotated by ``angle`` degrees (SVG sense) about the anchor."""
    if anchor == "start":
        xs = (0.0, w)
    elif anchor == "middle":
        xs = (-w / 2, w / 2)
    elif anchor == "end":
        xs = (-w, 0.0)
    else:
        raise ValueError(f"unknown anchor {anchor!r}")
    ys = (-h / 2, h / 2)
    if angle == 0:
        return (x + xs[0], y + ys[0], x + xs[1], y + ys[1])
    a = math.radians(angle)
    c, s = math.cos(a), math.sin(a)
    px = [dx * c - dy * s for dx in xs for dy in ys]
    py = [dx * s + dy * c for dx in xs for dy in ys]
    return (x + min(px), y + min(py), x + max(px), y + max(py))


def boxes_overlap(a, b) -> bool:
    return min(a[2], b[2]) - max(a[0], b[0]) > 0 and min(a[3], b[3]) - max(a[1], b[1]) > 0


def detect_label_overlap(boxes) -> bool:
    """True iff any two boxes ``(x0, y0, x1, y1)`` share positive area."""
    if len(boxes) < 2:
        return False
    b = np.asarray(boxes, dtype=np.float64)
    order = np.argsort(b[:, 0], kind="stable")
    b = b[order]
    for i in range(len(b) - 1):
        # sweep along x: only boxes starting before this one ends can overlap
        rest = b[i + 1:]
        cand = rest[rest[:, 0] < b[i, 2]]
        if len(cand) == 0:
            continue
        w = np.minimum(cand[:, 2], b[i, 2]) - np.maximum(cand[:, 0], b[i, 0])
        h = np.minimum(cand[:, 3], b[i, 3]) - np.maximum(cand[:, 1], b[i, 1])
        if np.any((w > 0) & (h > 0)):
            return True
    return False


def inflate(box, d):
    return (box[0] - d, box[1] - d, box[2] + d, box[3] + d)


@dataclass
class TextItem:
    role: str  # title-main, title-x, title-y, tick-x, tick-y
    text: str
    x: float
    y: float
    anchor: str
    angle: float
    size_pt: float
    font_id: int

    @property
    def box(self):
        w, h = estimate_text_extent(self.text, self.font_id, self.size_pt)
        return text_box(self.x, self.y, w, h, self.anchor, self.angle)


@dataclass
class Geometry:
    figure_px: tuple
    axes_rect: tuple
    data_window: tuple
    transform: Transform
    x_scale: str  # "linear" or "category"
    y_scale: str
    x_ticks: list = field(default_factory=list)  # data positions carrying a tick mark
    y_ticks: list = field(default_factory=list)
    texts: list = field(default_factory=list)
    tick_len: float = 0.0

    def label_boxes(self):
        return [t.box for t in self.texts]


def _padded(lo, hi, frac=0.05):
    if hi == lo:
        pad = max(1.0, abs(lo) * 0.1)
        return lo - pad, hi + pad
    span = hi - lo
    return lo - frac * span, hi + frac * span


def _axis_plan(spec):
    """Data window and scale kind per axis, before pixels are known."""
    t = spec.plot_type
    n = len(spec.y_values)
    if t == "vbar":
        top = max(spec.y_values)
        return (-0.5, n - 0.5), (0.0, top * 1.05), "category", "linear"
    if t == "hbar":
        top = max(spec.y_values)
        return (0.0, top * 1.05), (-0.5, n - 0.5), "linear", "category"
    if t == "dot":
        return (-0.5, n - 0.5), (0.0, DOT_WINDOW_TOP), "category", "linear"
    ywin = _padded(min(spec.y_values), max(spec.y_values))
    if t == "line" and spec.x_kind == "date":
        return _padded(0.0, n - 1.0), ywin, "index", "linear"
    return _padded(min(spec.x_values), max(spec.x_values)), ywin, "linear", "linear"


def _numeric_ticks(lo, hi, target):
    ticks = nice_ticks(lo, hi, target)
    eps = (hi - lo) * 1e-9
    inside = [v for v in ticks if lo - eps <= v <= hi + eps]
    return inside, tick_step(ticks)


def _spaced(items, gap):
    boxes = [inflate(b, gap) for b in items]
    return not detect_label_overlap(boxes)


class _Layout:
    def __init__(self, spec, style):
        self.spec = spec
        self.style = style
        self.font = style.font_id
        W, H = style.figure_px
        self.W, self.H = W, H
        ml, mr, mt, mb = style.margin_fracs
        self.ml, self.mr, self.mt, self.mb = ml * W, mr * W, mt * H, mb * H
        base = style.font_size_pt
        self.tick_pt = max(MIN_FONT_PT, base * 0.85)
        self.label_pt = base
        self.title_pt = base * 1.2
        self.tick_len = 5.0
        self.pad = 3.0
        self.xwin, self.ywin, self.xscale, self.yscale = _axis_plan(spec)
        self.xtick_pt = self.tick_pt
        self.ytick_pt = self.tick_pt
        self.x_angle = 0.0

    def extent(self, text, pt):
        return estimate_text_extent(text, self.font, pt)

    # tick candidates -------------------------------------------------------
    def x_tick_labels(self, length_px, target):
        s = self.spec
        if self.xscale == "category":
            labels = list(s.x_labels)
            if s.plot_type == "dot" and s.omit_x_labels:
                labels = [lab if i % 2 == 0 else None for i, lab in enumerate(labels)]
            return list(range(len(labels))), labels
        if self.xscale == "index":
            n = len(s.x_labels)
            every = max(1, int(math.ceil(n / max(target, 1))))
            pos = list(range(0, n, every))
            return pos, [s.x_labels[i] for i in pos]
        ticks, step = _numeric_ticks(*self.xwin, target)
        return ticks, [format_tick(v, step) for v in ticks]

    def y_tick_labels(self, target):
        s = self.spec
        if s.plot_type == "dot" and s.hide_y_ticks:
            return [], []
        if self.yscale == "category":
            n = len(s.x_labels)
            return [n - 1 - i for i in range(n)], list(s.x_labels)
        if s.plot_type == "dot":
            ticks, step = _numeric_ticks(0.0, 10.0, min(target, 6))
            ticks = [v for v in ticks if v == int(v)]
            return ticks, [format_tick(v, max(step, 1.0)) for v in ticks]
        ticks, step = _numeric_ticks(*self.ywin, target)
        return ticks, [format_tick(v, step) for v in ticks]

    # placement -------------------------------------------------------------
    def place_x(self, rect, positions, labels, pt, angle):
        x0, y0, x1, y1 = rect
        tr = Transform((*self.xwin, *self.ywin), rect)
        top = y1 + self.x_label_offset()
        items = []
        for p, lab in zip(positions, labels):
            if not lab:
                continue
            px = tr.x(p)
            anchor = "middle" if angle == 0 else "end"
            item = TextItem("tick-x", lab, px, 0.0, anchor, angle, pt, self.font)
            item.y = top - item.box[1]
            items.append(item)
        return items

    def x_label_offset(self):
        # clear of the lowest y tick label, which is centred on the bottom edge
        half = self.extent("0", self.ytick_pt)[1] / 2
        return max(self.tick_len + self.pad, half + 2)

    def place_y(self, rect, positions, labels, pt):
        x0, y0, x1, y1 = rect
        tr = Transform((*self.xwin, *self.ywin), rect)
        items = []
        for p, lab in zip(positions, labels):
            if lab:
                items.append(TextItem("tick-y", lab, x0 - self.tick_len - self.pad, tr.y(p),
                                      "end", 0.0, pt, self.font))
        return items

    def choose_x(self, rect):
        length = rect[2] - rect[0]
        cat = self.xscale == "category"
        if cat:
            options = [(pt, a) for pt in self._pt_ladder(self.tick_pt) for a in (0.0, -45.0, -90.0)]
            pos, labels = self.x_tick_labels(length, 0)
            for pt, a in options:
                items = self.place_x(rect, pos, labels, pt, a)
                if _spaced([i.box for i in items], LABEL_GAP_PX):
                    return pos, items
            return pos, items
        sample = max((self.extent(lab, self.tick_pt)[0] for lab in
                      self.x_tick_labels(length, 6)[1] if lab), default=20.0)
        target = int(min(9, max(2, length / (sample + 24))))
        for pt in self._pt_ladder(self.tick_pt):
            for tgt in range(target, 1, -1):
                pos, labels = self.x_tick_labels(length, tgt)
                items = self.place_x(rect, pos, labels, pt, 0.0)
                if _spaced([i.box for i in items], LABEL_GAP_PX):
                    return pos, items
        return pos, items

    def choose_y(self, rect):
        length = rect[3] - rect[1]
        if self.yscale == "category":
            pos, labels = self.y_tick_labels(0)
            for pt in self._pt_ladder(self.tick_pt):
                items = self.place_y(rect, pos, labels, pt)
                if _spaced([i.box for i in items], LABEL_GAP_PX):
                    return pos, items
            return pos, items
        h = self.extent("0", self.tick_pt)[1]
        target = int(min(9, max(2, length / (h * 2.5))))
        for tgt in range(target, 1, -1):
            pos, labels = self.y_tick_labels(tgt)
            items = self.place_y(rect, pos, labels, self.tick_pt)
            if _spaced([i.box for i in items], LABEL_GAP_PX):
                return pos, items
        return pos, items

    @staticmethod
    def _pt_ladder(pt):
        out = [pt]
        while out[-1] * 0.85 >= MIN_FONT_PT:
            out.append(out[-1] * 0.85)
        return out

    def fit_title(self, text, pt, room):
        while pt > MIN_FONT_PT and self.extent(text, pt)[0] > room:
            pt = max(MIN_FONT_PT, pt * 0.9)
        if self.extent(text, pt)[0] > room:
            raise GeometryError(f"title {text!r} does not fit in {room:.0f} px")
        return pt

    def run(self):
        s, W, H = self.spec, self.W, self.H
        main, xt, yt = s.titles
        title_pt = self.fit_title(main, self.title_pt, W - self.ml - self.mr) if main else 0
        title_band = self.extent(main, title_pt)[1] + 6 if main else 0
        label_h = self.extent("Ag", self.label_pt)[1]
        xlabel_band = label_h + 4 if xt else 0
        ylabel_band = label_h + 4 if yt else 0
        tick_h = self.extent("0", self.tick_pt)[1]
        rect = (self.ml + ylabel_band + 50, self.mt + title_band + tick_h,
                W - self.mr, H - self.mb - xlabel_band - 30)
        for _ in range(3):
            if rect[2] - rect[0] < 40 or rect[3] - rect[1] < 40:
                raise GeometryError(f"axes rectangle {rect} too small")
            ypos, yitems = self.choose_y(rect)
            xpos, xitems = self.choose_x(rect)
            ywidth = max((i.box[2] - i.box[0] for i in yitems), default=0.0)
            xheight = max((i.box[3] - i.box[1] for i in xitems), default=0.0)
            ytop = max((rect[1] - i.box[1] for i in yitems), default=0.0)
            xright = max((i.box[2] - rect[2] for i in xitems), default=0.0)
            new = (
                self.ml + ylabel_band + ywidth + self.tick_len + self.pad,
                self.mt + title_band + max(ytop, 0.0) + 2,
                min(W - self.mr, W - 2 - max(xright, 0.0)),
                H - self.mb - xlabel_band - xheight - self.x_label_offset(),
            )
            if max(abs(a - b) for a, b in zip(new, rect)) < 0.5:
                rect = new
                break
            rect = new
        rect = tuple(round(v, 3) for v in rect)
        if rect[2] - rect[0] < 40 or rect[3] - rect[1] < 40:
            raise GeometryError(f"axes rectangle {rect} too small")
        ypos, yitems = self.choose_y(rect)
        xpos, xitems = self.choose_x(rect)
        texts = []
        cx = (rect[0] + rect[2]) / 2
        if main:
            texts.append(TextItem("title-main", main, W / 2, self.mt + title_band / 2,
                                  "middle", 0.0, title_pt, self.font))
        if xt:
            pt = self.fit_title(xt, self.label_pt, W - 4)
            x = min(max(cx, 2 + self.extent(xt, pt)[0] / 2), W - 2 - self.extent(xt, pt)[0] / 2)
            texts.append(TextItem("title-x", xt, x, H - self.mb - xlabel_band / 2,
                                  "middle", 0.0, pt, self.font))
        if yt:
            lo, hi = self.mt + title_band, H - self.mb - xlabel_band
            pt = self.fit_title(yt, self.label_pt, hi - lo)
            cy = (rect[1] + rect[3]) / 2
            half = self.extent(yt, pt)[0] / 2
            cy = min(max(cy, lo + half), hi - half)
            texts.append(TextItem("title-y", yt, self.ml + ylabel_band / 2, cy,
                                  "middle", -90.0, pt, self.font))
        texts.extend(xitems)
        texts.extend(yitems)
        for t in texts:
            b = t.box
            if b[0] < 0 or b[1] < 0 or b[2] > W or b[3] > H:
                raise GeometryError(f"{t.role} text {t.text!r} leaves the figure")
        tr = Transform((*self.xwin, *self.ywin), rect)
        return Geometry(
            figure_px=(W, H), axes_rect=rect, data_window=tr.window, transform=tr,
            x_scale="category" if self.xscale in ("category", "index") else "linear",
            y_scale=self.yscale, x_ticks=list(xpos), y_ticks=list(ypos), texts=texts,
            tick_len=self.tick_len,
        )


def compute_geometry(spec, style: StyleParams) -> Geometry:
    """Axes rectangle, data window, ticks and text placement for a chart.

    Numeric windows are padded 5% past the data; bars start at zero.
    Tick density, label rotation and font size are reduced until tick labels
    on each axis no longer collide.
    """
    if not len(spec.y_values):
        raise GeometryError("chart has no data")
    return _Layout(spec, style).run()

"""SVG rendering of the five chart types.

Marks carry stable classes (``mark-bar``, ``mark-point``, ``mark-dot``,
``mark-line``; line markers use ``mark-marker``) and the root element records
the data window and axes rectangle, so a chart can be checked against its
ground truth by re-parsing the file alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .errors import OverlapError, SpecError
from .layout import PX_PER_PT, Geometry, StyleParams, detect_label_overlap, fonts
from .metadata import LEFT_TO_RIGHT, TOP_DOWN, GroundTruth, format_number
from .series import BAR_TYPES, DOT_MAX, DOT_MIN, PLOT_TYPES, POINT_COUNTS

X_KINDS = ("category", "number", "date")


@dataclass(frozen=True)
class ChartSpec:
    plot_type: str
    x_labels: tuple
    y_values: tuple
    titles: tuple
    style: StyleParams
    seed: int
    value_kind: str = "real"
    x_values: tuple | None = None
    x_kind: str = "category"
    smooth: bool = False
    markers: bool = False
    omit_x_labels: bool = False
    hide_y_ticks: bool = False
    scatter_mode: str | None = None
    marker_radius: float = 4.0
    line_width: float = 2.0
    min_sep_px: float = 0.0
    scale_factors: tuple = ()

    def __post_init__(self):
        for name in ("x_labels", "y_values", "titles", "scale_factors"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.x_values is not None:
            object.__setattr__(self, "x_values", tuple(float(v) for v in self.x_values))
        t = self.plot_type
        if t not in PLOT_TYPES:
            raise SpecError(f"unknown plot type {t!r}")
        if self.x_kind not in X_KINDS:
            raise SpecError(f"unknown x kind {self.x_kind!r}")
        n = len(self.y_values)
        lo, hi, _ = POINT_COUNTS[t]
        if not lo <= n <= hi:
            raise SpecError(f"{t} needs {lo}..{hi} points, got {n}")
        if len(self.x_labels) != n:
            raise SpecError(f"{len(self.x_labels)} x labels for {n} values")
        if self.x_kind == "number" and (self.x_values is None or len(self.x_values) != n):
            raise SpecError("numeric x axis needs one x value per point")
        if t == "scatter" and self.x_kind != "number":
            raise SpecError("scatter x axis must be numeric")
        if t in ("scatter", "line") and self.x_kind == "number":
            xs = self.x_values
            if any(b < a for a, b in zip(xs, xs[1:])):
                raise SpecError("x values must be in ascending order")
        if t in BAR_TYPES and min(self.y_values) <= 0:
            raise SpecError("bar values must be positive")
        if t == "dot" and any(v != int(v) or not DOT_MIN <= v <= DOT_MAX for v in self.y_values):
            raise SpecError("dot counts must be integers in [1, 10]")
        if len(self.titles) != 3:
            raise SpecError("titles must be (main, x, y)")
        try:
            self.ground_truth()
        except ValueError as exc:
            raise SpecError(str(exc)) from None

    @property
    def orientation(self) -> str:
        return TOP_DOWN if self.plot_type == "hbar" else LEFT_TO_RIGHT

    def ground_truth(self) -> GroundTruth:
        kind = "integer" if self.plot_type == "dot" else self.value_kind
        pairs = tuple((x, format_number(y, kind)) for x, y in zip(self.x_labels, self.y_values))
        return GroundTruth(pairs, self.orientation)


def _num(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


@dataclass
class Element:
    tag: str
    attrs: dict
    text: str | None = None

    def to_xml(self) -> str:
        parts = " ".join(f"{k}={quoteattr(str(v))}" for k, v in self.attrs.items())
        if self.text is None:
            return f"<{self.tag} {parts}/>"
        return f"<{self.tag} {parts}>{escape(self.text)}</{self.tag}>"


@dataclass
class SvgDocument:
    width: int
    height: int
    elements: list = field(default_factory=list)
    root_attrs: dict = field(default_factory=dict)

    def add(self, tag, text=None, **attrs):
        self.elements.append(Element(tag, {k.rstrip("_").replace("_", "-"): v for k, v in attrs.items()}, text))

    def to_svg(self) -> str:
        root = {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(self.width),
            "height": str(self.height),
            "viewBox": f"0 0 {self.width} {self.height}",
            **self.root_attrs,
        }
        head = " ".join(f"{k}={quoteattr(str(v))}" for k, v in root.items())
        body = "\n".join(e.to_xml() for e in self.elements)
        return f'<?xml version="1.0" encoding="UTF-8"?>\n<svg {head}>\n{body}\n</svg>\n'

    def by_class(self, cls):
        return [e for e in self.elements if cls in e.attrs.get("class", "").split()]


def monotone_tangents(xs, ys):
    """Fritsch-Carlson tangents; the cubic Hermite through them never
    overshoots the data."""
    n = len(xs)
    h = [xs[i + 1] - xs[i] for i in range(n - 1)]
    d = [(ys[i + 1] - ys[i]) / h[i] for i in range(n - 1)]
    if n == 2:
        return [d[0], d[0]]
    m = [d[0]] + [0.0] * (n - 2) + [d[-1]]
    for k in range(1, n - 1):
        if d[k - 1] * d[k] > 0:
            h0, h1 = h[k - 1], h[k]
            m[k] = 3 * (h0 + h1) / ((2 * h1 + h0) / d[k - 1] + (h1 + 2 * h0) / d[k])
    for k in (0, n - 1):
        j = 0 if k == 0 else n - 2
        if m[k] * d[j] <= 0:
            m[k] = 0.0
        elif abs(m[k]) > 3 * abs(d[j]):
            m[k] = 3 * d[j]
    return m


def smooth_path(points) -> str:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    m = monotone_tangents(xs, ys)
    d = [f"M {_num(xs[0])} {_num(ys[0])}"]
    for i in range(len(points) - 1):
        h = xs[i + 1] - xs[i]
        c1 = (xs[i] + h / 3, ys[i] + m[i] * h / 3)
        c2 = (xs[i + 1] - h / 3, ys[i + 1] - m[i + 1] * h / 3)
        d.append(f"C {_num(c1[0])} {_num(c1[1])} {_num(c2[0])} {_num(c2[1])} "
                 f"{_num(xs[i + 1])} {_num(ys[i + 1])}")
    return " ".join(d)


def mark_positions(spec: ChartSpec):
    """Data-space x coordinate of every point (category index for categorical axes)."""
    if spec.x_kind == "number":
        return list(spec.x_values)
    return list(range(len(spec.y_values)))


def dot_radius(geometry: Geometry) -> float:
    tr = geometry.transform
    return min(0.45 * tr.sy, 0.4 * tr.sx)


def _text_attrs(font_id):
    f = fonts()[font_id]
    return {"font_family": f["family"], "font_weight": f["weight"], "font_style": f["style"]}


def render_chart(spec: ChartSpec, geometry: Geometry) -> SvgDocument:
    if detect_label_overlap(geometry.label_boxes()):
        raise OverlapError("tick labels or titles overlap")
    style = spec.style
    theme = style.theme
    W, H = geometry.figure_px
    tr = geometry.transform
    x0, y0, x1, y1 = geometry.axes_rect
    doc = SvgDocument(W, H)
    doc.root_attrs = {
        "data-plot-type": spec.plot_type,
        "data-window": " ".join(repr(v) for v in geometry.data_window),
        "data-rect": " ".join(repr(v) for v in geometry.axes_rect),
        "data-x-scale": geometry.x_scale,
        "data-y-scale": geometry.y_scale,
    }
    if spec.plot_type == "scatter":
        doc.root_attrs["data-min-sep"] = repr(spec.min_sep_px)
    color = style.color_hex
    doc.add("rect", x=0, y=0, width=W, height=H, fill=theme["background"], class_="background")
    doc.add("rect", x=_num(x0), y=_num(y0), width=_num(x1 - x0), height=_num(y1 - y0),
            fill=theme["axes_face"], class_="axes-face")

    if style.show_grid:
        grid = {"stroke": theme["grid"], "stroke_width": theme["grid_width"], "class_": "grid"}
        if theme["grid_dash"]:
            grid["stroke_dasharray"] = theme["grid_dash"]
        for v in geometry.x_ticks:
            px = _num(tr.x(v))
            doc.add("line", x1=px, y1=_num(y0), x2=px, y2=_num(y1), **grid)
        for v in geometry.y_ticks:
            py = _num(tr.y(v))
            doc.add("line", x1=_num(x0), y1=py, x2=_num(x1), y2=py, **grid)

    _draw_marks(doc, spec, geometry, color)

    if style.show_spines and theme["spine_width"] > 0:
        sp = {"stroke": theme["spine"], "stroke_width": theme["spine_width"], "class_": "spine"}
        for a, b, c, d in ((x0, y1, x1, y1), (x0, y0, x0, y1), (x0, y0, x1, y0), (x1, y0, x1, y1)):
            doc.add("line", x1=_num(a), y1=_num(b), x2=_num(c), y2=_num(d), **sp)

    tick = {"stroke": theme["tick"], "stroke_width": 1, "class_": "tick"}
    if style.show_ticks_x:
        for v in geometry.x_ticks:
            px = _num(tr.x(v))
            doc.add("line", x1=px, y1=_num(y1), x2=px, y2=_num(y1 + geometry.tick_len), **tick)
    if style.show_ticks_y and not (spec.plot_type == "dot" and spec.hide_y_ticks):
        for v in geometry.y_ticks:
            py = _num(tr.y(v))
            doc.add("line", x1=_num(x0 - geometry.tick_len), y1=py, x2=_num(x0), y2=py, **tick)

    for t in geometry.texts:
        attrs = {
            "x": _num(t.x), "y": _num(t.y), **_text_attrs(t.font_id),
            "font_size": _num(t.size_pt * PX_PER_PT), "fill": theme["text"],
            "text_anchor": t.anchor, "dominant_baseline": "central", "class_": t.role,
        }
        if t.angle:
            attrs["transform"] = f"rotate({_num(t.angle)} {_num(t.x)} {_num(t.y)})"
        doc.add("text", t.text, **attrs)
    return doc


def _draw_marks(doc, spec, geometry, color):
    tr = geometry.transform
    t = spec.plot_type
    vals = spec.y_values
    n = len(vals)
    if t == "vbar":
        w = (1 - spec.style.bar_gap_frac) * tr.sx
        base = tr.y(0.0)
        for i, v in enumerate(vals):
            top = tr.y(v)
            doc.add("rect", x=_num(tr.x(i) - w / 2), y=_num(top), width=_num(w),
                    height=_num(base - top), fill=color, class_="mark-bar")
    elif t == "hbar":
        h = (1 - spec.style.bar_gap_frac) * tr.sy
        base = tr.x(0.0)
        for i, v in enumerate(vals):
            cy = tr.y(n - 1 - i)
            doc.add("rect", x=_num(base), y=_num(cy - h / 2), width=_num(tr.x(v) - base),
                    height=_num(h), fill=color, class_="mark-bar")
    elif t == "scatter":
        for x, y in zip(spec.x_values, vals):
            doc.add("circle", cx=_num(tr.x(x)), cy=_num(tr.y(y)), r=_num(spec.marker_radius),
                    fill=color, class_="mark-point")
    elif t == "line":
        pts = [(tr.x(x), tr.y(y)) for x, y in zip(mark_positions(spec), vals)]
        stroke = {"fill": "none", "stroke": color, "stroke_width": _num(spec.line_width),
                  "stroke_linejoin": "round", "class_": "mark-line"}
        if spec.smooth:
            doc.add("path", d=smooth_path(pts), **stroke)
        else:
            doc.add("polyline", points=" ".join(f"{_num(a)},{_num(b)}" for a, b in pts), **stroke)
        if spec.markers:
            for a, b in pts:
                doc.add("circle", cx=_num(a), cy=_num(b), r=_num(spec.marker_radius),
                        fill=color, class_="mark-marker")
    elif t == "dot":
        r = dot_radius(geometry)
        for i, count in enumerate(vals):
            cx = _num(tr.x(i))
            for k in range(1, int(count) + 1):
                doc.add("circle", cx=cx, cy=_num(tr.y(k)), r=_num(r),
                        fill=color, class_="mark-dot")

"""Assemble one chart: sample titles, labels, data and style for a plot type,
lay it out and render it."""

from __future__ import annotations

import datetime as dt
import math

import numpy as np

from . import series as S
from .errors import SeparationError, SpecError
from .layout import Transform, compute_geometry, sample_style
from .metadata import format_number, quantize
from .render import ChartSpec, mark_positions, render_chart
from .seeding import substream
from .vocab import (DAYS, MONTHS, PART_NUMERICAL, PLACES, WORD_GROUP, LabelDomain,
                    sample_categorical_labels, sample_title)

DEFAULT_PROBABILITIES = {
    "ticks": 0.8,
    "grid": 0.5,
    "spines": 0.7,
    "outlier": S.OUTLIER_PROB,
    "line_markers": 0.5,
    "line_smoothing": 0.3,
    "dot_omit_x_labels": 0.3,
    "dot_hide_y_ticks": 0.3,
    "scatter_path": 0.5,
}

# bar values are squeezed a little below the 200x cap so that rounding for
# the metadata string can never push them over it
BAR_SQUEEZE_RATIO = 195.0
INTEGER_BAR_MIN = 100.0
LINE_X_STEPS = (1, 2, 5, 10)
DATE_FORMATS = {"month": ("%b %Y", "%Y-%m"), "day": ("%Y-%m-%d", "%d %b")}
CATEGORY_WEIGHTS = {PLACES: 0.25, MONTHS: 0.15, DAYS: 0.1, PART_NUMERICAL: 0.15,
                    WORD_GROUP: 0.15, "integer": 0.2}


def _pick(rng, weights: dict):
    keys = list(weights)
    w = np.array([weights[k] for k in keys], dtype=np.float64)
    return keys[int(rng.choice(len(keys), p=w / w.sum()))]


def _categories(n, rng, vocab):
    weights = dict(CATEGORY_WEIGHTS)
    if n > 12:
        weights.pop(MONTHS)
    if n > 7:
        weights.pop(DAYS)
    kind = _pick(rng, weights)
    if kind == "integer":
        step = int(rng.choice(LINE_X_STEPS))
        origin = int(rng.integers(0, 2001))
        return [str(origin + i * step) for i in range(n)], True
    if kind == PLACES:
        domain = LabelDomain(PLACES, vocab.places)
    elif kind == WORD_GROUP:
        big = [g for g in vocab.groups if len(g.members) >= n]
        if not big:
            domain = LabelDomain(PART_NUMERICAL)
        else:
            domain = LabelDomain(WORD_GROUP, big[int(rng.integers(len(big)))].members)
    else:
        domain = LabelDomain(kind)
    return sample_categorical_labels(domain, n, rng), False


def _titles(rng, vocab):
    group = vocab.groups[int(rng.integers(len(vocab.groups)))]
    main = sample_title(group, "main", rng)
    if rng.random() < 0.5:
        main = main[0].upper() + main[1:]
    return (main, sample_title(group, "x_axis", rng), sample_title(group, "y_axis", rng))


def _values(plot_type, n, rng, probs):
    params = S.sample_series_params(rng, outlier_prob=probs["outlier"], value_kind="real")
    ser = S.sample_series(params, n, rng)
    ser = S.inject_outliers(ser, params.outlier_prob, S.OUTLIER_FACTORS, rng)
    want_int = rng.random() < 0.5
    if plot_type in S.BAR_TYPES:
        ser = S.enforce_constraints(plot_type, ser, max_ratio=BAR_SQUEEZE_RATIO)
        kind = "integer" if want_int and min(ser.values) >= INTEGER_BAR_MIN else "real"
    else:
        kind = "integer" if want_int and params.scale_factor >= 100 else "real"
    return [quantize(v, kind) for v in ser.values], kind, params.scale_factor


def _dates(n, rng):
    freq = "month" if rng.random() < 0.6 else "day"
    fmt = DATE_FORMATS[freq][int(rng.integers(2))]
    start = dt.date(1990, 1, 1) + dt.timedelta(days=int(rng.integers(0, 35 * 365)))
    if freq == "day":
        step = int(rng.choice((1, 7)))
        dates = [start + dt.timedelta(days=i * step) for i in range(n)]
    else:
        months = [start.year * 12 + start.month - 1 + i for i in range(n)]
        dates = [dt.date(m // 12, m % 12 + 1, 1) for m in months]
    return [d.strftime(fmt) for d in dates]


def build_spec(seed: int, plot_type: str, vocab, probs: dict | None = None) -> ChartSpec:
    """Sample every random choice for one chart from ``seed``."""
    p = dict(DEFAULT_PROBABILITIES, **(probs or {}))
    style = sample_style(substream(seed, "style"),
                         {"ticks": p["ticks"], "grid": p["grid"], "spines": p["spines"]})
    titles = _titles(substream(seed, "titles"), vocab)
    rng = substream(seed, "data")
    flags = substream(seed, "flags")
    marker_radius = round(float(flags.uniform(2.5, 5.0)) * style.theme["marker_scale"], 3)
    line_width = round(float(flags.uniform(1.2, 3.0)), 3)
    common = dict(plot_type=plot_type, titles=titles, style=style, seed=seed,
                  marker_radius=marker_radius, line_width=line_width)
    if plot_type in S.BAR_TYPES:
        n = S.sample_point_count(plot_type, rng)
        labels, _ = _categories(n, rng, vocab)
        values, kind, scale = _values(plot_type, n, rng, p)
        return ChartSpec(x_labels=labels, y_values=values, value_kind=kind,
                         scale_factors=(scale,), **common)
    if plot_type == "line":
        n = S.sample_point_count("line", rng)
        values, kind, scale = _values("line", n, rng, p)
        if rng.random() < 0.6:
            step = int(rng.choice(LINE_X_STEPS))
            origin = int(rng.integers(0, 2001))
            xs = [float(origin + i * step) for i in range(n)]
            extra = dict(x_values=xs, x_kind="number", x_labels=[format_number(x, "integer") for x in xs])
        else:
            extra = dict(x_kind="date", x_labels=_dates(n, rng))
        return ChartSpec(y_values=values, value_kind=kind, scale_factors=(scale,),
                         markers=bool(flags.random() < p["line_markers"]),
                         smooth=bool(flags.random() < p["line_smoothing"]), **extra, **common)
    if plot_type == "dot":
        n = S.sample_point_count("dot", rng)
        if rng.random() < 0.5:
            labels, numeric = _categories(n, rng, vocab)
        else:
            step = int(rng.choice(LINE_X_STEPS))
            origin = step * int(rng.integers(0, 51))
            labels, numeric = [str(origin + i * step) for i in range(n)], True
        params = S.sample_series_params(rng, value_kind="real")
        raw = np.array(S.sample_series(params, n, rng).values)
        span = float(np.ptp(raw)) or 1.0
        top = int(rng.integers(3, 11))
        counts = S.enforce_constraints("dot", S.NumericSeries(tuple(1 + (raw - raw.min()) / span * (top - 1))))
        return ChartSpec(x_labels=labels, y_values=counts.values, value_kind="integer",
                         scale_factors=(params.scale_factor,),
                         omit_x_labels=bool(numeric and flags.random() < p["dot_omit_x_labels"]),
                         hide_y_ticks=bool(flags.random() < p["dot_hide_y_ticks"]), **common)
    if plot_type == "scatter":
        return _scatter_spec(rng, flags, p, common, style)
    raise SpecError(f"unknown plot type {plot_type!r}")


def _scatter_spec(rng, flags, p, common, style):
    n = S.sample_point_count("scatter", rng)
    mode = "path" if flags.random() < p["scatter_path"] else "random"
    min_sep = common["marker_radius"]
    W, H = style.figure_px
    ml, mr, mt, mb = style.margin_fracs
    guess = Transform((0.0, 1.0, 0.0, 1.0),
                      (ml * W + 70, mt * H + 30, W - mr * W - 10, H - mb * H - 60))
    unit = S.sample_scatter_points(n, mode, min_sep * 1.3 + 2.0, guess, rng)
    sx, sy = S.sample_scale_factor(rng), S.sample_scale_factor(rng)
    xo, yo = sx * int(rng.integers(-1, 3)), sy * int(rng.integers(-1, 3))
    kx = "integer" if sx >= 100 and rng.random() < 0.5 else "real"
    ky = "integer" if sy >= 100 and rng.random() < 0.5 else "real"
    pts = sorted((quantize(xo + u * sx, kx), quantize(yo + w * sy, ky)) for u, w in unit)
    xs, ys = [a for a, _ in pts], [b for _, b in pts]
    return ChartSpec(x_values=xs, y_values=ys, x_kind="number", value_kind=ky,
                     x_labels=[format_number(x, kx) for x in xs], scatter_mode=mode,
                     min_sep_px=min_sep, scale_factors=(sx, sy), **common)


def min_pixel_separation(spec: ChartSpec, transform) -> float:
    px = np.array([transform(x, y) for x, y in zip(mark_positions(spec), spec.y_values)])
    d = np.hypot(px[:, None, 0] - px[None, :, 0], px[:, None, 1] - px[None, :, 1])
    d[np.diag_indices(len(px))] = np.inf
    return float(d.min())


def make_chart(seed: int, plot_type: str, vocab, probs: dict | None = None):
    """(spec, geometry, svg document) for one attempt; raises on any
    layout, overlap or separation failure so the caller can retry."""
    spec = build_spec(seed, plot_type, vocab, probs)
    geometry = compute_geometry(spec, spec.style)
    if plot_type == "scatter":
        sep = min_pixel_separation(spec, geometry.transform)
        if not sep >= spec.min_sep_px + 0.01:  # margin for 3-decimal SVG coordinates
            raise SeparationError(f"points {sep:.2f} px apart, need {spec.min_sep_px:.2f}")
    doc = render_chart(spec, geometry)
    return spec, geometry, doc


def title_word_counts(spec: ChartSpec) -> tuple:
    return tuple(len(t.split()) for t in spec.titles)


def scale_factors_ok(spec: ChartSpec) -> bool:
    return all(S.SCALE_MIN <= f <= S.SCALE_MAX and math.isfinite(f) for f in spec.scale_factors)

import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genplot.compose import build_spec
from genplot.errors import GeometryError
from genplot.layout import (BAR_GAP_RANGE, FIGURE_RANGE, FONT_PT_RANGE, MARGIN_RANGE, N_FONTS, N_STYLES,
                            PX_PER_PT, StyleParams, Transform, boxes_overlap, compute_geometry,
                            detect_label_overlap, estimate_text_extent, fonts, nice_ticks, sample_style,
                            text_box, themes)
from genplot.seeding import make_rng
from genplot.series import PLOT_TYPES
from genplot.vocab import data_path


def oracle_nice_ticks(vmin, vmax, target):
    """Enumerate every 1/2/2.5/5 x 10^k step with exact fractions and pick by
    the documented preference order."""
    lo, hi = Fraction(vmin), Fraction(vmax)
    if lo == hi:
        pad = max(Fraction(1), abs(lo) / 10)
        lo, hi = lo - pad, hi + pad
    best = None
    for k in range(-12, 13):
        for m in (Fraction(1), Fraction(2), Fraction(5, 2), Fraction(5)):
            step = m * Fraction(10) ** k
            first, last = math.floor(lo / step), math.ceil(hi / step)
            n = last - first + 1
            key = (step > hi - lo, not target - 2 <= n <= target + 3, m == Fraction(5, 2), abs(n - target), -step)
            if best is None or key < best[0]:
                best = (key, first, last, step)
    _, first, last, step = best
    return [float(i * step) for i in range(first, last + 1)]


def test_style_sweep():
    rng = make_rng(0)
    styles = [sample_style(rng) for _ in range(10_000)]
    assert {s.style_id for s in styles} == set(range(N_STYLES))
    assert {s.font_id for s in styles} == set(range(N_FONTS))
    for s in styles:
        assert all(40 <= c <= 200 for c in s.color)
        assert all(MARGIN_RANGE[0] <= m <= MARGIN_RANGE[1] for m in s.margin_fracs)
        assert BAR_GAP_RANGE[0] <= s.bar_gap_frac <= BAR_GAP_RANGE[1]
        assert all(FIGURE_RANGE[0] <= v <= FIGURE_RANGE[1] for v in s.figure_px)
        assert FONT_PT_RANGE[0] <= s.font_size_pt <= FONT_PT_RANGE[1]
    rates = [np.mean([getattr(s, f) for s in styles]) for f in ("show_ticks_x", "show_grid", "show_spines")]
    assert rates == pytest.approx([0.8, 0.5, 0.7], abs=0.02)


def test_style_deterministic():
    assert sample_style(make_rng(3)) == sample_style(make_rng(3))


def test_style_rejects_bad_color():
    good = sample_style(make_rng(0))
    with pytest.raises(ValueError):
        StyleParams(**{**good.__dict__, "color": (39, 100, 100)})


def test_bundled_presets_counts():
    assert len(themes()) == 8 and len(fonts()) == 9
    with open(data_path("fonts.json"), encoding="utf-8") as fh:
        assert len({(f["family"], f["weight"], f["style"]) for f in json.load(fh)["fonts"]}) == 9


def test_nice_ticks_worked_examples():
    assert nice_ticks(0, 10, 5) == [0, 2, 4, 6, 8, 10]
    assert nice_ticks(0, 1, 5) == [0, 0.2, 0.4, 0.6, 0.8, 1.0]
    assert oracle_nice_ticks(0, 10, 5) == [0, 2, 4, 6, 8, 10]


def test_nice_ticks_degenerate_range():
    ticks = nice_ticks(5, 5, 5)
    assert ticks[0] <= 4 and ticks[-1] >= 6


# spans below ~1e-6 of the magnitude are beyond what float tick arithmetic can resolve
window = st.tuples(st.floats(-1e6, 1e6), st.floats(0, 1e6)).map(lambda t: (t[0], t[0] + t[1])).filter(
    lambda w: w[1] == w[0] or w[1] - w[0] > 1e-6 * max(1.0, abs(w[0])))


@settings(max_examples=500, deadline=None)
@given(window, st.integers(3, 10))
def test_nice_ticks_properties(w, target):
    vmin, vmax = w
    ticks = nice_ticks(vmin, vmax, target)
    assert all(a < b for a, b in zip(ticks, ticks[1:]))
    steps = np.diff(ticks)
    assert np.allclose(steps, steps[0], rtol=1e-6)
    slack = 1e-9 * steps[0] + 1e-12 * max(1.0, abs(vmin), abs(vmax))  # float snapping allowance
    assert ticks[0] <= vmin + slack and ticks[-1] >= vmax - slack
    mant = steps[0] / 10 ** math.floor(math.log10(steps[0]))
    assert min(abs(mant - m) for m in (1, 2, 2.5, 5, 10)) < 1e-6


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**5, 10**5), st.integers(1, 10**5), st.integers(3, 10))
def test_nice_ticks_match_oracle(lo, span, target):
    assert nice_ticks(lo / 100, (lo + span) / 100, target) == pytest.approx(
        oracle_nice_ticks(Fraction(lo, 100), Fraction(lo + span, 100), target), rel=1e-9, abs=1e-12)


def test_text_extent_empty_and_lookup():
    for font_id in range(N_FONTS):
        table = fonts()[font_id]
        w, h = estimate_text_extent("", font_id, 12)
        assert w == 0 and h == pytest.approx(table["line_height"] / 1000 * 12 * PX_PER_PT)
        want = sum(table["advances"][c] for c in "abc") / 1000 * 12 * PX_PER_PT
        assert estimate_text_extent("abc", font_id, 12)[0] == pytest.approx(want)
        assert estimate_text_extent("abcabc", font_id, 12)[0] == pytest.approx(2 * want)


@settings(max_examples=200, deadline=None)
@given(st.text(st.characters(min_codepoint=32, max_codepoint=126), max_size=30), st.integers(0, 8))
def test_text_extent_monotone(text, font_id):
    widths = [estimate_text_extent(text[:i], font_id, 10)[0] for i in range(len(text) + 1)]
    assert all(a <= b for a, b in zip(widths, widths[1:]))


def test_missing_glyph_uses_average(caplog):
    w, _ = estimate_text_extent("☃", 0, 10)
    assert w == pytest.approx(fonts()[0]["average"] / 1000 * 10 * PX_PER_PT)


def test_overlap_simple_cases():
    assert not detect_label_overlap([(0, 0, 1, 1), (2, 2, 3, 3)])
    assert detect_label_overlap([(0, 0, 1, 1), (0, 0, 1, 1)])
    assert not detect_label_overlap([(0, 0, 1, 1), (1, 0, 2, 1)])  # shared edge has no area


def brute_force_overlap(boxes):
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            if min(a[2], b[2]) > max(a[0], b[0]) and min(a[3], b[3]) > max(a[1], b[1]):
                return True
    return False


def test_overlap_random_fifty_boxes():
    rng = make_rng(0)
    hits = 0
    for _ in range(500):
        xy = rng.uniform(0, 1000, size=(50, 2))
        wh = rng.uniform(1, 40, size=(50, 2))
        boxes = [tuple(p) + tuple(p + s) for p, s in zip(xy, wh)]
        expected = brute_force_overlap(boxes)
        hits += expected
        assert detect_label_overlap(boxes) == expected
    assert 0 < hits < 500


box = st.tuples(st.integers(0, 60), st.integers(0, 60), st.integers(1, 20), st.integers(1, 20)).map(
    lambda t: (t[0], t[1], t[0] + t[2], t[1] + t[3]))


@settings(max_examples=500, deadline=None)
@given(st.lists(box, max_size=100))
def test_overlap_matches_oracle_and_is_symmetric(boxes):
    assert detect_label_overlap(boxes) == brute_force_overlap(boxes)
    assert detect_label_overlap(boxes[::-1]) == detect_label_overlap(boxes)
    if len(boxes) >= 2:
        assert boxes_overlap(boxes[0], boxes[1]) == boxes_overlap(boxes[1], boxes[0])


def test_rotated_box_contains_corners():
    b = text_box(100, 100, 40, 10, "end", -45)
    c = math.cos(math.radians(-45))
    assert b[2] == pytest.approx(100 + 5 * c) and b[0] == pytest.approx(100 - 45 * c)


@pytest.mark.parametrize("plot_type", PLOT_TYPES)
@pytest.mark.parametrize("seed", range(6))
def test_geometry_corners_midpoint_inverse(plot_type, seed, vocab):
    spec = build_spec(seed, plot_type, vocab)
    g = compute_geometry(spec, spec.style)
    x0, y0, x1, y1 = g.axes_rect
    xmin, xmax, ymin, ymax = g.data_window
    w, h = g.figure_px
    assert 0 < x0 < x1 < w and 0 < y0 < y1 < h
    t = g.transform
    assert t(xmin, ymin) == pytest.approx((x0, y1), abs=1e-9)
    assert t(xmax, ymax) == pytest.approx((x1, y0), abs=1e-9)
    assert t((xmin + xmax) / 2, (ymin + ymax) / 2) == pytest.approx(((x0 + x1) / 2, (y0 + y1) / 2), abs=1e-9)
    rng = make_rng(seed)
    for px, py in rng.uniform(0, 1000, size=(20, 2)):
        assert t(*t.inverse(px, py)) == pytest.approx((px, py), abs=1e-9)


def test_window_padding_rules(vocab):
    bar = build_spec(1, "vbar", vocab)
    g = compute_geometry(bar, bar.style)
    assert g.data_window[2] == 0.0
    line = build_spec(1, "line", vocab)
    g = compute_geometry(line, line.style)
    lo, hi = min(line.y_values), max(line.y_values)
    assert g.data_window[2:] == pytest.approx((lo - 0.05 * (hi - lo), hi + 0.05 * (hi - lo)))


def test_degenerate_transform():
    with pytest.raises(GeometryError):
        Transform((0, 1, 0, 1), (10, 10, 10, 20))
    with pytest.raises(GeometryError):
        Transform((1, 1, 0, 1), (0, 0, 10, 10))

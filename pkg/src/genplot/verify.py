"""Re-check a generated corpus from its files alone."""

from __future__ import annotations

import json
import math
import re
import xml.etree.ElementTree as ET
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MetadataParseError
from .layout import (COLOR_MAX, COLOR_MIN, FIGURE_RANGE, PX_PER_PT, Transform, detect_label_overlap,
                     estimate_text_extent, font_id_for, text_box)
from .metadata import parse
from .series import BAR_MAX_RATIO, DOT_MAX, DOT_MIN, PLOT_TYPES, POINT_COUNTS, SCALE_MAX, SCALE_MIN
from .vocab import TITLE_WORDS

ANCHOR_TOL_PX = 0.5
INVARIANTS = (
    "manifest-row", "duplicate-id", "missing-file", "png-malformed", "svg-malformed", "svg-size",
    "metadata-parse", "metadata-mismatch", "point-count", "mark-count", "mark-anchor", "bar-ratio",
    "dot-range", "scatter-separation", "color-bounds", "title-words", "scale-factor", "label-overlap",
)
SVG_NS = "{http://www.w3.org/2000/svg}"
TITLE_ROLES = {"title-main": "main", "title-x": "x_axis", "title-y": "y_axis"}
_ROTATE = re.compile(r"rotate\(([-\d.]+)")
_PATH_NUM = re.compile(r"-?\d+(?:\.\d+)?")


@dataclass
class Violation:
    id: str
    invariant: str
    detail: str


@dataclass
class VerifyReport:
    manifest_path: Path
    checked: int = 0
    violations: list = field(default_factory=list)
    type_counts: Counter = field(default_factory=Counter)
    point_counts: dict = field(default_factory=lambda: defaultdict(list))

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def counts(self) -> dict:
        c = Counter(v.invariant for v in self.violations)
        return {name: c.get(name, 0) for name in INVARIANTS}

    def add(self, rid, invariant, detail):
        self.violations.append(Violation(rid, invariant, detail))


def _classes(el):
    return el.get("class", "").split()


def _color_channels(value):
    if not value or not value.startswith("#") or len(value) != 7:
        return None
    return tuple(int(value[i:i + 2], 16) for i in (1, 3, 5))


def _line_vertices(el):
    if el.tag == SVG_NS + "polyline":
        return [tuple(float(v) for v in p.split(",")) for p in el.get("points").split()]
    nums = [float(v) for v in _PATH_NUM.findall(el.get("d"))]
    pts = [(nums[0], nums[1])]
    for i in range(2, len(nums), 6):
        pts.append((nums[i + 4], nums[i + 5]))
    return pts


def _text_boxes(root):
    boxes = []
    for el in root.iter(SVG_NS + "text"):
        font = font_id_for(el.get("font-family"), el.get("font-weight", "normal"), el.get("font-style", "normal"))
        w, h = estimate_text_extent(el.text or "", font, float(el.get("font-size")) / PX_PER_PT)
        m = _ROTATE.match(el.get("transform", ""))
        angle = float(m.group(1)) if m else 0.0
        boxes.append(text_box(float(el.get("x")), float(el.get("y")), w, h, el.get("text-anchor", "start"), angle))
    return boxes


def _close(a, b):
    return abs(a - b) <= ANCHOR_TOL_PX


def _check_marks(report, rid, ptype, root, gt):
    n = len(gt)
    ys = [float(v) for v in gt.y_labels]
    tr = Transform([float(v) for v in root.get("data-window").split()],
                   [float(v) for v in root.get("data-rect").split()])
    xcat = root.get("data-x-scale") == "category"
    marks = defaultdict(list)
    for el in root.iter():
        for c in _classes(el):
            if c.startswith("mark-"):
                marks[c].append(el)

    if ptype in ("vbar", "hbar"):
        bars = marks["mark-bar"]
        if len(bars) != n:
            return report.add(rid, "mark-count", f"{len(bars)} bars for {n} pairs")
        for i, (el, v) in enumerate(zip(bars, ys)):
            x, y, w, h = (float(el.get(k)) for k in ("x", "y", "width", "height"))
            if ptype == "vbar":
                good = _close(x + w / 2, tr.x(i)) and _close(y, tr.y(v)) and _close(y + h, tr.y(0.0))
            else:
                good = _close(y + h / 2, tr.y(n - 1 - i)) and _close(x + w, tr.x(v)) and _close(x, tr.x(0.0))
            if not good:
                return report.add(rid, "mark-anchor", f"bar {i} does not match value {v}")
        colored = bars
    elif ptype == "scatter":
        pts = marks["mark-point"]
        if len(pts) != n:
            return report.add(rid, "mark-count", f"{len(pts)} points for {n} pairs")
        xs = [float(v) for v in gt.x_labels]
        centres = [(float(el.get("cx")), float(el.get("cy"))) for el in pts]
        for i, ((cx, cy), x, y) in enumerate(zip(centres, xs, ys)):
            if not (_close(cx, tr.x(x)) and _close(cy, tr.y(y))):
                return report.add(rid, "mark-anchor", f"point {i} does not match ({x}, {y})")
        sep = float(root.get("data-min-sep", "0"))
        for i in range(n):
            for j in range(i + 1, n):
                d = math.hypot(centres[i][0] - centres[j][0], centres[i][1] - centres[j][1])
                if d < sep:
                    report.add(rid, "scatter-separation", f"points {i},{j} are {d:.2f} px apart (< {sep:.2f})")
                    break
            else:
                continue
            break
        colored = pts
    elif ptype == "line":
        lines = marks["mark-line"]
        if len(lines) != 1:
            return report.add(rid, "mark-count", f"{len(lines)} line marks")
        verts = _line_vertices(lines[0])
        if len(verts) != n:
            return report.add(rid, "mark-count", f"line has {len(verts)} vertices for {n} pairs")
        xs = list(range(n)) if xcat else [float(v) for v in gt.x_labels]
        for i, ((px, py), x, y) in enumerate(zip(verts, xs, ys)):
            if not (_close(px, tr.x(x)) and _close(py, tr.y(y))):
                return report.add(rid, "mark-anchor", f"vertex {i} does not match ({x}, {y})")
        colored = marks["mark-marker"]
        stroke = _color_channels(lines[0].get("stroke"))
        if stroke is None or any(not COLOR_MIN <= c <= COLOR_MAX for c in stroke):
            report.add(rid, "color-bounds", f"line stroke {lines[0].get('stroke')}")
    else:
        dots = marks["mark-dot"]
        if len(dots) != sum(int(v) for v in ys):
            return report.add(rid, "mark-count", f"{len(dots)} dots for total count {sum(ys):g}")
        columns = defaultdict(list)
        for el in dots:
            cx, cy = float(el.get("cx")), float(el.get("cy"))
            col = round(tr.inverse(cx, cy)[0])
            if not _close(cx, tr.x(col)):
                return report.add(rid, "mark-anchor", f"dot at x={cx} is off its column")
            columns[col].append(cy)
        for i, v in enumerate(ys):
            got = sorted(columns.get(i, []), reverse=True)
            if len(got) != int(v):
                return report.add(rid, "mark-count", f"column {i} has {len(got)} dots, expected {int(v)}")
            if not all(_close(cy, tr.y(k + 1)) for k, cy in enumerate(got)):
                return report.add(rid, "mark-anchor", f"column {i} stack is misplaced")
        colored = dots
    for el in colored:
        rgb = _color_channels(el.get("fill"))
        if rgb is None or any(not COLOR_MIN <= c <= COLOR_MAX for c in rgb):
            return report.add(rid, "color-bounds", f"mark fill {el.get('fill')}")


def _check_values(report, rid, ptype, gt):
    lo, hi, _ = POINT_COUNTS[ptype]
    if not lo <= len(gt) <= hi:
        report.add(rid, "point-count", f"{len(gt)} pairs outside [{lo}, {hi}]")
    try:
        ys = [float(v) for v in gt.y_labels]
    except ValueError:
        return report.add(rid, "metadata-parse", "non-numeric y value")
    if ptype in ("vbar", "hbar"):
        if min(ys) <= 0 or max(ys) > BAR_MAX_RATIO * min(ys):
            report.add(rid, "bar-ratio", f"min {min(ys):g}, max {max(ys):g}")
    elif ptype == "dot":
        if any(v != int(v) or not DOT_MIN <= v <= DOT_MAX for v in ys):
            report.add(rid, "dot-range", "dot counts outside the integers 1..10")


def _check_record(report, base, rec):
    rid = str(rec.get("id"))
    ptype = rec.get("plot_type")
    paths = [rec.get("svg_path"), rec.get("metadata_path")] + ([rec["png_path"]] if rec.get("png_path") else [])
    for p in paths:
        if not p or not (base / p).is_file() or (base / p).stat().st_size == 0:
            return report.add(rid, "missing-file", f"{p} is missing or empty")
    if ptype not in PLOT_TYPES:
        return report.add(rid, "manifest-row", f"unknown plot type {ptype!r}")
    try:
        gt = parse(rec.get("metadata") or "")
    except (MetadataParseError, ValueError) as exc:
        return report.add(rid, "metadata-parse", str(exc))
    report.type_counts[ptype] += 1
    report.point_counts[ptype].append(len(gt))
    sidecar = (base / rec["metadata_path"]).read_text(encoding="utf-8")
    if sidecar != rec["metadata"]:
        report.add(rid, "metadata-mismatch", "sidecar .txt differs from the manifest")
    if rec.get("png_path") and not (base / rec["png_path"]).read_bytes().startswith(b"\x89PNG\r\n\x1a\n"):
        report.add(rid, "png-malformed", "bad PNG signature")
    try:
        root = ET.parse(base / rec["svg_path"]).getroot()
    except ET.ParseError as exc:
        return report.add(rid, "svg-malformed", str(exc))
    if root.tag != SVG_NS + "svg" or root.get("data-window") is None:
        return report.add(rid, "svg-malformed", "not a genplot SVG document")
    w, h = root.get("width"), root.get("height")
    if not (w and h and w.isdigit() and h.isdigit()
            and all(FIGURE_RANGE[0] <= int(v) <= FIGURE_RANGE[1] for v in (w, h))
            and root.get("viewBox") == f"0 0 {w} {h}"):
        report.add(rid, "svg-size", f"declared size {w}x{h}")
    _check_values(report, rid, ptype, gt)
    _check_marks(report, rid, ptype, root, gt)
    for el in root.iter(SVG_NS + "text"):
        role = next((c for c in _classes(el) if c in TITLE_ROLES), None)
        if role:
            lo, hi = TITLE_WORDS[TITLE_ROLES[role]]
            if not lo <= len((el.text or "").split()) <= hi:
                report.add(rid, "title-words", f"{role} has {len((el.text or '').split())} words")
    factors = rec.get("scale_factors") or []
    if not factors or any(not SCALE_MIN <= f <= SCALE_MAX for f in factors):
        report.add(rid, "scale-factor", f"scale factors {factors}")
    if detect_label_overlap(_text_boxes(root)):
        report.add(rid, "label-overlap", "text boxes overlap")


def verify_dataset(manifest_path) -> VerifyReport:
    """Check every manifest row; the report lists each violation found."""
    manifest_path = Path(manifest_path)
    base = manifest_path.parent
    report = VerifyReport(manifest_path)
    seen = set()
    with open(manifest_path, encoding="utf-8") as fh:
        lines = fh.readlines()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            report.add(f"line {line_no}", "manifest-row", str(exc))
            continue
        report.checked += 1
        rid = str(rec.get("id"))
        if rid in seen:
            report.add(rid, "duplicate-id", f"id repeated on line {line_no}")
            continue
        seen.add(rid)
        _check_record(report, base, rec)
    return report

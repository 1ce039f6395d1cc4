"""PNG rasterisation of :class:`SvgDocument` with Pillow.

Only the primitives the renderer emits are supported. Text uses the same
TrueType files the metric tables were measured from.
"""

from __future__ import annotations

import io
import math
import os
import re
from functools import lru_cache

from PIL import Image, ImageColor, ImageDraw, ImageFont

from .errors import RasterizeError
from .layout import font_id_for, fonts

_PATH_TOKEN = re.compile(r"[MC]|-?\d+(?:\.\d+)?")
_ROTATE = re.compile(r"rotate\(([-\d.]+)")


@lru_cache(maxsize=None)
def _font_file(font_id):
    import matplotlib

    return os.path.join(matplotlib.get_data_path(), "fonts", "ttf", fonts()[font_id]["file"])


@lru_cache(maxsize=256)
def _truetype(font_id, size_px):
    return ImageFont.truetype(_font_file(font_id), size_px)


def _color(value):
    if value in (None, "none"):
        return None
    return ImageColor.getrgb(value)


def _dashed(draw, x1, y1, x2, y2, fill, width, pattern):
    on, off = pattern
    length = math.hypot(x2 - x1, y2 - y1)
    if length == 0:
        return
    ux, uy = (x2 - x1) / length, (y2 - y1) / length
    pos = 0.0
    while pos < length:
        end = min(pos + on, length)
        draw.line([(x1 + ux * pos, y1 + uy * pos), (x1 + ux * end, y1 + uy * end)], fill=fill, width=width)
        pos = end + off


def _bezier(p0, p1, p2, p3, steps=16):
    out = []
    for i in range(1, steps + 1):
        t = i / steps
        a, b, c, d = (1 - t) ** 3, 3 * t * (1 - t) ** 2, 3 * t * t * (1 - t), t ** 3
        out.append((a * p0[0] + b * p1[0] + c * p2[0] + d * p3[0],
                    a * p0[1] + b * p1[1] + c * p2[1] + d * p3[1]))
    return out


def _path_points(d, s):
    tokens = _PATH_TOKEN.findall(d)
    pts, i, cmd = [], 0, None
    while i < len(tokens):
        if tokens[i] in ("M", "C"):
            cmd = tokens[i]
            i += 1
            continue
        if cmd == "M":
            pts.append((float(tokens[i]) * s, float(tokens[i + 1]) * s))
            i += 2
        elif cmd == "C":
            c = [(float(tokens[i + j]) * s, float(tokens[i + j + 1]) * s) for j in (0, 2, 4)]
            pts.extend(_bezier(pts[-1], *c))
            i += 6
        else:
            raise RasterizeError(f"path: unsupported command near {tokens[i]!r}")
    return pts


def _draw_text(img, el, s):
    a = el.attrs
    font_id = font_id_for(a["font-family"], a.get("font-weight", "normal"), a.get("font-style", "normal"))
    size = max(1, round(float(a["font-size"]) * s))
    font = _truetype(font_id, size)
    x, y = float(a["x"]) * s, float(a["y"]) * s
    anchor = {"start": "lm", "middle": "mm", "end": "rm"}[a.get("text-anchor", "start")]
    fill = _color(a.get("fill", "#000000"))
    m = _ROTATE.match(a.get("transform", ""))
    angle = float(m.group(1)) if m else 0.0
    if angle == 0:
        ImageDraw.Draw(img).text((x, y), el.text, fill=fill, font=font, anchor=anchor)
        return
    left, top, right, bottom = font.getbbox(el.text, anchor=anchor)
    layer = Image.new("RGBA", (right - left + 2, bottom - top + 2), (0, 0, 0, 0))
    ax, ay = 1 - left, 1 - top
    ImageDraw.Draw(layer).text((ax, ay), el.text, fill=fill + (255,), font=font, anchor=anchor)
    # PIL turns counter-clockwise; SVG rotate() is clockwise on screen
    dx, dy = ax - layer.width / 2, ay - layer.height / 2
    t = math.radians(-angle)
    rx, ry = dx * math.cos(t) + dy * math.sin(t), -dx * math.sin(t) + dy * math.cos(t)
    layer = layer.rotate(-angle, resample=Image.Resampling.BICUBIC, expand=True)
    img.paste(layer, (round(x - layer.width / 2 - rx), round(y - layer.height / 2 - ry)), layer)


def rasterize(doc, dpi_scale: float = 1.0) -> bytes:
    """Render ``doc`` to PNG bytes of size ``round(w * dpi_scale) x round(h * dpi_scale)``."""
    if not 0.5 <= dpi_scale <= 4:
        raise ValueError("dpi_scale must lie in [0.5, 4]")
    s = dpi_scale
    size = (round(doc.width * s), round(doc.height * s))
    img = Image.new("RGB", size, (255, 255, 255))
    draw = ImageDraw.Draw(img)
    for el in doc.elements:
        a = el.attrs
        tag = el.tag
        if tag == "rect":
            x, y = float(a["x"]) * s, float(a["y"]) * s
            w, h = float(a["width"]) * s, float(a["height"]) * s
            draw.rectangle([x, y, x + max(w, 0.0), y + max(h, 0.0)], fill=_color(a.get("fill")))
        elif tag == "circle":
            cx, cy, r = (float(a[k]) * s for k in ("cx", "cy", "r"))
            draw.ellipse([cx - r, cy - r, cx + r, cy + r], fill=_color(a.get("fill")))
        elif tag == "line":
            pts = [float(a[k]) * s for k in ("x1", "y1", "x2", "y2")]
            width = max(1, round(float(a.get("stroke-width", 1)) * s))
            color = _color(a.get("stroke"))
            dash = a.get("stroke-dasharray")
            if dash:
                on, off = (float(v) * s for v in dash.split())
                _dashed(draw, *pts, color, width, (on, off))
            else:
                draw.line(pts, fill=color, width=width)
        elif tag in ("polyline", "path"):
            if tag == "polyline":
                pts = [tuple(float(v) * s for v in p.split(",")) for p in a["points"].split()]
            else:
                pts = _path_points(a["d"], s)
            width = max(1, round(float(a.get("stroke-width", 1)) * s))
            draw.line(pts, fill=_color(a.get("stroke")), width=width, joint="curve")
        elif tag == "text":
            _draw_text(img, el, s)
        else:
            raise RasterizeError(f"unsupported SVG element <{tag}>")
    buf = io.BytesIO()
    img.save(buf, format="PNG", optimize=False, compress_level=3)
    return buf.getvalue()

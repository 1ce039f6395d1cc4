"""Regenerate ``fonts.json`` from the TrueType files shipped with matplotlib.

Each table stores the advance width of printable ASCII glyphs in 1/1000 em
plus the line height (ascent + descent + line gap, also in 1/1000 em).
"""
import json
import os
import sys

import matplotlib
from fontTools.ttLib import TTFont

FONTS = [
    ("DejaVu Sans", "normal", "normal", "DejaVuSans.ttf"),
    ("DejaVu Sans", "bold", "normal", "DejaVuSans-Bold.ttf"),
    ("DejaVu Sans", "normal", "oblique", "DejaVuSans-Oblique.ttf"),
    ("DejaVu Serif", "normal", "normal", "DejaVuSerif.ttf"),
    ("DejaVu Serif", "bold", "normal", "DejaVuSerif-Bold.ttf"),
    ("DejaVu Serif", "normal", "italic", "DejaVuSerif-Italic.ttf"),
    ("DejaVu Sans Mono", "normal", "normal", "DejaVuSansMono.ttf"),
    ("DejaVu Sans Mono", "bold", "normal", "DejaVuSansMono-Bold.ttf"),
    ("STIXGeneral", "normal", "normal", "STIXGeneral.ttf"),
]


def table_for(path):
    font = TTFont(path)
    upem = font["head"].unitsPerEm
    cmap = font.getBestCmap()
    hmtx = font["hmtx"]
    hhea = font["hhea"]
    advances = {}
    for code in range(32, 127):
        glyph = cmap.get(code)
        if glyph is None:
            continue
        advances[chr(code)] = round(hmtx[glyph][0] * 1000 / upem)
    line = (hhea.ascent - hhea.descent + hhea.lineGap) * 1000 / upem
    return advances, round(line)


def main(out):
    ttf_dir = os.path.join(matplotlib.get_data_path(), "fonts", "ttf")
    tables = []
    for family, weight, style, filename in FONTS:
        advances, line = table_for(os.path.join(ttf_dir, filename))
        tables.append({
            "family": family,
            "weight": weight,
            "style": style,
            "file": filename,
            "line_height": line,
            "advances": advances,
        })
    with open(out, "w", encoding="utf-8") as fh:
        json.dump({"version": 1, "units_per_em": 1000, "fonts": tables}, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/genplot/data/fonts.json")

"""Regenerate ``places.txt``: 2123 ASCII place names (countries, states,
regions, counties, provinces) drawn from pycountry.

pycountry is only needed to run this script, not at runtime.
"""
import sys

import pycountry

TARGET = 2123
SUBDIVISION_TYPES = ["State", "Region", "County", "Province", "Department", "Prefecture", "District"]
MAX_LEN = 28


def acceptable(name):
    return name.isascii() and "|" not in name and len(name) <= MAX_LEN and "(" not in name


def main(out):
    names = []
    seen = set()

    def add(name):
        name = name.strip()
        if acceptable(name) and name not in seen:
            seen.add(name)
            names.append(name)

    for country in sorted(pycountry.countries, key=lambda c: c.alpha_2):
        add(getattr(country, "common_name", None) or country.name)
    for kind in SUBDIVISION_TYPES:
        for sub in sorted(pycountry.subdivisions, key=lambda s: s.code):
            if sub.type == kind:
                add(sub.name)
    if len(names) < TARGET:
        raise SystemExit(f"only {len(names)} names available")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(names[:TARGET]) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/genplot/data/places.txt")

"""Ground-truth tables and the pix2struct-style metadata string.

A table ``[(0, 1), (1, 2), (2, 7)]`` serialises to
``"0 | 1 <0x0A> 1 | 2 <0x0A> 2 | 7"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal

from .errors import MetadataParseError, NumberFormatError

ROW_SEP = " <0x0A> "
COL_SEP = " | "
LEFT_TO_RIGHT = "left_to_right"
TOP_DOWN = "top_down"
ORIENTATIONS = (LEFT_TO_RIGHT, TOP_DOWN)
SIG_DIGITS = 4


def _check_label(label, where):
    if not isinstance(label, str):
        raise ValueError(f"{where}: label must be text, got {type(label).__name__}")
    if not label or label != label.strip():
        raise ValueError(f"{where}: label {label!r} is empty or has surrounding whitespace")
    if "|" in label or "<0x0A>" in label:
        raise ValueError(f"{where}: label {label!r} contains a reserved separator")


@dataclass(frozen=True)
class GroundTruth:
    pairs: tuple
    orientation: str = LEFT_TO_RIGHT

    def __post_init__(self):
        pairs = tuple((x, y) for x, y in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("ground truth needs at least one pair")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"unknown orientation {self.orientation!r}")
        for i, (x, y) in enumerate(pairs):
            _check_label(x, f"pair {i} x")
            _check_label(y, f"pair {i} y")

    def __len__(self):
        return len(self.pairs)

    @property
    def x_labels(self):
        return [x for x, _ in self.pairs]

    @property
    def y_labels(self):
        return [y for _, y in self.pairs]


def serialize(gt: GroundTruth) -> str:
    return ROW_SEP.join(f"{x}{COL_SEP}{y}" for x, y in gt.pairs)


def parse(s: str, orientation: str = LEFT_TO_RIGHT) -> GroundTruth:
    """Parse a metadata string; fields are whitespace-trimmed."""
    if not s or not s.strip():
        raise MetadataParseError("empty metadata string")
    pairs = []
    for i, chunk in enumerate(s.split("<0x0A>")):
        if "|" not in chunk:
            raise MetadataParseError(f"missing '|' in {chunk.strip()!r}", i)
        x, y = chunk.split("|", 1)
        x, y = x.strip(), y.strip()
        if not x or not y:
            raise MetadataParseError("empty field", i)
        if "|" in y:
            raise MetadataParseError(f"extra '|' in {chunk.strip()!r}", i)
        pairs.append((x, y))
    return GroundTruth(tuple(pairs), orientation)


def format_number(x: float, kind: str = "real") -> str:
    """Render a number for metadata and labels.

    Integers print without a decimal point. Reals keep 4 significant digits
    (round-half-even on the shortest decimal repr), never use an exponent and
    drop trailing zeros.
    """
    if isinstance(x, bool) or not math.isfinite(x):
        raise NumberFormatError(f"cannot format {x!r}")
    if kind == "integer":
        return str(int(round(x)))
    if kind != "real":
        raise NumberFormatError(f"unknown number kind {kind!r}")
    d = Decimal(repr(float(x)))
    if d.is_zero():
        return "0"
    q = d.quantize(Decimal(1).scaleb(d.adjusted() - SIG_DIGITS + 1), rounding=ROUND_HALF_EVEN)
    text = format(q, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        return "0"
    return text


def quantize(x: float, kind: str = "real") -> float:
    """The value a reader recovers from ``format_number(x, kind)``."""
    return float(format_number(x, kind))

"""Numeric data for every plot type: base signals, noise, scaling, outliers
and the per-type constraints (bar ratio cap, dot counts)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SeparationError

PLOT_TYPES = ("vbar", "hbar", "scatter", "line", "dot")
BAR_TYPES = ("vbar", "hbar")
SAMPLERS = ("linear", "polynomial")
VALUE_KINDS = ("integer", "real")

SCALE_MIN, SCALE_MAX = 0.01, 1_000_000.0
NOISE_MAX = 0.08
OUTLIER_PROB = 0.1
OUTLIER_FACTORS = (2.0, 5.0)
BAR_MAX_RATIO = 200.0
DOT_MIN, DOT_MAX = 1, 10

# (low, high, mode); mode None means uniform
POINT_COUNTS = {
    "vbar": (2, 20, 6),
    "hbar": (2, 20, 6),
    "line": (2, 20, 7),
    "scatter": (3, 86, None),
    "dot": (2, 21, None),
}


@dataclass(frozen=True)
class SeriesParams:
    sampler: str = "linear"
    degree: int = 1
    noise_sigma_rel: float = 0.0
    scale_factor: float = 1.0
    outlier_prob: float = OUTLIER_PROB
    value_kind: str = "real"
    coefficients: tuple | None = None  # low order first; drawn when None

    def __post_init__(self):
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}")
        if self.value_kind not in VALUE_KINDS:
            raise ValueError(f"unknown value kind {self.value_kind!r}")
        if not 1 <= self.degree <= 4:
            raise ValueError("degree must lie in [1, 4]")
        if not SCALE_MIN <= self.scale_factor <= SCALE_MAX:
            raise ValueError(f"scale factor {self.scale_factor} outside [{SCALE_MIN}, {SCALE_MAX}]")
        if self.noise_sigma_rel < 0 or not 0 <= self.outlier_prob <= 1:
            raise ValueError("noise must be >= 0 and outlier probability in [0, 1]")


@dataclass(frozen=True)
class NumericSeries:
    values: tuple
    value_kind: str = "real"

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("series values must be finite")
        if self.value_kind == "integer" and any(v != round(v) for v in values):
            raise ValueError("integer series holds a non-integral value")

    def __len__(self):
        return len(self.values)


def sample_scale_factor(rng: np.random.Generator) -> float:
    """Log-uniform over [0.01, 1e6]."""
    v = 10 ** rng.uniform(math.log10(SCALE_MIN), math.log10(SCALE_MAX))
    return float(min(max(v, SCALE_MIN), SCALE_MAX))


def sample_series_params(rng: np.random.Generator, outlier_prob: float = OUTLIER_PROB,
                         value_kind: str | None = None) -> SeriesParams:
    sampler = SAMPLERS[int(rng.integers(2))]
    degree = 1 if sampler == "linear" else int(rng.integers(2, 5))
    noise = float(rng.uniform(0.0, NOISE_MAX))
    scale = sample_scale_factor(rng)
    if value_kind is None:
        value_kind = VALUE_KINDS[int(rng.integers(2))]
    return SeriesParams(sampler, degree, noise, scale, outlier_prob, value_kind)


def base_coefficients(params: SeriesParams, rng: np.random.Generator) -> np.ndarray:
    if params.coefficients is not None:
        return np.asarray(params.coefficients, dtype=np.float64)
    if params.sampler == "linear":
        return np.array([rng.uniform(0.2, 1.0), rng.uniform(-1.0, 1.0)])
    return rng.uniform(-1.0, 1.0, size=params.degree + 1)


def sample_series(params: SeriesParams, n: int, rng: np.random.Generator) -> NumericSeries:
    """``scale * (base(x_i) + noise_i)`` at ``x_i = i / (n - 1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = base_coefficients(params, rng)
    x = np.arange(n) / (n - 1) if n > 1 else np.zeros(1)
    base = np.polynomial.polynomial.polyval(x, coeffs)
    sigma = params.noise_sigma_rel * float(np.ptp(base))
    noise = rng.normal(0.0, 1.0, size=n) * sigma
    values = params.scale_factor * (base + noise)
    if params.value_kind == "integer":
        values = np.rint(values)
    return NumericSeries(tuple(values.tolist()), params.value_kind)


def inject_outliers(series: NumericSeries, prob: float, factor_range=OUTLIER_FACTORS,
                    rng: np.random.Generator | None = None) -> NumericSeries:
    """With probability ``prob`` multiply one or two entries by a factor
    drawn from ``factor_range``."""
    lo, hi = factor_range
    if not 1.5 <= lo <= hi <= 10:
        raise ValueError("factor range must lie inside [1.5, 10]")
    if rng.random() >= prob:
        return series
    n = len(series)
    count = min(int(rng.integers(1, 3)), n)
    positions = rng.choice(n, size=count, replace=False)
    values = list(series.values)
    for p in positions:
        values[p] *= float(rng.uniform(lo, hi)) if hi > lo else lo
    if series.value_kind == "integer":
        values = [float(round(v)) for v in values]
    return NumericSeries(tuple(values), series.value_kind)


def _bar_values(values, max_ratio):
    v = np.asarray(values, dtype=np.float64)
    vmin, vmax = float(v.min()), float(v.max())
    if vmin > 0 and vmax <= vmin * max_ratio * (1 + 1e-9):
        return values
    hi = vmax if vmax > 0 else float(np.abs(v).max())
    if hi < np.finfo(np.float64).tiny * max_ratio:
        hi = 1.0
    lo = hi / max_ratio
    while hi / lo > max_ratio:  # float division can land one ulp over the cap
        lo = float(np.nextafter(lo, np.inf))
    if vmax == vmin:
        return tuple([hi] * len(v))
    out = np.clip(lo + (v - vmin) / (vmax - vmin) * (hi - lo), lo, hi)
    return tuple(out.tolist())


def _dot_values(values):
    v = np.rint(np.asarray(values, dtype=np.float64))
    if v.min() >= DOT_MIN and v.max() <= DOT_MAX:
        return tuple(v.tolist())
    raw = np.asarray(values, dtype=np.float64)
    span = float(raw.max() - raw.min())
    if span == 0:
        return tuple([float(DOT_MIN)] * len(raw))
    out = np.rint(DOT_MIN + (raw - raw.min()) / span * (DOT_MAX - DOT_MIN))
    return tuple(out.tolist())


def enforce_constraints(plot_type: str, series: NumericSeries, max_ratio: float = BAR_MAX_RATIO) -> NumericSeries:
    """Make a series legal for its plot type.

    Bars: strictly positive with max/min <= ``max_ratio`` (rank-preserving
    affine squeeze into ``[max/max_ratio, max]``). Dots: integers in [1, 10].
    Scatter and line pass through.
    """
    if plot_type in BAR_TYPES:
        values = _bar_values(series.values, max_ratio)
        kind = series.value_kind if values is series.values else "real"
        return NumericSeries(values, kind)
    if plot_type == "dot":
        return NumericSeries(_dot_values(series.values), "integer")
    if plot_type in ("scatter", "line"):
        return series
    raise ValueError(f"unknown plot type {plot_type!r}")


def triangular_pmf(lo: int, hi: int, mode: int) -> np.ndarray:
    k = np.arange(lo, hi + 1, dtype=np.float64)
    w = np.where(k <= mode, (k - lo + 1) / (mode - lo + 1), (hi - k + 1) / (hi - mode + 1))
    return w / w.sum()


def sample_point_count(plot_type: str, rng: np.random.Generator) -> int:
    lo, hi, mode = POINT_COUNTS[plot_type]
    if mode is None:
        return int(rng.integers(lo, hi + 1))
    return lo + int(rng.choice(hi - lo + 1, p=triangular_pmf(lo, hi, mode)))


def sample_scatter_points(n: int, mode: str, min_sep_px: float, projector,
                          rng: np.random.Generator, max_attempts: int = 1000) -> list:
    """Draw ``n`` points in ``projector.window`` whose pixel images are at
    least ``min_sep_px`` apart.

    ``mode="path"`` follows a random polynomial trend and returns points
    sorted by x; ``mode="random"`` is uniform over the window.
    """
    lo, hi, _ = POINT_COUNTS["scatter"]
    if not lo <= n <= hi:
        raise ValueError(f"scatter point count {n} outside [{lo}, {hi}]")
    if min_sep_px <= 0:
        raise ValueError("min_sep_px must be positive")
    if mode not in ("random", "path"):
        raise ValueError(f"unknown scatter mode {mode!r}")
    xmin, xmax, ymin, ymax = projector.window
    if mode == "path":
        coeffs = rng.uniform(-1.0, 1.0, size=int(rng.integers(2, 5)))
        grid = np.linspace(0.0, 1.0, 101)
        curve = np.polynomial.polynomial.polyval(grid, coeffs)
        c_lo, c_span = float(curve.min()), float(np.ptp(curve)) or 1.0
        jitter = float(rng.uniform(0.01, 0.06))
    pts = []
    pix = np.empty((n, 2))
    used_x = set()
    for i in range(n):
        for _ in range(max_attempts):
            u = float(rng.random())
            if mode == "random":
                w = float(rng.random())
            else:
                t = (float(np.polynomial.polynomial.polyval(u, coeffs)) - c_lo) / c_span
                w = min(max(0.1 + 0.8 * t + rng.normal(0.0, jitter), 0.0), 1.0)
            x = xmin + u * (xmax - xmin)
            y = ymin + w * (ymax - ymin)
            if x in used_x:
                continue
            px, py = projector(x, y)
            if i and np.min(np.hypot(pix[:i, 0] - px, pix[:i, 1] - py)) < min_sep_px:
                continue
            break
        else:
            raise SeparationError(f"could not place point {i} of {n} at {min_sep_px:.2f} px spacing")
        pts.append((x, y))
        pix[i] = (px, py)
        used_x.add(x)
    if mode == "path":
        pts.sort()
    return pts

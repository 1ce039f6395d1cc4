"""Corpus generation: deterministic per-index charts, parallel workers and a
JSON-lines manifest written in index order."""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import shutil
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .compose import DEFAULT_PROBABILITIES, make_chart
from .errors import GenerationFailed, GeneratorError
from .metadata import serialize
from .raster import rasterize
from .seeding import chart_seed, mix
from .series import PLOT_TYPES
from .vocab import load_vocabulary

log = logging.getLogger(__name__)

MANIFEST = "manifest.jsonl"
FAILURES = "failures.jsonl"
PARTIAL_MARKER = "manifest.jsonl.partial"
CHARTS_DIR = "charts"
BUCKET_SIZE = 10_000
MAX_ATTEMPTS = 8
PERIOD_LIMIT = 1_000_000


@dataclass
class GenConfig:
    root_seed: int = 0
    total: int = 0
    type_weights: dict = field(default_factory=lambda: {t: 1 for t in PLOT_TYPES})
    output_dir: str = "genplot_out"
    emit_png: bool = False
    png_scale: float = 1.0
    groups_path: str | None = None
    places_path: str | None = None
    probabilities: dict = field(default_factory=dict)
    workers: int = 1
    overwrite: bool = False
    max_attempts: int = MAX_ATTEMPTS

    def __post_init__(self):
        if self.total < 0:
            raise ValueError("total must be non-negative")
        unknown = set(self.type_weights) - set(PLOT_TYPES)
        if unknown:
            raise ValueError(f"unknown plot types {sorted(unknown)}")
        if any(w < 0 for w in self.type_weights.values()) or not any(self.type_weights.values()):
            raise ValueError("type weights must be non-negative and not all zero")
        bad = set(self.probabilities) - set(DEFAULT_PROBABILITIES)
        if bad:
            raise ValueError(f"unknown probability keys {sorted(bad)}")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    @property
    def probs(self) -> dict:
        return {**DEFAULT_PROBABILITIES, **self.probabilities}


def _shares(weights) -> tuple:
    items = tuple((t, Fraction(str(weights.get(t, 0)))) for t in PLOT_TYPES)
    total = sum(w for _, w in items)
    return tuple((t, w / total) for t, w in items if w > 0)


@lru_cache(maxsize=8)
def _type_cycle(shares) -> tuple | None:
    """One full period of the stratified sequence, or None when the period
    is too long to tabulate."""
    period = math.lcm(*(s.denominator for _, s in shares))
    if period > PERIOD_LIMIT:
        return None
    return tuple(_stratified_prefix(shares, period))


def _stratified_prefix(shares, n):
    """Greedy largest-deficit apportionment: after every prefix of length m
    each type holds floor or ceil of m * share."""
    counts = {t: 0 for t, _ in shares}
    out = []
    for i in range(n):
        best = max(shares, key=lambda ts: ((i + 1) * ts[1] - counts[ts[0]], -PLOT_TYPES.index(ts[0])))
        counts[best[0]] += 1
        out.append(best[0])
    return out


def plot_type_for(index: int, weights: dict) -> str:
    shares = _shares(weights)
    cycle = _type_cycle(shares)
    if cycle is not None:
        return cycle[index % len(cycle)]
    return _stratified_prefix(shares, index + 1)[-1]


def type_plan(total: int, weights: dict) -> list:
    return [plot_type_for(i, weights) for i in range(total)]


def style_digest(style) -> str:
    blob = json.dumps(style.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


@lru_cache(maxsize=4)
def _vocabulary(groups_path, places_path):
    return load_vocabulary(groups_path, places_path)


def generate_one(root_seed: int, index: int, config: GenConfig, vocab=None):
    """(spec, svg document, ground truth) for chart ``index``.

    Layout or separation failures retry with ``mix(chart_seed, attempt)``;
    when every attempt fails :class:`GenerationFailed` is raised.
    """
    if not 0 <= index < config.total:
        raise IndexError(f"index {index} outside [0, {config.total})")
    if vocab is None:
        vocab = _vocabulary(config.groups_path, config.places_path)
    plot_type = plot_type_for(index, config.type_weights)
    base = chart_seed(root_seed, index)
    last = None
    for attempt in range(config.max_attempts):
        seed = base if attempt == 0 else mix(base, attempt)
        try:
            spec, _, doc = make_chart(seed, plot_type, vocab, config.probs)
        except GeneratorError as exc:
            last = exc
            continue
        return spec, doc, spec.ground_truth()
    raise GenerationFailed(index, config.max_attempts, last)


def chart_id(index: int, total: int) -> str:
    return f"{index:0{max(6, len(str(max(total - 1, 0))))}d}"


def chart_stem(index: int, total: int) -> str:
    return f"{CHARTS_DIR}/{index // BUCKET_SIZE:05d}/{chart_id(index, total)}"


def _write(path, data):
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
        fh.write(data)


def _run_indices(config: GenConfig, indices) -> list:
    out_dir = Path(config.output_dir)
    vocab = _vocabulary(config.groups_path, config.places_path)
    rows = []
    for index in indices:
        try:
            spec, doc, gt = generate_one(config.root_seed, index, config, vocab)
        except GenerationFailed as exc:
            log.warning("%s", exc)
            rows.append((index, None, {"index": index, "plot_type": plot_type_for(index, config.type_weights),
                                       "seed": chart_seed(config.root_seed, index), "error": str(exc.last_error)}))
            continue
        stem = chart_stem(index, config.total)
        (out_dir / stem).parent.mkdir(parents=True, exist_ok=True)
        metadata = serialize(gt)
        _write(out_dir / f"{stem}.svg", doc.to_svg())
        _write(out_dir / f"{stem}.txt", metadata)
        png_path = None
        if config.emit_png:
            png_path = f"{stem}.png"
            _write(out_dir / png_path, rasterize(doc, config.png_scale))
        record = {
            "id": chart_id(index, config.total),
            "index": index,
            "plot_type": spec.plot_type,
            "svg_path": f"{stem}.svg",
            "png_path": png_path,
            "metadata_path": f"{stem}.txt",
            "metadata": metadata,
            "seed": spec.seed,
            "style_digest": style_digest(spec.style),
            "scale_factors": list(spec.scale_factors),
        }
        rows.append((index, record, None))
    return rows


@dataclass
class RunSummary:
    manifest_path: Path
    written: int
    failures: list
    counts: dict
    seconds: float

    @property
    def charts_per_second(self) -> float:
        return self.written / self.seconds if self.seconds > 0 else float("inf")


def _prepare_output(out_dir: Path, overwrite: bool):
    out_dir.mkdir(parents=True, exist_ok=True)
    ours = [out_dir / n for n in (MANIFEST, FAILURES, PARTIAL_MARKER, CHARTS_DIR)]
    existing = [p for p in ours if p.exists()]
    if existing and not overwrite:
        raise FileExistsError(f"{out_dir} already holds a corpus; pass overwrite to replace it")
    for p in existing:
        if p.is_dir():
            shutil.rmtree(p)
        else:
            p.unlink()


def _chunks(total, workers):
    size = max(1, min(500, math.ceil(total / (workers * 8))))
    return [range(a, min(a + size, total)) for a in range(0, total, size)]


def run_generation(config: GenConfig) -> RunSummary:
    out_dir = Path(config.output_dir)
    _prepare_output(out_dir, config.overwrite)
    marker = out_dir / PARTIAL_MARKER
    marker.write_text("incomplete\n", encoding="utf-8")
    start = time.perf_counter()
    chunks = _chunks(config.total, config.workers)
    if config.workers == 1 or len(chunks) <= 1:
        results = [_run_indices(config, c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_indices, [config] * len(chunks), chunks))
    rows = sorted((r for chunk in results for r in chunk), key=lambda r: r[0])
    records = [rec for _, rec, _ in rows if rec is not None]
    failures = [f for _, _, f in rows if f is not None]
    manifest = out_dir / MANIFEST
    with open(manifest, "w", encoding="utf-8", newline="") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    if failures:
        with open(out_dir / FAILURES, "w", encoding="utf-8", newline="") as fh:
            for f in failures:
                fh.write(json.dumps(f) + "\n")
    marker.unlink()
    counts = {t: 0 for t in PLOT_TYPES}
    for rec in records:
        counts[rec["plot_type"]] += 1
    return RunSummary(manifest, len(records), failures, counts, time.perf_counter() - start)


def generate_dataset(config: GenConfig) -> Path:
    """Generate ``config.total`` charts and return the manifest path."""
    return run_generation(config).manifest_path


def file_digests(out_dir) -> dict:
    """SHA-256 of every file under ``out_dir``, keyed by relative path."""
    out_dir = Path(out_dir)
    digests = {}
    for root, _, files in os.walk(out_dir):
        for name in files:
            p = Path(root) / name
            digests[p.relative_to(out_dir).as_posix()] = hashlib.sha256(p.read_bytes()).hexdigest()
    return dict(sorted(digests.items()))

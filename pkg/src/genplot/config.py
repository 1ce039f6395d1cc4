"""Config file loading.

The file is INI-style::

    [genplot]
    seed = 42
    total = 500
    out = corpus
    png = false
    png_scale = 1.0
    workers = 4
    groups = path/to/word_groups.jsonl
    places = path/to/places.txt

    [types]
    vbar = 1
    hbar = 1
    scatter = 1
    line = 1
    dot = 1

    [probabilities]
    line_smoothing = 0.3

Every key is optional; command-line flags override file values.
"""

from __future__ import annotations

import configparser

from .errors import ConfigError
from .series import PLOT_TYPES

_MAIN_KEYS = {
    "seed": ("root_seed", int),
    "total": ("total", int),
    "out": ("output_dir", str),
    "png": ("emit_png", "bool"),
    "png_scale": ("png_scale", float),
    "workers": ("workers", int),
    "groups": ("groups_path", str),
    "places": ("places_path", str),
    "overwrite": ("overwrite", "bool"),
    "max_attempts": ("max_attempts", int),
}


def load_config(path) -> dict:
    """Read a config file into keyword arguments for :class:`GenConfig`."""
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    try:
        if cp.has_section("genplot"):
            sec = cp["genplot"]
            for key in sec:
                if key not in _MAIN_KEYS:
                    raise ConfigError(f"unknown key [genplot] {key}")
                name, kind = _MAIN_KEYS[key]
                out[name] = sec.getboolean(key) if kind == "bool" else kind(sec[key])
        if cp.has_section("types"):
            weights = {}
            for key, value in cp["types"].items():
                if key not in PLOT_TYPES:
                    raise ConfigError(f"unknown plot type [types] {key}")
                weights[key] = float(value)
            out["type_weights"] = weights
        if cp.has_section("probabilities"):
            out["probabilities"] = {k: float(v) for k, v in cp["probabilities"].items()}
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    extra = set(cp.sections()) - {"genplot", "types", "probabilities"}
    if extra:
        raise ConfigError(f"unknown sections {sorted(extra)}")
    return out


def parse_type_weights(text: str) -> dict:
    """``"vbar=1,hbar=1"`` -> ``{"vbar": 1.0, "hbar": 1.0}``; unnamed types get 0."""
    weights = {t: 0.0 for t in PLOT_TYPES}
    for part in text.split(","):
        if not part.strip():
            continue
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or name not in PLOT_TYPES:
            raise ValueError(f"bad type weight {part!r}")
        weights[name] = float(value)
    return weights

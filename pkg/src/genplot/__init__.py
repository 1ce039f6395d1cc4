"""Deterministic synthetic chart generator with pix2struct-style ground truth."""

__version__ = "0.1.0"

"""Word embeddings, similarity-based word groups, and label/title sampling."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CapacityError, EmbeddingFormatError, EmptyGroupError, UnknownWordError

log = logging.getLogger(__name__)

PLACES = "places"
MONTHS = "months"
DAYS = "days"
PART_NUMERICAL = "part_numerical"
WORD_GROUP = "word_group"
DOMAINS = (PLACES, MONTHS, DAYS, PART_NUMERICAL, WORD_GROUP)

TITLE_WORDS = {"main": (3, 7), "x_axis": (3, 7), "y_axis": (1, 4)}
PART_NUMERICAL_STEPS = (1, 5, 10, 20, 25, 50, 100)
PART_NUMERICAL_CAPACITY = 10_000
MONTH_FORMATS = ("full", "short", "range", "day")
DAY_FORMATS = ("full", "short", "alt")


def data_path(name: str) -> Path:
    return Path(str(resources.files("genplot") / "data" / name))


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    words: tuple
    vectors: np.ndarray
    ascii_only: bool = True
    rejected: tuple = ()

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.words):
            raise ValueError("vectors must be an (n_words, dimension) array")
        if len(set(self.words)) != len(self.words):
            raise ValueError("duplicate words in embedding table")

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.index

    @cached_property
    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.words)}

    @cached_property
    def unit_vectors(self) -> np.ndarray:
        norms = np.linalg.norm(self.vectors, axis=1, keepdims=True)
        return self.vectors / norms

    @cached_property
    def lexical_rank(self) -> np.ndarray:
        rank = np.empty(len(self.words), dtype=np.int64)
        rank[sorted(range(len(self.words)), key=self.words.__getitem__)] = np.arange(len(self.words))
        return rank


def load_embeddings(path, filter_ascii: bool = True) -> EmbeddingTable:
    """Read a GloVe-style text file (``word v1 ... vd`` per line).

    Zero vectors and repeated words are skipped and logged; a line whose
    vector length disagrees with the first line raises
    :class:`EmbeddingFormatError`.
    """
    words, rows, rejected = [], [], []
    seen = set()
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split(" ")
            if not line.strip():
                continue
            word, raw = parts[0], [p for p in parts[1:] if p]
            if not raw:
                raise EmbeddingFormatError(f"no vector for {word!r}", line_no)
            try:
                vec = [float(v) for v in raw]
            except ValueError as exc:
                raise EmbeddingFormatError(f"non-numeric component ({exc})", line_no) from None
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise EmbeddingFormatError(f"expected {dim} components, got {len(vec)}", line_no)
            if filter_ascii and not word.isascii():
                continue
            if not any(vec):
                log.warning("line %d: zero vector for %r rejected", line_no, word)
                rejected.append((line_no, word, "zero vector"))
                continue
            if word in seen:
                log.warning("line %d: duplicate word %r skipped", line_no, word)
                rejected.append((line_no, word, "duplicate"))
                continue
            seen.add(word)
            words.append(word)
            rows.append(vec)
    vectors = np.array(rows, dtype=np.float64).reshape(len(rows), dim or 0)
    return EmbeddingTable(tuple(words), vectors, ascii_only=filter_ascii, rejected=tuple(rejected))


def cosine_similarities(table: EmbeddingTable, word: str) -> np.ndarray:
    if word not in table:
        raise UnknownWordError(f"{word!r} is not in the embedding table")
    unit = table.unit_vectors
    return unit @ unit[table.index[word]]


def nearest_neighbors(table: EmbeddingTable, word: str, k: int) -> list:
    """The ``k`` most cosine-similar words to ``word``, best first.

    Exact ties are broken by ascending lexicographic order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    sims = cosine_similarities(table, word)
    order = np.lexsort((table.lexical_rank, -sims))
    q = table.index[word]
    out = []
    for i in order:
        if i == q:
            continue
        out.append(table.words[i])
        if len(out) == k:
            break
    return out


@dataclass(frozen=True)
class WordGroup:
    seed: str
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise EmptyGroupError(f"group {self.seed!r} has no members")
        if len(set(members)) != len(members):
            raise ValueError(f"group {self.seed!r} has duplicate members")
        if self.seed in members:
            raise ValueError(f"group {self.seed!r} lists its own seed as a member")


def build_word_groups(table: EmbeddingTable, seeds, k: int = 25, hops: int = 2) -> list:
    """Expand seed words into groups of their nearest neighbours.

    With ``hops=2`` every distinct first-hop member becomes a seed in turn.
    Seeds missing from the table are skipped with a warning.
    """
    if hops not in (1, 2):
        raise ValueError("hops must be 1 or 2")
    groups = []
    done = set()

    def emit(seed):
        group = WordGroup(seed, tuple(nearest_neighbors(table, seed, k)))
        groups.append(group)
        done.add(seed)
        return group

    first_hop = []
    for seed in seeds:
        if seed in done:
            continue
        if seed not in table:
            log.warning("seed %r not in embedding table; skipped", seed)
            continue
        first_hop.append(emit(seed))
    if hops == 2:
        for group in first_hop:
            for member in group.members:
                if member not in done:
                    emit(member)
    return groups


def save_word_groups(groups, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for g in groups:
            fh.write(json.dumps({"seed": g.seed, "members": list(g.members)}, ensure_ascii=False))
            fh.write("\n")


def load_word_groups(path) -> list:
    groups = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                groups.append(WordGroup(row["seed"], tuple(row["members"])))
    return groups


def read_lines(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh if line.strip()]


def sample_title(group: WordGroup, role: str, rng: np.random.Generator) -> str:
    if role not in TITLE_WORDS:
        raise ValueError(f"unknown title role {role!r}")
    if not group.members:
        raise EmptyGroupError(f"group {group.seed!r} has no members")
    lo, hi = TITLE_WORDS[role]
    n = int(rng.integers(lo, hi + 1))
    members = group.members
    idx = rng.choice(len(members), size=n, replace=n > len(members))
    return " ".join(members[i] for i in idx)


def _load_calendar(name):
    return [tuple(line.split("\t")) for line in read_lines(data_path(name))]


MONTH_TABLE = _load_calendar("months.txt")
DAY_TABLE = _load_calendar("days.txt")


def month_labels(fmt: str, day: int = 10) -> list:
    """Every legal label of a month format, in calendar order."""
    full = [m[0] for m in MONTH_TABLE]
    short = [m[1] for m in MONTH_TABLE]
    if fmt == "full":
        return full
    if fmt == "short":
        return short
    if fmt == "range":
        return [f"{a}-{b}" for a, b in zip(short, short[1:])]
    if fmt == "day":
        return [f"{m}-{day}" for m in short]
    raise ValueError(f"unknown month format {fmt!r}")


def day_labels(fmt: str) -> list:
    col = DAY_FORMATS.index(fmt)
    return [d[col] for d in DAY_TABLE]


@dataclass(frozen=True)
class LabelDomain:
    """Where categorical labels come from.

    ``entries`` backs the places and word-group variants. ``fmt``, ``step``
    and ``origin`` pin choices that are otherwise drawn per call.
    """

    variant: str
    entries: tuple = ()
    fmt: str | None = None
    step: int | None = None
    origin: int | None = None

    def __post_init__(self):
        if self.variant not in DOMAINS:
            raise ValueError(f"unknown label domain {self.variant!r}")
        object.__setattr__(self, "entries", tuple(self.entries))

    def capacity(self, fmt: str | None = None) -> int:
        fmt = fmt or self.fmt
        if self.variant in (PLACES, WORD_GROUP):
            return len(self.entries)
        if self.variant == MONTHS:
            if fmt is None:
                return 12
            return len(month_labels(fmt))
        if self.variant == DAYS:
            return 7
        return PART_NUMERICAL_CAPACITY


def sample_categorical_labels(domain: LabelDomain, n: int, rng: np.random.Generator) -> list:
    if n < 1:
        raise ValueError("n must be positive")
    if n > domain.capacity():
        raise CapacityError(f"{domain.variant} holds {domain.capacity()} labels, {n} requested")
    v = domain.variant
    if v in (PLACES, WORD_GROUP):
        idx = rng.choice(len(domain.entries), size=n, replace=False)
        return [domain.entries[i] for i in idx]
    if v == PART_NUMERICAL:
        step = domain.step or int(rng.choice(PART_NUMERICAL_STEPS))
        if domain.origin is None:
            origin = step * int(rng.integers(0, 21))
        else:
            origin = domain.origin
            if origin % step:
                raise ValueError(f"origin {origin} is not a multiple of step {step}")
        return [f"{origin + i * step}-{origin + (i + 1) * step}" for i in range(n)]
    if v == MONTHS:
        fmts = [domain.fmt] if domain.fmt else [f for f in MONTH_FORMATS if len(month_labels(f)) >= n]
        fmt = fmts[int(rng.integers(len(fmts)))]
        if fmt == "day":
            labels = month_labels(fmt, day=int(rng.integers(1, 29)))
        else:
            labels = month_labels(fmt)
    else:
        fmts = [domain.fmt] if domain.fmt else list(DAY_FORMATS)
        labels = day_labels(fmts[int(rng.integers(len(fmts)))])
    if n > len(labels):
        raise CapacityError(f"{v} format holds {len(labels)} labels, {n} requested")
    start = int(rng.integers(0, len(labels) - n + 1))
    return labels[start:start + n]


@dataclass
class Vocabulary:
    """Word groups and place names shared read-only by all workers."""

    groups: list
    places: tuple

    def __post_init__(self):
        if not self.groups:
            raise ValueError("vocabulary needs at least one word group")
        self.places = tuple(self.places)


def load_vocabulary(groups_path=None, places_path=None) -> Vocabulary:
    groups = load_word_groups(groups_path or data_path("word_groups.jsonl"))
    places = read_lines(places_path or data_path("places.txt"))
    return Vocabulary(groups, tuple(places))

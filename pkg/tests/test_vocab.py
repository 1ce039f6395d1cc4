import logging
import math

import numpy as np
import pytest

from genplot.errors import CapacityError, EmbeddingFormatError, EmptyGroupError, UnknownWordError
from genplot.seeding import make_rng
from genplot.vocab import (DAY_FORMATS, DAYS, MONTHS, PART_NUMERICAL, PLACES, LabelDomain, WordGroup,
                           build_word_groups, data_path, day_labels, load_embeddings, month_labels,
                           nearest_neighbors, read_lines, sample_categorical_labels, sample_title)

TOY = data_path("toy_embeddings.txt")


def write_table(path, rows):
    path.write_text("".join(f"{w} {' '.join(str(v) for v in vec)}\n" for w, vec in rows), encoding="utf-8")
    return path


def oracle_cosine(u, v):
    dot = sum(a * b for a, b in zip(u, v))
    return dot / (math.sqrt(sum(a * a for a in u)) * math.sqrt(sum(b * b for b in v)))


def oracle_neighbors(vectors, word, k):
    """Exhaustive ranking; similarities compared after rounding so float noise cannot flip exact ties."""
    q = vectors[word]
    scored = [(-round(oracle_cosine(q, v), 12), w) for w, v in vectors.items() if w != word]
    return [w for _, w in sorted(scored)[:k]]


def oracle_groups(vectors, seeds, k, hops):
    groups = {}
    for s in seeds:
        if s in vectors and s not in groups:
            groups[s] = tuple(oracle_neighbors(vectors, s, k))
    if hops == 2:
        for s in list(groups):
            for m in groups[s]:
                groups.setdefault(m, tuple(oracle_neighbors(vectors, m, k)))
    return groups


@pytest.fixture(scope="module")
def toy_table():
    return load_embeddings(TOY)


@pytest.fixture(scope="module")
def toy_vectors():
    out = {}
    with open(TOY, encoding="utf-8") as fh:
        for line in fh:
            word, *nums = line.split()
            if word.isascii():
                out[word] = [float(v) for v in nums]
    return out


def test_three_line_file_filter_off(tmp_path):
    p = write_table(tmp_path / "e.txt", [("a", [1, 0]), ("b", [0, 1]), ("c", [1, 1])])
    table = load_embeddings(p, filter_ascii=False)
    assert len(table) == 3 and table.dimension == 2
    assert table.words == ("a", "b", "c")


def test_ascii_filter_drops_accented_word(tmp_path):
    p = write_table(tmp_path / "e.txt", [("café", [1, 0]), ("tea", [0, 1])])
    assert "café" not in load_embeddings(p, filter_ascii=True)
    assert "café" in load_embeddings(p, filter_ascii=False)


def test_short_vector_names_line(tmp_path):
    p = write_table(tmp_path / "e.txt", [("a", [1, 0, 0]), ("b", [0, 1, 0]), ("c", [0, 1])])
    with pytest.raises(EmbeddingFormatError) as info:
        load_embeddings(p)
    assert info.value.line_no == 3
    assert "line 3" in str(info.value)


def test_zero_vector_reported_and_skipped(tmp_path, caplog):
    p = write_table(tmp_path / "e.txt", [("a", [1, 0]), ("z", [0, 0]), ("b", [0, 1])])
    with caplog.at_level(logging.WARNING, logger="genplot.vocab"):
        table = load_embeddings(p)
    assert table.words == ("a", "b")
    assert table.rejected == ((2, "z", "zero vector"),)
    assert "zero vector" in caplog.text


def test_missing_file_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        load_embeddings(tmp_path / "absent.txt")


def test_identical_vector_ranks_first(tmp_path):
    p = write_table(tmp_path / "e.txt", [("q", [1, 2, 3]), ("x", [3, 2, 1]), ("b", [1, 2, 3]), ("c", [1, 2, 4])])
    table = load_embeddings(p)
    assert nearest_neighbors(table, "q", 1) == ["b"]
    sims = table.unit_vectors @ table.unit_vectors[table.index["q"]]
    assert sims[table.index["b"]] == pytest.approx(1.0)


def test_four_word_table_matches_brute_force(tmp_path):
    rows = [("d", [1.0, 0.2]), ("a", [0.3, 1.0]), ("c", [1.0, 0.9]), ("b", [-0.4, 1.0])]
    table = load_embeddings(write_table(tmp_path / "e.txt", rows))
    vectors = dict(rows)
    for w in vectors:
        assert nearest_neighbors(table, w, 3) == oracle_neighbors(vectors, w, 3)


def test_ties_break_lexicographically(tmp_path):
    rows = [("q", [1, 0]), ("zeta", [0, 1]), ("alpha", [0, 2]), ("mid", [0, 3])]
    table = load_embeddings(write_table(tmp_path / "e.txt", rows))
    assert nearest_neighbors(table, "q", 3) == ["alpha", "mid", "zeta"]


def test_k_beyond_size_returns_everything(tmp_path):
    rows = [("a", [1, 0]), ("b", [0, 1]), ("c", [1, 1])]
    table = load_embeddings(write_table(tmp_path / "e.txt", rows))
    assert sorted(nearest_neighbors(table, "a", 10)) == ["b", "c"]


def test_unknown_word(toy_table):
    with pytest.raises(UnknownWordError):
        nearest_neighbors(toy_table, "notaword", 3)


def test_toy_file_ascii_filter(toy_table):
    raw = [line.split(" ", 1)[0] for line in read_lines(TOY)]
    assert len(raw) == 1000
    assert all(w.isascii() for w in toy_table.words)
    assert set(toy_table.words) == {w for w in raw if w.isascii()}
    assert len(toy_table) < len(raw)


def test_toy_neighbors_match_oracle(toy_table, toy_vectors):
    for word in toy_table.words[::25]:
        assert nearest_neighbors(toy_table, word, 25) == oracle_neighbors(toy_vectors, word, 25)


def test_one_hop_definition(toy_table):
    groups = build_word_groups(toy_table, ["coffee", "kettle"], k=2, hops=1)
    assert [g.seed for g in groups] == ["coffee", "kettle"]
    assert all(len(g.members) == 2 for g in groups)


def test_two_hop_matches_oracle_on_ten_words(tmp_path):
    rng = np.random.default_rng(3)
    rows = [(f"w{i}", list(np.round(rng.normal(size=4), 6))) for i in range(10)]
    table = load_embeddings(write_table(tmp_path / "e.txt", rows))
    got = {g.seed: g.members for g in build_word_groups(table, ["w0", "w5"], k=3, hops=2)}
    assert got == oracle_groups(dict(rows), ["w0", "w5"], 3, 2)


def test_two_hop_matches_oracle_on_toy_file(toy_table, toy_vectors):
    seeds = read_lines(data_path("seeds.txt"))[:6]
    got = {g.seed: g.members for g in build_word_groups(toy_table, seeds, k=5, hops=2)}
    assert got == oracle_groups(toy_vectors, seeds, 5, 2)
    assert len(seeds) <= len(got) <= len(seeds) * 6


def test_absent_seed_is_skipped_and_reported(toy_table, caplog):
    base = build_word_groups(toy_table, ["coffee", "kettle"], k=4, hops=2)
    with caplog.at_level(logging.WARNING, logger="genplot.vocab"):
        extra = build_word_groups(toy_table, ["coffee", "qqqq", "kettle"], k=4, hops=2)
    assert extra == base
    assert sum("qqqq" in r.getMessage() for r in caplog.records) == 1


def test_hops_must_be_one_or_two(toy_table):
    with pytest.raises(ValueError):
        build_word_groups(toy_table, ["coffee"], hops=3)


def test_word_group_invariants():
    with pytest.raises(EmptyGroupError):
        WordGroup("a", ())
    with pytest.raises(ValueError):
        WordGroup("a", ("b", "b"))
    with pytest.raises(ValueError):
        WordGroup("a", ("a", "b"))


def test_y_title_range_and_membership():
    group = WordGroup("tea", ("chai", "mint", "oolong"))
    rng = make_rng(1)
    for _ in range(200):
        words = sample_title(group, "y_axis", rng).split(" ")
        assert 1 <= len(words) <= 4 and set(words) <= set(group.members)


def test_title_is_deterministic():
    group = WordGroup("tea", tuple(f"w{i}" for i in range(10)))
    assert sample_title(group, "main", make_rng(9)) == sample_title(group, "main", make_rng(9))


def test_main_title_census():
    group = WordGroup("tea", tuple(f"w{i}" for i in range(25)))
    rng = make_rng(2)
    counts = {len(sample_title(group, "main", rng).split(" ")) for _ in range(10_000)}
    assert counts == {3, 4, 5, 6, 7}


def test_small_group_samples_with_replacement():
    group = WordGroup("tea", ("chai",))
    assert set(sample_title(group, "main", make_rng(0)).split(" ")) == {"chai"}


def test_part_numerical_worked_example():
    domain = LabelDomain(PART_NUMERICAL, step=10, origin=0)
    assert sample_categorical_labels(domain, 3, make_rng(0)) == ["0-10", "10-20", "20-30"]


def test_part_numerical_random_steps():
    rng = make_rng(4)
    for _ in range(200):
        labels = sample_categorical_labels(LabelDomain(PART_NUMERICAL), 5, rng)
        bounds = [tuple(int(v) for v in lab.split("-")) for lab in labels]
        step = bounds[0][1] - bounds[0][0]
        assert step in (1, 5, 10, 20, 25, 50, 100) and bounds[0][0] % step == 0
        assert all(b - a == step for a, b in bounds)
        assert all(bounds[i][1] == bounds[i + 1][0] for i in range(4))


def test_places_membership(vocab):
    assert len(vocab.places) == 2123
    labels = sample_categorical_labels(LabelDomain(PLACES, vocab.places), 5, make_rng(0))
    assert len(set(labels)) == 5 and set(labels) <= set(vocab.places)


def test_short_months_full_year():
    short = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
    assert sample_categorical_labels(LabelDomain(MONTHS, fmt="short"), 12, make_rng(0)) == short


def test_month_runs_use_one_legal_format():
    legal = {f: month_labels(f) for f in ("full", "short", "range")}
    legal.update({f"day{d}": month_labels("day", d) for d in range(1, 29)})
    rng = make_rng(5)
    for _ in range(500):
        n = int(rng.integers(1, 12))
        labels = sample_categorical_labels(LabelDomain(MONTHS), n, rng)
        hits = [f for f, table in legal.items()
                if any(table[i:i + n] == labels for i in range(len(table) - n + 1))]
        assert hits, labels


def test_day_runs_use_one_format():
    rng = make_rng(6)
    for _ in range(200):
        labels = sample_categorical_labels(LabelDomain(DAYS), 4, rng)
        assert any(" ".join(labels) in " ".join(day_labels(f)) for f in DAY_FORMATS)


def test_capacity_error():
    with pytest.raises(CapacityError):
        sample_categorical_labels(LabelDomain(DAYS), 8, make_rng(0))
    with pytest.raises(CapacityError):
        sample_categorical_labels(LabelDomain(PLACES, ("a", "b")), 3, make_rng(0))


def test_bundled_groups_are_ascii(vocab):
    for g in vocab.groups:
        assert g.seed.isascii() and all(m.isascii() for m in g.members)

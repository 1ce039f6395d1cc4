import json
import re
import shutil

import pytest

from genplot.verify import verify_dataset


@pytest.fixture
def corpus(small_corpus, tmp_path):
    dst = tmp_path / "corpus"
    shutil.copytree(small_corpus, dst)
    return dst


def rows(corpus):
    return [json.loads(x) for x in (corpus / "manifest.jsonl").read_text().splitlines()]


def write_rows(corpus, records):
    (corpus / "manifest.jsonl").write_text("".join(json.dumps(r) + "\n" for r in records))


def drop_first_mark(svg_path, cls):
    text = svg_path.read_text()
    mutated = re.sub(rf'<(rect|circle)[^>]*class="{cls}"[^>]*/>\n', "", text, count=1)
    assert mutated != text
    svg_path.write_text(mutated)


def test_fresh_corpus_is_clean(small_corpus):
    report = verify_dataset(small_corpus / "manifest.jsonl")
    assert report.checked == 60 and report.ok, report.violations


def test_three_injected_faults(corpus):
    records = rows(corpus)
    deleted = next(r for r in records if r["plot_type"] == "line")
    (corpus / deleted["svg_path"]).unlink()
    corrupted = next(r for r in records if r["plot_type"] == "scatter")
    corrupted["metadata"] = corrupted["metadata"].replace(" | ", " ", 1)
    write_rows(corpus, records)
    mutated = next(r for r in records if r["plot_type"] == "vbar")
    drop_first_mark(corpus / mutated["svg_path"], "mark-bar")

    report = verify_dataset(corpus / "manifest.jsonl")
    got = sorted((v.id, v.invariant) for v in report.violations)
    assert got == sorted([(deleted["id"], "missing-file"), (corrupted["id"], "metadata-parse"),
                          (mutated["id"], "mark-count")])


@pytest.mark.parametrize("plot_type, cls", [("dot", "mark-dot"), ("hbar", "mark-bar"), ("scatter", "mark-point")])
def test_mark_mutations_caught(corpus, plot_type, cls):
    rec = next(r for r in rows(corpus) if r["plot_type"] == plot_type)
    drop_first_mark(corpus / rec["svg_path"], cls)
    report = verify_dataset(corpus / "manifest.jsonl")
    assert [(v.id, v.invariant) for v in report.violations] == [(rec["id"], "mark-count")]


def test_moved_mark_is_an_anchor_violation(corpus):
    rec = next(r for r in rows(corpus) if r["plot_type"] == "scatter")
    path = corpus / rec["svg_path"]
    text = path.read_text()
    m = re.search(r'cx="([\d.]+)"', text)
    path.write_text(text.replace(m.group(0), f'cx="{float(m.group(1)) + 3:.3f}"', 1))
    assert [v.invariant for v in verify_dataset(corpus / "manifest.jsonl").violations] == ["mark-anchor"]


def test_value_rule_violations(corpus):
    records = rows(corpus)
    bar = next(r for r in records if r["plot_type"] == "vbar")
    pairs = bar["metadata"].split(" <0x0A> ")
    x0 = pairs[0].split(" | ")[0]
    pairs[0] = f"{x0} | 0.0001"
    bar["metadata"] = " <0x0A> ".join(pairs)
    (corpus / bar["metadata_path"]).write_text(bar["metadata"])
    write_rows(corpus, records)
    found = {v.invariant for v in verify_dataset(corpus / "manifest.jsonl").violations if v.id == bar["id"]}
    assert "bar-ratio" in found


def test_sidecar_mismatch_and_duplicate_id(corpus):
    records = rows(corpus)
    (corpus / records[0]["metadata_path"]).write_text("x | 1")
    records.append(dict(records[1]))
    write_rows(corpus, records)
    got = [(v.id, v.invariant) for v in verify_dataset(corpus / "manifest.jsonl").violations]
    assert (records[0]["id"], "metadata-mismatch") in got
    assert (records[1]["id"], "duplicate-id") in got


def test_bad_manifest_line(corpus):
    with open(corpus / "manifest.jsonl", "a") as fh:
        fh.write("{not json\n")
    assert [v.invariant for v in verify_dataset(corpus / "manifest.jsonl").violations] == ["manifest-row"]


def test_missing_manifest_is_fatal(tmp_path):
    with pytest.raises(OSError):
        verify_dataset(tmp_path / "nope.jsonl")

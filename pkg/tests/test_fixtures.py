import pytest

from langseg import data
from langseg.evaluation import load_clustering, read_clustering_file
from langseg.text import words


def test_twenty_texts():
    names = data.text_names()
    assert len(names) == 20
    for n in names:
        assert data.text_path(n).is_file()
        assert data.languages(n)


@pytest.mark.parametrize("name", data.gold_names())
def test_gold_aligns_with_text(name):
    toks = words(data.read_text(name))
    got, gold = load_clustering(data.gold_path(name), toks, "error")
    assert gold.n == len(toks)


def test_gold_headers_mark_provenance():
    for name in data.gold_names():
        head = data.gold_path(name).read_text(encoding="utf-8").splitlines()[:2]
        assert all(h.startswith("# ") for h in head)


@pytest.mark.parametrize("name,sizes", [
    ("twitter3_gold", [1, 2, 13]), ("twitter3_textcat", [1, 15]),
    ("twitter4_gold", [1, 15]), ("twitter4_textcat", [1, 15]),
])
def test_recorded_tables(name, sizes):
    assert sorted(len(c) for c in read_clustering_file(data.recorded_path(name))) == sizes


def test_samples_are_about_five_kilobytes():
    for lang in ("en", "de"):
        assert 4500 <= data.sample_path(lang).stat().st_size <= 6500
        assert data.sample_path(lang, "heldout").stat().st_size > 500
    with pytest.raises(ValueError):
        data.sample_path("en", "test")

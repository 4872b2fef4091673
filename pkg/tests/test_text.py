from hypothesis import given, strategies as st

from langseg import data
from langseg.text import PipelineConfig, normalize, tokenize, words


def test_whitespace_runs_collapse():
    assert words("my dad  comes") == ["my", "dad", "comes"]


def test_english_german_has_27_raw_tokens():
    toks = words(data.read_text("english_german"))
    assert len(toks) == 27
    assert "–" in toks and "own." in toks


def test_ideographic_split():
    assert words("危机 is", PipelineConfig(split_ideographic=True)) == ["危", "机", "is"]


def test_ideographic_split_keeps_attached_punctuation():
    assert words("危机;", PipelineConfig(split_ideographic=True)) == ["危", "机", ";"]


def test_whitespace_only_input():
    assert tokenize(" \n\t ") == []


def test_normalize_tag_content():
    assert normalize('<word id="1" lemma="go">goes</word>') == "goes"


def test_normalize_strips_punctuation():
    assert normalize("case,") == "case"
    assert normalize("(rugueux),") == "rugueux"


def test_normalize_leaves_non_latin_alone():
    assert normalize("الرمز،") == "الرمز،"
    assert normalize("«Привет»,") == "«Привет»,"


def test_normalize_can_empty_a_token():
    # dash alone has no Latin letter, so it passes through untouched
    assert normalize("–") == "–"
    assert normalize("a.") == "a"
    assert normalize("<b>x</b>") == "x"


def test_unclosed_tag_fragment():
    assert normalize("<smallcaps>ii.") == "ii"


def test_normalized_tokenize_skips_empties_and_reindexes():
    toks = tokenize("x <i></i>y ...", PipelineConfig(normalize=True))
    assert [t.surface for t in toks] == ["x", "y", "..."]
    assert [t.index for t in toks] == [0, 1, 2]


@given(st.text())
def test_tokens_are_whitespace_free_substrings(text):
    toks = tokenize(text)
    assert [t.index for t in toks] == list(range(len(toks)))
    for t in toks:
        assert t.surface and not any(ch.isspace() for ch in t.surface)
        assert t.surface in text


@given(st.text())
def test_normalize_is_idempotent(tok):
    once = normalize(tok)
    assert normalize(once) == once


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40))
def test_split_ideographic_never_leaves_mixed_ideographs(text):
    from langseg.text import is_ideographic
    for t in words(text, PipelineConfig(split_ideographic=True)):
        if any(is_ideographic(ch) for ch in t):
            assert len(t) == 1

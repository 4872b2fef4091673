import random

import pytest
from hypothesis import given, strategies as st

from langseg.errors import EmptyCorpus, FormatError
from langseg.textcat import (UNKNOWN, Profile, build_profile, classify_word, dumps_profile,
                             load_profile, loads_profile, oop_distance, save_profile, token_grams)

EN = "the weather is nice and the people are friendly in the north where the hills are green " * 3
FI = "kesä on vuodenaika jolloin aurinko paistaa ja ihmiset ovat ulkona järven rannalla " * 3


def test_top_gram_of_aa_aa():
    p = build_profile("x", "aa aa")
    assert p.ranked_grams[0] == "a"


def test_padding_only_grams_are_skipped():
    assert "_" not in set(token_grams("ab"))
    assert {"_a", "b_", "_ab_"} <= set(token_grams("ab"))


def test_capacity():
    assert len(build_profile("x", EN, K=1)) == 1
    assert len(build_profile("x", EN, K=400)) <= 400


def test_bag_of_tokens():
    toks = EN.split()
    shuffled = toks[:]
    random.Random(3).shuffle(shuffled)
    assert build_profile("x", " ".join(toks)) == build_profile("x", " ".join(shuffled))


def test_empty_text():
    with pytest.raises(EmptyCorpus):
        build_profile("x", "   ")


def test_fig1_example():
    doc = Profile("d", ("ER", "ING", "AT"))
    cat = Profile("c", ("AT", "ING"))
    assert oop_distance(doc, cat, 400) == 402


def test_single_offset():
    assert oop_distance(Profile("d", ("x",)), Profile("c", ("a", "b", "c", "d", "x"))) == 4


grams_st = st.lists(st.text(alphabet="ab_", min_size=1, max_size=5), unique=True, max_size=30)


@given(grams_st, st.integers(0, 1000))
def test_self_distance_zero(grams, penalty):
    p = Profile("p", tuple(grams))
    assert oop_distance(p, p, penalty) == 0


@given(grams_st, grams_st, st.integers(0, 500), st.integers(0, 500))
def test_penalty_monotone(a, b, p1, p2):
    lo, hi = sorted((p1, p2))
    d, c = Profile("d", tuple(a)), Profile("c", tuple(b))
    assert oop_distance(d, c, lo) <= oop_distance(d, c, hi)
    assert oop_distance(d, c, lo) == oop_distance(Profile("z", tuple(a)), Profile("y", tuple(b)), lo)


def test_classify_word_single_profile():
    assert classify_word("whatever", [build_profile("en", EN)]) == "en"


def test_classify_word_dissimilar_profiles():
    profiles = [build_profile("en", EN), build_profile("fi", FI)]
    assert classify_word("weather", profiles) == "en"
    assert classify_word("vuodenaika", profiles) == "fi"


def test_margin_zero_never_unknown():
    same = [build_profile("a", EN), build_profile("b", EN)]
    assert classify_word("the", same, margin=1.0) == UNKNOWN
    assert classify_word("the", same, margin=0) == "a"


def test_profile_round_trip(tmp_path):
    p = build_profile("fi\tx", FI + " back\\slash")
    path = tmp_path / "fi.profile"
    save_profile(p, path)
    assert load_profile(path) == p
    assert dumps_profile(p) == dumps_profile(build_profile("fi\tx", FI + " back\\slash"))


def test_bad_profile():
    with pytest.raises(FormatError):
        loads_profile("nope\n")

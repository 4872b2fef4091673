import itertools

import pytest
from hypothesis import given, strategies as st

from langseg import data
from langseg.errors import EmptyModelSet, NoCommonUnigrams
from langseg.evaluation import Clustering, pair_counts, rand_index
from langseg.induction import (InductionParams, Lcg64, assign, consolidate, create_initial_model,
                               induce_pass, max_model_score, merge, run_induction, segment,
                               similarity)
from langseg.ngram import SENTINELS, NgramModel, train, word_score
from langseg.text import words

LATIN = "abdeiklmnoprstu"
CYRILLIC = "абвгдежиклмнопрст"


def mk(unigrams, label="m"):
    return NgramModel(label, unigrams)


def alternating(n=40, length=6, seed=0):
    import random
    rng = random.Random(seed)
    out = []
    for i in range(n):
        alpha = LATIN if i % 2 == 0 else CYRILLIC
        out.append("".join(rng.choice(alpha) for _ in range(length)))
    return out


def script_gold(tokens):
    return Clustering.from_labels(["lat" if t[0] in LATIN else "cyr" for t in tokens])


# generator


def test_lcg_matches_recurrence():
    state, expected = 42, []
    for _ in range(5):
        state = (6364136223846793005 * state + 1442695040888963407) % 2 ** 64
        expected.append(state >> 33)
    g = Lcg64(42)
    assert [g.next() for _ in range(5)] == expected


def test_lcg_first_draw_from_zero():
    assert Lcg64(0).next() == 1442695040888963407 >> 33


def test_lcg_randrange_bounds():
    g = Lcg64(3)
    assert all(0 <= g.randrange(7) < 7 for _ in range(200))


# initial models and scoring


def test_initial_model_counts():
    m = create_initial_model("ab")
    assert (m.V, m.W, m.X) == (6, 5, 4)


def test_initial_models_distinct_labels():
    a, b = create_initial_model("ab"), create_initial_model("ab")
    assert a.same_counts(b) and a.label != b.label


def test_initial_model_is_best_single_word_model():
    ws = ["".join(p) for n in (1, 2, 3) for p in itertools.product("abc", repeat=n)]
    for w in ws:
        own = word_score(create_initial_model(w), w)
        assert all(word_score(train("alt", [v]), w) <= own + 1e-12 for v in ws), w


def test_max_model_score():
    m = train("one", ["ab"])
    assert max_model_score([m], "xy")[0] is m
    dup = m.copy("dup")
    assert max_model_score([m, dup], "ab")[0] is m
    ab, xy = train("ab", ["abab"]), train("xy", ["xyxy"])
    best, score = max_model_score([xy, ab], "ab")
    assert best is ab
    assert score == max(word_score(ab, "ab"), word_score(xy, "ab"))
    with pytest.raises(EmptyModelSet):
        max_model_score([], "ab")


# passes


def test_pass_monolingual_repetitive():
    assert len(induce_pass(["hello"] * 15 + ["help", "hell"] * 3, [])) == 1


def test_pass_alternating_scripts():
    models = induce_pass(alternating(), [])
    assert len(models) >= 2
    for m in models:
        letters = m.letters()
        assert not (letters & set(LATIN) and letters & set(CYRILLIC))


def test_pass_skips_silver_covered_words():
    toks = ["hello"] * 10
    silver = [train("s", toks)]
    assert induce_pass(toks, silver) == []


def test_pass_seeds_from_first_uncovered_word():
    toks = ["hello", "hello", "здравствуйте"]
    models = induce_pass(toks, [train("s", ["hello"])])
    assert len(models) == 1 and models[0].letters() == set("здравствуйте")


# similarity and merging


def test_similarity_examples():
    assert similarity(mk({"a": 1}), mk({"b": 1})) == 0
    assert similarity(mk({"a": 3}), mk({"a": 3})) == 2.0
    assert similarity(mk({"a": 1}), mk({"a": 1, "b": 1})) == pytest.approx(5 / 6)


def test_similarity_ignores_sentinels():
    assert similarity(train("x", ["ab"]), train("y", ["xy"])) == 0


words_st = st.lists(st.text(alphabet="abcdxyz", min_size=1, max_size=6), min_size=1, max_size=5)


@given(words_st, words_st)
def test_similarity_symmetric(a, b):
    m1, m2 = train("1", a), train("2", b)
    assert similarity(m1, m2) == pytest.approx(similarity(m2, m1))


def test_merge_add_and_min():
    m1 = NgramModel("1", {"a": 2, "b": 1}, {"ab": 1, "aa": 1}, {"aab": 1})
    m2 = NgramModel("2", {"a": 1, "c": 3}, {"ac": 1, "aa": 2}, {"aac": 1})
    added = merge(m1, m2, "ADD")
    assert dict(added.unigrams) == {"a": 3}
    assert dict(added.bigrams) == {"aa": 3}
    assert not added.trigrams
    assert dict(merge(m1, m2, "MIN").unigrams) == {"a": 1}
    assert dict(merge(m1, m2, "MEAN").unigrams) == {"a": 1.5}


def test_self_merge_is_identity():
    m = train("x", ["banana", "bandana"])
    assert merge(m, m, "MAX").same_counts(m)


def test_merge_without_common_letters():
    with pytest.raises(NoCommonUnigrams):
        merge(train("x", ["ab"]), train("y", ["cd"]))


@given(words_st, words_st)
def test_merge_excludes_one_sided_letters(a, b):
    m1, m2 = train("1", a), train("2", b)
    common = m1.letters() & m2.letters()
    if not common:
        return
    merged = merge(m1, m2, "ADD")
    for table in (merged.unigrams, merged.bigrams, merged.trigrams):
        for gram in table:
            assert all(ch in common or ch in SENTINELS for ch in gram)


# full runs


def test_single_word_document():
    assert len(run_induction(["word"]).gold) == 1


def test_monolingual_single_iteration():
    toks = ["the", "cat", "sat", "on", "the", "mat", "that", "cat", "ate", "the", "hat"]
    sets = run_induction(toks, InductionParams(iterations=1, random_iterations=0))
    assert len(sets.gold) == 1


def test_repeated_word_fixed_point():
    seg = segment(["hello"] * 12)
    assert len(set(seg.assignment)) == 1


def test_deterministic_under_seed():
    toks = words(data.read_text("twitter3"))
    p = InductionParams(seed=11)
    a, b = run_induction(toks, p), run_induction(toks, p)
    assert [m.label for m in a.gold] == [m.label for m in b.gold]
    assert all(x.same_counts(y) for x, y in zip(a.gold, b.gold))
    assert segment(toks, p) == segment(toks, p)


@pytest.mark.parametrize("seed", [0, 5])
def test_synthetic_two_scripts(seed):
    toks = alternating()
    sets = run_induction(toks, InductionParams(seed=seed))
    for m in sets.gold:
        letters = m.letters()
        assert not (letters & set(LATIN) and letters & set(CYRILLIC))
    seg = assign(toks, sets.gold)
    assert rand_index(pair_counts(seg.clustering(), script_gold(toks))) >= 0.95


def test_assign_total_and_single_model():
    toks = ["a", "bb", "ccc"]
    seg = assign(toks, [train("only", ["abc"])])
    assert seg.assignment == ("only",) * 3
    with pytest.raises(EmptyModelSet):
        assign(toks, [])


def test_consolidate_rules():
    en = [train("e1", ["the", "then"]), train("e2", ["them", "these"])]
    ru = [train("r1", ["мир"])]
    p = InductionParams()
    gold = consolidate(en + ru, p, new_label=lambda: "g")
    assert len(gold) == 2
    literal = consolidate(en + ru, InductionParams(silver_rule="literal", silver_threshold=10))
    assert len(literal) == 2  # only the English pair has similarity in (0, s)


@pytest.mark.parametrize("kw", [dict(iterations=0), dict(random_iterations=-1), dict(threshold=0),
                                dict(merge_mode="SUM"), dict(silver_rule="x"), dict(vocab="bytes")])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        InductionParams(**kw)


def test_empty_input():
    with pytest.raises(ValueError):
        run_induction([])

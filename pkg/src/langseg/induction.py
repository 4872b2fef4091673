"""Weakly supervised induction of character n-gram models from the text itself.

Forward and backward passes over the words grow sets of small models; the
most similar forward/backward pair is merged into a set of probable (silver)
models. Later passes skip words a silver model already covers. Finally the
silver models are consolidated into gold models and every word is assigned
to its best gold model.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import EmptyModelSet, NoCommonUnigrams
from .evaluation import Clustering
from .ngram import (DEFAULT_WEIGHTS, SENTINELS, VOCAB_MODES, NgramModel, fresh_label,
                    train, word_score)

MERGE_MODES = {
    "MAX": max,
    "MIN": min,
    "MEAN": lambda a, b: (a + b) / 2,
    "ADD": lambda a, b: a + b,
}


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2**64;
    each draw uses the top 31 bits of the new state.
    """

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state >> 33

    def randrange(self, n: int) -> int:
        return self.next() % n


@dataclass(frozen=True)
class InductionParams:
    iterations: int = 4
    random_iterations: int = 2
    threshold: float = 0.02
    fb_threshold: float = 0.0
    silver_threshold: float = 0.1
    merge_mode: str = "ADD"
    seed: int = 0
    # "similar": merge while the closest pair reaches the silver threshold.
    # "literal": merge while some pair stays below it.
    silver_rule: str = "similar"
    vocab: str = "types"

    def __post_init__(self):
        if self.iterations < 1 or self.random_iterations < 0:
            raise ValueError("need iterations >= 1 and random_iterations >= 0")
        if self.threshold <= 0:
            raise ValueError("creation threshold must be positive")
        if self.merge_mode not in MERGE_MODES:
            raise ValueError(f"unknown merge mode {self.merge_mode!r}")
        if self.silver_rule not in ("similar", "literal"):
            raise ValueError(f"unknown silver rule {self.silver_rule!r}")
        if self.vocab not in VOCAB_MODES:
            raise ValueError(f"unknown vocab mode {self.vocab!r}")


@dataclass
class ModelSets:
    forward: list = field(default_factory=list)
    backward: list = field(default_factory=list)
    silver: list = field(default_factory=list)
    gold: list = field(default_factory=list)


@dataclass(frozen=True)
class Segmentation:
    assignment: tuple[str, ...]

    def clustering(self) -> Clustering:
        return Clustering.from_labels(self.assignment)


def create_initial_model(word: str, label: str | None = None) -> NgramModel:
    return train(fresh_label() if label is None else label, [word])


def max_model_score(models: Sequence[NgramModel], word: str, vocab: str = "types"):
    """Best model and its score; the earliest model wins ties."""
    if not models:
        raise EmptyModelSet("no models to score against")
    best, best_score = None, 0.0
    for m in models:
        s = word_score(m, word, DEFAULT_WEIGHTS, vocab)
        if best is None or s > best_score:
            best, best_score = m, s
    return best, best_score


def induce_pass(words: Sequence[str], silver: Sequence[NgramModel],
                params: InductionParams = InductionParams(),
                new_label: Callable[[], str] = fresh_label) -> list[NgramModel]:
    t = params.threshold
    models: list[NgramModel] = []
    for w in words:
        if silver and max_model_score(silver, w, params.vocab)[1] >= t:
            continue
        if not models:
            models.append(create_initial_model(w, new_label()))
            continue
        best, score = max_model_score(models, w, params.vocab)
        if score < t:
            models.append(create_initial_model(w, new_label()))
        else:
            best.add(w)
    return models


def _mass(m: NgramModel) -> float:
    return sum(v for u, v in m.unigrams.items() if u not in SENTINELS)


def similarity(m1: NgramModel, m2: NgramModel) -> float:
    """Distribution-aware overlap of two models' letters (sentinels ignored)."""
    l1, l2 = m1.letters(), m2.letters()
    if not l1 or not l2:
        raise ValueError("similarity needs models with at least one letter")
    size1, size2 = _mass(m1), _mass(m2)
    common = l1 & l2
    sim = 0.0
    for u in common:
        v1 = m1.unigrams[u] / size1
        v2 = m2.unigrams[u] / size2
        sim += 2 - abs(v1 - v2) / (v1 + v2)
    difference = 1 + len(l1) * len(l2) - len(common)
    return sim / difference


def merge(m1: NgramModel, m2: NgramModel, mode: str = "ADD",
          label: str | None = None) -> NgramModel:
    """Keep shared letters, drop every gram touching a letter only one side has."""
    op = MERGE_MODES[mode]
    l1, l2 = m1.letters(), m2.letters()
    if not l1 & l2:
        raise NoCommonUnigrams(f"{m1.label!r} and {m2.label!r} share no letters")
    excluded = l1 ^ l2
    merged = NgramModel(fresh_label() if label is None else label)
    for t1, t2, out in ((m1.unigrams, m2.unigrams, merged.unigrams),
                        (m1.bigrams, m2.bigrams, merged.bigrams),
                        (m1.trigrams, m2.trigrams, merged.trigrams)):
        for gram in sorted(set(t1) | set(t2)):
            if any(ch in excluded for ch in gram):
                continue
            value = op(t1.get(gram, 0), t2.get(gram, 0))
            if value > 0:
                out[gram] = value
    return merged


def _most_similar(pairs):
    best = None
    for a, b in pairs:
        s = similarity(a, b)
        if best is None or s > best[0]:
            best = (s, a, b)
    return best


def _promote(forward, backward, silver, params, new_label) -> None:
    if forward and backward:
        sim, f, b = _most_similar(itertools.product(forward, backward))
        if sim > params.fb_threshold:
            silver.append(merge(f, b, params.merge_mode, new_label()))
        else:
            silver.extend([f, b])
    elif forward or backward:
        side = forward or backward
        silver.append(max(side, key=_mass))


def consolidate(silver: Sequence[NgramModel], params: InductionParams,
                new_label: Callable[[], str] = fresh_label) -> list[NgramModel]:
    """Turn silver models into gold models."""
    pool = list(silver)
    gold = []
    s = params.silver_threshold
    while len(pool) >= 2:
        candidates = []
        for i, j in itertools.combinations(range(len(pool)), 2):
            sim = similarity(pool[i], pool[j])
            if params.silver_rule == "similar":
                ok = sim >= s
            else:
                ok = 0 < sim < s
            if ok:
                candidates.append((sim, i, j))
        if not candidates:
            break
        sim, i, j = max(candidates, key=lambda c: (c[0], -c[1], -c[2]))
        gold.append(merge(pool[i], pool[j], params.merge_mode, new_label()))
        del pool[j], pool[i]
    return gold + pool


def run_induction(words: Sequence[str], params: InductionParams = InductionParams()) -> ModelSets:
    if not words:
        raise ValueError("induction needs at least one word")
    words = list(words)
    counter = itertools.count(1)
    new_label = lambda: f"m{next(counter)}"
    rng = Lcg64(params.seed)
    sets = ModelSets()

    for _ in range(params.iterations):
        fwd = induce_pass(words, sets.silver, params, new_label)
        bwd = induce_pass(words[::-1], sets.silver, params, new_label)
        if not fwd and not bwd:
            break
        sets.forward, sets.backward = fwd, bwd
        _promote(fwd, bwd, sets.silver, params, new_label)

    for _ in range(params.random_iterations):
        start = rng.randrange(len(words))
        fwd = induce_pass(words[start:], sets.silver, params, new_label)
        bwd = induce_pass(words[:start + 1][::-1], sets.silver, params, new_label)
        _promote(fwd, bwd, sets.silver, params, new_label)

    sets.gold = consolidate(sets.silver, params, new_label)
    return sets


def assign(words: Sequence[str], gold: Sequence[NgramModel], vocab: str = "types") -> Segmentation:
    if not gold:
        raise EmptyModelSet("no gold models to assign words to")
    return Segmentation(tuple(max_model_score(gold, w, vocab)[0].label for w in words))


def segment(words: Sequence[str], params: InductionParams = InductionParams()) -> Segmentation:
    return assign(words, run_induction(words, params).gold, params.vocab)

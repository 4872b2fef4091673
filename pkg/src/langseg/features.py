"""Token feature vectors for clustering.

The vector layout is: word length, X tail bigrams, Y tail trigrams, X head
bigrams, Y head trigrams, then fifteen scalar features. N-grams are encoded
as the sum of their codepoints; slots a short token cannot fill are 0.
"""
from __future__ import annotations

import csv
import unicodedata
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import WidthMismatch
from .text import is_ideographic, is_latin_based

NOT_APPLICABLE = 99
VOWELS = frozenset("aeiou")

GENERAL_CATEGORIES = tuple(sorted(
    "Cc Cf Cn Co Cs Ll Lm Lo Lt Lu Mc Me Mn Nd Nl No "
    "Pc Pd Pe Pf Pi Po Ps Sc Sk Sm So Zl Zp Zs".split()))
DIRECTIONALITY = {"L": 0, "R": 1, "AL": 2, "EN": 3, "AN": 4}
DIRECTIONALITY_OTHER = 5

SCALAR_FEATURES = (
    "latin_basic", "latin_extended", "capitalized", "contains_non_word",
    "is_non_word", "latin_letters", "non_latin_letters", "vowel_ratio",
    "basic_latin_ratio", "max_consonant_cluster", "is_digit", "is_ideographic",
    "directionality", "is_bmp", "general_category",
)


@dataclass(frozen=True)
class FeatureSchema:
    bigrams: int = 2
    trigrams: int = 2

    @property
    def total_width(self) -> int:
        return 16 + 2 * self.bigrams + 2 * self.trigrams

    def names(self) -> list[str]:
        names = ["length"]
        names += [f"tail_bigram_{i}" for i in range(self.bigrams)]
        names += [f"tail_trigram_{i}" for i in range(self.trigrams)]
        names += [f"head_bigram_{i}" for i in range(self.bigrams)]
        names += [f"head_trigram_{i}" for i in range(self.trigrams)]
        return names + list(SCALAR_FEATURES)


def encode_ngram(gram: str) -> int:
    return sum(ord(ch) for ch in gram)


def unambiguous_encode(gram: str, x: int, y: int) -> int:
    """Positional encoding n(w1) + x*n(w2) + y*n(w3) for grams of length <= 3."""
    if x < 1 or y < 1:
        raise ValueError("x and y must be >= 1")
    if len(gram) > 3:
        raise ValueError("only grams of length <= 3 can be encoded")
    weights = (1, x, y)
    return sum(w * ord(ch) for w, ch in zip(weights, gram))


def _head(token: str, n: int, count: int) -> list[int]:
    grams = [token[i:i + n] for i in range(len(token) - n + 1)][:count]
    return [encode_ngram(g) for g in grams] + [0] * (count - len(grams))


def _tail(token: str, n: int, count: int) -> list[int]:
    grams = [token[i - n:i] for i in range(len(token), n - 1, -1)][:count]
    return [encode_ngram(g) for g in grams] + [0] * (count - len(grams))


def _base_letter(ch: str) -> str:
    return unicodedata.normalize("NFD", ch)[0].lower()


def _is_vowel(ch: str) -> bool:
    return ch.isalpha() and _base_letter(ch) in VOWELS


def _is_basic_latin(ch: str) -> bool:
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _max_consonant_cluster(token: str) -> int:
    best = run = 0
    for ch in token:
        if ch.isalpha() and is_latin_based(ch) and not _is_vowel(ch):
            run += 1
            best = max(best, run)
        else:
            run = 0
    return best


def _ternary(flag: bool, applicable: bool) -> int:
    return int(flag) if applicable else NOT_APPLICABLE


def extract(token: str, schema: FeatureSchema = FeatureSchema()) -> np.ndarray:
    if not token:
        raise ValueError("cannot extract features from an empty token")
    n = len(token)
    letters = [ch for ch in token if ch.isalpha()]
    latin = [ch for ch in letters if is_latin_based(ch)]
    cased = [ch for ch in token if ch.isupper() or ch.islower()]
    first = token[0]

    scalars = [
        _ternary(all(_is_basic_latin(ch) for ch in token), bool(letters)),
        _ternary(all(ch.isalpha() and is_latin_based(ch) for ch in token), bool(letters)),
        _ternary(cased[0].isupper() if cased else False, bool(cased)),
        int(any(not ch.isalpha() for ch in token)),
        int(not letters),
        len(latin),
        len(letters) - len(latin),
        sum(_is_vowel(ch) for ch in token) / n,
        sum(_is_basic_latin(ch) for ch in token) / n,
        _max_consonant_cluster(token),
        int(all(ch.isdigit() for ch in token)),
        int(all(is_ideographic(ch) for ch in token)),
        DIRECTIONALITY.get(unicodedata.bidirectional(first), DIRECTIONALITY_OTHER),
        int(all(ord(ch) <= 0xFFFF for ch in token)),
        GENERAL_CATEGORIES.index(unicodedata.category(first)),
    ]
    values = [n]
    values += _tail(token, 2, schema.bigrams)
    values += _tail(token, 3, schema.trigrams)
    values += _head(token, 2, schema.bigrams)
    values += _head(token, 3, schema.trigrams)
    values += scalars
    return np.asarray(values, dtype=float)


def feature_matrix(tokens: Sequence[str], schema: FeatureSchema = FeatureSchema()) -> np.ndarray:
    if not tokens:
        return np.zeros((0, schema.total_width))
    return np.vstack([extract(t, schema) for t in tokens])


def scale(matrix) -> np.ndarray:
    """Per-column z-scores (population variance); constant columns become 0."""
    rows = [np.asarray(r, dtype=float) for r in matrix]
    if not rows:
        raise ValueError("scale needs at least one vector")
    if len({r.shape for r in rows}) != 1:
        raise WidthMismatch("feature vectors differ in width")
    m = np.vstack(rows)
    mean = m.mean(axis=0)
    std = m.std(axis=0)
    centered = m - mean
    safe = np.where(std > 0, std, 1.0)
    return np.where(std > 0, centered / safe, 0.0)


def write_feature_csv(tokens: Sequence[str], matrix: np.ndarray, schema: FeatureSchema, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["token"] + schema.names())
    for tok, row in zip(tokens, matrix):
        writer.writerow([tok] + [f"{v:g}" for v in row])

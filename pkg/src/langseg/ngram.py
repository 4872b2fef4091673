"""Character trigram language model with a fixed-weight non-linear back-off.

Words are padded with two start and two end sentinels before counting, so a
word of length n contributes n + 4 unigrams, n + 3 bigrams and n + 2 trigrams.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import count
from pathlib import Path
from typing import Iterable

from .errors import EmptyCorpus, EmptyModel, FormatError, SentinelInInput

# Unicode noncharacters never appear in interchange text.
S1, S2, E1, E2 = "\ufdd0", "\ufdd1", "\ufdd2", "\ufdd3"
SENTINELS = frozenset((S1, S2, E1, E2))

OTHER = "other"
MODEL_HEADER = "LANGSEG-NGRAM v1"


@dataclass(frozen=True)
class BackoffWeights:
    a1: float = 0.7
    a2: float = 0.2
    a3: float = 0.09
    a4: float = 0.01

    def __post_init__(self):
        if min(self.a1, self.a2, self.a3, self.a4) <= 0:
            raise ValueError("back-off weights must be strictly positive")


DEFAULT_WEIGHTS = BackoffWeights()

_labels = count()


def fresh_label(prefix: str = "m") -> str:
    return f"{prefix}{next(_labels)}"


def pad(word: str) -> str:
    if not word:
        raise ValueError("cannot pad an empty word")
    if any(ch in SENTINELS for ch in word):
        raise SentinelInInput(f"word {word!r} contains a reserved sentinel")
    return S1 + S2 + word + E1 + E2


class NgramModel:
    """Unigram, bigram and trigram counts for one label.

    Grams are stored as strings of length 1, 2 and 3. Counts are usually
    integers; merged models may carry fractional counts.
    """

    def __init__(self, label: str, unigrams=None, bigrams=None, trigrams=None):
        self.label = label
        self.unigrams: Counter = Counter(unigrams or {})
        self.bigrams: Counter = Counter(bigrams or {})
        self.trigrams: Counter = Counter(trigrams or {})

    @property
    def V(self) -> int:
        return len(self.unigrams)

    @property
    def W(self) -> int:
        return len(self.bigrams)

    @property
    def X(self) -> int:
        return len(self.trigrams)

    def add(self, word: str) -> None:
        """Count the n-grams of ``word`` into this model (in place)."""
        p = pad(word)
        self.unigrams.update(p)
        self.bigrams.update(p[i:i + 2] for i in range(len(p) - 1))
        self.trigrams.update(p[i:i + 3] for i in range(len(p) - 2))

    def copy(self, label: str | None = None) -> "NgramModel":
        return NgramModel(self.label if label is None else label,
                          self.unigrams, self.bigrams, self.trigrams)

    def same_counts(self, other: "NgramModel") -> bool:
        return (self.unigrams == other.unigrams and self.bigrams == other.bigrams
                and self.trigrams == other.trigrams)

    def letters(self) -> set[str]:
        """Non-sentinel unigrams."""
        return {u for u in self.unigrams if u not in SENTINELS}

    def __repr__(self):
        return f"NgramModel({self.label!r}, V={self.V}, W={self.W}, X={self.X})"


def train(label: str, tokens: Iterable[str]) -> NgramModel:
    model = NgramModel(label)
    seen = False
    for tok in tokens:
        model.add(tok)
        seen = True
    if not seen:
        raise EmptyCorpus("cannot train a model on an empty corpus")
    return model


def update(model: NgramModel, word: str) -> NgramModel:
    new = model.copy()
    new.add(word)
    return new


VOCAB_MODES = ("mixed", "types", "tokens")


def _sizes(model: NgramModel, vocab: str) -> tuple[float, float]:
    """(unigram normaliser, floor denominator) for the chosen size reading."""
    types = model.V + model.W + model.X
    if vocab == "types":
        return model.V, types
    unigram_total = sum(model.unigrams.values())
    if vocab == "mixed":
        return unigram_total, types
    if vocab == "tokens":
        return unigram_total, (unigram_total + sum(model.bigrams.values())
                               + sum(model.trigrams.values()))
    raise ValueError(f"unknown vocab mode {vocab!r}")


def backoff_branch(model: NgramModel, c2: str, c1: str, c: str) -> int:
    """Which of the four back-off cases applies (1 = trigram ... 4 = floor)."""
    if model.trigrams.get(c2 + c1 + c, 0) > 0:
        return 1
    if model.bigrams.get(c1 + c, 0) > 0:
        return 2
    if model.unigrams.get(c, 0) > 0:
        return 3
    return 4


def cond_prob(model: NgramModel, c2: str, c1: str, c: str,
              weights: BackoffWeights = DEFAULT_WEIGHTS, vocab: str = "types") -> float:
    """Back-off estimate of P(c | c2 c1).

    ``vocab`` picks how the unigram case is normalised and how large the floor
    denominator is: "types" uses distinct gram counts for both, "tokens" uses
    total counts for both, and "mixed" divides the unigram count by the total
    unigram count but keeps the distinct-gram floor. With "types" a frequent
    letter can push the unigram case above 1 once a model has seen more than
    a handful of words; "mixed" and "tokens" never exceed 1.
    """
    unigram_norm, floor_norm = _sizes(model, vocab)
    if floor_norm == 0:
        raise EmptyModel(f"model {model.label!r} has no counts")
    branch = backoff_branch(model, c2, c1, c)
    if branch == 1:
        return weights.a1 * model.trigrams[c2 + c1 + c] / model.bigrams[c2 + c1]
    if branch == 2:
        return weights.a2 * model.bigrams[c1 + c] / model.unigrams[c1]
    if branch == 3:
        return weights.a3 * model.unigrams[c] / unigram_norm
    return weights.a4 / floor_norm


def word_score(model: NgramModel, word: str,
               weights: BackoffWeights = DEFAULT_WEIGHTS, vocab: str = "types") -> float:
    """Inverse of the summed absolute log probabilities over the padded word.

    One term per predicted character: the word body plus both end sentinels.
    Higher means more typical for the model.
    """
    p = pad(word)
    rarity = sum(abs(math.log(cond_prob(model, p[i - 2], p[i - 1], p[i], weights, vocab)))
                 for i in range(2, len(p)))
    return math.inf if rarity == 0 else 1.0 / rarity


def classify(models: Iterable[NgramModel], word: str, other_threshold: float = 0.0,
             weights: BackoffWeights = DEFAULT_WEIGHTS, vocab: str = "mixed") -> str:
    """Label of the best scoring model, or ``"other"`` below the threshold.

    Models trained on corpora of different sizes are compared here, so the
    default size reading is "mixed", which keeps every estimate at or below 1.
    """
    best_label, best = None, -math.inf
    for m in sorted(models, key=lambda m: m.label):
        s = word_score(m, word, weights, vocab)
        if s > best:
            best_label, best = m.label, s
    if best_label is None:
        raise ValueError("classify needs at least one model")
    return OTHER if best < other_threshold else best_label


# ---------------------------------------------------------------------------
# LANGSEG-NGRAM v1 files

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r",
            S1: "\\uFDD0", S2: "\\uFDD1", E1: "\\uFDD2", E2: "\\uFDD3"}


def escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape(text: str) -> str:
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = text[i + 1:i + 2]
        if nxt == "\\":
            out.append("\\")
            i += 2
        elif nxt in ("t", "n", "r"):
            out.append({"t": "\t", "n": "\n", "r": "\r"}[nxt])
            i += 2
        elif nxt == "u" and len(text) >= i + 6:
            out.append(chr(int(text[i + 2:i + 6], 16)))
            i += 6
        else:
            raise FormatError(f"bad escape in {text!r}")
    return "".join(out)


def _fmt_count(v) -> str:
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def dumps_model(model: NgramModel) -> str:
    lines = [MODEL_HEADER, escape(model.label)]
    for tag, table in (("[1]", model.unigrams), ("[2]", model.bigrams), ("[3]", model.trigrams)):
        lines.append(tag)
        for gram in sorted(table):
            lines.append(f"{escape(gram)}\t{_fmt_count(table[gram])}")
    return "\n".join(lines) + "\n"


def loads_model(text: str) -> NgramModel:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or lines[0] != MODEL_HEADER:
        raise FormatError("missing LANGSEG-NGRAM v1 header")
    model = NgramModel(unescape(lines[1]))
    tables = {"[1]": model.unigrams, "[2]": model.bigrams, "[3]": model.trigrams}
    table = None
    for line in lines[2:]:
        if line in tables:
            table = tables[line]
            continue
        if table is None:
            raise FormatError(f"entry before section header: {line!r}")
        gram, sep, value = line.rpartition("\t")
        if not sep:
            raise FormatError(f"malformed entry: {line!r}")
        try:
            v = float(value)
        except ValueError:
            raise FormatError(f"bad count in {line!r}") from None
        table[unescape(gram)] = int(v) if v.is_integer() and "." not in value else v
    return model


def save_model(model: NgramModel, path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model(path) -> NgramModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))

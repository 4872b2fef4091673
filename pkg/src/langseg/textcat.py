"""Rank-ordered n-gram profiles and the out-of-place distance."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import EmptyCorpus, FormatError
from .ngram import escape, unescape

UNKNOWN = "unknown"
DEFAULT_K = 400
PROFILE_HEADER = "LANGSEG-PROFILE v1"
PAD = "_"


@dataclass(frozen=True)
class Profile:
    label: str
    ranked_grams: tuple[str, ...]

    def ranks(self) -> dict[str, int]:
        return {g: r for r, g in enumerate(self.ranked_grams, start=1)}

    def __len__(self):
        return len(self.ranked_grams)


def token_grams(token: str, max_n: int = 5):
    """All 1..5-grams of ``_token_``, skipping grams made only of padding."""
    padded = PAD + token + PAD
    for n in range(1, max_n + 1):
        for i in range(len(padded) - n + 1):
            gram = padded[i:i + n]
            if gram.strip(PAD):
                yield gram


def gram_counts(tokens: Iterable[str]) -> Counter:
    counts: Counter = Counter()
    for tok in tokens:
        counts.update(token_grams(tok))
    return counts


def rank_grams(counts: Counter, K: int) -> tuple[str, ...]:
    # descending frequency, then shorter gram, then codepoint order
    ordered = sorted(counts, key=lambda g: (-counts[g], len(g), g))
    return tuple(ordered[:K])


def build_profile(label: str, text: str, K: int = DEFAULT_K) -> Profile:
    counts = gram_counts(text.split())
    if not counts:
        raise EmptyCorpus(f"no tokens to build profile {label!r} from")
    return Profile(label, rank_grams(counts, K))


def oop_distance(doc: Profile, cat: Profile, missing_penalty: int = DEFAULT_K) -> int:
    cat_ranks = cat.ranks()
    total = 0
    for rank, gram in enumerate(doc.ranked_grams, start=1):
        other = cat_ranks.get(gram)
        total += missing_penalty if other is None else abs(rank - other)
    return total


def classify_word(word: str, profiles: Iterable[Profile], K: int = DEFAULT_K,
                  margin: float = 1.0, missing_penalty: int | None = None) -> str:
    """Closest profile label for a single word, or ``"unknown"`` when undecided.

    The guess is rejected when ``best >= margin * second_best``; with the
    default margin of 1.0 that is an exact tie, smaller margins demand a clearer
    winner, and a margin of 0 disables the check.
    """
    penalty = K if missing_penalty is None else missing_penalty
    try:
        doc = build_profile("doc", word, K)
    except EmptyCorpus:
        return UNKNOWN
    scored = sorted((oop_distance(doc, p, penalty), p.label) for p in profiles)
    if not scored:
        raise ValueError("classify_word needs at least one profile")
    best, label = scored[0]
    if margin > 0 and len(scored) > 1 and best >= margin * scored[1][0]:
        return UNKNOWN
    return label


def dumps_profile(profile: Profile) -> str:
    lines = [PROFILE_HEADER, escape(profile.label)]
    lines.extend(escape(g) for g in profile.ranked_grams)
    return "\n".join(lines) + "\n"


def loads_profile(text: str) -> Profile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or lines[0] != PROFILE_HEADER:
        raise FormatError("missing LANGSEG-PROFILE v1 header")
    return Profile(unescape(lines[1]), tuple(unescape(g) for g in lines[2:]))


def save_profile(profile: Profile, path) -> None:
    Path(path).write_text(dumps_profile(profile), encoding="utf-8")


def load_profile(path) -> Profile:
    return loads_profile(Path(path).read_text(encoding="utf-8"))

"""Document reading, whitespace tokenization and token normalization."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import regex

_IDEOGRAPHIC = regex.compile(r"\p{Ideographic}")
_LATIN = regex.compile(r"\p{Script=Latin}")
_TAG = regex.compile(r"<[^>]*>")

# ASCII and typographic variants of the quote marks are both stripped.
PUNCTUATION = frozenset('.,"\':;!?–“”‘’')
CONTROL = frozenset("()[]\\")
_STRIP = PUNCTUATION | CONTROL


@dataclass(frozen=True)
class Token:
    surface: str
    index: int


@dataclass(frozen=True)
class PipelineConfig:
    normalize: bool = False
    split_ideographic: bool = False


def read_document(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def is_latin_based(text: str) -> bool:
    return _LATIN.search(text) is not None


def is_ideographic(ch: str) -> bool:
    return _IDEOGRAPHIC.match(ch) is not None


def normalize(token: str) -> str:
    """Clean a token for feature extraction.

    Tokens without any Latin-script character are returned untouched. Otherwise
    XML-like tags are replaced by their text content and punctuation and
    control characters are removed. The result may be empty.
    """
    if not is_latin_based(token):
        return token
    token = _TAG.sub("", token.strip())
    return "".join(ch for ch in token if ch not in _STRIP).strip()


def _split_ideographs(chunk: str):
    run = []
    for ch in chunk:
        if is_ideographic(ch):
            if run:
                yield "".join(run)
                run = []
            yield ch
        else:
            run.append(ch)
    if run:
        yield "".join(run)


def tokenize(text: str, config: PipelineConfig | None = None) -> list[Token]:
    config = config or PipelineConfig()
    surfaces = text.split()
    if config.split_ideographic:
        surfaces = [piece for chunk in surfaces for piece in _split_ideographs(chunk)]
    if config.normalize:
        surfaces = [n for n in map(normalize, surfaces) if n]
    return [Token(s, i) for i, s in enumerate(surfaces)]


def words(text: str, config: PipelineConfig | None = None) -> list[str]:
    return [t.surface for t in tokenize(text, config)]

"""Bundled fixtures: the twenty mixed-language test texts, gold clusterings,
two transcribed comparison tables and small training samples."""
from __future__ import annotations

from importlib import resources
from pathlib import Path


def root() -> Path:
    return Path(str(resources.files(__name__)))


def text_names() -> list[str]:
    lines = (root() / "texts" / "LANGUAGES").read_text(encoding="utf-8").splitlines()
    return [ln.split("\t")[0] for ln in lines if ln.strip()]


def languages(name: str) -> str:
    for ln in (root() / "texts" / "LANGUAGES").read_text(encoding="utf-8").splitlines():
        key, _, langs = ln.partition("\t")
        if key == name:
            return langs
    raise KeyError(name)


def text_path(name: str) -> Path:
    return root() / "texts" / f"{name}.txt"


def read_text(name: str) -> str:
    return text_path(name).read_text(encoding="utf-8")


def gold_path(name: str) -> Path:
    return root() / "gold" / f"{name}.txt"


def gold_names() -> list[str]:
    return sorted(p.stem for p in (root() / "gold").glob("*.txt"))


def recorded_path(name: str) -> Path:
    return root() / "recorded" / f"{name}.txt"


def sample_path(lang: str, part: str = "train") -> Path:
    if part not in ("train", "heldout"):
        raise ValueError(f"unknown sample part {part!r}")
    return root() / "samples" / f"{lang}.{part}.txt"

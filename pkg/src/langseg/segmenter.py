"""Dispatch a tokenized document to one of the four segmentation methods."""
from __future__ import annotations

from typing import Sequence

from .clustering import two_pass
from .config import RunConfig
from .induction import segment as induce
from .ngram import classify, load_model
from .textcat import classify_word, load_profile


def label_tokens(tokens: Sequence[str], cfg: RunConfig) -> list[str]:
    """One label per token; equal labels form a predicted cluster."""
    cfg.validate()
    if not tokens:
        return []
    if cfg.method == "ngram":
        models = [load_model(p) for p in cfg.models]
        return [classify(models, t, cfg.other_threshold, vocab=cfg.vocab) for t in tokens]
    if cfg.method == "textcat":
        profiles = [load_profile(p) for p in cfg.profiles]
        return [classify_word(t, profiles, cfg.textcat_k, cfg.textcat_margin) for t in tokens]
    if cfg.method == "cluster":
        assignment = two_pass(list(tokens), cfg.schema, cfg.clustering)
        return [f"c{c}" for c in assignment.labels]
    return list(induce(list(tokens), cfg.induction).assignment)

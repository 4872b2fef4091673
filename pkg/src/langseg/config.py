"""Run configuration read from flat ``key = value`` files with ``[section]`` headers.

Example::

    [run]
    method = induce
    seed = 3

    [induction]
    iterations = 4
    merge_mode = ADD

Relative model and profile paths are resolved against the config file.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, replace
from pathlib import Path

from .clustering import XMeansParams
from .features import FeatureSchema
from .induction import InductionParams
from .ngram import VOCAB_MODES
from .text import PipelineConfig
from .textcat import DEFAULT_K

METHODS = ("ngram", "textcat", "cluster", "induce")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    method: str = "induce"
    pipeline: PipelineConfig = PipelineConfig()
    induction: InductionParams = InductionParams()
    clustering: XMeansParams = XMeansParams()
    schema: FeatureSchema = FeatureSchema()
    models: tuple[str, ...] = ()
    profiles: tuple[str, ...] = ()
    other_threshold: float = 0.0
    vocab: str = "mixed"
    textcat_k: int = DEFAULT_K
    textcat_margin: float = 1.0

    def validate(self) -> "RunConfig":
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {', '.join(METHODS)}, got {self.method!r}")
        if self.method == "ngram" and not self.models:
            raise ConfigError("method ngram needs at least one model path")
        if self.method == "textcat" and not self.profiles:
            raise ConfigError("method textcat needs at least one profile path")
        if self.vocab not in VOCAB_MODES:
            raise ConfigError(f"unknown vocab mode {self.vocab!r}")
        return self

    def effective_pipeline(self) -> PipelineConfig:
        """The clustering method always works on normalized tokens."""
        if self.method == "cluster":
            return replace(self.pipeline, normalize=True)
        return self.pipeline

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, induction=replace(self.induction, seed=seed),
                       clustering=replace(self.clustering, seed=seed))


def _paths(raw: str, base: Path) -> tuple[str, ...]:
    out = []
    for item in raw.replace("\n", ",").split(","):
        item = item.strip()
        if item:
            p = Path(item)
            out.append(str(p if p.is_absolute() else base / p))
    return tuple(out)


def _opt_int(raw: str):
    return None if raw.strip().lower() in ("", "none", "auto") else int(raw)


def parse_config(text: str, base_dir=".") -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    known = {"run", "pipeline", "ngram", "textcat", "induction", "clustering"}
    unknown = set(cp.sections()) - known
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown))}")
    base = Path(base_dir)
    get = lambda sec: cp[sec] if cp.has_section(sec) else {}
    cfg = RunConfig()
    try:
        run = get("run")
        cfg = replace(cfg, method=run.get("method", cfg.method).strip(),
                      other_threshold=float(run.get("other_threshold", cfg.other_threshold)))
        pipe = get("pipeline")
        if pipe:
            cfg = replace(cfg, pipeline=PipelineConfig(
                normalize=cp.getboolean("pipeline", "normalize", fallback=False),
                split_ideographic=cp.getboolean("pipeline", "split_ideographic", fallback=False)))
        ng = get("ngram")
        cfg = replace(cfg, models=_paths(ng.get("models", ""), base),
                      vocab=ng.get("vocab", cfg.vocab).strip())
        tc = get("textcat")
        cfg = replace(cfg, profiles=_paths(tc.get("profiles", ""), base),
                      textcat_k=int(tc.get("k", cfg.textcat_k)),
                      textcat_margin=float(tc.get("margin", cfg.textcat_margin)))
        ind = get("induction")
        d = cfg.induction
        cfg = replace(cfg, induction=InductionParams(
            iterations=int(ind.get("iterations", d.iterations)),
            random_iterations=int(ind.get("random_iterations", d.random_iterations)),
            threshold=float(ind.get("threshold", d.threshold)),
            fb_threshold=float(ind.get("fb_threshold", d.fb_threshold)),
            silver_threshold=float(ind.get("silver_threshold", d.silver_threshold)),
            merge_mode=ind.get("merge_mode", d.merge_mode).strip().upper(),
            seed=int(ind.get("seed", run.get("seed", d.seed))),
            silver_rule=ind.get("silver_rule", d.silver_rule).strip(),
            vocab=ind.get("vocab", d.vocab).strip()))
        cl = get("clustering")
        c = cfg.clustering
        cfg = replace(cfg, clustering=XMeansParams(
            kmin=int(cl.get("kmin", c.kmin)),
            kmax=_opt_int(cl.get("kmax", "none")),
            max_iterations=int(cl.get("max_iterations", c.max_iterations)),
            seed=int(cl.get("seed", run.get("seed", c.seed)))),
            schema=FeatureSchema(int(cl.get("bigrams", 2)), int(cl.get("trigrams", 2))))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), path.parent)

from pathlib import Path

import pytest

from langseg.config import ConfigError, RunConfig, load_config, parse_config


def test_defaults():
    cfg = parse_config("")
    assert cfg == RunConfig()
    assert cfg.method == "induce" and cfg.induction.iterations == 4


def test_full_file(tmp_path):
    (tmp_path / "cfg.ini").write_text("""
[run]
method = ngram
seed = 9
other_threshold = 0.05

[pipeline]
normalize = yes

[ngram]
models = en.model, /abs/de.model
vocab = tokens

[induction]
iterations = 2
merge_mode = mean
silver_rule = literal

[clustering]
kmax = auto
bigrams = 3
trigrams = 1
""", encoding="utf-8")
    cfg = load_config(tmp_path / "cfg.ini").validate()
    assert cfg.method == "ngram" and cfg.other_threshold == 0.05
    assert cfg.pipeline.normalize and not cfg.pipeline.split_ideographic
    assert cfg.models == (str(tmp_path / "en.model"), "/abs/de.model")
    assert cfg.vocab == "tokens"
    assert cfg.induction.iterations == 2 and cfg.induction.merge_mode == "MEAN"
    assert cfg.induction.silver_rule == "literal" and cfg.induction.seed == 9
    assert cfg.clustering.kmax is None and cfg.clustering.seed == 9
    assert (cfg.schema.bigrams, cfg.schema.trigrams) == (3, 1)
    assert cfg.schema.total_width == 16 + 6 + 2


@pytest.mark.parametrize("text", [
    "[bogus]\nx = 1\n",
    "[run]\nother_threshold = high\n",
    "[induction]\nmerge_mode = SUM\n",
    "not an ini file",
])
def test_bad_files(text):
    with pytest.raises(ConfigError):
        parse_config(text)


@pytest.mark.parametrize("cfg", [RunConfig(method="nope"), RunConfig(method="ngram"),
                                 RunConfig(method="textcat"), RunConfig(vocab="bytes")])
def test_validate(cfg):
    with pytest.raises(ConfigError):
        cfg.validate()


def test_cluster_forces_normalize():
    assert RunConfig(method="cluster").effective_pipeline().normalize
    assert not RunConfig(method="induce").effective_pipeline().normalize


def test_with_seed():
    cfg = RunConfig().with_seed(4)
    assert cfg.induction.seed == 4 and cfg.clustering.seed == 4

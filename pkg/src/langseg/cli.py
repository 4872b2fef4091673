"""Command-line front end: ``langseg train|profile|segment|eval|reproduce``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__, reproduce
from .config import METHODS, ConfigError, RunConfig, load_config
from .errors import LangsegError
from .evaluation import (Clustering, baseline_one_cluster, baseline_singletons, evaluate,
                         format_clustering, format_rows, load_clustering, read_clustering_file,
                         rows_to_dict)
from .ngram import VOCAB_MODES, save_model, train
from .segmenter import label_tokens
from .text import PipelineConfig, read_document, words
from .textcat import DEFAULT_K, build_profile, save_profile

log = logging.getLogger("langseg")


def _pipeline(args, base: PipelineConfig | None = None) -> PipelineConfig:
    base = base or PipelineConfig()
    return PipelineConfig(normalize=args.normalize or base.normalize,
                          split_ideographic=args.split_ideographic or base.split_ideographic)


def _add_pipeline_flags(p):
    p.add_argument("--normalize", action="store_true", help="strip punctuation and tags from Latin tokens")
    p.add_argument("--split-ideographic", action="store_true",
                   help="split ideographic characters into their own tokens")


def cmd_train(args) -> int:
    tokens = words(read_document(args.corpus), _pipeline(args))
    model = train(args.label, tokens)
    save_model(model, args.output)
    log.info("wrote %s (V=%d W=%d X=%d)", args.output, model.V, model.W, model.X)
    return 0


def cmd_profile(args) -> int:
    text = " ".join(words(read_document(args.corpus), _pipeline(args)))
    profile = build_profile(args.label, text, args.k)
    save_profile(profile, args.output)
    log.info("wrote %s (%d grams)", args.output, len(profile))
    return 0


def _run_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.method:
        cfg = replace(cfg, method=args.method)
    if args.model:
        cfg = replace(cfg, models=tuple(args.model))
    if args.profile:
        cfg = replace(cfg, profiles=tuple(args.profile))
    if args.other_threshold is not None:
        cfg = replace(cfg, other_threshold=args.other_threshold)
    if args.vocab:
        cfg = replace(cfg, vocab=args.vocab)
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    return replace(cfg, pipeline=_pipeline(args, cfg.pipeline)).validate()


def cmd_segment(args) -> int:
    cfg = _run_config(args)
    tokens = words(read_document(args.input), cfg.effective_pipeline())
    if not tokens:
        raise LangsegError(f"{args.input}: no tokens")
    labels = label_tokens(tokens, cfg)
    clustering = Clustering.from_labels(labels)
    header = f"predicted clustering\nmethod: {cfg.method}\ninput: {Path(args.input).name}"
    out = Path(args.output)
    out.write_text(format_clustering(tokens, clustering, header), encoding="utf-8")
    listing = Path(args.labels) if args.labels else out.with_name(out.name + ".labels.tsv")
    listing.write_text("".join(f"{t}\t{lab}\n" for t, lab in zip(tokens, labels)), encoding="utf-8")
    log.info("wrote %s (%d clusters) and %s", out, len(clustering), listing)
    return 0


def cmd_eval(args) -> int:
    betas = tuple(args.beta)
    if args.text:
        tokens = words(read_document(args.text), _pipeline(args))
    else:
        tokens = [t for c in read_clustering_file(args.gold) for t in c]
    _, gold = load_clustering(args.gold, tokens, args.unmatched)
    _, pred = load_clustering(args.pred, tokens, args.unmatched)
    kw = {"betas": betas, "swap": args.swap}
    rows = [evaluate(pred, gold, args.name or Path(args.pred).stem, **kw),
            baseline_one_cluster(gold, **kw), baseline_singletons(gold, **kw)]
    if args.json == "-":
        json.dump(rows_to_dict(rows, betas), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(format_rows(rows, betas))
        print("# Baseline puts every token in one cluster; Baseline 2 makes every token a "
              "singleton (token-level pair counting)")
        if args.json:
            Path(args.json).write_text(json.dumps(rows_to_dict(rows, betas), indent=2) + "\n",
                                       encoding="utf-8")
    return 0


def cmd_reproduce(args) -> int:
    return 0 if reproduce.run(args.suite) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="langseg", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a character trigram model")
    p.add_argument("corpus")
    p.add_argument("--label", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("profile", help="build a rank-ordered n-gram profile")
    p.add_argument("corpus")
    p.add_argument("--label", required=True)
    p.add_argument("-k", "--k", type=int, default=DEFAULT_K, help="profile capacity")
    p.add_argument("-o", "--output", required=True)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("segment", help="segment a document into language clusters")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="predicted clustering file")
    p.add_argument("--labels", help="token<TAB>label listing (default: OUTPUT.labels.tsv)")
    p.add_argument("--config")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--seed", type=int)
    p.add_argument("--model", action="append", help="n-gram model file (repeatable)")
    p.add_argument("--profile", action="append", help="Textcat profile file (repeatable)")
    p.add_argument("--other-threshold", type=float)
    p.add_argument("--vocab", choices=VOCAB_MODES, help="size reading for n-gram scoring")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("eval", help="compare a predicted clustering with a gold clustering")
    p.add_argument("pred")
    p.add_argument("gold")
    p.add_argument("--text", help="document whose tokens define the domain (default: gold order)")
    p.add_argument("--beta", type=float, nargs=2, default=[1.0, 5.0], metavar=("B1", "B2"))
    p.add_argument("--unmatched", choices=("error", "singleton"), default="error",
                   help="how to treat tokens missing from one side")
    p.add_argument("--swap", action="store_true",
                   help="score gold against prediction (swaps precision and recall)")
    p.add_argument("--name", help="row label for the prediction")
    p.add_argument("--json", metavar="PATH", help="also write rows as JSON ('-' for stdout only)")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reproduce", help="run bundled self-checks")
    p.add_argument("suite", choices=list(reproduce.SUITES) + ["all"])
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (LangsegError, ConfigError, OSError, ValueError) as exc:
        print(f"langseg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Self-checks against bundled fixtures and recorded reference values.

Each suite returns a list of :class:`Check` results; ``run`` prints one line
per check and reports whether all of them passed.
"""
from __future__ import annotations

import itertools
import math
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import data
from .clustering import XMeansParams, two_pass_vectors, xmeans
from .evaluation import (Clustering, baseline_one_cluster, evaluate, f_beta,
                         fowlkes_mallows, jaccard, load_clustering, pair_counts, rand_index)
from .features import encode_ngram, feature_matrix, unambiguous_encode
from .induction import InductionParams, run_induction, segment
from .ngram import S1, S2, classify, cond_prob, train, word_score
from .textcat import Profile, oop_distance
from .text import words

TOL = 5e-4


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def _close(name, got, want, tol=TOL) -> Check:
    ok = got is not None and abs(got - want) <= tol
    shown = "n/a" if got is None else f"{got:.6f}"
    return Check(name, ok, f"got {shown}, want {want} (tol {tol:g})")


# ---------------------------------------------------------------------------
# encodings


SIMPLE_DISTANCES = {  # codepoint-sum encoding
    ("na", "ma"): 1, ("na", "ne"): 4, ("na", "me"): 3,
    ("ma", "ne"): 5, ("ma", "me"): 4, ("ne", "me"): 1,
}
POSITIONAL_DISTANCES = {  # positional encoding with x = 1373
    ("na", "ma"): 1, ("na", "ne"): 5492, ("na", "me"): 5491,
    ("ma", "ne"): 5493, ("ma", "me"): 5492, ("ne", "me"): 1,
}


def suite_encodings() -> list[Check]:
    out = []
    grams = ("na", "ma", "ne", "me")
    for label, table, enc in (("simple", SIMPLE_DISTANCES, encode_ngram),
                              ("positional x=1373", POSITIONAL_DISTANCES,
                               lambda g: unambiguous_encode(g, 1373, 1373 ** 2))):
        bad = []
        for a, b in itertools.permutations(grams, 2):
            want = table.get((a, b), table.get((b, a)))
            got = abs(enc(a) - enc(b))
            if got != want:
                bad.append(f"{a}-{b}={got}!={want}")
        diag = all(enc(g) - enc(g) == 0 for g in grams)
        out.append(Check(f"encoding distances ({label}, 12 off-diagonal)", not bad and diag,
                         "; ".join(bad) or "exact"))
    return out


# ---------------------------------------------------------------------------
# back-off formula


def suite_formulas() -> list[Check]:
    ab = train("x", ["ab"])
    aba = train("x", ["aba"])
    cases = [
        ("cond_prob trigram branch", cond_prob(ab, S1, S2, "a"), 0.7),
        ("cond_prob bigram branch", cond_prob(aba, "q", "b", "a"), 0.2),
        ("cond_prob floor branch", cond_prob(ab, "z", "z", "z"), 0.01 / 15),
        ("word_score seen word", word_score(ab, "ab"), 1 / (4 * abs(math.log(0.7)))),
        ("word_score unseen word", word_score(ab, "zz"),
         1 / (2 * abs(math.log(0.01 / 15)) + abs(math.log(0.09 / 6)) + abs(math.log(0.2)))),
    ]
    return [_close(n, g, w, 1e-9) for n, g, w in cases]


# ---------------------------------------------------------------------------
# baselines and recorded clusterings

# name -> expected one-cluster baseline values (RI, FM, F1); None = not recorded
BASELINES = {
    "english_german": (0.9259, 0.9622, 0.9615),
    "twitter3": (0.6583, None, 0.7939),
    "twitter4": (0.8750, None, 0.9333),
}
# extra rows whose golds are reconstructed; shown but not part of the strict set
EXTRA_BASELINES = {
    "twitter1": (0.4615, 0.6793, 0.6315),
    "twitter5": (0.4285, 0.6546, 0.6000),
}


def _baseline_checks(table, tag="") -> list[Check]:
    out = []
    for name, (ri, fm, f1) in table.items():
        tokens = words(data.read_text(name))
        _, gold = load_clustering(data.gold_path(name), tokens)
        row = baseline_one_cluster(gold)
        for metric, got, want in (("RI", row.rand, ri), ("FM", row.fowlkes_mallows, fm),
                                  ("F1", row.f1, f1)):
            if want is not None:
                out.append(_close(f"baseline {name} {metric}{tag}", got, want))
    return out


def suite_baselines(include_extra: bool = True) -> list[Check]:
    out = _baseline_checks(BASELINES)
    if include_extra:
        out += _baseline_checks(EXTRA_BASELINES, " (reconstructed gold)")
    return out


RECORDED = {
    "twitter3": {"RI": 0.6838, "F1": 0.7839},
    "twitter4": {"RI": 0.8833, "F1": 0.9285},
}


def recorded_row(name: str):
    """Textcat row for a transcribed table, aligned to the raw document tokens.

    Listed surfaces missing from the document are dropped and unclaimed
    document tokens become singletons.
    """
    tokens = words(data.read_text(name))
    _, pred = load_clustering(data.recorded_path(f"{name}_textcat"), tokens, "singleton")
    _, gold = load_clustering(data.recorded_path(f"{name}_gold"), tokens, "singleton")
    return evaluate(pred, gold, f"Textcat {name}"), pair_counts(pred, gold)


def suite_recorded() -> list[Check]:
    out = []
    for name, expected in RECORDED.items():
        row, pc = recorded_row(name)
        got = {"RI": row.rand, "F1": row.f1}
        for metric, want in expected.items():
            c = _close(f"recorded Textcat {name} {metric}", got[metric], want)
            out.append(Check(c.name, c.passed, f"{c.detail}; n11={pc.n11} n00={pc.n00} "
                                                   f"n10={pc.n10} n01={pc.n01}"))
    return out


# ---------------------------------------------------------------------------
# metric properties


def random_partition(rng: random.Random, n: int) -> Clustering:
    k = rng.randint(1, n)
    return Clustering.from_labels([rng.randrange(k) for _ in range(n)])


def suite_metrics(trials: int = 1000, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    conservation = symmetry = identity = baseline = True
    undefined = 0
    for _ in range(trials):
        n = rng.randint(2, 12)
        a, b = random_partition(rng, n), random_partition(rng, n)
        if rng.random() < 0.2:
            b = Clustering.from_labels(a.labels())
        pc, cp = pair_counts(a, b), pair_counts(b, a)
        conservation &= pc.total == n * (n - 1) // 2
        for f in (rand_index, jaccard, fowlkes_mallows):
            x, y = f(pc), f(cp)
            symmetry &= (x is None and y is None) or (x is not None and y is not None
                                                       and abs(x - y) < 1e-12)
        metrics = [rand_index(pc), jaccard(pc), fowlkes_mallows(pc), f_beta(pc, 1.0)]
        all_one = all(m is not None and abs(m - 1) < 1e-12 for m in metrics)
        same = a.same_partition(b)
        # a pair of all-singleton partitions has no together pairs, so J/FM/F are n/a
        if any(len(c) > 1 for c in a.clusters) or any(len(c) > 1 for c in b.clusters):
            identity &= all_one == same
        row = baseline_one_cluster(b)
        if all(len(c) == 1 for c in b.clusters):
            # recall is 0/0 against an all-singleton gold, so F1 is n/a
            undefined += 1
            baseline &= row.f1 is None
        else:
            baseline &= row.f1 is not None and abs(row.f1 - 2 * row.rand / (1 + row.rand)) < 1e-12
    return [
        Check(f"pair counts sum to n(n-1)/2 ({trials} random pairs)", conservation),
        Check("RI, Jaccard and FM are symmetric", symmetry),
        Check("all metrics equal 1 iff partitions are identical", identity),
        Check("one-cluster baseline F1 = 2RI/(1+RI)", baseline,
              f"{undefined} all-singleton golds give F1 n/a"),
    ]


# ---------------------------------------------------------------------------
# out-of-place distance


def suite_oop(seed: int = 0) -> list[Check]:
    doc = Profile("doc", ("ER", "ING", "AT"))
    cat = Profile("cat", ("AT", "ING"))
    ranks = cat.ranks()
    terms = {g: (400 if g not in ranks else abs(r - ranks[g]))
             for r, g in enumerate(doc.ranked_grams, start=1)}
    out = [Check("out-of-place terms ING=0, AT=2, ER=penalty",
                 terms == {"ING": 0, "AT": 2, "ER": 400}, str(terms)),
           Check("out-of-place total 402", oop_distance(doc, cat, 400) == 402,
                 str(oop_distance(doc, cat, 400)))]
    rng = random.Random(seed)
    ok = True
    for _ in range(100):
        pool = ["".join(rng.choice("abcde_") for _ in range(rng.randint(1, 5))) for _ in range(60)]
        grams = tuple(dict.fromkeys(pool))
        p = Profile("p", grams)
        ok &= oop_distance(p, p, rng.randint(1, 1000)) == 0
    out.append(Check("oop_distance(p, p) = 0 for 100 random profiles", ok))
    return out


# ---------------------------------------------------------------------------
# induction

LATIN = "abdeiklmnoprstu"
CYRILLIC = "абвгдежиклмнопрст"


def alternating_text(seed: int = 0, n: int = 40, length: int = 6,
                     alphabets=(LATIN, CYRILLIC)) -> tuple[list[str], list[int]]:
    rng = random.Random(seed)
    toks, gold = [], []
    for i in range(n):
        alpha = alphabets[i % len(alphabets)]
        toks.append("".join(rng.choice(alpha) for _ in range(length)))
        gold.append(i % len(alphabets))
    return toks, gold


def suite_induction() -> list[Check]:
    out = []
    params = InductionParams(iterations=4, random_iterations=2, threshold=0.02,
                             silver_threshold=0.1, merge_mode="ADD")
    same = True
    for name in data.text_names():
        ws = words(data.read_text(name))
        a = segment(ws, InductionParams(seed=7))
        b = segment(ws, InductionParams(seed=7))
        same &= a == b
    out.append(Check("induction deterministic under a fixed seed (all bundled texts)", same))
    mono = run_induction(["hello"] * 12, params)
    seg = segment(["hello"] * 12, params)
    out.append(Check("monolingual fixed point: one gold model",
                     len(mono.gold) == 1 and len(set(seg.assignment)) == 1,
                     f"{len(mono.gold)} gold model(s)"))
    toks, gold_labels = alternating_text(0)
    gold = Clustering.from_labels(gold_labels)
    ris, mixed = [], []
    for seed in range(10):
        p = InductionParams(iterations=4, random_iterations=2, threshold=0.02,
                            silver_threshold=0.1, merge_mode="ADD", seed=seed)
        sets = run_induction(toks, p)
        seg = segment(toks, p)
        ris.append(rand_index(pair_counts(seg.clustering(), gold)))
        for m in sets.gold:
            letters = m.letters()
            if letters & set(LATIN) and letters & set(CYRILLIC):
                mixed.append((seed, m.label))
    out.append(Check("synthetic Latin/Cyrillic text: RI >= 0.95 for seeds 0..9",
                     min(ris) >= 0.95, "RI " + ", ".join(f"{r:.3f}" for r in ris)))
    out.append(Check("no gold model spans both alphabets", not mixed, str(mixed) if mixed else ""))
    return out


# ---------------------------------------------------------------------------
# clustering


def blobs(seed: int, n: int = 30, dim: int = 4, gap: float = 20.0):
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, 1.0, size=(n, dim))
    b = rng.normal(gap, 1.0, size=(n, dim))
    return np.vstack([a, b]), [0] * n + [1] * n


def is_refinement(fine, coarse) -> bool:
    owner = {}
    for f, c in zip(fine, coarse):
        if owner.setdefault(f, c) != c:
            return False
    return True


def suite_clustering() -> list[Check]:
    recovered = []
    for seed in range(10):
        X, truth = blobs(seed)
        res = xmeans(X, XMeansParams(seed=seed))
        pure = Clustering.from_labels(res.labels).same_partition(Clustering.from_labels(truth))
        recovered.append(res.k == 2 and pure)
    out = [Check("x-means finds k=2 with pure blobs (10 seeds)", all(recovered),
                 f"{sum(recovered)}/10")]
    refine = determ = True
    for name in data.text_names():
        ws = words(data.read_text(name))
        if len(ws) < 4:
            continue
        raw = feature_matrix(ws)
        first, final = two_pass_vectors(raw, XMeansParams(seed=1))
        refine &= is_refinement(final.labels, first.labels)
        again = two_pass_vectors(raw, XMeansParams(seed=1))[1]
        determ &= again == final
    out.append(Check("two-pass output refines the first pass (all bundled texts)", refine))
    out.append(Check("two-pass clustering deterministic under a fixed seed", determ))
    return out


# ---------------------------------------------------------------------------
# supervised n-gram classification


def supervised_mix(seed: int = 0, per_language: int = 50):
    en = words(data.sample_path("en", "heldout").read_text(encoding="utf-8"))
    de = words(data.sample_path("de", "heldout").read_text(encoding="utf-8"))
    rng = random.Random(seed)
    mix = [(w, "en") for w in rng.sample(en, per_language)]
    mix += [(w, "de") for w in rng.sample(de, per_language)]
    rng.shuffle(mix)
    return mix


def supervised_models():
    return [train(lang, words(data.sample_path(lang, "train").read_text(encoding="utf-8")))
            for lang in ("en", "de")]


def suite_supervised() -> list[Check]:
    models = supervised_models()
    mix = supervised_mix()
    correct = sum(classify(models, w) == lang for w, lang in mix)
    return [Check("supervised en/de accuracy on a 100-word held-out mix >= 90%",
                  correct >= 90, f"{correct}/100")]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "encodings": suite_encodings,
    "formulas": suite_formulas,
    "baselines": suite_baselines,
    "recorded": suite_recorded,
    "metrics": suite_metrics,
    "oop": suite_oop,
    "induction": suite_induction,
    "clustering": suite_clustering,
    "supervised": suite_supervised,
}


def run(suite: str, out=None) -> bool:
    """Run one suite (or "all"), print a line per check; True if all passed."""
    out = out or sys.stdout
    if suite != "all" and suite not in SUITES:
        raise KeyError(suite)
    names = list(SUITES) if suite == "all" else [suite]
    ok = True
    for name in names:
        start = time.perf_counter()
        checks = SUITES[name]()
        elapsed = time.perf_counter() - start
        print(f"== {name} ({elapsed:.2f}s)", file=out)
        for c in checks:
            print(c.line(), file=out)
            ok &= c.passed
    return ok

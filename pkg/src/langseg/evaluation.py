"""Pair-counting comparison of clusterings and the two trivial baselines.

A metric that would divide by zero is reported as ``None`` and printed as
``n/a``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DomainMismatch, FormatError

NA = "n/a"
COLUMNS = ("Rand", "Jaccard", "Fowlkes-Mallows", "F1", "F5")


class Clustering:
    """A partition of the token indices 0..n-1 into non-empty clusters."""

    def __init__(self, clusters: Iterable[Iterable[int]]):
        self.clusters = tuple(frozenset(c) for c in clusters)
        if any(not c for c in self.clusters):
            raise ValueError("clusters must be non-empty")
        members = [i for c in self.clusters for i in c]
        if len(members) != len(set(members)) or set(members) != set(range(len(members))):
            raise ValueError("clusters must partition 0..n-1")
        self.n = len(members)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Clustering":
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(groups.values())

    def labels(self) -> list[int]:
        out = [0] * self.n
        for cid, c in enumerate(self.clusters):
            for i in c:
                out[i] = cid
        return out

    def same_partition(self, other: "Clustering") -> bool:
        return set(self.clusters) == set(other.clusters)

    def __len__(self):
        return len(self.clusters)

    def __repr__(self):
        return f"Clustering({[sorted(c) for c in self.clusters]})"


@dataclass(frozen=True)
class PairCounts:
    n11: int
    n00: int
    n10: int
    n01: int

    @property
    def total(self) -> int:
        return self.n11 + self.n00 + self.n10 + self.n01


def pair_counts(c: Clustering, gold: Clustering) -> PairCounts:
    """Classify every index pair; n10 = together in ``c`` but apart in ``gold``."""
    if c.n != gold.n:
        raise DomainMismatch(f"clusterings cover {c.n} and {gold.n} tokens")
    lc, lg = c.labels(), gold.labels()
    pairs = lambda m: m * (m - 1) // 2
    joint = Counter(zip(lc, lg))
    n11 = sum(pairs(v) for v in joint.values())
    same_c = sum(pairs(v) for v in Counter(lc).values())
    same_g = sum(pairs(v) for v in Counter(lg).values())
    n10 = same_c - n11
    n01 = same_g - n11
    return PairCounts(n11, pairs(c.n) - n11 - n10 - n01, n10, n01)


def _ratio(num, den):
    return None if den == 0 else num / den


def rand_index(pc: PairCounts):
    return _ratio(pc.n11 + pc.n00, pc.total)


def jaccard(pc: PairCounts):
    return _ratio(pc.n11, pc.n11 + pc.n10 + pc.n01)


def fowlkes_mallows(pc: PairCounts):
    return _ratio(pc.n11, math.sqrt((pc.n11 + pc.n10) * (pc.n11 + pc.n01)))


def precision(pc: PairCounts):
    return _ratio(pc.n11, pc.n11 + pc.n10)


def recall(pc: PairCounts):
    return _ratio(pc.n11, pc.n11 + pc.n01)


def f_beta(pc: PairCounts, beta: float = 1.0):
    p, r = precision(pc), recall(pc)
    if p is None or r is None:
        return None
    b2 = beta * beta
    return _ratio((b2 + 1) * p * r, b2 * p + r)


@dataclass(frozen=True)
class ResultRow:
    name: str
    rand: float | None
    jaccard: float | None
    fowlkes_mallows: float | None
    f1: float | None
    f5: float | None

    def values(self):
        return (self.rand, self.jaccard, self.fowlkes_mallows, self.f1, self.f5)


def evaluate(c: Clustering, gold: Clustering, name: str = "run",
             betas: Sequence[float] = (1.0, 5.0), swap: bool = False) -> ResultRow:
    """All five table metrics. ``swap`` puts ``gold`` in the clustering role."""
    pc = pair_counts(gold, c) if swap else pair_counts(c, gold)
    b1, b2 = betas
    return ResultRow(name, rand_index(pc), jaccard(pc), fowlkes_mallows(pc),
                     f_beta(pc, b1), f_beta(pc, b2))


def one_cluster(n: int) -> Clustering:
    return Clustering([range(n)])


def singletons(n: int) -> Clustering:
    return Clustering([i] for i in range(n))


def baseline_one_cluster(gold: Clustering, **kw) -> ResultRow:
    return evaluate(one_cluster(gold.n), gold, "Baseline", **kw)


def baseline_singletons(gold: Clustering, **kw) -> ResultRow:
    return evaluate(singletons(gold.n), gold, "Baseline 2", **kw)


def fmt(value) -> str:
    return NA if value is None else f"{value:.4f}"


def _beta_name(beta: float) -> str:
    return f"F{beta:g}"


def format_rows(rows: Sequence[ResultRow], betas: Sequence[float] = (1.0, 5.0)) -> str:
    width = max([len(r.name) for r in rows] + [8])
    columns = list(COLUMNS[:3]) + [_beta_name(b) for b in betas]
    lines = ["\t".join([" " * width] + columns)]
    for r in rows:
        lines.append("\t".join([r.name.ljust(width)] + [fmt(v) for v in r.values()]))
    return "\n".join(lines)


def rows_to_dict(rows: Sequence[ResultRow], betas: Sequence[float] = (1.0, 5.0)) -> list[dict]:
    keys = ["rand", "jaccard", "fowlkes_mallows"] + [_beta_name(b) for b in betas]
    return [{"name": r.name, **dict(zip(keys, r.values()))} for r in rows]


# ---------------------------------------------------------------------------
# clustering files: one cluster per line, tokens separated by TABs


def _is_comment(line: str) -> bool:
    # tokens never contain spaces, so "# ..." cannot be a cluster of tokens
    return line == "#" or line.startswith("# ")


def parse_clustering_text(text: str) -> list[list[str]]:
    clusters = []
    for line in text.splitlines():
        if not line.strip() or _is_comment(line):
            continue
        toks = [t for t in line.split("\t") if t != ""]
        if toks:
            clusters.append(toks)
    return clusters


def read_clustering_file(path) -> list[list[str]]:
    return parse_clustering_text(Path(path).read_text(encoding="utf-8"))


def format_clustering(tokens: Sequence[str], clustering: Clustering,
                      header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for c in sorted(clustering.clusters, key=min):
        lines.append("\t".join(tokens[i] for i in sorted(c)))
    return "\n".join(lines) + "\n"


def align(tokens: Sequence[str], clusters: Sequence[Sequence[str]],
          unmatched: str = "error", key=None) -> Clustering:
    """Map surface clusters onto token positions.

    Each listed surface claims the leftmost unclaimed position with the same
    surface. With ``unmatched="error"`` every surface must be found and every
    position claimed. With ``unmatched="singleton"`` listed surfaces missing
    from ``tokens`` are dropped and unclaimed positions become singletons.
    """
    if unmatched not in ("error", "singleton"):
        raise ValueError(f"unknown unmatched policy {unmatched!r}")
    key = key or (lambda s: s)
    free: dict[str, list[int]] = {}
    for i, t in enumerate(tokens):
        free.setdefault(key(t), []).append(i)
    for q in free.values():
        q.reverse()
    out = []
    for cluster in clusters:
        members = []
        for surface in cluster:
            slots = free.get(key(surface))
            if not slots:
                if unmatched == "error":
                    raise DomainMismatch(f"token {surface!r} does not match the document")
                continue
            members.append(slots.pop())
        if members:
            out.append(members)
    left = sorted(i for q in free.values() for i in q)
    if left:
        if unmatched == "error":
            raise DomainMismatch(
                "tokens not covered by the clustering: "
                + ", ".join(repr(tokens[i]) for i in left))
        out.extend([i] for i in left)
    return Clustering(out)


def load_clustering(path, tokens: Sequence[str] | None = None, unmatched: str = "error",
                    key=None) -> tuple[list[str], Clustering]:
    """Read a clustering file; without ``tokens`` the file's own order is the domain."""
    surfaces = read_clustering_file(path)
    if not surfaces:
        raise FormatError(f"{path}: no clusters")
    if tokens is None:
        tokens = [t for c in surfaces for t in c]
    return list(tokens), align(tokens, surfaces, unmatched, key)

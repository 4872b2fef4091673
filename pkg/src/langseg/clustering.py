"""k-means, x-means and the two-pass token clustering."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import TooFewPoints
from .features import FeatureSchema, feature_matrix, scale

VARIANCE_FLOOR = 1e-9


@dataclass(frozen=True)
class ClusterAssignment:
    labels: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(set(self.labels))

    def clusters(self) -> list[list[int]]:
        groups: list[list[int]] = [[] for _ in range(self.k)]
        for i, c in enumerate(self.labels):
            groups[c].append(i)
        return groups

    @classmethod
    def from_labels(cls, labels) -> "ClusterAssignment":
        """Renumber arbitrary labels to 0..k-1 in order of first appearance."""
        ids: dict = {}
        return cls(tuple(ids.setdefault(lab, len(ids)) for lab in labels))


@dataclass(frozen=True)
class XMeansParams:
    kmin: int = 2
    kmax: int | None = None  # None means min(n, 20)
    max_iterations: int = 100
    seed: int = 0

    def resolved_kmax(self, n: int) -> int:
        kmax = min(n, 20) if self.kmax is None else self.kmax
        if not 1 <= self.kmin <= kmax:
            raise ValueError(f"need 1 <= kmin <= kmax, got {self.kmin}, {kmax}")
        return kmax


def _sqdist(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    return ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def farthest_point_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    chosen = [int(rng.integers(len(X)))]
    mind = ((X - X[chosen[0]]) ** 2).sum(axis=1)
    while len(chosen) < k:
        nxt = int(np.argmax(mind))
        chosen.append(nxt)
        mind = np.minimum(mind, ((X - X[nxt]) ** 2).sum(axis=1))
    return X[chosen].copy()


def _repair_empty(X, labels, d, centers):
    k = len(centers)
    for c in range(k):
        if np.any(labels == c):
            continue
        sizes = np.bincount(labels, minlength=k)
        movable = sizes[labels] > 1
        own = d[np.arange(len(X)), labels]
        cand = np.where(movable, own, -1.0)
        i = int(np.argmax(cand))
        labels[i] = c
        centers[c] = X[i]


def inertia(X: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    return float(((X - centers[labels]) ** 2).sum())


def lloyd(X: np.ndarray, centers: np.ndarray, max_iterations: int = 100):
    """Lloyd iterations from the given centers.

    Returns (labels, centers, objective history). Empty clusters take the point
    farthest from its own centroid among clusters with more than one member.
    """
    centers = np.array(centers, dtype=float)
    k = len(centers)
    labels = None
    history = []
    for _ in range(max_iterations):
        d = _sqdist(X, centers)
        new = np.argmin(d, axis=1)
        _repair_empty(X, new, d, centers)
        for c in range(k):
            centers[c] = X[new == c].mean(axis=0)
        history.append(inertia(X, new, centers))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
    return labels, centers, history


def kmeans(vectors, k: int, seed: int = 0, max_iterations: int = 100) -> ClusterAssignment:
    X = np.asarray(vectors, dtype=float)
    if not 1 <= k <= len(X):
        raise TooFewPoints(f"cannot form {k} clusters from {len(X)} points")
    rng = np.random.default_rng(seed)
    labels, _, _ = lloyd(X, farthest_point_init(X, k, rng), max_iterations)
    return ClusterAssignment(tuple(int(c) for c in labels))


def bic(X: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    """Spherical identical-variance Gaussian BIC (larger is better)."""
    R, M = X.shape
    K = len(centers)
    if R > K:
        variance = inertia(X, labels, centers) / (R - K)
    else:
        variance = 0.0
    variance = max(variance, VARIANCE_FLOOR)
    ll = 0.0
    for c in range(K):
        Rn = int(np.sum(labels == c))
        if Rn == 0:
            continue
        ll += (-Rn / 2 * math.log(2 * math.pi) - Rn * M / 2 * math.log(variance)
               - (Rn - K) / 2 + Rn * math.log(Rn) - Rn * math.log(R))
    params = (K - 1) + M * K + 1
    return ll - params / 2 * math.log(R)


def xmeans(vectors, params: XMeansParams = XMeansParams()) -> ClusterAssignment:
    """Grow k from kmin by accepting centroid splits that raise the local BIC."""
    X = np.asarray(vectors, dtype=float)
    n = len(X)
    if n < params.kmin:
        raise TooFewPoints(f"x-means needs at least {params.kmin} points, got {n}")
    kmax = params.resolved_kmax(n)
    rng = np.random.default_rng(params.seed)
    labels, centers, _ = lloyd(X, farthest_point_init(X, params.kmin, rng),
                               params.max_iterations)
    while len(centers) < kmax:
        splits = []
        for c in range(len(centers)):
            region = X[labels == c]
            if len(region) < 2:
                continue
            sub_labels, sub_centers, _ = lloyd(region, farthest_point_init(region, 2, rng),
                                               params.max_iterations)
            parent = bic(region, np.zeros(len(region), dtype=int), centers[c:c + 1])
            child = bic(region, sub_labels, sub_centers)
            if child > parent:
                splits.append((child - parent, c, sub_centers))
        if not splits:
            break
        splits.sort(key=lambda s: (-s[0], s[1]))
        room = kmax - len(centers)
        accepted = {c: sub for _, c, sub in splits[:room]}
        new_centers = []
        for c in range(len(centers)):
            new_centers.extend(accepted[c] if c in accepted else [centers[c]])
        labels, centers, _ = lloyd(X, np.array(new_centers), params.max_iterations)
    return ClusterAssignment.from_labels(int(c) for c in labels)


def two_pass_vectors(raw: np.ndarray, params: XMeansParams = XMeansParams()):
    """Cluster, then re-cluster every first-pass cluster with >= 2*kmin members.

    Each second-pass analysis rescales the raw features of its own members.
    Returns (first pass, final assignment).
    """
    raw = np.asarray(raw, dtype=float)
    first = xmeans(scale(raw), params)
    final = [None] * len(raw)
    for cid, members in enumerate(first.clusters()):
        if len(members) >= 2 * params.kmin:
            sub_params = replace(params, kmax=min(len(members), params.resolved_kmax(len(raw))))
            sub = xmeans(scale(raw[members]), sub_params)
            for i, s in zip(members, sub.labels):
                final[i] = (cid, s)
        else:
            for i in members:
                final[i] = (cid, 0)
    return first, ClusterAssignment.from_labels(final)


def two_pass(tokens: Sequence[str], schema: FeatureSchema = FeatureSchema(),
             params: XMeansParams = XMeansParams()) -> ClusterAssignment:
    if not tokens:
        raise ValueError("two_pass needs at least one token")
    if len(tokens) < params.kmin:
        return ClusterAssignment.from_labels(range(len(tokens)))
    return two_pass_vectors(feature_matrix(tokens, schema), params)[1]

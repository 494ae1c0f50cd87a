"""Deterministic k-means over entry vectors.

Seeding follows k-means++ (D^2 sampling); iterations are plain Lloyd steps
on the squared-Euclidean objective.  Empty clusters are repaired by
re-seeding from the point farthest from its assigned centroid, so the
result always has exactly n non-empty clusters.  Everything is driven by
one integer seed and fixed iteration order, so identical inputs give
identical assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping as MappingT, Sequence

import numpy as np

from .errors import InvariantError
from .lexindex import LexIndex, LexKey, LexValue

# relative slack for the monotonicity assertion; Lloyd is non-increasing in
# exact arithmetic, float summation may wobble at the last bit
_INERTIA_TOL = 1e-9


@dataclass(frozen=True)
class ClusterAssignment:
    n: int
    assignment: MappingT[LexKey, int]
    centroids: np.ndarray  # (n, dim)
    inertia: float
    n_iter: int
    inertia_history: tuple[float, ...]


def _pairwise_sq_dists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    d2 = (np.sum(X * X, axis=1)[:, None] + np.sum(C * C, axis=1)[None, :]
          - 2.0 * (X @ C.T))
    return np.maximum(d2, 0.0)


def _plus_plus_init(X: np.ndarray, n: int,
                    rng: np.random.Generator) -> np.ndarray:
    m = X.shape[0]
    centroids = np.empty((n, X.shape[1]), dtype=float)
    first = int(rng.integers(m))
    centroids[0] = X[first]
    closest = np.sum((X - centroids[0]) ** 2, axis=1)
    for c in range(1, n):
        total = closest.sum()
        if total <= 0:
            raise InvariantError("k-means++ ran out of distinct points")
        idx = int(rng.choice(m, p=closest / total))
        centroids[c] = X[idx]
        closest = np.minimum(closest, np.sum((X - centroids[c]) ** 2, axis=1))
    return centroids


def kmeans(points: Sequence[tuple[LexKey, np.ndarray]], n: int, seed: int,
           max_iters: int = 300) -> ClusterAssignment:
    """Cluster keyed vectors into exactly n non-empty clusters."""
    if n <= 0:
        raise ValueError("n must be >= 1")
    if not points:
        raise ValueError("no points to cluster")
    keys = [k for k, _ in points]
    X = np.asarray([v for _, v in points], dtype=float)
    if X.ndim != 2:
        raise ValueError("all vectors must have the same length")
    m = X.shape[0]
    distinct = np.unique(X, axis=0).shape[0]
    if n > distinct:
        raise ValueError(
            f"n={n} exceeds the {distinct} distinct points available")

    rng = np.random.default_rng(seed)
    centroids = _plus_plus_init(X, n, rng)

    history: list[float] = []
    assign = np.full(m, -1, dtype=np.intp)
    for it in range(max_iters):
        d2 = _pairwise_sq_dists(X, centroids)
        new_assign = d2.argmin(axis=1)

        repairs = 0
        while True:
            counts = np.bincount(new_assign, minlength=n)
            empties = np.flatnonzero(counts == 0)
            if empties.size == 0:
                break
            repairs += 1
            if repairs > n:
                raise InvariantError("empty-cluster repair failed to settle")
            own = d2[np.arange(m), new_assign]
            far = int(own.argmax())
            empty_id = int(empties[0])
            centroids[empty_id] = X[far]
            d2[:, empty_id] = np.sum((X - centroids[empty_id]) ** 2, axis=1)
            new_assign = d2.argmin(axis=1)

        inertia = float(d2[np.arange(m), new_assign].sum())
        if history and inertia > history[-1] * (1 + _INERTIA_TOL) + 1e-12:
            raise InvariantError(
                f"inertia increased: {history[-1]} -> {inertia}")
        history.append(inertia)

        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
        for c in range(n):
            centroids[c] = X[assign == c].mean(axis=0)

    centroids.flags.writeable = False
    return ClusterAssignment(
        n=n,
        assignment={k: int(c) for k, c in zip(keys, assign)},
        centroids=centroids,
        inertia=history[-1],
        n_iter=len(history),
        inertia_history=tuple(history),
    )


def clusters_to_entries(asg: ClusterAssignment, lexi: LexIndex
                        ) -> list[tuple[tuple[LexKey, LexValue], ...]]:
    """Partition the index entries by cluster id (clusters in id order)."""
    missing = set(lexi.entries) - set(asg.assignment)
    if missing:
        raise ValueError(
            f"assignment does not cover {len(missing)} index entr"
            f"{'y' if len(missing) == 1 else 'ies'}")
    buckets: list[list[tuple[LexKey, LexValue]]] = [[] for _ in range(asg.n)]
    for key, value in lexi.sorted_entries:
        buckets[asg.assignment[key]].append((key, value))
    return [tuple(b) for b in buckets]


def write_clusters_tsv(asg: ClusterAssignment, path) -> None:
    """`cluster-id \\t key-words`, sorted by (cluster, key)."""
    rows = sorted((c, key) for key, c in asg.assignment.items())
    with open(path, "w", encoding="utf-8") as fh:
        for c, key in rows:
            fh.write(f"{c}\t{'|'.join(key)}\n")

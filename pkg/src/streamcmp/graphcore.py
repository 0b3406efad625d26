"""Undirected projection of an interaction network and batched BFS kernels.

Shortest-path work (betweenness, closeness, eccentricity) is done over all
sources in fixed-size batches, with each BFS level advanced by one sparse
matrix product. The batch size is a pure function of the node count, so
float accumulation order and therefore every output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .networks import InteractionNetwork


@dataclass
class Projection:
    """Simple undirected view: loops dropped, directions merged, weights ignored."""

    ids: list[str]
    index: dict[str, int]
    n: int
    csr: sparse.csr_matrix | None  # None when there are no edges
    degrees: np.ndarray

    def neighbors(self, i: int) -> np.ndarray:
        if self.csr is None:
            return np.empty(0, dtype=np.int64)
        return self.csr.indices[self.csr.indptr[i]:self.csr.indptr[i + 1]]


def project(net: InteractionNetwork) -> Projection:
    ids = sorted(net.nodes)
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    pairs = set()
    for u, v in net.edges:
        iu, iv = index[u], index[v]
        if iu == iv:
            continue
        pairs.add((iu, iv) if iu < iv else (iv, iu))
    if not pairs:
        return Projection(ids, index, n, None, np.zeros(n, dtype=np.int64))
    arr = np.array(sorted(pairs), dtype=np.int64)
    rows = np.concatenate([arr[:, 0], arr[:, 1]])
    cols = np.concatenate([arr[:, 1], arr[:, 0]])
    data = np.ones(len(rows), dtype=np.float64)
    csr = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    csr.sum_duplicates()
    csr.sort_indices()
    degrees = np.diff(csr.indptr).astype(np.int64)
    return Projection(ids, index, n, csr, degrees)


def _batch_size(n: int) -> int:
    # keeps each (n, b) work array around 32 MB
    return max(1, min(n, 4_000_000 // max(n, 1)))


def _forward(A: sparse.csr_matrix, srcs: np.ndarray, n: int,
             with_sigma: bool):
    """Level-synchronous BFS from each source in the batch.

    Returns dist (n, b) with -1 for unreachable, and shortest-path counts
    sigma (n, b) when requested.
    """
    b = len(srcs)
    cols = np.arange(b)
    dist = np.full((n, b), -1, dtype=np.int32)
    dist[srcs, cols] = 0
    sigma = np.zeros((n, b))
    sigma[srcs, cols] = 1.0
    front = np.zeros((n, b))
    front[srcs, cols] = 1.0
    level = 0
    while True:
        paths = A @ (sigma * front)
        new = (paths > 0) & (dist < 0)
        if not new.any():
            break
        level += 1
        dist[new] = level
        sigma[new] = paths[new]
        front = new.astype(np.float64)
    if with_sigma:
        return dist, sigma
    return dist, None


def bfs_distances(proj: Projection, sources: np.ndarray) -> np.ndarray:
    """Distances from each source; shape (len(sources), n), -1 unreachable."""
    n = proj.n
    sources = np.asarray(sources, dtype=np.int64)
    out = np.full((len(sources), n), -1, dtype=np.int32)
    if n == 0:
        return out
    if proj.csr is None:
        out[np.arange(len(sources)), sources] = 0
        return out
    bs = _batch_size(n)
    for start in range(0, len(sources), bs):
        batch = sources[start:start + bs]
        dist, _ = _forward(proj.csr, batch, n, with_sigma=False)
        out[start:start + len(batch)] = dist.T
    return out


@dataclass
class PathSummary:
    betweenness: np.ndarray  # unnormalized, unordered pairs counted once
    dist_sum: np.ndarray     # sum of distances to reachable nodes
    reach: np.ndarray        # reachable node count, self excluded
    ecc: np.ndarray          # eccentricity within own component


def all_pairs_summary(proj: Projection, betweenness: bool = True) -> PathSummary:
    """One batched sweep over every source.

    Betweenness follows the predecessor-accumulation scheme: after the BFS,
    dependency coefficients are pushed back one level at a time with the same
    sparse product, and the final scores are halved because each unordered
    pair is seen from both endpoints.
    """
    n = proj.n
    bc = np.zeros(n)
    dist_sum = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    ecc = np.zeros(n, dtype=np.int64)
    if n == 0 or proj.csr is None:
        return PathSummary(bc, dist_sum, reach, ecc)
    A = proj.csr
    bs = _batch_size(n)
    for start in range(0, n, bs):
        srcs = np.arange(start, min(start + bs, n))
        b = len(srcs)
        cols = np.arange(b)
        dist, sigma = _forward(A, srcs, n, with_sigma=True)

        mask = dist >= 0
        dist_sum[srcs] = (dist * mask).sum(axis=0)
        reach[srcs] = mask.sum(axis=0) - 1
        ecc[srcs] = dist.max(axis=0)

        if not betweenness:
            continue
        maxlev = int(dist.max())
        delta = np.zeros((n, b))
        safe_sigma = np.where(sigma > 0, sigma, 1.0)
        for lev in range(maxlev, 0, -1):
            on = dist == lev
            coef = np.where(on, (1.0 + delta) / safe_sigma, 0.0)
            spread = A @ coef
            prev = dist == lev - 1
            delta += np.where(prev, sigma * spread, 0.0)
        delta[srcs, cols] = 0.0
        bc += delta.sum(axis=1)
    if betweenness:
        bc /= 2.0
    return PathSummary(bc, dist_sum, reach, ecc)

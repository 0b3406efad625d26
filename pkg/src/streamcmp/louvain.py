"""Seeded Louvain community detection on the weighted undirected projection.

Directions are merged by summing weights, resolution is fixed at 1.0 by
default, and the only randomness is the node visit order, drawn from a
caller-provided seed. Fixed (network, seed) always yields the same partition.
The run records modularity after every local-move pass; that trace is part
of the contract (it must never decrease).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .networks import InteractionNetwork

_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class Partition:
    assignment: dict[str, int]  # node -> dense cluster id from 0
    modularity: float
    seed: int
    pass_modularities: tuple[float, ...] = ()

    @property
    def cluster_count(self) -> int:
        return len(set(self.assignment.values()))

    def clusters(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for node in sorted(self.assignment):
            out.setdefault(self.assignment[node], []).append(node)
        return out


def _weighted_projection(net: InteractionNetwork):
    ids = sorted(net.nodes)
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    adj: list[dict[int, float]] = [dict() for _ in range(n)]
    loops = [0.0] * n
    for (u, v), w in sorted(net.edges.items()):
        iu, iv = index[u], index[v]
        if iu == iv:
            loops[iu] += float(w)
            continue
        adj[iu][iv] = adj[iu].get(iv, 0.0) + float(w)
        adj[iv][iu] = adj[iv].get(iu, 0.0) + float(w)
    return ids, adj, loops


def _strengths(adj, loops):
    # a self-loop contributes twice to its node's strength
    return [sum(nbrs.values()) + 2.0 * loop for nbrs, loop in zip(adj, loops)]


def _modularity(comm, adj, loops, k, two_m, resolution):
    if two_m == 0:
        return 0.0
    w_in: dict[int, float] = {}
    sumtot: dict[int, float] = {}
    for i, nbrs in enumerate(adj):
        c = comm[i]
        sumtot[c] = sumtot.get(c, 0.0) + k[i]
        w_in[c] = w_in.get(c, 0.0) + loops[i]
        for j, w in nbrs.items():
            if j > i and comm[j] == c:
                w_in[c] = w_in.get(c, 0.0) + w
    m = two_m / 2.0
    q = 0.0
    for c in sorted(sumtot):
        q += w_in.get(c, 0.0) / m - resolution * (sumtot[c] / two_m) ** 2
    return q


def modularity(net: InteractionNetwork, assignment: dict[str, int],
               resolution: float = 1.0) -> float:
    """Quality of an assignment on the weighted undirected projection."""
    ids, adj, loops = _weighted_projection(net)
    k = _strengths(adj, loops)
    comm = [assignment[v] for v in ids]
    return _modularity(comm, adj, loops, k, sum(k), resolution)


def _one_level(adj, loops, k, two_m, resolution, rng, trace):
    """Local-move passes until a full pass moves nothing.

    A node joins the neighboring community with the best gain; staying put
    is always a candidate, and a strictly positive margin is required to
    move, so modularity rises with every move.
    """
    n = len(adj)
    comm = list(range(n))
    sumtot = list(k)
    order = list(range(n))
    any_moved = False
    while True:
        rng.shuffle(order)
        moves = 0
        for i in order:
            ci = comm[i]
            ncw: dict[int, float] = {}
            for j, w in adj[i].items():
                cj = comm[j]
                ncw[cj] = ncw.get(cj, 0.0) + w
            sumtot[ci] -= k[i]
            best_c = ci
            best_gain = ncw.get(ci, 0.0) - resolution * sumtot[ci] * k[i] / two_m
            for c in sorted(ncw):
                if c == ci:
                    continue
                gain = ncw[c] - resolution * sumtot[c] * k[i] / two_m
                if gain > best_gain + _GAIN_EPS:
                    best_gain = gain
                    best_c = c
            sumtot[best_c] += k[i]
            if best_c != ci:
                comm[i] = best_c
                moves += 1
        trace.append(_modularity(comm, adj, loops, k, two_m, resolution))
        if moves == 0:
            break
        any_moved = True
    return comm, any_moved


def _aggregate(adj, loops, comm):
    """Collapse communities into nodes; intra-community weight becomes loops."""
    labels = sorted(set(comm))
    remap = {c: i for i, c in enumerate(labels)}
    dense = [remap[c] for c in comm]
    m = len(labels)
    new_adj: list[dict[int, float]] = [dict() for _ in range(m)]
    new_loops = [0.0] * m
    for i, loop in enumerate(loops):
        new_loops[dense[i]] += loop
    for i, nbrs in enumerate(adj):
        a = dense[i]
        for j, w in nbrs.items():
            if j <= i:
                continue
            b = dense[j]
            if a == b:
                new_loops[a] += w
            else:
                new_adj[a][b] = new_adj[a].get(b, 0.0) + w
                new_adj[b][a] = new_adj[b].get(a, 0.0) + w
    return new_adj, new_loops, dense


def louvain(net: InteractionNetwork, seed: int,
            resolution: float = 1.0) -> Partition:
    ids, adj, loops = _weighted_projection(net)
    n = len(ids)
    if n == 0:
        return Partition(assignment={}, modularity=0.0, seed=seed)
    k = _strengths(adj, loops)
    two_m = sum(k)
    if two_m == 0:
        # edgeless: every node is its own cluster
        return Partition(assignment={v: i for i, v in enumerate(ids)},
                         modularity=0.0, seed=seed)

    rng = random.Random(seed)
    trace: list[float] = []
    node_comm = list(range(n))  # original node index -> current-level node
    level_adj, level_loops, level_k = adj, loops, k
    for _ in range(1000):  # safety cap; no-move exit fires long before
        comm, moved = _one_level(level_adj, level_loops, level_k, two_m,
                                 resolution, rng, trace)
        if not moved:
            break
        level_adj, level_loops, dense = _aggregate(level_adj, level_loops, comm)
        node_comm = [dense[c] for c in node_comm]
        level_k = _strengths(level_adj, level_loops)

    renumber: dict[int, int] = {}
    assignment: dict[str, int] = {}
    for i, v in enumerate(ids):
        c = node_comm[i]
        if c not in renumber:
            renumber[c] = len(renumber)
        assignment[v] = renumber[c]
    final_q = _modularity([assignment[v] for v in ids], adj, loops, k,
                          two_m, resolution)
    return Partition(assignment=assignment, modularity=final_q, seed=seed,
                     pass_modularities=tuple(trace))

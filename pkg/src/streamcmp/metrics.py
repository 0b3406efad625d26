"""Whole-network statistics for one interaction network.

Convention notes that matter when reading the numbers: average degree is
edges divided by nodes (edges are distinct directed pairs), density is the
directed E/(n(n-1)), and reciprocity lives on the directed graph. Diameter,
transitivity, k-cores and clustering all use the undirected simple
projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import graphcore
from .louvain import Partition, louvain
from .networks import InteractionNetwork


@dataclass(frozen=True)
class NetworkStats:
    kind: str
    provenance: str
    nodes: int
    edges: int
    average_degree: float
    density: float
    mean_edge_weight: float
    components: int
    largest_component_size: int
    largest_component_diameter: int
    clusters: int
    largest_cluster_size: int
    reciprocity: float
    transitivity: float
    max_k_core: int
    louvain_seed: int
    empty: bool = False


def weak_components(net: InteractionNetwork) -> list[set[str]]:
    """Connected pieces ignoring edge direction, largest first."""
    parent: dict[str, str] = {v: v for v in net.nodes}

    def find(x: str) -> str:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for u, v in net.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[str, set[str]] = {}
    for v in net.nodes:
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=lambda s: (-len(s), min(s)))


def diameter(component: Iterable[str], net: InteractionNetwork) -> int:
    """Exact hop diameter of one weak component (undirected projection)."""
    members = sorted(component)
    if len(members) <= 1:
        return 0
    proj = graphcore.project(net)
    sources = np.array([proj.index[v] for v in members], dtype=np.int64)
    dist = graphcore.bfs_distances(proj, sources)
    return int(dist.max())


def reciprocity(net: InteractionNetwork) -> float:
    if not net.edges:
        return 0.0
    pairs = set(net.edges)
    mutual = sum(1 for (u, v) in pairs if (v, u) in pairs and u != v)
    return mutual / len(pairs)


def transitivity(net: InteractionNetwork) -> float:
    """3 x triangles over connected triples on the undirected projection."""
    proj = graphcore.project(net)
    if proj.csr is None:
        return 0.0
    triples = int((proj.degrees * (proj.degrees - 1) // 2).sum())
    if triples == 0:
        return 0.0
    # sum over undirected edges of |N(u) & N(v)| counts each triangle 3 times
    closed = 0
    for u in range(proj.n):
        nbrs_u = proj.neighbors(u)
        for v in nbrs_u:
            if v > u:
                closed += len(np.intersect1d(nbrs_u, proj.neighbors(v),
                                             assume_unique=True))
    return closed / triples


def max_k_core(net: InteractionNetwork) -> int:
    """Largest k with a non-empty k-core, by minimum-degree peeling."""
    proj = graphcore.project(net)
    n = proj.n
    if n == 0:
        return 0
    if proj.csr is None:
        return 0
    degree = proj.degrees.copy()
    order = np.argsort(degree, kind="stable")
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    # bin_start[d] = first position in `order` holding a node of degree >= d
    max_deg = int(degree.max())
    counts = np.bincount(degree, minlength=max_deg + 1)
    bin_start = np.zeros(max_deg + 2, dtype=np.int64)
    bin_start[1:] = np.cumsum(counts)
    start = bin_start[:-1].copy()

    core = degree.copy()
    removed = np.zeros(n, dtype=bool)
    best = 0
    for idx in range(n):
        v = order[idx]
        best = max(best, int(core[v]))
        removed[v] = True
        for u in proj.neighbors(v):
            if removed[u] or core[u] <= core[v]:
                continue
            # swap u toward the front of its current degree bin, then shrink it
            du = core[u]
            pu, pw = pos[u], start[du]
            w = order[pw]
            if u != w:
                order[pu], order[pw] = w, u
                pos[u], pos[w] = pw, pu
            start[du] += 1
            core[u] -= 1
    return best


def mean_edge_weight(net: InteractionNetwork) -> float:
    if not net.edges:
        return 0.0
    return net.total_weight / len(net.edges)


def network_stats(net: InteractionNetwork, seed: int = 0,
                  partition: Partition | None = None) -> NetworkStats:
    """Summarize one network. A precomputed clustering for the same
    network and seed can be passed in to avoid running it twice."""
    n, e = net.node_count, net.edge_count
    if n == 0:
        return NetworkStats(kind=net.kind, provenance=net.provenance,
                            nodes=0, edges=0, average_degree=0.0, density=0.0,
                            mean_edge_weight=0.0, components=0,
                            largest_component_size=0,
                            largest_component_diameter=0, clusters=0,
                            largest_cluster_size=0, reciprocity=0.0,
                            transitivity=0.0, max_k_core=0,
                            louvain_seed=seed, empty=True)
    comps = weak_components(net)
    largest = comps[0]
    part = partition if partition is not None else louvain(net, seed)
    sizes = sorted((len(v) for v in part.clusters().values()), reverse=True)
    return NetworkStats(
        kind=net.kind,
        provenance=net.provenance,
        nodes=n,
        edges=e,
        average_degree=e / n,
        density=e / (n * (n - 1)) if n > 1 else 0.0,
        mean_edge_weight=mean_edge_weight(net),
        components=len(comps),
        largest_component_size=len(largest),
        largest_component_diameter=diameter(largest, net),
        clusters=part.cluster_count,
        largest_cluster_size=sizes[0] if sizes else 0,
        reciprocity=reciprocity(net),
        transitivity=transitivity(net),
        max_k_core=max_k_core(net),
        louvain_seed=seed,
    )

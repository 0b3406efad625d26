"""Node centralities and rank-agreement comparison between parallel networks.

Degree works on the directed simple graph (in plus out). Betweenness,
closeness and eigenvector work on the undirected unweighted projection:
betweenness is unnormalized with each unordered pair counted once, closeness
is classic within-component closeness scaled by (|C|-1)/(n-1), eigenvector
is shifted power iteration (guarantees convergence on bipartite components
without changing the limit vector).

Rankings are compared by cutting each list at k, intersecting, and scoring
the common nodes with tie-aware Kendall tau-b and Spearman rho, labelled
with the Dancey-Reidy strength bands.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats as sstats

from . import graphcore
from .networks import InteractionNetwork

DEGREE = "degree"
BETWEENNESS = "betweenness"
CLOSENESS = "closeness"
EIGENVECTOR = "eigenvector"
MEASURES = (DEGREE, BETWEENNESS, CLOSENESS, EIGENVECTOR)

_EIG_TOL = 1e-8
_EIG_MAX_ITER = 1000


@dataclass(frozen=True)
class CentralityVector:
    measure: str
    scores: dict[str, float]
    provenance: str
    kind: str
    converged: bool = True


def _degree_scores(net: InteractionNetwork) -> dict[str, float]:
    deg = {v: 0 for v in net.nodes}
    for u, v in net.edges:
        deg[u] += 1
        deg[v] += 1
    return {v: float(d) for v, d in deg.items()}


def _closeness_from_summary(proj, summary) -> dict[str, float]:
    n = proj.n
    out = {}
    for i, node in enumerate(proj.ids):
        r = summary.reach[i]
        if r <= 0 or n <= 1:
            out[node] = 0.0
            continue
        out[node] = (r / summary.dist_sum[i]) * (r / (n - 1))
    return out


def _eigenvector_scores(proj) -> tuple[dict[str, float], bool]:
    n = proj.n
    if n == 0:
        return {}, True
    if proj.csr is None:
        return {v: 0.0 for v in proj.ids}, True
    x = np.full(n, 1.0 / math.sqrt(n))
    converged = False
    for _ in range(_EIG_MAX_ITER):
        y = x + proj.csr @ x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) < _EIG_TOL:
            x = y
            converged = True
            break
        x = y
    return {v: float(x[i]) for i, v in enumerate(proj.ids)}, converged


def centrality(net: InteractionNetwork, measure: str) -> CentralityVector:
    if net.node_count == 0:
        raise ValueError("centrality requires a non-empty network")
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}, expected one of {MEASURES}")
    converged = True
    if measure == DEGREE:
        scores = _degree_scores(net)
    else:
        proj = graphcore.project(net)
        if measure == BETWEENNESS:
            summary = graphcore.all_pairs_summary(proj, betweenness=True)
            scores = {v: float(summary.betweenness[i])
                      for i, v in enumerate(proj.ids)}
        elif measure == CLOSENESS:
            summary = graphcore.all_pairs_summary(proj, betweenness=False)
            scores = _closeness_from_summary(proj, summary)
        else:
            scores, converged = _eigenvector_scores(proj)
    return CentralityVector(measure=measure, scores=scores,
                            provenance=net.provenance, kind=net.kind,
                            converged=converged)


def all_centralities(net: InteractionNetwork) -> dict[str, CentralityVector]:
    """All four measures, sharing one shortest-path sweep."""
    if net.node_count == 0:
        raise ValueError("centrality requires a non-empty network")
    proj = graphcore.project(net)
    summary = graphcore.all_pairs_summary(proj, betweenness=True)
    eig, converged = _eigenvector_scores(proj)
    return {
        DEGREE: CentralityVector(DEGREE, _degree_scores(net),
                                 net.provenance, net.kind),
        BETWEENNESS: CentralityVector(
            BETWEENNESS,
            {v: float(summary.betweenness[i]) for i, v in enumerate(proj.ids)},
            net.provenance, net.kind),
        CLOSENESS: CentralityVector(CLOSENESS,
                                    _closeness_from_summary(proj, summary),
                                    net.provenance, net.kind),
        EIGENVECTOR: CentralityVector(EIGENVECTOR, eig, net.provenance,
                                      net.kind, converged=converged),
    }


# ---------------------------------------------------------------------------
# rank comparison

DANCEY_BANDS = (
    (0.10, "uncorrelated"),
    (0.40, "weak"),
    (0.70, "moderate"),
    (0.90, "strong"),
    (1.00, "perfect"),
)


def dancey_band(coef: float) -> str:
    """Strength label for a correlation coefficient, by |coef| at 2 d.p."""
    r = round(abs(coef), 2)
    for upper, label in DANCEY_BANDS:
        if r <= upper + 1e-9:
            return label
    return "perfect"


def ranked_nodes(vec: CentralityVector) -> list[str]:
    """Nodes best-first; score ties break on node id so cuts are stable."""
    return sorted(vec.scores, key=lambda v: (-vec.scores[v], v))


@dataclass(frozen=True)
class RankComparison:
    measure: str
    kind: str
    label_a: str
    label_b: str
    k: int
    common_nodes: int
    pairs: tuple[tuple[str, int, int], ...]  # (node, rank in A, rank in B)
    kendall_tau: float | None
    spearman_rho: float | None
    strength_band_tau: str | None
    strength_band_rho: str | None
    defined: bool
    note: str = ""


def compare_rankings(a: CentralityVector, b: CentralityVector,
                     k: int = 1000) -> RankComparison:
    if a.measure != b.measure:
        raise ValueError(f"measure mismatch: {a.measure} vs {b.measure}")
    order_a = ranked_nodes(a)
    order_b = ranked_nodes(b)
    rank_a = {v: i + 1 for i, v in enumerate(order_a)}
    rank_b = {v: i + 1 for i, v in enumerate(order_b)}
    common = set(order_a[:k]) & set(order_b[:k])
    nodes = sorted(common, key=lambda v: rank_a[v])
    pairs = tuple((v, rank_a[v], rank_b[v]) for v in nodes)

    base = dict(measure=a.measure, kind=a.kind, label_a=a.provenance,
                label_b=b.provenance, k=k, common_nodes=len(common),
                pairs=pairs)
    if len(common) < 2:
        return RankComparison(**base, kendall_tau=None, spearman_rho=None,
                              strength_band_tau=None, strength_band_rho=None,
                              defined=False,
                              note="fewer than 2 common nodes in top lists")
    # Coefficients on the scores restricted to the intersection: monotone
    # transforms leave tau-b and rho alone, and midranks then apply exactly
    # where the score ties are.
    xs = np.array([a.scores[v] for v in nodes])
    ys = np.array([b.scores[v] for v in nodes])
    if (xs.min() < xs.max()
            and np.array_equal(sstats.rankdata(xs), sstats.rankdata(ys))):
        # identical orderings including ties: both coefficients are exactly 1,
        # which the tie-correction square roots would otherwise blur
        tau = rho = 1.0
    else:
        with warnings.catch_warnings():
            # constant inputs yield NaN by design; flagged as undefined below
            warnings.simplefilter("ignore", sstats.ConstantInputWarning)
            tau = float(sstats.kendalltau(xs, ys).statistic)
            rho = float(sstats.spearmanr(xs, ys).statistic)
    if math.isnan(tau) or math.isnan(rho):
        return RankComparison(**base, kendall_tau=None, spearman_rho=None,
                              strength_band_tau=None, strength_band_rho=None,
                              defined=False,
                              note="degenerate scores (all ties in one list)")
    return RankComparison(**base, kendall_tau=tau, spearman_rho=rho,
                          strength_band_tau=dancey_band(tau),
                          strength_band_rho=dancey_band(rho),
                          defined=True)


def export_scatter(cmp: RankComparison) -> list[tuple[str, int, int]]:
    """Per-node rank pairs, ordered by rank in A (Fig-style scatter data)."""
    return list(cmp.pairs)


def write_scatter_csv(cmp: RankComparison, path: str | Path) -> None:
    with io.open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# measure={cmp.measure} kind={cmp.kind} k={cmp.k} "
                 f"common_nodes={cmp.common_nodes} defined={cmp.defined}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node", "rank_a", "rank_b"])
        for node, ra, rb in cmp.pairs:
            writer.writerow([node, ra, rb])

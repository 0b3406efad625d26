"""Cluster membership agreement between two partitions.

Both indices are computed on the intersection of the node sets (parallel
networks rarely cover identical accounts); the common-node count is carried
alongside every score so the restriction stays visible. Arithmetic is exact
integer pair counting until the final division.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

from .louvain import Partition


class UndefinedComparisonError(ValueError):
    """Raised when a partition score has no defined value for these inputs."""


def _common_labels(p: Partition, q: Partition) -> tuple[list[int], list[int]]:
    nodes = sorted(set(p.assignment) & set(q.assignment))
    if len(nodes) < 2:
        raise UndefinedComparisonError(
            f"need at least 2 common nodes, have {len(nodes)}")
    return [p.assignment[v] for v in nodes], [q.assignment[v] for v in nodes]


def _pair_sums(la: list[int], lb: list[int]) -> tuple[int, int, int, int]:
    """(sum_ij, sum_a, sum_b, total_pairs) of the contingency table."""
    table: Counter = Counter(zip(la, lb))
    rows: Counter = Counter(la)
    cols: Counter = Counter(lb)
    sum_ij = sum(comb(n, 2) for n in table.values())
    sum_a = sum(comb(n, 2) for n in rows.values())
    sum_b = sum(comb(n, 2) for n in cols.values())
    return sum_ij, sum_a, sum_b, comb(len(la), 2)


def _same_partition(la: list[int], lb: list[int]) -> bool:
    seen: dict[int, int] = {}
    for x, y in zip(la, lb):
        if seen.setdefault(x, y) != y:
            return False
    return len(set(la)) == len(set(lb))


def rand_index(p: Partition, q: Partition) -> float:
    """(agreeing pairs) / (all pairs) over the common nodes."""
    la, lb = _common_labels(p, q)
    sum_ij, sum_a, sum_b, total = _pair_sums(la, lb)
    both_together = sum_ij
    both_apart = total - sum_a - sum_b + sum_ij
    return (both_together + both_apart) / total


def adjusted_rand_index(p: Partition, q: Partition) -> float:
    """Rand index corrected for chance via the contingency table.

    Kept in integer arithmetic: with S=sum_ij, A=sum_a, B=sum_b, C=total,
    ARI = 2(CS - AB) / (C(A+B) - 2AB). Identical partitions give exactly 1.0;
    the degenerate denominator (both all-singleton or both one-cluster) is
    1.0 when the partitions agree and undefined otherwise.
    """
    la, lb = _common_labels(p, q)
    sum_ij, sum_a, sum_b, total = _pair_sums(la, lb)
    num = 2 * (total * sum_ij - sum_a * sum_b)
    den = total * (sum_a + sum_b) - 2 * sum_a * sum_b
    if den == 0:
        if _same_partition(la, lb):
            return 1.0
        raise UndefinedComparisonError("degenerate partitions disagree")
    return num / den


def top_cluster_sizes(p: Partition, limit: int = 20) -> list[int]:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    sizes = sorted(Counter(p.assignment.values()).values(), reverse=True)
    return sizes[:limit]


@dataclass(frozen=True)
class PartitionComparison:
    kind: str
    label_a: str
    label_b: str
    common_node_count: int
    rand_index: float | None
    ari: float | None
    top_sizes_a: tuple[int, ...]
    top_sizes_b: tuple[int, ...]
    defined: bool
    note: str = ""


def compare_partitions(p: Partition, q: Partition, kind: str = "",
                       label_a: str = "", label_b: str = "",
                       limit: int = 20) -> PartitionComparison:
    common = len(set(p.assignment) & set(q.assignment))
    sizes_a = tuple(top_cluster_sizes(p, limit)) if p.assignment else ()
    sizes_b = tuple(top_cluster_sizes(q, limit)) if q.assignment else ()
    try:
        ri = rand_index(p, q)
        ari = adjusted_rand_index(p, q)
    except UndefinedComparisonError as exc:
        return PartitionComparison(kind=kind, label_a=label_a, label_b=label_b,
                                   common_node_count=common, rand_index=None,
                                   ari=None, top_sizes_a=sizes_a,
                                   top_sizes_b=sizes_b, defined=False,
                                   note=str(exc))
    return PartitionComparison(kind=kind, label_a=label_a, label_b=label_b,
                               common_node_count=common, rand_index=ri,
                               ari=ari, top_sizes_a=sizes_a,
                               top_sizes_b=sizes_b, defined=True)
